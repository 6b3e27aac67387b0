#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "censorgames/game.hpp"
#include "censorgames/rational.hpp"
#include "censorgames/rng.hpp"
#include "censorgames/threshold.hpp"

using namespace censorgames;

namespace {

constexpr double kRelTol = 1e-9;

bool close(double a, double b, double rel = kRelTol) {
    return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

TEST_CASE("small coefficients by hand") {
    ThresholdTable<double> table(2.0);
    CHECK(table.coefficient(2, 1, 1) == doctest::Approx(3.0));        // k*1 + 1
    CHECK(table.coefficient(2, 1, 0) == doctest::Approx(2.0));        // two regular buys
    CHECK(table.coefficient(2, 2, 1) == doctest::Approx(2.0 / 3.0));  // k/(s + k(t-s))
    CHECK(table.coefficient(2, 2, 0) == doctest::Approx(0.5));
    // Interior cell: regular-first from (3,2,1) since s <= t-s picks the
    // special-first descent: A = A(2,1,0)*(k+A(2,2,0))/(k+A(2,1,0))
    //                          = 2*(2+0.5)/(2+2) = 1.25.
    CHECK(table.coefficient(3, 2, 1) == doctest::Approx(1.25));
}

TEST_CASE("boundary closed forms") {
    ThresholdTable<double> t60(60.0);
    CHECK(t60.coefficient(3, 1, 1) == doctest::Approx(62.0));  // 60 + 2 regular
    ThresholdTable<double> t3(3.0);
    CHECK(t3.coefficient(4, 2, 4) == doctest::Approx(4.5));  // all special: 3*(3)/2
    ThresholdTable<double> t2(2.0);
    CHECK(t2.coefficient(2, 2, 1) == doctest::Approx(2.0 / 3.0));

    SUBCASE("overlapping boundaries agree") {
        for (double k : {1.0, 2.0, 60.0}) {
            ThresholdTable<double> table(k);
            // n=1 and s=0 overlap: both say t.
            CHECK(close(table.coefficient(5, 1, 0), 5.0));
            // n=1 and s=t overlap: both say k*t.
            CHECK(close(table.coefficient(5, 1, 5), k * 5.0));
            // n=t and s=0: (t-n+1)/n = 1/t and k/(0 + k*t) = 1/t.
            CHECK(close(table.coefficient(5, 5, 0), 0.2));
            // n=t and s=t: k*(t-n+1)/n = k/t and k/(t + 0) = k/t.
            CHECK(close(table.coefficient(5, 5, 5), k / 5.0));
            // t=n=1 single cell.
            CHECK(close(table.coefficient(1, 1, 0), 1.0));
            CHECK(close(table.coefficient(1, 1, 1), k));
        }
    }
}

TEST_CASE("domain validation") {
    ThresholdTable<double> table(2.0);
    CHECK_THROWS_AS(table.coefficient(0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(table.coefficient(3, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(table.coefficient(3, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(table.coefficient(3, 2, -1), std::invalid_argument);
    CHECK_THROWS_AS(table.coefficient(3, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(ThresholdTable<double>(0.5), std::invalid_argument);
}

TEST_CASE("k=1 collapses every schedule to the plain game") {
    ThresholdTable<double> table(1.0);
    for (int t : {1, 2, 5, 17, 60}) {
        for (int n = 1; n <= t; ++n) {
            const double expect = static_cast<double>(t - n + 1) / n;
            for (int s = 0; s <= t; ++s)
                CHECK(close(table.coefficient(t, n, s), expect));
        }
    }
    CHECK(g1_coefficient(7, 1) == doctest::Approx(7.0));
    CHECK(g1_coefficient(5, 5) == doctest::Approx(0.2));
    CHECK(g1_coefficient(50000, 60) == doctest::Approx(49941.0 / 60));
}

TEST_CASE("large instances, frozen values") {
    ThresholdTable<double> t60(60.0);
    CHECK(t60.coefficient(50000, 60, 1000) == doctest::Approx(1784.1997053537252).epsilon(1e-12));
    ThresholdTable<double> t25(25.0);
    CHECK(t25.coefficient(214, 57, 57) == doctest::Approx(9.36378447723457).epsilon(1e-12));
}

TEST_CASE("budget helpers are linear") {
    ThresholdTable<double> table(2.0);
    CHECK(threshold_budget(table, 3, 2, 1, 4.0) == doctest::Approx(5.0));
    CHECK(threshold_budget(table, 3, 2, 1, 8.0) == doctest::Approx(10.0));
    CHECK(required_defender_budget(table, 3, 2, 1, 5.0) == doctest::Approx(4.0));
    const double a = 1e10;
    ThresholdTable<double> t60(60.0);
    CHECK(required_defender_budget(t60, 50000, 60, 1000, a) * t60.coefficient(50000, 60, 1000) ==
          doctest::Approx(a));
}

TEST_CASE("sandwich bounds") {
    const ThresholdBounds b = threshold_bounds(214, 57, 57, 25.0);
    CHECK(b.lower == doctest::Approx(182.0 / 57));
    CHECK(b.upper == doctest::Approx(1526.0 / 57));
    CHECK_THROWS_AS(threshold_bounds(10, 5, 2, 3.0), std::invalid_argument);  // n-1 > s

    SUBCASE("hold on a random grid") {
        SplitMix64 gen(2024);
        int checked = 0;
        while (checked < 2000) {
            const int t = 1 + static_cast<int>(gen.next_below(80));
            const int n = 1 + static_cast<int>(gen.next_below(t));
            const int lo = n - 1;
            if (lo > t) continue;
            const int s = lo + static_cast<int>(gen.next_below(t - lo + 1));
            const double k = 1.0 + gen.next_double() * 59.0;
            ThresholdTable<double> table(k);
            const double coeff = table.coefficient(t, n, s);
            const ThresholdBounds bounds = threshold_bounds(t, n, s, k);
            CHECK(coeff >= bounds.lower * (1 - kRelTol) - kRelTol);
            CHECK(coeff <= bounds.upper * (1 + kRelTol) + kRelTol);
            ++checked;
        }
    }
}

TEST_CASE("asymptotic gap") {
    CHECK(asymptotic_gap(50000, 60, 1000, 60.0) == doctest::Approx(3600.0 / 109000));
    CHECK(asymptotic_gap(214, 57, 57, 25.0) == doctest::Approx(25.0 * 57 / (214 + 24 * 57)));
    // With n fixed the indicator vanishes as t grows.
    CHECK(asymptotic_gap(1000000, 1, 0, 3.0) < 1e-5);
}

TEST_CASE("monotonicity on a random grid") {
    SplitMix64 gen(99);
    for (int trial = 0; trial < 300; ++trial) {
        const int t = 2 + static_cast<int>(gen.next_below(99));
        const int n = 1 + static_cast<int>(gen.next_below(t));
        const int s = static_cast<int>(gen.next_below(t + 1));
        const double k = 1.0 + gen.next_double() * 9.0;
        ThresholdTable<double> table(k);
        const double base = table.coefficient(t, n, s);
        // Nondecreasing in t; the extra round enters as a regular round.
        CHECK(table.coefficient(t + 1, n, s) >= base * (1 - kRelTol));
        // Nondecreasing in s.
        if (s < t) CHECK(table.coefficient(t, n, s + 1) >= base * (1 - kRelTol));
        // Nonincreasing in n.
        if (n < t) CHECK(table.coefficient(t, n + 1, s) <= base * (1 + kRelTol));
    }
}

TEST_CASE("general-schedule evaluator") {
    CHECK(schedule_coefficient(RoundSchedule::parse("SRR"), 1, 2.0) == doctest::Approx(4.0));
    CHECK(schedule_coefficient(RoundSchedule::parse("SR"), 2, 2.0) == doctest::Approx(2.0 / 3.0));
    CHECK(schedule_coefficient(RoundSchedule::parse("RS"), 2, 2.0) == doctest::Approx(2.0 / 3.0));

    SUBCASE("agrees with the table on ordered schedules") {
        ThresholdTable<double> table(3.0);
        for (int t = 1; t <= 10; ++t)
            for (int s = 0; s <= t; ++s)
                for (int n = 1; n <= t; ++n)
                    CHECK(close(schedule_coefficient(RoundSchedule::specials_first(t, s), n, 3.0),
                                table.coefficient(t, n, s)));
    }

    SUBCASE("invariant under round order") {
        SplitMix64 gen(7);
        for (int trial = 0; trial < 200; ++trial) {
            const int t = 2 + static_cast<int>(gen.next_below(11));
            const int s = static_cast<int>(gen.next_below(t + 1));
            const int n = 1 + static_cast<int>(gen.next_below(t));
            const double k = 1.0 + gen.next_double() * 7.0;
            // Random permutation of s specials among t rounds.
            std::vector<RoundType> rounds(t, RoundType::Regular);
            for (int i = 0; i < s; ++i) rounds[i] = RoundType::Special;
            for (int i = t - 1; i > 0; --i)
                std::swap(rounds[i], rounds[gen.next_below(i + 1)]);
            const RoundSchedule shuffled{rounds};
            const RoundSchedule sorted = RoundSchedule::specials_first(t, s);
            CHECK(swap_invariance_check(t, n, shuffled, sorted, k) <= kRelTol);
        }
    }

    SUBCASE("mismatched schedules are rejected") {
        const RoundSchedule a = RoundSchedule::parse("SR");
        const RoundSchedule b = RoundSchedule::parse("SS");
        CHECK_THROWS_AS(swap_invariance_check(2, 1, a, b, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(swap_invariance_check(3, 1, a, a, 2.0), std::invalid_argument);
        CHECK(swap_invariance_check(2, 1, a, a, 2.0) == 0.0);
    }
}

TEST_CASE("exact rational mode") {
    ThresholdTable<Rational> xtable{Rational(2)};
    CHECK(xtable.coefficient(3, 2, 1) == Rational(5, 4));
    CHECK(xtable.coefficient(2, 2, 1) == Rational(2, 3));

    SUBCASE("k=1 is exact for every s") {
        ThresholdTable<Rational> ones{Rational(1)};
        for (int t = 1; t <= 24; ++t)
            for (int n = 1; n <= t; ++n)
                for (int s = 0; s <= t; ++s)
                    CHECK(ones.coefficient(t, n, s) == Rational(t - n + 1, n));
    }

    SUBCASE("float agrees with exact through t = 40") {
        SplitMix64 gen(11);
        for (double k : {2.0, 7.0, 60.0}) {
            ThresholdTable<double> ftable(k);
            ThresholdTable<Rational> xt{Rational(k)};
            for (int trial = 0; trial < 60; ++trial) {
                const int t = 2 + static_cast<int>(gen.next_below(39));
                const int n = 1 + static_cast<int>(gen.next_below(t));
                const int s = static_cast<int>(gen.next_below(t + 1));
                CHECK(close(ftable.coefficient(t, n, s), to_double(xt.coefficient(t, n, s))));
            }
        }
    }

    SUBCASE("both recurrence descents agree exactly") {
        // The table consumes special rounds first when s <= t-s and regular
        // rounds first otherwise; the positional evaluator always consumes
        // the schedule front to back. On specials-first schedules the two
        // take different descents for s > t-s, yet must produce the same
        // rational.
        ThresholdTable<Rational> xt{Rational(3)};
        const Rational k3(3);
        for (int t = 2; t <= 14; ++t)
            for (int s = 0; s <= t; ++s)
                for (int n = 1; n <= t; ++n)
                    CHECK(xt.coefficient(t, n, s) ==
                          schedule_coefficient(RoundSchedule::specials_first(t, s), n, k3));
    }
}

TEST_CASE("optimal defender bids") {
    ThresholdTable<double> table(2.0);

    SUBCASE("interior bids, both round types") {
        const GameState st{3, 2, 1, 1.0, 1.25};
        CHECK(optimal_defender_bid(table, st, RoundType::Regular) ==
              doctest::Approx(7.0 / 12));
        CHECK(optimal_defender_bid(table, st, RoundType::Special) == doctest::Approx(0.375));
    }

    SUBCASE("one win needed: bid everything") {
        const GameState st{1, 1, 0, 5.0, 100.0};
        CHECK(optimal_defender_bid(table, st, RoundType::Regular) == doctest::Approx(5.0));
        const GameState st2{3, 1, 1, 5.0, 0.5};
        CHECK(optimal_defender_bid(table, st2, RoundType::Special) == doctest::Approx(5.0));
    }

    SUBCASE("must win every round: just above the attacker's reach") {
        const GameState st{2, 2, 0, 10.0, 3.0};
        const double bid = optimal_defender_bid(table, st, RoundType::Regular);
        CHECK(bid > 3.0);
        CHECK(bid == doctest::Approx(3.0).epsilon(1e-7));
        const GameState sp{2, 2, 2, 10.0, 3.0};
        const double sbid = optimal_defender_bid(table, sp, RoundType::Special);
        CHECK(sbid > 1.5);
        CHECK(sbid == doctest::Approx(1.5).epsilon(1e-7));
        // The budget caps the bid.
        const GameState poor{2, 2, 0, 2.0, 3.0};
        CHECK(optimal_defender_bid(table, poor, RoundType::Regular) == doctest::Approx(2.0));
    }

    SUBCASE("bids stay within the budget on random states") {
        SplitMix64 gen(5);
        for (int trial = 0; trial < 500; ++trial) {
            const int t = 1 + static_cast<int>(gen.next_below(15));
            const int n = 1 + static_cast<int>(gen.next_below(t));
            const int s = static_cast<int>(gen.next_below(t + 1));
            const GameState st{t, n, s, gen.next_double() * 10, gen.next_double() * 10};
            const RoundType rt = s > 0 && (s == t || gen.next_double() < 0.5)
                                     ? RoundType::Special
                                     : RoundType::Regular;
            const double bid = optimal_defender_bid(table, st, rt);
            CHECK(bid >= 0.0);
            CHECK(bid <= st.defender_budget);
        }
    }

    SUBCASE("winning at the optimal bids never overspends") {
        // Regular-only game: follow the all-wins path and sum the bids.
        for (int t : {3, 7, 15}) {
            for (int n = 1; n <= t; ++n) {
                GameState st{t, n, 0, 1.0, 0.35};
                double spent = 0;
                while (terminal_status(st) == GameOutcome::Ongoing) {
                    const double bid = optimal_defender_bid(table, st, RoundType::Regular);
                    spent += bid;
                    st.defender_budget -= bid;
                    st.rounds_left -= 1;
                    st.wins_left -= 1;
                }
                CHECK(spent <= 1.0 + 1e-9);
                CHECK(st.defender_budget >= -1e-12);
            }
        }
    }
}

TEST_CASE("optimal attacker responses") {
    ThresholdTable<double> table(2.0);
    const GameState st{3, 2, 1, 1.0, 1.25};

    SUBCASE("high special bid: conceding is cheap") {
        // let = A(2,1,0)*(d-b) = 2*0.1; win = 2*0.9 + A(2,2,0)*1 = 2.3 > a.
        const AttackerResponse r = optimal_attacker_response(table, st, RoundType::Special, 0.9);
        CHECK_FALSE(r.censor);
        CHECK(r.bid == 0.0);
        CHECK(r.let_win_requirement == doctest::Approx(0.2));
        CHECK(r.win_now_requirement == doctest::Approx(2.3));
    }

    SUBCASE("low regular bid: censoring is the only affordable line") {
        // win = 0.3 + A(2,2,1)*1 = 0.3 + 2/3; let = A(2,1,1)*(0.7) = 2.1 > a.
        const AttackerResponse r = optimal_attacker_response(table, st, RoundType::Regular, 0.3);
        CHECK(r.censor);
        CHECK(r.bid == doctest::Approx(0.3));
        CHECK(r.win_now_requirement == doctest::Approx(0.3 + 2.0 / 3.0));
        CHECK(r.let_win_requirement == doctest::Approx(2.1));
    }

    SUBCASE("at the optimal bid and exact threshold both branches tie: concede") {
        // b = 7/12 makes win = b + 2/3 and let = 3*(1-b) both equal 1.25 = a.
        const AttackerResponse r =
            optimal_attacker_response(table, st, RoundType::Regular, 7.0 / 12);
        CHECK(r.let_win_requirement == doctest::Approx(r.win_now_requirement));
        CHECK_FALSE(r.censor);
    }

    SUBCASE("a broke attacker concedes when winning still needs money") {
        const GameState broke{3, 2, 1, 1.0, 0.0};
        const AttackerResponse r =
            optimal_attacker_response(table, broke, RoundType::Regular, 0.5);
        CHECK_FALSE(r.censor);
        // Censoring a zero bid is free, but the win-now line still prices
        // the remaining rounds, which she cannot pay.
        const AttackerResponse z =
            optimal_attacker_response(table, broke, RoundType::Regular, 0.0);
        CHECK(z.win_now_requirement == doctest::Approx(2.0 / 3.0));
        CHECK_FALSE(z.censor);
    }

    SUBCASE("free censorship wins outright when the defender must sweep") {
        const GameState standoff{2, 2, 0, 1.0, 0.0};
        const AttackerResponse r =
            optimal_attacker_response(table, standoff, RoundType::Regular, 0.0);
        CHECK(r.censor);
        CHECK(r.bid == 0.0);
        CHECK(r.win_now_requirement == 0.0);  // no later cost term when n == t
        CHECK(r.let_win_requirement == doctest::Approx(1.0));
    }

    SUBCASE("censoring when it is strictly cheaper than conceding") {
        const GameState last{2, 2, 0, 1.0, 3.0};
        const AttackerResponse r = optimal_attacker_response(table, last, RoundType::Regular, 0.3);
        CHECK(r.censor);
        CHECK(r.win_now_requirement == doctest::Approx(0.3));
        CHECK(r.let_win_requirement == doctest::Approx(0.7));
        // Against a bid above the concede price she flips to conceding.
        const AttackerResponse c = optimal_attacker_response(table, last, RoundType::Regular, 0.8);
        CHECK_FALSE(c.censor);
        CHECK(c.let_win_requirement == doctest::Approx(0.2));
    }
}
