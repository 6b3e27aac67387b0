#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace censorgames {

// Arbitrary-precision rationals for the exact solver mode. Every quantity in
// the threshold recurrences is rational when k is, so this mode has zero
// rounding error; it is meant for small instances and cross-checking.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }
inline double to_double(double x) { return x; }

}  // namespace censorgames
