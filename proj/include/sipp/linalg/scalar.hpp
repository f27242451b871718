#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace sipp {

/// Exact rational in lowest terms (GMP keeps mpq values canonical).
using Rational = mpq_class;

/// Comparison tolerance for the binary64 field. Exact scalars ignore it.
struct NumericContext {
  double tau = 1e-9;
};

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, const NumericContext& = {}, double = 1.0) { return sgn(x) == 0; }
  static int sign(const Rational& x, const NumericContext& = {}) { return sgn(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
  static Rational abs(const Rational& x) { return ::abs(x); }
};

template <>
struct FieldTraits<double> {
  static constexpr bool exact = false;
  /// |x| <= tau * scale.
  static bool is_zero(double x, const NumericContext& ctx = {}, double scale = 1.0) {
    return std::fabs(x) <= ctx.tau * scale;
  }
  static int sign(double x, const NumericContext& ctx = {}) {
    if (is_zero(x, ctx)) return 0;
    return x > 0 ? 1 : -1;
  }
  static double to_double(double x) { return x; }
  static double magnitude(double x) { return std::fabs(x); }
  static double abs(double x) { return std::fabs(x); }
};

}  // namespace sipp
