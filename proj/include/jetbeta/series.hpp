#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace jetbeta {

/// Power series in t with rational coefficients, known through t^K.
/// Results of arithmetic are known through the smaller precision of the
/// operands. Reading a coefficient past K is an error.
class TruncatedSeries {
public:
  explicit TruncatedSeries(std::int64_t precision = 0);
  TruncatedSeries(std::vector<mpq_class> coeffs, std::int64_t precision);

  static TruncatedSeries constant(const mpq_class &c, std::int64_t precision);
  /// c t^degree
  static TruncatedSeries monomial(std::int64_t degree, const mpq_class &c, std::int64_t precision);

  std::int64_t precision() const { return precision_; }
  /// Throws PRECISION_EXHAUSTED for i > precision().
  const mpq_class &coeff(std::int64_t i) const;
  void set_coeff(std::int64_t i, const mpq_class &c);

  /// Index of the first nonzero coefficient. Throws PRECISION_EXHAUSTED if all
  /// known coefficients vanish; a vanishing truncation is never "order infinity".
  std::int64_t order() const;
  bool known_zero() const;

  TruncatedSeries truncated(std::int64_t precision) const;

  friend TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b);
  friend TruncatedSeries operator-(const TruncatedSeries &a, const TruncatedSeries &b);
  friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b);
  friend TruncatedSeries operator*(const mpq_class &c, const TruncatedSeries &a);
  TruncatedSeries pow(std::uint64_t m) const;

  /// Agreement of all coefficients known to both.
  bool agrees_with(const TruncatedSeries &other) const;

  std::string to_string() const;

private:
  std::vector<mpq_class> coeffs_; // size precision_ + 1
  std::int64_t precision_;
};

TruncatedSeries series_add(const TruncatedSeries &a, const TruncatedSeries &b);
TruncatedSeries series_mul(const TruncatedSeries &a, const TruncatedSeries &b);
/// outer(inner(t)). Throws COMPOSE_NONZERO_CONSTANT unless inner(0) = 0.
TruncatedSeries series_compose(const TruncatedSeries &outer, const TruncatedSeries &inner);

/// q with divisor * q = dividend. When the divisor has order d, the result is
/// known through t^{K-d}. Throws NOT_IN_IMAGE if the divisor is zero to its
/// precision or the dividend has a nonzero coefficient below t^d.
TruncatedSeries series_divide(const TruncatedSeries &dividend, const TruncatedSeries &divisor);

/// Parses "3/2" or "-4" into a canonical rational. Throws PARSE_ERROR.
mpq_class parse_rational(std::string_view text);

} // namespace jetbeta
