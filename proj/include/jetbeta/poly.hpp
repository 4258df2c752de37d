#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include "json.hpp"

namespace jetbeta {

/// Degree of a polynomial. The zero polynomial has degree MinusInfinity,
/// which compares strictly below every finite degree.
class Degree {
public:
  static Degree minus_infinity() { return Degree(); }
  static Degree finite(std::int64_t value) { return Degree(value); }

  bool is_minus_infinity() const { return !value_.has_value(); }
  /// Precondition: finite.
  std::int64_t value() const { return *value_; }

  friend bool operator==(const Degree &, const Degree &) = default;
  friend std::strong_ordering operator<=>(const Degree &a, const Degree &b) {
    if (a.is_minus_infinity() && b.is_minus_infinity())
      return std::strong_ordering::equal;
    if (a.is_minus_infinity())
      return std::strong_ordering::less;
    if (b.is_minus_infinity())
      return std::strong_ordering::greater;
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const;

private:
  Degree() = default;
  explicit Degree(std::int64_t v) : value_(v) {}
  std::optional<std::int64_t> value_;
};

/// Exact rational with machine-word numerator and positive denominator,
/// kept in lowest terms. Used for the dimension bounds n(k+1) - k/(2 nu_max).
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(std::int64_t num, std::int64_t den);

  friend bool operator==(const Fraction &, const Fraction &) = default;
  friend std::strong_ordering operator<=>(const Fraction &a, const Fraction &b);
  std::string to_string() const;
};

/// Exact comparisons of a degree against a rational bound; MinusInfinity is
/// below every bound.
bool degree_less(const Degree &d, const Fraction &bound);
bool degree_at_least(const Degree &d, const Fraction &bound);

/// Univariate polynomial in u with arbitrary-precision integer coefficients,
/// stored low-to-high. The coefficient list never ends in zero; the zero
/// polynomial has an empty list.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<mpz_class> coeffs);
  Poly(std::initializer_list<long> coeffs);

  static Poly constant(const mpz_class &c);
  /// c * u^degree
  static Poly monomial(std::size_t degree, const mpz_class &c = 1);
  static Poly u() { return monomial(1); }

  const std::vector<mpz_class> &coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of u^i; zero beyond the degree.
  mpz_class coeff(std::size_t i) const;

  Degree degree() const;
  /// Highest nonzero coefficient. Throws LEADING_OF_ZERO on the zero polynomial.
  const mpz_class &leading() const;
  mpz_class eval(const mpz_class &x) const;

  Poly &operator+=(const Poly &other);
  Poly &operator-=(const Poly &other);
  Poly &operator*=(const Poly &other);
  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(const Poly &a, const Poly &b);
  friend Poly operator-(Poly a);
  friend bool operator==(const Poly &a, const Poly &b) { return a.coeffs_ == b.coeffs_; }

  Poly pow(std::uint64_t m) const;

  /// Human-readable form, e.g. "u^8 - u^6".
  std::string to_string() const;

private:
  void normalize();
  std::vector<mpz_class> coeffs_;
};

Poly poly_add(const Poly &a, const Poly &b);
Poly poly_mul(const Poly &a, const Poly &b);
Poly poly_pow(const Poly &a, std::uint64_t m);
Degree poly_degree(const Poly &a);
mpz_class poly_leading(const Poly &a);
mpz_class poly_eval(const Poly &a, const mpz_class &x);

/// Interchange encoding: JSON array of decimal strings, low-to-high, canonical.
nlohmann::ordered_json poly_to_json(const Poly &p);
/// Accepts the canonical encoding; trailing zeros are tolerated and stripped.
/// Throws PARSE_ERROR on anything that is not an array of integer strings.
Poly poly_from_json(const nlohmann::ordered_json &j);

} // namespace jetbeta
