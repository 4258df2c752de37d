#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "jetbeta/series.hpp"

namespace jetbeta {

using Exponent = std::vector<std::uint32_t>;

/// Polynomial in a fixed number of variables with rational coefficients.
class MPoly {
public:
  explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static MPoly constant(std::size_t nvars, const mpq_class &c);
  static MPoly variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, mpq_class> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c x^e, dropping the term if the coefficient cancels.
  void add_term(const Exponent &e, const mpq_class &c);

  MPoly derivative(std::size_t var) const;
  MPoly pow(std::uint64_t m) const;

  friend MPoly operator+(const MPoly &a, const MPoly &b);
  friend MPoly operator-(const MPoly &a, const MPoly &b);
  friend MPoly operator*(const MPoly &a, const MPoly &b);
  friend bool operator==(const MPoly &a, const MPoly &b) = default;

  /// Substitutes one series per variable.
  TruncatedSeries eval(const std::vector<TruncatedSeries> &args) const;

  std::string to_string(const std::vector<std::string> &names) const;

private:
  std::size_t nvars_;
  std::map<Exponent, mpq_class> terms_;
};

/// x, y, z, w for up to four variables, x1..xn beyond.
std::vector<std::string> default_variable_names(std::size_t n);

/// Parses sums and products of rationals, variables, parentheses and
/// nonnegative integer powers, e.g. "x^2*z - 3/2*y + (x+1)^2".
/// Throws PARSE_ERROR.
MPoly parse_mpoly(std::string_view text, const std::vector<std::string> &names);

/// n polynomials in n variables.
struct PolyMap {
  std::vector<MPoly> components;
  std::vector<std::string> names;

  std::size_t dimension() const { return components.size(); }
  /// Componentwise substitution of an arc.
  std::vector<TruncatedSeries> apply(const std::vector<TruncatedSeries> &arc) const;
  std::vector<std::string> to_strings() const;
};

/// Throws PARSE_ERROR, or INVALID_ARGUMENT when the component count differs
/// from the number of variables.
PolyMap parse_polymap(const std::vector<std::string> &components, std::vector<std::string> names = {});

/// det of the matrix of partial derivatives, expanded exactly.
MPoly jacobian_det(const PolyMap &m);

} // namespace jetbeta
