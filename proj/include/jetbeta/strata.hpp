#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jetbeta/config.hpp"
#include "jetbeta/poly.hpp"

namespace jetbeta {

/// One jet stratum X_{k,j}: the image of the k-jets of lifted arcs with
/// contact orders j.
struct JetStratum {
  MultiIndex j;
  std::int64_t dim = 0;
  Poly beta;
};

inline constexpr const char *kNonRealizableWarning = "NON_REALIZABLE_WARNING";
inline constexpr const char *kDimensionOverflowWarning = "DIMENSION_OVERFLOW_WARNING";

/// The decomposition of the k-jet space L_k into the strata X_{k,j} and the
/// residual set Z_k. beta(Z_k) is obtained from beta(L_k) = u^{nk} by
/// subtraction; bound_ok records whether it passes the realizability checks
/// (positive leading coefficient, degree below n(k+1) - k/(2 nu_max)).
struct JetStratification {
  std::int64_t k = 0;
  std::int64_t n = 0;
  std::int64_t nu_max = 0;
  std::vector<JetStratum> strata;
  Poly residual_beta;
  Fraction bound_rhs;
  bool bound_ok = false;
  std::vector<std::string> warnings;
};

/// All j with 2<nu,j> <= k whose support is a listed origin stratum with
/// nonempty E°_J, j_i >= 1 on the support. Ordered by support, then by j.
std::vector<MultiIndex> admissible_multiindices(const DivisorConfiguration &c, const MultiplicityVector &nu,
                                                std::int64_t k);

/// beta(E°_J) (u-1)^{|J|} u^{nk - s_j - <nu,j>}; zero when E°_J is not listed.
/// Throws NEGATIVE_EXPONENT when the exponent is negative.
Poly stratum_beta(const DivisorConfiguration &c, const MultiplicityVector &nu, const MultiIndex &j,
                  std::int64_t k);

/// n(k+1) - s_j - <nu,j>
std::int64_t stratum_dim(const DivisorConfiguration &c, const MultiplicityVector &nu, const MultiIndex &j,
                         std::int64_t k);

/// n(k+1) - k/(2 nu_max), exact.
Fraction residual_degree_bound(std::int64_t n, std::int64_t k, std::int64_t nu_max);

/// Validates its inputs (ValidationFailure) and requires k >= 1.
JetStratification stratify(const DivisorConfiguration &c, const MultiplicityVector &nu, std::int64_t k);

nlohmann::ordered_json multiindex_to_json(const DivisorConfiguration &c, const MultiIndex &j);
nlohmann::ordered_json stratification_to_json(const DivisorConfiguration &c, const JetStratification &s);

std::string stratification_csv_header();
std::string stratification_csv_row(const JetStratification &s);

} // namespace jetbeta
