#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jetbeta/config.hpp"
#include "jetbeta/mpoly.hpp"
#include "jetbeta/series.hpp"

namespace jetbeta {

/// An arc germ in chart coordinates: one series per coordinate, all known
/// to the same order.
struct ArcGerm {
  std::vector<TruncatedSeries> coords;

  std::int64_t precision() const;
};

/// Throws INVALID_ARGUMENT when the coordinates disagree on precision.
ArcGerm make_arc(std::vector<TruncatedSeries> coords);

/// Order in t of p(arc(t)). Throws PRECISION_EXHAUSTED when every known
/// coefficient vanishes.
std::int64_t ord_along_arc(const MPoly &p, const ArcGerm &arc);

/// Truncation used when the caller gives none: max(2k, 4 * expected) + 4.
std::int64_t default_truncation(std::int64_t k, std::int64_t expected_order);

/// A chart of a modification with its exceptional components written as
/// local equations, e.g. the planar blow-up chart (x, xy) with E1 = {x = 0}.
struct Chart {
  std::string name;
  PolyMap map;
  std::vector<std::string> component_ids;
  std::vector<MPoly> component_equations;
  MultiplicityVector nu;
};

/// (x1, x1 x2, ..., x1 xn): one chart of the blow-up of the origin of R^n.
Chart blowup_chart(std::int64_t n);
/// blowup_point_R2, blowup_point_R3, blowup_point_R<n>.
Chart builtin_chart(std::string_view name);

struct MultiplicityCheck {
  bool passed = false;
  std::int64_t measured = 0;
  std::int64_t expected = 0;
  /// Measured contact with each component, when equations were supplied.
  std::vector<std::int64_t> measured_contact;
  bool contact_matches = true;
};

/// Checks ord_arc det(d map) = <nu, j>. When component equations are given,
/// also checks that the arc has contact j_i with component i.
MultiplicityCheck multiplicity_check(const PolyMap &map, const ArcGerm &arc, const MultiIndex &expected,
                                     const MultiplicityVector &nu,
                                     const std::vector<MPoly> &component_equations = {});

struct ChainRuleCheck {
  bool passed = false;
  std::int64_t ord_sigma = 0;
  std::int64_t ord_sigma_prime = 0;
  /// ord det(df) along sigma(arc); measured when f was supplied, else the difference.
  std::int64_t ord_f = 0;
  bool f_measured = false;
  /// f(sigma(arc)) agrees with sigma'(arc); always true without f.
  bool composition_consistent = true;
};

/// ord(det d sigma' o arc) - ord(det d sigma o arc) = ord(det df o sigma o arc)
/// for sigma' = f o sigma.
ChainRuleCheck chain_rule_check(const PolyMap &sigma, const PolyMap &sigma_prime, const ArcGerm &arc,
                                const std::optional<PolyMap> &f = std::nullopt);

struct FiberProbe {
  /// Number of free k-jet coefficients in the preimage of the target.
  std::int64_t measured = 0;
  /// ord of the jacobian along the computed lift.
  std::int64_t jacobian_order = 0;
  /// The lift with every free coefficient set to zero.
  std::vector<TruncatedSeries> lift;
  /// Lifts built from random values in the free slots (later coordinates
  /// re-solved) still map onto the target.
  bool free_choices_in_fiber = false;
  bool passed = false;
};

/// For a monomial-triangular map (component i is c x_i times a monomial in
/// x_1..x_{i-1}) solves map(x) = target mod t^{k+1} by successive series
/// division and counts the undetermined coefficients. Throws NOT_TRIANGULAR,
/// NOT_IN_IMAGE, or PRECONDITION_K when k < 2e.
FiberProbe fiber_dimension_probe(const PolyMap &map, std::int64_t k, const std::vector<TruncatedSeries> &target,
                                 std::uint64_t seed = 0);

/// Random arc on a blow-up chart with contact j on the exceptional divisor:
/// x1 = t^j * unit, the other coordinates units. Coefficients are small
/// integers; the same seed gives the same arc.
ArcGerm random_contact_arc(std::size_t n, std::int64_t j, std::int64_t precision, std::uint64_t seed);

struct GridSummary {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> failure_notes;
};

/// multiplicity_check on `arcs_per_j` random arcs for each j = 1..j_max at
/// truncation 4<nu,j>.
GridSummary multiplicity_grid(const Chart &chart, std::int64_t j_max, std::size_t arcs_per_j, std::uint64_t seed);

/// fiber_dimension_probe against e = <nu,j> for j = 1..j_max and
/// k = 2e..2e+extra_k, on targets pushed forward from random contact arcs.
GridSummary fiber_grid(const Chart &chart, std::int64_t j_max, std::int64_t extra_k, std::uint64_t seed);

} // namespace jetbeta
