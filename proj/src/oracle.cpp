#include "jetbeta/oracle.hpp"

#include <algorithm>
#include <random>

#include "jetbeta/error.hpp"

namespace jetbeta {

std::int64_t ArcGerm::precision() const {
  if (coords.empty())
    return 0;
  return coords.front().precision();
}

ArcGerm make_arc(std::vector<TruncatedSeries> coords) {
  for (const auto &c : coords)
    if (c.precision() != coords.front().precision())
      throw Error(ErrorCode::InvalidArgument, "arc coordinates must share one truncation order");
  return ArcGerm{std::move(coords)};
}

std::int64_t ord_along_arc(const MPoly &p, const ArcGerm &arc) { return p.eval(arc.coords).order(); }

std::int64_t default_truncation(std::int64_t k, std::int64_t expected_order) {
  return std::max(2 * k, 4 * expected_order) + 4;
}

Chart blowup_chart(std::int64_t n) {
  if (n < 2)
    throw Error(ErrorCode::InvalidArgument, "blow-up chart needs n >= 2");
  Chart chart;
  chart.name = "blowup_point_R" + std::to_string(n);
  const auto names = default_variable_names(static_cast<std::size_t>(n));
  std::vector<std::string> comps{names[0]};
  for (std::size_t i = 1; i < names.size(); ++i)
    comps.push_back(names[0] + "*" + names[i]);
  chart.map = parse_polymap(comps, names);
  chart.component_ids = {"E1"};
  chart.component_equations = {MPoly::variable(static_cast<std::size_t>(n), 0)};
  chart.nu.values = {n - 1};
  return chart;
}

Chart builtin_chart(std::string_view name) {
  // Same naming as the builtin configurations.
  const auto bundle = builtin_config(name);
  return blowup_chart(bundle.config.n);
}

MultiplicityCheck multiplicity_check(const PolyMap &map, const ArcGerm &arc, const MultiIndex &expected,
                                     const MultiplicityVector &nu, const std::vector<MPoly> &component_equations) {
  if (arc.coords.size() != map.dimension())
    throw Error(ErrorCode::InvalidArgument, "arc dimension differs from the map's");
  MultiplicityCheck out;
  out.expected = expected.pairing(nu);
  out.measured = ord_along_arc(jacobian_det(map), arc);
  if (!component_equations.empty()) {
    if (component_equations.size() != expected.values.size())
      throw Error(ErrorCode::InvalidArgument, "one local equation per component is required");
    for (std::size_t i = 0; i < component_equations.size(); ++i) {
      const auto series = component_equations[i].eval(arc.coords);
      // A zero contact order means the arc misses the component.
      const std::int64_t contact = series.coeff(0) != 0 ? 0 : series.order();
      out.measured_contact.push_back(contact);
      if (contact != expected.values[i])
        out.contact_matches = false;
    }
  }
  out.passed = out.contact_matches && out.measured == out.expected;
  return out;
}

ChainRuleCheck chain_rule_check(const PolyMap &sigma, const PolyMap &sigma_prime, const ArcGerm &arc,
                                const std::optional<PolyMap> &f) {
  ChainRuleCheck out;
  out.ord_sigma = ord_along_arc(jacobian_det(sigma), arc);
  out.ord_sigma_prime = ord_along_arc(jacobian_det(sigma_prime), arc);
  if (f) {
    const ArcGerm image{sigma.apply(arc.coords)};
    out.ord_f = ord_along_arc(jacobian_det(*f), image);
    out.f_measured = true;
    const auto composed = f->apply(image.coords);
    const auto direct = sigma_prime.apply(arc.coords);
    for (std::size_t i = 0; i < composed.size(); ++i)
      out.composition_consistent = out.composition_consistent && composed[i].agrees_with(direct[i]);
  } else {
    out.ord_f = out.ord_sigma_prime - out.ord_sigma;
  }
  out.passed = out.composition_consistent && out.ord_f >= 0 && out.ord_sigma_prime - out.ord_sigma == out.ord_f;
  return out;
}

namespace {

struct TriangularComponent {
  Exponent exponent;
  mpq_class coefficient;
};

std::vector<TriangularComponent> triangular_form(const PolyMap &map) {
  const std::size_t n = map.dimension();
  std::vector<TriangularComponent> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto &terms = map.components[i].terms();
    if (terms.size() != 1)
      throw Error(ErrorCode::NotTriangular, "component " + std::to_string(i + 1) + " is not a monomial");
    const auto &[e, c] = *terms.begin();
    bool ok = e[i] == 1;
    for (std::size_t l = i + 1; l < n; ++l)
      ok = ok && e[l] == 0;
    if (!ok)
      throw Error(ErrorCode::NotTriangular, "component " + std::to_string(i + 1) + " must be c * " +
                                                map.names[i] + " times a monomial in earlier variables");
    out.push_back({e, c});
  }
  return out;
}

// Solves map(x) = target mod t^{k+1} coordinate by coordinate. Free slots are
// filled by `fill`; returns the number of free coefficients.
template <class Fill>
std::int64_t solve_lift(const std::vector<TriangularComponent> &tri, std::int64_t k,
                        const std::vector<TruncatedSeries> &target, std::vector<TruncatedSeries> &lift, Fill fill) {
  const std::size_t n = tri.size();
  lift.assign(n, TruncatedSeries(k));
  std::int64_t free = 0;
  for (std::size_t i = 0; i < n; ++i) {
    TruncatedSeries divisor = TruncatedSeries::constant(tri[i].coefficient, k);
    for (std::size_t l = 0; l < i; ++l)
      if (tri[i].exponent[l] > 0)
        divisor = divisor * lift[l].pow(tri[i].exponent[l]);
    const TruncatedSeries q = series_divide(target[i].truncated(k), divisor);
    const std::int64_t d = divisor.order();
    for (std::int64_t p = 0; p <= q.precision(); ++p)
      lift[i].set_coeff(p, q.coeff(p));
    for (std::int64_t p = q.precision() + 1; p <= k; ++p)
      lift[i].set_coeff(p, fill());
    free += d;
  }
  return free;
}

bool maps_onto(const PolyMap &map, const std::vector<TruncatedSeries> &lift,
               const std::vector<TruncatedSeries> &target) {
  const auto image = map.apply(lift);
  for (std::size_t i = 0; i < image.size(); ++i)
    if (!image[i].agrees_with(target[i]))
      return false;
  return true;
}

mpq_class random_small(std::mt19937_64 &rng, bool nonzero) {
  std::uniform_int_distribution<int> dist(-5, 5);
  int v = dist(rng);
  while (nonzero && v == 0)
    v = dist(rng);
  return mpq_class(v);
}

} // namespace

FiberProbe fiber_dimension_probe(const PolyMap &map, std::int64_t k, const std::vector<TruncatedSeries> &target,
                                 std::uint64_t seed) {
  if (k < 1)
    throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (target.size() != map.dimension())
    throw Error(ErrorCode::InvalidArgument, "target dimension differs from the map's");
  for (const auto &t : target)
    if (t.precision() < k)
      throw Error(ErrorCode::PrecisionExhausted, "target must be known through t^k");
  const auto tri = triangular_form(map);

  FiberProbe out;
  out.measured = solve_lift(tri, k, target, out.lift, [] { return mpq_class(0); });
  if (!maps_onto(map, out.lift, target))
    throw Error(ErrorCode::NotInImage, "target is not the k-jet of an image arc");
  out.jacobian_order = ord_along_arc(jacobian_det(map), ArcGerm{out.lift});
  if (k < 2 * out.jacobian_order)
    throw Error(ErrorCode::PreconditionK, "k = " + std::to_string(k) + " is below 2e = " +
                                              std::to_string(2 * out.jacobian_order));

  std::mt19937_64 rng(seed);
  out.free_choices_in_fiber = true;
  for (int trial = 0; trial < 3 && out.free_choices_in_fiber; ++trial) {
    std::vector<TruncatedSeries> other;
    const std::int64_t free = solve_lift(tri, k, target, other, [&rng] { return random_small(rng, false); });
    out.free_choices_in_fiber = free == out.measured && maps_onto(map, other, target);
  }
  out.passed = out.free_choices_in_fiber && out.measured == out.jacobian_order;
  return out;
}

ArcGerm random_contact_arc(std::size_t n, std::int64_t j, std::int64_t precision, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ArcGerm arc;
  for (std::size_t c = 0; c < n; ++c) {
    TruncatedSeries s(precision);
    const std::int64_t shift = c == 0 ? j : 0;
    for (std::int64_t p = 0; p + shift <= precision; ++p)
      s.set_coeff(p + shift, random_small(rng, p == 0));
    arc.coords.push_back(std::move(s));
  }
  return arc;
}

namespace {
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{seed, a, b};
  std::uint64_t out = 0;
  std::vector<std::uint32_t> words(2);
  seq.generate(words.begin(), words.end());
  out = (static_cast<std::uint64_t>(words[0]) << 32U) | words[1];
  return out;
}
} // namespace

GridSummary multiplicity_grid(const Chart &chart, std::int64_t j_max, std::size_t arcs_per_j, std::uint64_t seed) {
  GridSummary out;
  const std::size_t n = chart.map.dimension();
  for (std::int64_t j = 1; j <= j_max; ++j) {
    MultiIndex index{{j}};
    const std::int64_t precision = 4 * index.pairing(chart.nu);
    for (std::size_t i = 0; i < arcs_per_j; ++i) {
      ++out.cases;
      const auto arc = random_contact_arc(n, j, precision, mix_seed(seed, static_cast<std::uint64_t>(j), i));
      try {
        const auto r = multiplicity_check(chart.map, arc, index, chart.nu, chart.component_equations);
        if (!r.passed) {
          ++out.failures;
          out.failure_notes.push_back(chart.name + " j=" + std::to_string(j) + " arc#" + std::to_string(i) +
                                      ": measured " + std::to_string(r.measured) + ", expected " +
                                      std::to_string(r.expected));
        }
      } catch (const Error &e) {
        ++out.failures;
        out.failure_notes.push_back(chart.name + " j=" + std::to_string(j) + " arc#" + std::to_string(i) + ": " +
                                    e.what());
      }
    }
  }
  return out;
}

GridSummary fiber_grid(const Chart &chart, std::int64_t j_max, std::int64_t extra_k, std::uint64_t seed) {
  GridSummary out;
  const std::size_t n = chart.map.dimension();
  for (std::int64_t j = 1; j <= j_max; ++j) {
    const std::int64_t e = MultiIndex{{j}}.pairing(chart.nu);
    for (std::int64_t k = 2 * e; k <= 2 * e + extra_k; ++k) {
      ++out.cases;
      const std::uint64_t case_seed = mix_seed(seed, static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(k));
      const auto arc = random_contact_arc(n, j, k, case_seed);
      const auto target = chart.map.apply(arc.coords);
      try {
        const auto r = fiber_dimension_probe(chart.map, k, target, case_seed);
        if (!r.passed || r.measured != e) {
          ++out.failures;
          out.failure_notes.push_back(chart.name + " j=" + std::to_string(j) + " k=" + std::to_string(k) +
                                      ": measured " + std::to_string(r.measured) + ", expected " +
                                      std::to_string(e));
        }
      } catch (const Error &err) {
        ++out.failures;
        out.failure_notes.push_back(chart.name + " j=" + std::to_string(j) + " k=" + std::to_string(k) + ": " +
                                    err.what());
      }
    }
  }
  return out;
}

} // namespace jetbeta
