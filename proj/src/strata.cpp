#include "jetbeta/strata.hpp"

#include <algorithm>

namespace jetbeta {

using json = nlohmann::ordered_json;

namespace {

void require_valid(const DivisorConfiguration &c, const MultiplicityVector &nu) {
  auto violations = validate_config(c);
  auto nu_violations = validate_multiplicities(c, nu);
  violations.insert(violations.end(), nu_violations.begin(), nu_violations.end());
  if (!violations.empty())
    throw ValidationFailure(std::move(violations));
}

// Fills j on support[pos..] with values >= 1 keeping 2 * pairing <= k.
void enumerate_support(const std::vector<std::size_t> &support, std::size_t pos, const MultiplicityVector &nu,
                       std::int64_t k, std::int64_t pairing, MultiIndex &current, std::vector<MultiIndex> &out) {
  if (pos == support.size()) {
    out.push_back(current);
    return;
  }
  // Every later coordinate contributes at least its nu.
  std::int64_t tail_min = 0;
  for (std::size_t p = pos + 1; p < support.size(); ++p)
    tail_min += nu[support[p]];
  const std::size_t idx = support[pos];
  for (std::int64_t v = 1; 2 * (pairing + nu[idx] * v + tail_min) <= k; ++v) {
    current.values[idx] = v;
    enumerate_support(support, pos + 1, nu, k, pairing + nu[idx] * v, current, out);
  }
  current.values[idx] = 0;
}

} // namespace

std::vector<MultiIndex> admissible_multiindices(const DivisorConfiguration &c, const MultiplicityVector &nu,
                                                std::int64_t k) {
  std::vector<const Stratum *> origin_strata;
  for (const auto &st : c.strata)
    if (st.maps_to_origin && !st.beta.is_zero() && !st.support.empty())
      origin_strata.push_back(&st);
  std::sort(origin_strata.begin(), origin_strata.end(),
            [](const Stratum *a, const Stratum *b) { return a->support < b->support; });

  std::vector<MultiIndex> out;
  for (const Stratum *st : origin_strata) {
    MultiIndex current{std::vector<std::int64_t>(c.components.size(), 0)};
    const std::size_t first = out.size();
    enumerate_support(st->support, 0, nu, k, 0, current, out);
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
  }
  return out;
}

Poly stratum_beta(const DivisorConfiguration &c, const MultiplicityVector &nu, const MultiIndex &j,
                  std::int64_t k) {
  const auto support = j.support();
  const Stratum *st = c.find_stratum(support);
  if (st == nullptr || st->beta.is_zero())
    return Poly();
  const std::int64_t exponent = c.n * k - j.total() - j.pairing(nu);
  if (exponent < 0)
    throw Error(ErrorCode::NegativeExponent, "stratum " + support_label(c, support) + " at k = " +
                                                 std::to_string(k) + " has exponent nk - s_j - <nu,j> = " +
                                                 std::to_string(exponent));
  return st->beta * Poly{-1, 1}.pow(support.size()) * Poly::monomial(static_cast<std::size_t>(exponent));
}

std::int64_t stratum_dim(const DivisorConfiguration &c, const MultiplicityVector &nu, const MultiIndex &j,
                         std::int64_t k) {
  return c.n * (k + 1) - j.total() - j.pairing(nu);
}

Fraction residual_degree_bound(std::int64_t n, std::int64_t k, std::int64_t nu_max) {
  return Fraction::make(2 * nu_max * n * (k + 1) - k, 2 * nu_max);
}

JetStratification stratify(const DivisorConfiguration &c, const MultiplicityVector &nu, std::int64_t k) {
  if (k < 1)
    throw Error(ErrorCode::InvalidArgument, "k must be positive, got " + std::to_string(k));
  require_valid(c, nu);

  JetStratification out;
  out.k = k;
  out.n = c.n;
  out.nu_max = nu.max();
  Poly covered;
  bool overflow = false;
  for (auto &j : admissible_multiindices(c, nu, k)) {
    JetStratum s;
    s.dim = stratum_dim(c, nu, j, k);
    s.beta = stratum_beta(c, nu, j, k);
    if (!s.beta.is_zero() && s.beta.degree() != Degree::finite(s.dim))
      throw Error(ErrorCode::EngineInconsistency,
                  "stratum degree " + s.beta.degree().to_string() + " differs from dimension " +
                      std::to_string(s.dim));
    overflow = overflow || s.dim > c.n * k;
    covered += s.beta;
    s.j = std::move(j);
    out.strata.push_back(std::move(s));
  }
  out.residual_beta = Poly::monomial(static_cast<std::size_t>(c.n * k)) - covered;
  out.bound_rhs = residual_degree_bound(c.n, k, out.nu_max);
  out.bound_ok = out.residual_beta.is_zero() ||
                 (degree_less(out.residual_beta.degree(), out.bound_rhs) && out.residual_beta.leading() > 0);
  if (!out.bound_ok)
    out.warnings.emplace_back(kNonRealizableWarning);
  if (overflow)
    out.warnings.emplace_back(kDimensionOverflowWarning);
  return out;
}

json multiindex_to_json(const DivisorConfiguration &c, const MultiIndex &j) {
  json out = json::object();
  for (std::size_t i = 0; i < j.values.size(); ++i)
    if (j.values[i] != 0)
      out[c.components.at(i)] = j.values[i];
  return out;
}

namespace {
json degree_json(const Degree &d) { return d.is_minus_infinity() ? json(nullptr) : json(d.value()); }
} // namespace

json stratification_to_json(const DivisorConfiguration &c, const JetStratification &s) {
  json out;
  out["k"] = s.k;
  out["n"] = s.n;
  out["nu_max"] = s.nu_max;
  json strata = json::array();
  for (const auto &st : s.strata) {
    json item;
    item["j"] = multiindex_to_json(c, st.j);
    item["dim"] = st.dim;
    item["beta"] = poly_to_json(st.beta);
    strata.push_back(std::move(item));
  }
  out["strata"] = std::move(strata);
  out["residual_beta"] = poly_to_json(s.residual_beta);
  out["residual_degree"] = degree_json(s.residual_beta.degree());
  out["bound_rhs"] = json{{"num", s.bound_rhs.num}, {"den", s.bound_rhs.den}};
  out["bound_ok"] = s.bound_ok;
  out["warnings"] = s.warnings;
  return out;
}

std::string stratification_csv_header() { return "k,residual_degree,bound_num,bound_den,bound_ok"; }

std::string stratification_csv_row(const JetStratification &s) {
  return std::to_string(s.k) + "," + s.residual_beta.degree().to_string() + "," + std::to_string(s.bound_rhs.num) +
         "," + std::to_string(s.bound_rhs.den) + "," + (s.bound_ok ? "true" : "false");
}

} // namespace jetbeta
