#include "jetbeta/compare.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "jetbeta/strata.hpp"

namespace jetbeta {

using json = nlohmann::ordered_json;

std::string to_string(ComparisonMode mode) {
  return mode == ComparisonMode::JacobianBounded ? "JacobianBounded" : "LipschitzDirection";
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
  case VerdictKind::AlreadyEqual:
    return "ALREADY_EQUAL";
  case VerdictKind::EqualForced:
    return "EQUAL_FORCED";
  case VerdictKind::Inconclusive:
    return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

void require_valid(const DivisorConfiguration &c, const MultiplicityVector &nu, const MultiplicityVector &nu_prime) {
  auto violations = validate_config(c);
  for (const auto &[vec, label] : {std::pair{&nu, "nu"}, std::pair{&nu_prime, "nu_prime"}}) {
    auto more = validate_multiplicities(c, *vec, label);
    violations.insert(violations.end(), more.begin(), more.end());
  }
  if (!violations.empty())
    throw ValidationFailure(std::move(violations));
}

void require_order(const MultiplicityVector &small, const MultiplicityVector &large, const char *relation) {
  if (!small.dominated_by(large))
    throw Error(ErrorCode::PreconditionOrder, std::string("multiplicities must satisfy ") + relation +
                                                  " componentwise");
}

void require_k(std::int64_t k) {
  if (k < 1)
    throw Error(ErrorCode::InvalidArgument, "k must be positive, got " + std::to_string(k));
}

// beta(E°_J) (u-1)^{|J|}, the part of every stratum term that depends only on J.
Poly support_factor(const DivisorConfiguration &c, const MultiIndex &j) {
  const auto support = j.support();
  const Stratum *st = c.find_stratum(support);
  if (st == nullptr)
    return Poly();
  return st->beta * Poly{-1, 1}.pow(support.size());
}

std::size_t exponent_or_throw(std::int64_t e, const DivisorConfiguration &c, const MultiIndex &j, std::int64_t k) {
  if (e < 0)
    throw Error(ErrorCode::NegativeExponent, "stratum " + support_label(c, j.support()) + " at k = " +
                                                 std::to_string(k) + " has negative exponent " + std::to_string(e));
  return static_cast<std::size_t>(e);
}

std::int64_t pairing_difference(const MultiIndex &j, const MultiplicityVector &a, const MultiplicityVector &b) {
  return j.pairing(a) - j.pairing(b);
}

// c_k counts as stabilized when it took one value on at least `window`
// consecutive k, the run ending at step `last`.
void detect_stabilization(ComparisonReport &r, std::size_t last) {
  std::int64_t run = 0;
  std::optional<std::int64_t> value;
  std::int64_t prev_k = 0;
  for (std::size_t i = 0; i <= last && i < r.jacobian_steps.size(); ++i) {
    const auto &step = r.jacobian_steps[i];
    if (!step.c_k) {
      run = 0;
      value.reset();
      continue;
    }
    if (value && *value == *step.c_k && prev_k + 1 == step.k) {
      ++run;
    } else {
      run = 1;
      value = step.c_k;
    }
    prev_k = step.k;
  }
  r.c_stabilized = value.has_value() && run >= r.options.stabilization_window;
  r.stable_c = r.c_stabilized ? value : std::nullopt;
}

void check_options(const CompareOptions &options) {
  if (options.k_max < 2)
    throw Error(ErrorCode::InvalidArgument, "k_max must be at least 2");
  if (options.stabilization_window < 1)
    throw Error(ErrorCode::InvalidArgument, "stabilization window must be at least 1");
}

} // namespace

PqqDecomposition pqq_decomposition(const DivisorConfiguration &c, const MultiplicityVector &nu,
                                   const MultiplicityVector &nu_prime, std::int64_t k) {
  require_k(k);
  require_valid(c, nu, nu_prime);
  require_order(nu, nu_prime, "nu <= nu'");

  const auto a_sigma = admissible_multiindices(c, nu, k);
  const auto a_sigma_prime = admissible_multiindices(c, nu_prime, k);
  const std::set<MultiIndex> in_prime(a_sigma_prime.begin(), a_sigma_prime.end());
  const std::set<MultiIndex> in_sigma(a_sigma.begin(), a_sigma.end());

  PqqDecomposition out;
  const Poly one{1};
  for (const auto &j : a_sigma) {
    const Poly factor = support_factor(c, j);
    if (in_prime.count(j) != 0) {
      const auto e = exponent_or_throw(c.n * k - j.total() - j.pairing(nu_prime), c, j, k);
      const auto gap = static_cast<std::size_t>(pairing_difference(j, nu_prime, nu));
      out.P += factor * Poly::monomial(e) * (Poly::monomial(gap) - one);
    } else {
      const auto e = exponent_or_throw(c.n * k - j.total() - j.pairing(nu), c, j, k);
      out.Q += factor * Poly::monomial(e);
    }
  }
  for (const auto &j : a_sigma_prime) {
    if (in_sigma.count(j) != 0)
      continue;
    const auto e = exponent_or_throw(c.n * k - j.total() - j.pairing(nu_prime), c, j, k);
    out.Qprime += support_factor(c, j) * Poly::monomial(e);
  }
  return out;
}

std::optional<std::int64_t> contact_minimum(const DivisorConfiguration &c, const MultiplicityVector &nu,
                                            const MultiplicityVector &nu_prime, std::int64_t k) {
  require_k(k);
  require_valid(c, nu, nu_prime);
  require_order(nu, nu_prime, "nu <= nu'");
  std::optional<std::int64_t> best;
  for (const auto &j : admissible_multiindices(c, nu_prime, k)) {
    if (pairing_difference(j, nu_prime, nu) <= 0)
      continue;
    const std::int64_t value = j.total() + j.pairing(nu);
    if (!best || value < *best)
      best = value;
  }
  return best;
}

ComparisonReport thm1_verdict(const DivisorConfiguration &c, const MultiplicityVector &nu,
                              const MultiplicityVector &nu_prime, const CompareOptions &options) {
  check_options(options);
  require_valid(c, nu, nu_prime);
  require_order(nu, nu_prime, "nu <= nu'");

  ComparisonReport r;
  r.mode = ComparisonMode::JacobianBounded;
  r.nu = nu;
  r.nu_prime = nu_prime;
  r.options = options;
  if (nu == nu_prime) {
    r.verdict = {VerdictKind::AlreadyEqual, 0};
    return r;
  }

  const std::int64_t nu_prime_max = nu_prime.max();
  std::optional<std::size_t> witness_index;
  for (std::int64_t k = 2; k <= options.k_max; ++k) {
    JacobianStep step;
    step.k = k;
    step.a_sigma_size = admissible_multiindices(c, nu, k).size();
    step.a_sigma_prime_size = admissible_multiindices(c, nu_prime, k).size();
    auto pqq = pqq_decomposition(c, nu, nu_prime, k);
    step.P = std::move(pqq.P);
    step.Q = std::move(pqq.Q);
    step.Qprime = std::move(pqq.Qprime);
    step.c_k = contact_minimum(c, nu, nu_prime, k);
    step.bound = residual_degree_bound(c.n, k, nu_prime_max);

    if (!step.Qprime.is_zero())
      throw Error(ErrorCode::EngineInconsistency, "Q' is nonzero although nu <= nu' (k = " + std::to_string(k) + ")");
    if (step.c_k) {
      const Degree expected = Degree::finite(c.n * (k + 1) - *step.c_k);
      if (step.P.degree() != expected)
        throw Error(ErrorCode::EngineInconsistency, "deg P = " + step.P.degree().to_string() +
                                                        " but n(k+1) - c_k = " + expected.to_string() +
                                                        " at k = " + std::to_string(k));
      step.contradiction = degree_at_least(step.P.degree(), step.bound);
    } else if (!step.P.is_zero()) {
      throw Error(ErrorCode::EngineInconsistency, "C_k is empty but P is nonzero at k = " + std::to_string(k));
    }
    if (step.contradiction && !witness_index)
      witness_index = r.jacobian_steps.size();
    r.jacobian_steps.push_back(std::move(step));
  }

  if (witness_index) {
    r.verdict = {VerdictKind::EqualForced, r.jacobian_steps[*witness_index].k};
    detect_stabilization(r, *witness_index);
  } else {
    r.verdict = {VerdictKind::Inconclusive, options.k_max};
    detect_stabilization(r, r.jacobian_steps.size() - 1);
  }
  return r;
}

SplitA split_A(const DivisorConfiguration &c, const MultiplicityVector &nu, const MultiplicityVector &nu_prime,
               std::int64_t k) {
  require_k(k);
  require_valid(c, nu, nu_prime);
  require_order(nu_prime, nu, "nu' <= nu");
  SplitA out;
  for (auto &j : admissible_multiindices(c, nu, k)) {
    if (j.pairing(nu) == j.pairing(nu_prime))
      out.a_prime.push_back(std::move(j));
    else
      out.a_double_prime.push_back(std::move(j));
  }
  return out;
}

ComparisonReport lipschitz_verdict(const DivisorConfiguration &c, const MultiplicityVector &nu,
                                   const MultiplicityVector &nu_prime, const CompareOptions &options) {
  check_options(options);
  require_valid(c, nu, nu_prime);
  require_order(nu_prime, nu, "nu' <= nu");

  ComparisonReport r;
  r.mode = ComparisonMode::LipschitzDirection;
  r.nu = nu;
  r.nu_prime = nu_prime;
  r.options = options;
  if (nu == nu_prime) {
    r.verdict = {VerdictKind::AlreadyEqual, 0};
    return r;
  }

  const std::int64_t nu_max = nu.max();
  const std::int64_t nu_prime_max = nu_prime.max();
  std::optional<std::int64_t> witness;
  for (std::int64_t k = 2; k <= options.k_max; ++k) {
    LipschitzStep step;
    step.k = k;
    step.a_sigma_prime_size = admissible_multiindices(c, nu_prime, k).size();
    step.bound_sigma = residual_degree_bound(c.n, k, nu_max);
    step.bound_sigma_prime = residual_degree_bound(c.n, k, nu_prime_max);
    step.residual_degree_sigma = stratify(c, nu, k).residual_beta.degree();

    auto split = split_A(c, nu, nu_prime, k);
    step.a_sigma_size = split.a_prime.size() + split.a_double_prime.size();
    for (auto &j : split.a_prime) {
      const std::int64_t d = stratum_dim(c, nu, j, k);
      step.a_prime.push_back({std::move(j), d, d});
    }
    for (auto &j : split.a_double_prime) {
      const std::int64_t d = stratum_dim(c, nu, j, k);
      const std::int64_t d_prime = c.n * (k + 1) - j.total() - j.pairing(nu_prime);
      const Degree image_dim = Degree::finite(d_prime);
      if (!step.contradiction && degree_at_least(image_dim, step.bound_sigma) &&
          degree_at_least(image_dim, step.bound_sigma_prime)) {
        step.contradiction = true;
        step.witness_j = j;
      }
      step.a_double_prime.push_back({std::move(j), d, d_prime});
    }
    if (step.contradiction && !witness)
      witness = k;
    r.lipschitz_steps.push_back(std::move(step));
  }
  r.verdict = witness ? Verdict{VerdictKind::EqualForced, *witness} : Verdict{VerdictKind::Inconclusive, options.k_max};
  return r;
}

namespace {

json fraction_json(const Fraction &f) { return json{{"num", f.num}, {"den", f.den}}; }

json degree_json(const Degree &d) { return d.is_minus_infinity() ? json(nullptr) : json(d.value()); }

json nu_json(const DivisorConfiguration &c, const MultiplicityVector &nu) {
  json out = json::object();
  for (std::size_t i = 0; i < c.components.size() && i < nu.size(); ++i)
    out[c.components[i]] = nu[i];
  return out;
}

json dims_json(const DivisorConfiguration &c, const std::vector<StratumDims> &list, bool with_sign) {
  json out = json::array();
  for (const auto &d : list) {
    json item;
    item["j"] = multiindex_to_json(c, d.j);
    item["dim_sigma"] = d.dim_sigma;
    item["dim_sigma_prime"] = d.dim_sigma_prime;
    // beta(X_{k,j}(sigma)) - beta(X~_{k,j}(sigma')) is led by the larger image.
    if (with_sign)
      item["term_leading_sign"] = d.dim_sigma_prime > d.dim_sigma ? -1 : 0;
    out.push_back(std::move(item));
  }
  return out;
}

} // namespace

json comparison_to_json(const DivisorConfiguration &c, const ComparisonReport &r) {
  json out;
  out["mode"] = to_string(r.mode);
  out["nu"] = nu_json(c, r.nu);
  out["nu_prime"] = nu_json(c, r.nu_prime);
  out["k_max"] = r.options.k_max;
  json per_k = json::array();
  for (const auto &s : r.jacobian_steps) {
    json item;
    item["k"] = s.k;
    item["A_sigma_size"] = s.a_sigma_size;
    item["A_sigmaprime_size"] = s.a_sigma_prime_size;
    item["P"] = poly_to_json(s.P);
    item["Q"] = poly_to_json(s.Q);
    item["Qprime"] = poly_to_json(s.Qprime);
    item["deg_P"] = degree_json(s.P.degree());
    item["c_k"] = s.c_k ? json(*s.c_k) : json(nullptr);
    item["bound"] = fraction_json(s.bound);
    item["contradiction"] = s.contradiction;
    per_k.push_back(std::move(item));
  }
  for (const auto &s : r.lipschitz_steps) {
    json item;
    item["k"] = s.k;
    item["A_sigma_size"] = s.a_sigma_size;
    item["A_sigmaprime_size"] = s.a_sigma_prime_size;
    item["Aprime"] = dims_json(c, s.a_prime, false);
    item["Adoubleprime"] = dims_json(c, s.a_double_prime, true);
    item["residual_degree_sigma"] = degree_json(s.residual_degree_sigma);
    item["bound_sigma"] = fraction_json(s.bound_sigma);
    item["bound_sigmaprime"] = fraction_json(s.bound_sigma_prime);
    item["contradiction"] = s.contradiction;
    item["witness_j"] = s.witness_j ? multiindex_to_json(c, *s.witness_j) : json(nullptr);
    per_k.push_back(std::move(item));
  }
  out["per_k"] = std::move(per_k);
  if (r.mode == ComparisonMode::JacobianBounded) {
    out["c_stabilized"] = r.c_stabilized;
    out["stable_c"] = r.stable_c ? json(*r.stable_c) : json(nullptr);
    out["stabilization_window"] = r.options.stabilization_window;
  }
  out["verdict"] = to_string(r.verdict.kind);
  out["witness_k"] = r.verdict.kind == VerdictKind::EqualForced ? json(r.verdict.k) : json(nullptr);
  if (r.verdict.kind == VerdictKind::Inconclusive)
    out["max_k_tried"] = r.verdict.k;
  return out;
}

std::string comparison_csv(const ComparisonReport &r) {
  std::ostringstream os;
  if (r.mode == ComparisonMode::JacobianBounded) {
    os << "k,deg_P,bound_num,bound_den,contradiction\n";
    for (const auto &s : r.jacobian_steps)
      os << s.k << "," << s.P.degree().to_string() << "," << s.bound.num << "," << s.bound.den << ","
         << (s.contradiction ? "true" : "false") << "\n";
  } else {
    os << "k,max_image_dim,bound_sigma_num,bound_sigma_den,bound_sigmaprime_num,bound_sigmaprime_den,"
          "contradiction\n";
    for (const auto &s : r.lipschitz_steps) {
      Degree best = Degree::minus_infinity();
      for (const auto &d : s.a_double_prime)
        best = std::max(best, Degree::finite(d.dim_sigma_prime));
      os << s.k << "," << best.to_string() << "," << s.bound_sigma.num << "," << s.bound_sigma.den << ","
         << s.bound_sigma_prime.num << "," << s.bound_sigma_prime.den << "," << (s.contradiction ? "true" : "false")
         << "\n";
    }
  }
  return os.str();
}

} // namespace jetbeta
