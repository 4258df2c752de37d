#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jetbeta/config.hpp"
#include "jetbeta/poly.hpp"

namespace jetbeta {

enum class ComparisonMode { JacobianBounded, LipschitzDirection };

enum class VerdictKind { AlreadyEqual, EqualForced, Inconclusive };

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  /// Witness k for EqualForced, the last k scanned for Inconclusive, 0 otherwise.
  std::int64_t k = 0;

  friend bool operator==(const Verdict &, const Verdict &) = default;
};

std::string to_string(ComparisonMode mode);
std::string to_string(VerdictKind kind);

struct PqqDecomposition {
  Poly P;
  Poly Q;
  Poly Qprime;
};

/// The three sums of the comparison identity P = Q' - Q + beta(Z_k(sigma')) - beta(Z_k(sigma)):
/// P over A_k(sigma) ∩ A_k(sigma'), Q over A_k(sigma) \ A_k(sigma'),
/// Q' over A_k(sigma') \ A_k(sigma). Requires nu <= nu_prime (PRECONDITION_ORDER).
PqqDecomposition pqq_decomposition(const DivisorConfiguration &c, const MultiplicityVector &nu,
                                   const MultiplicityVector &nu_prime, std::int64_t k);

/// min { s_j + <nu,j> : j in A_k(sigma'), <nu' - nu, j> > 0 }, absent when empty.
std::optional<std::int64_t> contact_minimum(const DivisorConfiguration &c, const MultiplicityVector &nu,
                                            const MultiplicityVector &nu_prime, std::int64_t k);

struct JacobianStep {
  std::int64_t k = 0;
  std::size_t a_sigma_size = 0;
  std::size_t a_sigma_prime_size = 0;
  Poly P;
  Poly Q;
  Poly Qprime;
  std::optional<std::int64_t> c_k;
  /// n(k+1) - k/(2 nu'_max)
  Fraction bound;
  bool contradiction = false;
};

struct StratumDims {
  MultiIndex j;
  /// dim X_{k,j}(sigma)
  std::int64_t dim_sigma = 0;
  /// dim of the sigma'-image stratum, dim_sigma + <nu - nu', j>
  std::int64_t dim_sigma_prime = 0;
};

struct LipschitzStep {
  std::int64_t k = 0;
  std::size_t a_sigma_size = 0;
  std::size_t a_sigma_prime_size = 0;
  std::vector<StratumDims> a_prime;
  std::vector<StratumDims> a_double_prime;
  /// n(k+1) - k/(2 nu_max) and n(k+1) - k/(2 nu'_max)
  Fraction bound_sigma;
  Fraction bound_sigma_prime;
  /// deg beta(Z_k(sigma)), the only residual computable from the inputs.
  Degree residual_degree_sigma = Degree::minus_infinity();
  bool contradiction = false;
  std::optional<MultiIndex> witness_j;
};

struct CompareOptions {
  std::int64_t k_max = 12;
  /// Number of consecutive k with nonempty C_k over which c_k must be constant
  /// to count as stabilized.
  std::int64_t stabilization_window = 4;
};

struct ComparisonReport {
  ComparisonMode mode = ComparisonMode::JacobianBounded;
  MultiplicityVector nu;
  MultiplicityVector nu_prime;
  CompareOptions options;
  std::vector<JacobianStep> jacobian_steps;
  std::vector<LipschitzStep> lipschitz_steps;
  Verdict verdict;
  /// Jacobian mode: whether c_k was constant over the trailing window ending
  /// at the witness (or at k_max when inconclusive).
  bool c_stabilized = false;
  std::optional<std::int64_t> stable_c;
};

/// Jacobian-bounded direction, nu <= nu'. Scans k = 2..k_max; a contradiction
/// at k means C_k is nonempty and deg P >= n(k+1) - k/(2 nu'_max), which no
/// other term of the identity can reach.
ComparisonReport thm1_verdict(const DivisorConfiguration &c, const MultiplicityVector &nu,
                              const MultiplicityVector &nu_prime, const CompareOptions &options = {});

struct SplitA {
  std::vector<MultiIndex> a_prime;        // <nu,j> == <nu',j>
  std::vector<MultiIndex> a_double_prime; // <nu,j> >  <nu',j>
};

/// Partition of A_k(sigma) by the pairing. Requires nu' <= nu.
SplitA split_A(const DivisorConfiguration &c, const MultiplicityVector &nu, const MultiplicityVector &nu_prime,
               std::int64_t k);

/// Lipschitz direction, nu' <= nu. Uses only dimensions of the sigma'-image
/// strata over A''_k: a contradiction at k means one of them reaches both
/// residual bounds.
ComparisonReport lipschitz_verdict(const DivisorConfiguration &c, const MultiplicityVector &nu,
                                   const MultiplicityVector &nu_prime, const CompareOptions &options = {});

nlohmann::ordered_json comparison_to_json(const DivisorConfiguration &c, const ComparisonReport &r);
std::string comparison_csv(const ComparisonReport &r);

} // namespace jetbeta
