#include "doctest.h"

#include <random>

#include "jetbeta/config.hpp"
#include "jetbeta/error.hpp"
#include "jetbeta/strata.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using jetbeta::MultiIndex;
using jetbeta::Poly;

namespace {

std::vector<MultiIndex> ones(std::initializer_list<std::int64_t> js) {
  std::vector<MultiIndex> out;
  for (auto j : js)
    out.push_back(MultiIndex{{j}});
  return out;
}

} // namespace

TEST_CASE("admissible multi-indices") {
  const auto r2 = jetbeta::builtin_config("blowup_point_R2");
  const auto r3 = jetbeta::builtin_config("blowup_point_R3");
  CHECK(jetbeta::admissible_multiindices(r2.config, r2.nu, 4) == ones({1, 2}));
  CHECK(jetbeta::admissible_multiindices(r3.config, r3.nu, 4) == ones({1}));
  CHECK(jetbeta::admissible_multiindices(r2.config, r2.nu, 1).empty());
  CHECK(jetbeta::admissible_multiindices(r3.config, r3.nu, 1).empty());
}

TEST_CASE("stratum beta and dimension") {
  const auto r2 = jetbeta::builtin_config("blowup_point_R2");
  const auto r3 = jetbeta::builtin_config("blowup_point_R3");
  CHECK(jetbeta::stratum_beta(r2.config, r2.nu, MultiIndex{{1}}, 4) == Poly::monomial(8) - Poly::monomial(6));
  CHECK(jetbeta::stratum_beta(r2.config, r2.nu, MultiIndex{{2}}, 4) == Poly::monomial(6) - Poly::monomial(4));
  CHECK(jetbeta::stratum_beta(r3.config, r3.nu, MultiIndex{{1}}, 4) == Poly::monomial(12) - Poly::monomial(9));
  CHECK(jetbeta::stratum_dim(r2.config, r2.nu, MultiIndex{{1}}, 4) == 8);
  CHECK(jetbeta::stratum_dim(r3.config, r3.nu, MultiIndex{{1}}, 4) == 12);
  try {
    // far outside the admissible range the exponent goes negative
    jetbeta::stratum_beta(r2.config, r2.nu, MultiIndex{{5}}, 4);
    FAIL("negative exponent accepted");
  } catch (const jetbeta::Error &e) {
    CHECK(e.code() == jetbeta::ErrorCode::NegativeExponent);
  }
}

TEST_CASE("stratify worked examples") {
  const auto r2 = jetbeta::builtin_config("blowup_point_R2");
  const auto s = jetbeta::stratify(r2.config, r2.nu, 4);
  REQUIRE(s.strata.size() == 2);
  CHECK(s.strata[0].beta == Poly::monomial(8) - Poly::monomial(6));
  CHECK(s.strata[1].beta == Poly::monomial(6) - Poly::monomial(4));
  CHECK(s.residual_beta == Poly::monomial(4));
  CHECK(s.bound_rhs == jetbeta::Fraction::make(8, 1));
  CHECK(s.bound_ok);

  const auto r3 = jetbeta::builtin_config("blowup_point_R3");
  const auto s3 = jetbeta::stratify(r3.config, r3.nu, 8);
  CHECK(s3.residual_beta == Poly::monomial(18));
  CHECK(s3.bound_rhs == jetbeta::Fraction::make(25, 1));
  CHECK(s3.bound_ok);

  const auto s1 = jetbeta::stratify(r2.config, r2.nu, 1);
  CHECK(s1.strata.empty());
  CHECK(s1.residual_beta == Poly::monomial(2));
  CHECK(s1.bound_ok);

  CHECK_THROWS_AS(jetbeta::stratify(r2.config, r2.nu, 0), jetbeta::Error);
  CHECK_THROWS_AS(jetbeta::stratify(r2.config, jetbeta::MultiplicityVector{{0}}, 4), jetbeta::Error);
}

TEST_CASE("blow-up residuals follow the closed form") {
  for (std::int64_t n = 2; n <= 6; ++n) {
    const auto b = jetbeta::blowup_point_config(n);
    for (std::int64_t k = 1; k <= 40; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const auto s = jetbeta::stratify(b.config, b.nu, k);
      CHECK(s.residual_beta == Poly::monomial(static_cast<std::size_t>(oracle::blowup_residual_exponent(n, k))));
      CHECK(s.bound_ok);
    }
  }
}

TEST_CASE("strata match an exhaustive search on random configurations") {
  std::mt19937_64 rng(0x5eed0005);
  std::uniform_int_distribution<int> k_dist(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = gen::random_bundle(rng);
    const std::int64_t k = k_dist(rng);
    CAPTURE(jetbeta::serialize_config(b).dump());
    CAPTURE(k);
    const auto s = jetbeta::stratify(b.config, b.nu, k);

    auto expected = oracle::brute_admissible(b.config, b.nu, k);
    std::vector<MultiIndex> got;
    for (const auto &st : s.strata)
      got.push_back(st.j);
    std::vector<MultiIndex> got_sorted = got;
    std::sort(got_sorted.begin(), got_sorted.end());
    std::sort(expected.begin(), expected.end());
    CHECK(got_sorted == expected);

    for (const auto &st : s.strata) {
      CHECK(st.dim == b.config.n * (k + 1) - st.j.total() - st.j.pairing(b.nu));
      CHECK(st.beta.degree().value() == st.dim);
      CHECK(st.beta.leading() > 0);
    }
    for (long x : {-2L, 3L, 7L})
      CHECK(s.residual_beta.eval(x) == oracle::residual_at(b.config, b.nu, k, x));

    // the realizability check agrees with a direct comparison
    const bool expect_ok =
        s.residual_beta.is_zero() ||
        (s.residual_beta.leading() > 0 &&
         2 * b.nu.max() * s.residual_beta.degree().value() < 2 * b.nu.max() * b.config.n * (k + 1) - k);
    CHECK(s.bound_ok == expect_ok);
  }
}

TEST_CASE("degree bound") {
  CHECK(jetbeta::residual_degree_bound(2, 8, 2) == jetbeta::Fraction::make(16, 1));
  CHECK(jetbeta::residual_degree_bound(2, 7, 2) == jetbeta::Fraction::make(57, 4));
  CHECK(jetbeta::residual_degree_bound(3, 5, 2) == jetbeta::Fraction::make(67, 4));
  std::mt19937_64 rng(0x5eed0006);
  std::uniform_int_distribution<std::int64_t> small(1, 50);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = small(rng);
    const std::int64_t k = small(rng);
    const std::int64_t nu = small(rng);
    const auto f = jetbeta::residual_degree_bound(n, k, nu);
    // f * 2nu == 2nu n (k+1) - k, cross-multiplied
    CHECK(f.num * 2 * nu == (2 * nu * n * (k + 1) - k) * f.den);
    CHECK(f.den > 0);
  }
}

TEST_CASE("csv and json shape") {
  const auto r2 = jetbeta::builtin_config("blowup_point_R2");
  const auto s = jetbeta::stratify(r2.config, r2.nu, 4);
  CHECK(jetbeta::stratification_csv_header() == "k,residual_degree,bound_num,bound_den,bound_ok");
  CHECK(jetbeta::stratification_csv_row(s) == "4,4,8,1,true");
  const auto doc = jetbeta::stratification_to_json(r2.config, s);
  CHECK(doc["residual_beta"] == jetbeta::poly_to_json(Poly::monomial(4)));
  CHECK(doc["strata"].size() == 2);
  CHECK(jetbeta::multiindex_to_json(r2.config, MultiIndex{{3}}).dump() == R"J({"E1":3})J");
}
