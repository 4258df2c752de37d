#include "doctest.h"

#include <random>

#include "jetbeta/error.hpp"
#include "jetbeta/mpoly.hpp"
#include "jetbeta/oracle.hpp"
#include "jetbeta/probe_spec.hpp"
#include "jetbeta/series.hpp"

using jetbeta::ArcGerm;
using jetbeta::ErrorCode;
using jetbeta::MPoly;
using jetbeta::MultiIndex;
using jetbeta::MultiplicityVector;
using jetbeta::TruncatedSeries;

namespace {

// Series from integer coefficients, low to high, known through t^precision.
TruncatedSeries S(std::initializer_list<long> coeffs, std::int64_t precision) {
  std::vector<mpq_class> c;
  for (long v : coeffs)
    c.emplace_back(v);
  return TruncatedSeries(std::move(c), precision);
}

ErrorCode code_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const jetbeta::Error &e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

jetbeta::PolyMap map_of(std::vector<std::string> comps) { return jetbeta::parse_polymap(comps, {}); }

MPoly xy(const char *text) { return jetbeta::parse_mpoly(text, {"x", "y"}); }

} // namespace

TEST_CASE("series arithmetic") {
  CHECK(jetbeta::series_compose(S({0, 1}, 6), S({0, 0, 1}, 6)).agrees_with(S({0, 0, 1}, 6)));
  const auto prod = jetbeta::series_mul(S({1, 1}, 5), S({1, -1}, 5));
  CHECK(prod.agrees_with(S({1, 0, -1}, 5)));
  CHECK(prod.precision() == 5);
  CHECK(code_of([] { jetbeta::series_compose(S({0, 1}, 4), S({1, 1}, 4)); }) == ErrorCode::ComposeNonzeroConstant);
  // precision of a result is the smaller one
  CHECK(jetbeta::series_add(S({1}, 3), S({1}, 7)).precision() == 3);
  CHECK(code_of([] { (void)S({1}, 3).coeff(4); }) == ErrorCode::PrecisionExhausted);
  CHECK(code_of([] { (void)TruncatedSeries(5).order(); }) == ErrorCode::PrecisionExhausted);
  CHECK(S({0, 0, 3}, 5).order() == 2);
}

TEST_CASE("series division") {
  // (t^2 + t^3) / t^2 = 1 + t, known two fewer terms
  const auto q = jetbeta::series_divide(S({0, 0, 1, 1}, 6), S({0, 0, 1}, 6));
  CHECK(q.precision() == 4);
  CHECK(q.agrees_with(S({1, 1}, 4)));
  // 1 / (1 - t) = 1 + t + t^2 + ...
  CHECK(jetbeta::series_divide(S({1}, 5), S({1, -1}, 5)).agrees_with(S({1, 1, 1, 1, 1, 1}, 5)));
  CHECK(code_of([] { jetbeta::series_divide(S({0, 1}, 4), TruncatedSeries(4)); }) == ErrorCode::NotInImage);
  CHECK(code_of([] { jetbeta::series_divide(S({1}, 4), S({0, 1}, 4)); }) == ErrorCode::NotInImage);
}

TEST_CASE("rationals") {
  CHECK(jetbeta::parse_rational("6/4") == mpq_class(3, 2));
  CHECK(jetbeta::parse_rational("-4") == -4);
  CHECK(code_of([] { jetbeta::parse_rational("1/0"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { jetbeta::parse_rational("x"); }) == ErrorCode::ParseError);
}

TEST_CASE("series ring laws on random inputs") {
  std::mt19937_64 rng(0x5eed0009);
  std::uniform_int_distribution<int> coef(-9, 9);
  auto rand_series = [&](std::int64_t p) {
    TruncatedSeries s(p);
    for (std::int64_t i = 0; i <= p; ++i) {
      mpq_class q(coef(rng), 1 + std::abs(coef(rng)));
      q.canonicalize();
      s.set_coeff(i, q);
    }
    return s;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = rand_series(8);
    const auto b = rand_series(8);
    const auto c = rand_series(8);
    CHECK((a * b).agrees_with(b * a));
    CHECK(((a * b) * c).agrees_with(a * (b * c)));
    CHECK((a * (b + c)).agrees_with(a * b + a * c));
    // division undoes multiplication when the divisor is a unit
    TruncatedSeries unit = b;
    unit.set_coeff(0, 1);
    CHECK(jetbeta::series_divide(a * unit, unit).agrees_with(a));
  }
}

TEST_CASE("polynomial maps and jacobians") {
  CHECK(jetbeta::jacobian_det(map_of({"x", "x*y"})) == xy("x"));
  CHECK(jetbeta::jacobian_det(jetbeta::parse_polymap({"x", "x*y", "x*z"}, {"x", "y", "z"})) ==
        jetbeta::parse_mpoly("x^2", {"x", "y", "z"}));
  CHECK(jetbeta::jacobian_det(map_of({"x", "y"})) == MPoly::constant(2, 1));
  CHECK(jetbeta::jacobian_det(map_of({"y", "x"})) == MPoly::constant(2, -1));
  CHECK(jetbeta::jacobian_det(map_of({"x + y^2", "3*y - 1/2*x"})) == xy("3 + y"));
  CHECK(code_of([] { jetbeta::parse_mpoly("x + q", {"x", "y"}); }) == ErrorCode::ParseError);
  CHECK(code_of([] { jetbeta::parse_mpoly("x +", {"x", "y"}); }) == ErrorCode::ParseError);
  CHECK(code_of([] { jetbeta::parse_polymap({"x"}, {"x", "y"}); }) == ErrorCode::InvalidArgument);
  CHECK(xy("(x+y)^2") == xy("x^2 + 2*x*y + y^2"));
}

TEST_CASE("order along an arc") {
  const ArcGerm a1{{S({0, 0, 0, 1}, 8), S({1, 1}, 8)}};
  CHECK(jetbeta::ord_along_arc(xy("x"), a1) == 3);
  const ArcGerm a2{{S({0, 0, 1}, 8), S({1}, 8)}};
  CHECK(jetbeta::ord_along_arc(xy("x^2"), a2) == 4);
  const ArcGerm a3{{TruncatedSeries(8), S({0, 1}, 8)}};
  CHECK(code_of([&] { jetbeta::ord_along_arc(xy("x"), a3); }) == ErrorCode::PrecisionExhausted);
  CHECK(code_of([] { jetbeta::make_arc({S({1}, 3), S({1}, 4)}); }) == ErrorCode::InvalidArgument);
  CHECK(jetbeta::default_truncation(6, 2) == 16);
  CHECK(jetbeta::default_truncation(2, 5) == 24);
}

TEST_CASE("multiplicity checks") {
  const auto r2 = jetbeta::blowup_chart(2);
  const auto c1 = jetbeta::multiplicity_check(r2.map, ArcGerm{{S({0, 0, 1}, 8), S({1, 1}, 8)}}, MultiIndex{{2}},
                                              MultiplicityVector{{1}}, r2.component_equations);
  CHECK(c1.passed);
  CHECK(c1.measured == 2);
  CHECK(c1.measured_contact == std::vector<std::int64_t>{2});

  const auto r3 = jetbeta::blowup_chart(3);
  const auto c2 = jetbeta::multiplicity_check(r3.map, ArcGerm{{S({0, 1}, 8), S({1}, 8), S({1}, 8)}},
                                              MultiIndex{{1}}, MultiplicityVector{{2}});
  CHECK(c2.passed);
  CHECK(c2.measured == 2);

  const auto c3 = jetbeta::multiplicity_check(map_of({"x", "y"}), ArcGerm{{S({0, 1}, 8), S({2, 1}, 8)}},
                                              MultiIndex{{}}, MultiplicityVector{{}});
  CHECK(c3.passed);
  CHECK(c3.measured == 0);

  // wrong expectation is reported, not hidden
  const auto bad = jetbeta::multiplicity_check(r2.map, ArcGerm{{S({0, 0, 1}, 8), S({1, 1}, 8)}}, MultiIndex{{3}},
                                               MultiplicityVector{{1}});
  CHECK_FALSE(bad.passed);
  CHECK(bad.measured == 2);
  CHECK(bad.expected == 3);
}

TEST_CASE("chain rule") {
  const auto sigma = map_of({"x", "x*y"});
  const auto c1 = jetbeta::chain_rule_check(sigma, sigma, ArcGerm{{S({0, 1}, 10), S({1, 1}, 10)}},
                                            map_of({"x", "y"}));
  CHECK(c1.passed);
  CHECK(c1.ord_f == 0);

  const auto c2 = jetbeta::chain_rule_check(sigma, map_of({"x", "2*x*y"}), ArcGerm{{S({0, 0, 1}, 10), S({1, -1}, 10)}},
                                            map_of({"x", "2*y"}));
  CHECK(c2.passed);
  CHECK(c2.ord_f == 0);
  CHECK(c2.ord_sigma == c2.ord_sigma_prime);

  const ArcGerm arc{{S({0, 1}, 10), S({1}, 10)}};
  const auto c3 = jetbeta::chain_rule_check(sigma, map_of({"x", "x^3*y"}), arc, map_of({"x", "x^2*y"}));
  CHECK(c3.passed);
  CHECK(c3.f_measured);
  CHECK(c3.ord_sigma_prime == 3);
  CHECK(c3.ord_sigma == 1);
  CHECK(c3.ord_f == 2);
  const auto c3b = jetbeta::chain_rule_check(sigma, map_of({"x", "x^3*y"}), arc);
  CHECK(c3b.passed);
  CHECK(c3b.ord_f == 2);

  // an f that does not relate the two maps is caught
  const auto wrong = jetbeta::chain_rule_check(sigma, map_of({"x", "x^3*y"}), arc, map_of({"x", "y"}));
  CHECK_FALSE(wrong.passed);
}

TEST_CASE("fiber dimension probe") {
  const auto planar = map_of({"x", "x*y"});
  const auto f1 = jetbeta::fiber_dimension_probe(planar, 6, {S({0, 0, 1}, 6), S({0, 0, 1, 1}, 6)}, 1);
  CHECK(f1.passed);
  CHECK(f1.measured == 2);
  CHECK(f1.lift[1].agrees_with(S({1, 1}, 4)));

  const auto f2 = jetbeta::fiber_dimension_probe(planar, 4, {S({0, 1}, 4), S({0, 1}, 4)}, 1);
  CHECK(f2.passed);
  CHECK(f2.measured == 1);

  CHECK(code_of([&] { jetbeta::fiber_dimension_probe(planar, 4, {TruncatedSeries(4), S({0, 1}, 4)}); }) ==
        ErrorCode::NotInImage);
  // x = t^2 forces y*t^2 = t: no lift
  CHECK(code_of([&] { jetbeta::fiber_dimension_probe(planar, 6, {S({0, 0, 1}, 6), S({0, 1}, 6)}); }) ==
        ErrorCode::NotInImage);
  CHECK(code_of([&] { jetbeta::fiber_dimension_probe(map_of({"x*y", "y"}), 4, {S({0, 1}, 4), S({1}, 4)}); }) ==
        ErrorCode::NotTriangular);
  CHECK(code_of([&] { jetbeta::fiber_dimension_probe(map_of({"x + y", "y"}), 4, {S({0, 1}, 4), S({1}, 4)}); }) ==
        ErrorCode::NotTriangular);
  // e = 3 needs k >= 6
  CHECK(code_of([&] { jetbeta::fiber_dimension_probe(planar, 4, {S({0, 0, 0, 1}, 4), S({0, 0, 0, 1}, 4)}); }) ==
        ErrorCode::PreconditionK);
}

TEST_CASE("seeded grids") {
  for (std::int64_t n : {2, 3}) {
    const auto chart = jetbeta::blowup_chart(n);
    const auto m = jetbeta::multiplicity_grid(chart, 5, 50, 11);
    CHECK(m.cases == 250);
    CHECK(m.failures == 0);
    const auto f = jetbeta::fiber_grid(chart, 5, 6, 11);
    CHECK(f.cases == 35);
    CHECK(f.failures == 0);
  }
  // same seed, same arcs
  const auto a = jetbeta::random_contact_arc(2, 3, 12, 99);
  const auto b = jetbeta::random_contact_arc(2, 3, 12, 99);
  CHECK(a.coords[0].agrees_with(b.coords[0]));
  CHECK(a.coords[1].agrees_with(b.coords[1]));
  CHECK(a.coords[0].order() == 3);
  CHECK(a.coords[1].order() == 0);
}

TEST_CASE("probe specifications") {
  const auto ok = jetbeta::run_probe_spec_text(R"J({"seed": 3, "probes": [
    {"kind": "multiplicity", "map": ["x", "x*y"], "nu": {"E1": 1}, "expected_j": {"E1": 2},
     "components": {"E1": "x"}, "arc": ["t^2", "1+t"]},
    {"kind": "chain_rule", "sigma": ["x", "x*y"], "sigma_prime": ["x", "x^3*y"], "f": ["x", "x^2*y"], "arc": ["t", "1"]},
    {"kind": "fiber", "map": ["x", "x*y"], "k": 6, "target": ["t^2", ["0", "0", "1", "1"]], "expected_e": 2}
  ]})J");
  CHECK(ok.all_passed);
  CHECK(ok.report["probes"].size() == 3);

  const auto short_k = jetbeta::run_probe_spec_text(R"J({"probes": [
    {"kind": "multiplicity", "map": ["x", "x*y"], "nu": {"E1": 1}, "expected_j": {"E1": 3}, "K": 2, "arc": ["t^3", "1"]}
  ]})J");
  CHECK_FALSE(short_k.all_passed);
  CHECK(short_k.report["probes"][0]["status"] == "error");
  CHECK(short_k.report["probes"][0]["error"] == "PRECISION_EXHAUSTED");

  CHECK(code_of([] { jetbeta::run_probe_spec_text(R"J({"probes": [{"kind": "nope"}]})J"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { jetbeta::run_probe_spec_text("{"); }) == ErrorCode::ParseError);
}
