#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "jetbeta/config.hpp"
#include "jetbeta/error.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using jetbeta::ConfigBundle;
using jetbeta::Poly;
using json = nlohmann::ordered_json;

namespace {

bool has_code(const std::vector<jetbeta::Violation> &v, const std::string &code) {
  return std::any_of(v.begin(), v.end(), [&](const auto &x) { return x.code == code; });
}

std::filesystem::path write_temp(const std::string &name, const std::string &text) {
  const auto path = std::filesystem::temp_directory_path() / ("jetbeta_test_" + name);
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

jetbeta::ErrorCode load_error(const std::filesystem::path &path) {
  try {
    jetbeta::load_config(path);
  } catch (const jetbeta::Error &e) {
    return e.code();
  }
  FAIL("load_config accepted the file");
  return jetbeta::ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("builtins") {
  const auto r2 = jetbeta::builtin_config("blowup_point_R2");
  CHECK(r2.config.n == 2);
  CHECK(r2.nu.values == std::vector<std::int64_t>{1});
  REQUIRE(r2.config.strata.size() == 1);
  CHECK(r2.config.strata[0].beta == Poly{1, 1});
  CHECK(r2.config.strata[0].maps_to_origin);
  CHECK(jetbeta::validate_bundle(r2).empty());

  const auto r3 = jetbeta::builtin_config("blowup_point_R3");
  CHECK(r3.config.n == 3);
  CHECK(r3.nu.values == std::vector<std::int64_t>{2});
  CHECK(r3.config.strata[0].beta == Poly{1, 1, 1});

  CHECK(jetbeta::builtin_config("blowup_point_Rn(4)") == jetbeta::blowup_point_config(4));
  CHECK(jetbeta::blowup_point_config(5).nu.values == std::vector<std::int64_t>{4});

  for (const char *name : {"blowup_point_Rn(1)", "blowup_point_R1", "blowup_point_Rn(0)"}) {
    CAPTURE(name);
    CHECK_THROWS_AS(jetbeta::builtin_config(name), jetbeta::Error);
  }
  try {
    jetbeta::builtin_config("no_such_thing");
    FAIL("unknown builtin accepted");
  } catch (const jetbeta::Error &e) {
    CHECK(e.code() == jetbeta::ErrorCode::UnknownBuiltin);
  }
  for (auto name : jetbeta::builtin_config_names()) {
    // the family entry is a template; instantiate it
    if (const auto pos = name.find("(n)"); pos != std::string::npos)
      name.replace(pos, 3, "(5)");
    CHECK(jetbeta::validate_bundle(jetbeta::builtin_config(name)).empty());
  }
}

TEST_CASE("validation catches malformed configurations") {
  ConfigBundle b = jetbeta::builtin_config("blowup_point_R2");

  SUBCASE("degree of beta must be n - |J|") {
    b.config.strata[0].beta = Poly{1, 0, 1};
    CHECK(has_code(jetbeta::validate_config(b.config), "DEGREE_MISMATCH"));
  }
  SUBCASE("leading coefficient must be positive") {
    b.config.strata[0].beta = Poly{1, -1};
    CHECK(has_code(jetbeta::validate_config(b.config), "NONPOSITIVE_LEADING"));
  }
  SUBCASE("origin flag is monotone under inclusion") {
    b.config.components.push_back("E2");
    b.nu.values.push_back(1);
    b.config.strata.push_back({{1}, Poly{0, 1}, false});
    b.config.strata.push_back({{0, 1}, Poly{1}, false});
    CHECK(has_code(jetbeta::validate_config(b.config), "ORIGIN_MONOTONICITY"));
    b.config.strata.back().maps_to_origin = true;
    CHECK(jetbeta::validate_config(b.config).empty());
  }
  SUBCASE("duplicate strata") {
    b.config.strata.push_back(b.config.strata[0]);
    CHECK(has_code(jetbeta::validate_config(b.config), "DUPLICATE_STRATUM"));
  }
  SUBCASE("multiplicities are positive and sized") {
    CHECK(has_code(jetbeta::validate_multiplicities(b.config, jetbeta::MultiplicityVector{{0}}), "NU_NOT_POSITIVE"));
    CHECK(has_code(jetbeta::validate_multiplicities(b.config, jetbeta::MultiplicityVector{{1, 1}}),
                   "NU_SIZE_MISMATCH"));
  }
  SUBCASE("something must map to the origin") {
    b.config.strata[0].maps_to_origin = false;
    CHECK(has_code(jetbeta::validate_config(b.config), "NO_ORIGIN_STRATUM"));
  }
  SUBCASE("n and components") {
    b.config.n = 0;
    CHECK(has_code(jetbeta::validate_config(b.config), "N_NOT_POSITIVE"));
    b.config.components.push_back("E1");
    CHECK(has_code(jetbeta::validate_config(b.config), "DUPLICATE_COMPONENT"));
  }
}

TEST_CASE("loading files") {
  const std::string good = R"J({
    "n": 2,
    "components": [{"id": "E1", "nu": 1}],
    "strata": [{"J": ["E1"], "beta": "RP(1)", "origin": true}]
  })J";
  CHECK(jetbeta::load_config(write_temp("good.json", good)) == jetbeta::builtin_config("blowup_point_R2"));

  const std::string coeffs = R"J({"n": 2, "components": [{"id": "E1", "nu": 1}],
    "strata": [{"J": ["E1"], "beta": ["1", "1"], "origin": true}]})J";
  CHECK(jetbeta::load_config(write_temp("coeffs.json", coeffs)) == jetbeta::builtin_config("blowup_point_R2"));

  const std::string zero_nu = R"J({"n": 2, "components": [{"id": "E1", "nu": 0}],
    "strata": [{"J": ["E1"], "beta": "RP(1)", "origin": true}]})J";
  CHECK(load_error(write_temp("zero_nu.json", zero_nu)) == jetbeta::ErrorCode::ValidationError);

  const std::string dup = R"J({"n": 2, "components": [{"id": "E1", "nu": 1}],
    "strata": [{"J": ["E1"], "beta": "RP(1)", "origin": true},
               {"J": ["E1"], "beta": "A(1)", "origin": true}]})J";
  CHECK(load_error(write_temp("dup.json", dup)) == jetbeta::ErrorCode::ValidationError);
  try {
    jetbeta::load_config(write_temp("dup.json", dup));
  } catch (const jetbeta::ValidationFailure &v) {
    CHECK(has_code(v.violations(), "DUPLICATE_STRATUM"));
  }

  CHECK(load_error(write_temp("syntax.json", "{\n  \"n\": 2,\n  oops\n}")) == jetbeta::ErrorCode::ParseError);
  try {
    jetbeta::load_config(write_temp("syntax.json", "{\n  \"n\": 2,\n  oops\n}"));
  } catch (const jetbeta::Error &e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(load_error(write_temp("unknown.json", R"J({"n": 2, "components": [], "strata": [], "extra": 1})J")) ==
        jetbeta::ErrorCode::ParseError);
  CHECK(load_error(std::filesystem::temp_directory_path() / "jetbeta_test_missing_file.json") ==
        jetbeta::ErrorCode::IoError);
}

TEST_CASE("multiplicity assignments") {
  const auto b = jetbeta::parse_config_text(R"J({"n": 3, "components": [{"id": "E1", "nu": 1}, {"id": "E2", "nu": 2}],
    "strata": [{"J": ["E1"], "beta": "A(2)", "origin": true}, {"J": ["E2"], "beta": "A(2)", "origin": true}]})J");
  CHECK(jetbeta::parse_multiplicity_assignment(b.config, "E2=5,E1=3").values == std::vector<std::int64_t>{3, 5});
  CHECK_THROWS_AS(jetbeta::parse_multiplicity_assignment(b.config, "E3=1"), jetbeta::Error);
  CHECK_THROWS_AS(jetbeta::parse_multiplicity_assignment(b.config, "E1"), jetbeta::Error);
  CHECK_THROWS_AS(jetbeta::parse_multiplicity_assignment(b.config, "E1=x"), jetbeta::Error);
}

TEST_CASE("multi-index helpers") {
  const jetbeta::MultiIndex j{{2, 0, 3}};
  CHECK(j.support() == std::vector<std::size_t>{0, 2});
  CHECK(j.total() == 5);
  CHECK(j.pairing(jetbeta::MultiplicityVector{{1, 7, 2}}) == 8);
  CHECK(jetbeta::MultiplicityVector{{1, 2}}.dominated_by(jetbeta::MultiplicityVector{{1, 3}}));
  CHECK_FALSE(jetbeta::MultiplicityVector{{2, 2}}.dominated_by(jetbeta::MultiplicityVector{{1, 3}}));
}

TEST_CASE("round trip through json on random configurations") {
  std::mt19937_64 rng(0x5eed0004);
  for (int trial = 0; trial < 250; ++trial) {
    const ConfigBundle b = gen::random_bundle(rng);
    REQUIRE(jetbeta::validate_bundle(b).empty());
    const json doc = jetbeta::serialize_config(b);
    CAPTURE(doc.dump());
    const ConfigBundle back = jetbeta::parse_config_text(doc.dump());
    CHECK(back == b);
    CHECK(jetbeta::serialize_config(back).dump() == doc.dump());

    // s_j <= <nu, j> for every j since all multiplicities are at least one
    std::uniform_int_distribution<int> v(0, 5);
    jetbeta::MultiIndex j;
    for (std::size_t i = 0; i < b.nu.size(); ++i)
      j.values.push_back(v(rng));
    CHECK(j.total() <= j.pairing(b.nu));
  }
}
