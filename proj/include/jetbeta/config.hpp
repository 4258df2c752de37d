#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetbeta/error.hpp"
#include "jetbeta/poly.hpp"

namespace jetbeta {

/// Open stratum E°_J of a simple normal crossing divisor.
struct Stratum {
  /// Indices into DivisorConfiguration::components, ascending.
  std::vector<std::size_t> support;
  /// beta(E°_J). Zero means the stratum is empty.
  Poly beta;
  /// Whether the modification maps E_J to the origin.
  bool maps_to_origin = false;

  friend bool operator==(const Stratum &, const Stratum &) = default;
};

struct DivisorConfiguration {
  std::int64_t n = 0;
  std::vector<std::string> components;
  std::vector<Stratum> strata;

  std::optional<std::size_t> component_index(std::string_view id) const;
  /// The listed stratum with exactly this support, if any.
  const Stratum *find_stratum(const std::vector<std::size_t> &support) const;

  friend bool operator==(const DivisorConfiguration &, const DivisorConfiguration &) = default;
};

/// Jacobian multiplicities nu_i, aligned with DivisorConfiguration::components.
struct MultiplicityVector {
  std::vector<std::int64_t> values;

  std::int64_t max() const;
  std::int64_t operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }
  /// Componentwise a_i <= b_i. Sizes must agree.
  bool dominated_by(const MultiplicityVector &other) const;

  friend bool operator==(const MultiplicityVector &, const MultiplicityVector &) = default;
};

/// Contact orders j_i of an arc with each component, aligned with components.
struct MultiIndex {
  std::vector<std::int64_t> values;

  std::vector<std::size_t> support() const;
  /// s_j = sum of j_i
  std::int64_t total() const;
  /// <nu, j> = sum of nu_i j_i
  std::int64_t pairing(const MultiplicityVector &nu) const;

  friend bool operator==(const MultiIndex &, const MultiIndex &) = default;
  friend auto operator<=>(const MultiIndex &, const MultiIndex &) = default;
};

struct Violation {
  std::string code;
  std::string message;
};

/// Structural checks on the divisor data. Never throws.
std::vector<Violation> validate_config(const DivisorConfiguration &c);
/// Checks nu against the configuration: one positive value per component.
std::vector<Violation> validate_multiplicities(const DivisorConfiguration &c,
                                               const MultiplicityVector &nu,
                                               std::string_view label = "nu");

/// Thrown by load_config and friends when the data parses but is invalid.
class ValidationFailure : public Error {
public:
  explicit ValidationFailure(std::vector<Violation> violations);
  const std::vector<Violation> &violations() const noexcept { return violations_; }

private:
  std::vector<Violation> violations_;
};

/// A configuration together with its multiplicities, as stored in a file.
struct ConfigBundle {
  DivisorConfiguration config;
  MultiplicityVector nu;
  std::optional<MultiplicityVector> nu_prime;

  friend bool operator==(const ConfigBundle &, const ConfigBundle &) = default;
};

/// blowup_point_R2, blowup_point_R3, blowup_point_R<n> or blowup_point_Rn(<n>).
/// Throws UNKNOWN_BUILTIN, or INVALID_ARGUMENT for n < 2.
ConfigBundle builtin_config(std::string_view name);
ConfigBundle blowup_point_config(std::int64_t n);
std::vector<std::string> builtin_config_names();

/// Parses the JSON schema without semantic validation. Structural problems
/// throw PARSE_ERROR naming the offending field.
ConfigBundle parse_config(const nlohmann::ordered_json &doc);
/// Parses JSON text; syntax errors report the line number.
ConfigBundle parse_config_text(std::string_view text);
/// All violations of the bundle, including those of nu and nu_prime.
std::vector<Violation> validate_bundle(const ConfigBundle &bundle);
/// Read, parse and validate. Throws IO_ERROR, PARSE_ERROR or ValidationFailure.
ConfigBundle load_config(const std::filesystem::path &path);

nlohmann::ordered_json serialize_config(const ConfigBundle &bundle);

/// Parses "E1=2,E2=1" against the configuration's component ids.
MultiplicityVector parse_multiplicity_assignment(const DivisorConfiguration &c, std::string_view text);

std::string support_label(const DivisorConfiguration &c, const std::vector<std::size_t> &support);

} // namespace jetbeta
