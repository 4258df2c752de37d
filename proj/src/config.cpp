#include "jetbeta/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "jetbeta/beta.hpp"

namespace jetbeta {

using json = nlohmann::ordered_json;

std::optional<std::size_t> DivisorConfiguration::component_index(std::string_view id) const {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i] == id)
      return i;
  return std::nullopt;
}

const Stratum *DivisorConfiguration::find_stratum(const std::vector<std::size_t> &support) const {
  for (const auto &s : strata)
    if (s.support == support)
      return &s;
  return nullptr;
}

std::int64_t MultiplicityVector::max() const {
  if (values.empty())
    throw Error(ErrorCode::InvalidArgument, "nu_max of an empty multiplicity vector");
  return *std::max_element(values.begin(), values.end());
}

bool MultiplicityVector::dominated_by(const MultiplicityVector &other) const {
  if (values.size() != other.values.size())
    throw Error(ErrorCode::InvalidArgument, "multiplicity vectors of different length");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] > other.values[i])
      return false;
  return true;
}

std::vector<std::size_t> MultiIndex::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] != 0)
      out.push_back(i);
  return out;
}

std::int64_t MultiIndex::total() const {
  std::int64_t s = 0;
  for (auto v : values)
    s += v;
  return s;
}

std::int64_t MultiIndex::pairing(const MultiplicityVector &nu) const {
  if (nu.size() != values.size())
    throw Error(ErrorCode::InvalidArgument, "multi-index and multiplicity vector differ in length");
  std::int64_t p = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    p += nu[i] * values[i];
  return p;
}

std::string support_label(const DivisorConfiguration &c, const std::vector<std::size_t> &support) {
  std::string out = "{";
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i > 0)
      out += ",";
    out += support[i] < c.components.size() ? c.components[support[i]] : "#" + std::to_string(support[i]);
  }
  return out + "}";
}

std::vector<Violation> validate_config(const DivisorConfiguration &c) {
  std::vector<Violation> out;
  auto add = [&out](std::string code, std::string message) {
    out.push_back({std::move(code), std::move(message)});
  };

  if (c.n < 1)
    add("N_NOT_POSITIVE", "ambient dimension n must be positive, got " + std::to_string(c.n));
  if (c.components.empty())
    add("NO_COMPONENTS", "the divisor has no components");
  {
    std::set<std::string> seen;
    for (const auto &id : c.components) {
      if (id.empty())
        add("EMPTY_COMPONENT_ID", "component identifiers must be nonempty");
      if (!seen.insert(id).second)
        add("DUPLICATE_COMPONENT", "component id '" + id + "' listed twice");
    }
  }

  std::vector<bool> well_formed(c.strata.size(), true);
  for (std::size_t s = 0; s < c.strata.size(); ++s) {
    const Stratum &st = c.strata[s];
    const std::string where = "strata[" + std::to_string(s) + "]";
    if (st.support.empty()) {
      add("EMPTY_J", where + ": J must be nonempty");
      well_formed[s] = false;
      continue;
    }
    for (auto idx : st.support) {
      if (idx >= c.components.size()) {
        add("UNKNOWN_COMPONENT", where + ": J refers to component #" + std::to_string(idx));
        well_formed[s] = false;
      }
    }
    if (!std::is_sorted(st.support.begin(), st.support.end()) ||
        std::adjacent_find(st.support.begin(), st.support.end()) != st.support.end()) {
      add("MALFORMED_J", where + ": J must list distinct components in component order");
      well_formed[s] = false;
    }
    if (!well_formed[s] || st.beta.is_zero())
      continue;
    const std::int64_t expected = c.n - static_cast<std::int64_t>(st.support.size());
    const Degree deg = st.beta.degree();
    if (deg != Degree::finite(expected))
      add("DEGREE_MISMATCH", where + " " + support_label(c, st.support) + ": beta has degree " +
                                 deg.to_string() + ", expected n - |J| = " + std::to_string(expected));
    if (st.beta.leading() <= 0)
      add("NONPOSITIVE_LEADING", where + " " + support_label(c, st.support) +
                                     ": leading coefficient of beta must be positive");
  }

  for (std::size_t a = 0; a < c.strata.size(); ++a) {
    if (!well_formed[a])
      continue;
    for (std::size_t b = a + 1; b < c.strata.size(); ++b)
      if (well_formed[b] && c.strata[a].support == c.strata[b].support)
        add("DUPLICATE_STRATUM", "strata[" + std::to_string(a) + "] and strata[" + std::to_string(b) +
                                     "] share J = " + support_label(c, c.strata[a].support));
  }

  // E_J' is contained in E_J when J is a subset of J', so it maps to the origin too.
  for (std::size_t a = 0; a < c.strata.size(); ++a) {
    const Stratum &small = c.strata[a];
    if (!well_formed[a] || small.beta.is_zero() || !small.maps_to_origin)
      continue;
    for (std::size_t b = 0; b < c.strata.size(); ++b) {
      const Stratum &big = c.strata[b];
      if (a == b || !well_formed[b] || big.beta.is_zero() || big.maps_to_origin)
        continue;
      if (std::includes(big.support.begin(), big.support.end(), small.support.begin(), small.support.end()))
        add("ORIGIN_MONOTONICITY", "J = " + support_label(c, small.support) + " maps to the origin but J' = " +
                                       support_label(c, big.support) + " does not");
    }
  }

  if (std::none_of(c.strata.begin(), c.strata.end(), [](const Stratum &s) { return s.maps_to_origin; }))
    add("NO_ORIGIN_STRATUM", "no stratum maps to the origin; the exceptional fibre would be empty");
  return out;
}

std::vector<Violation> validate_multiplicities(const DivisorConfiguration &c, const MultiplicityVector &nu,
                                               std::string_view label) {
  std::vector<Violation> out;
  if (nu.size() != c.components.size()) {
    out.push_back({"NU_SIZE_MISMATCH", std::string(label) + " has " + std::to_string(nu.size()) +
                                           " entries for " + std::to_string(c.components.size()) +
                                           " components"});
    return out;
  }
  for (std::size_t i = 0; i < nu.size(); ++i)
    if (nu[i] < 1)
      out.push_back({"NU_NOT_POSITIVE", std::string(label) + "[" + c.components[i] +
                                            "] = " + std::to_string(nu[i]) + " must be at least 1"});
  return out;
}

namespace {

std::string describe(const std::vector<Violation> &violations) {
  std::ostringstream os;
  os << violations.size() << " violation(s)";
  for (const auto &v : violations)
    os << "; " << v.code << ": " << v.message;
  return os.str();
}

} // namespace

ValidationFailure::ValidationFailure(std::vector<Violation> violations)
    : Error(ErrorCode::ValidationError, describe(violations)), violations_(std::move(violations)) {}

ConfigBundle blowup_point_config(std::int64_t n) {
  if (n < 2)
    throw Error(ErrorCode::InvalidArgument,
                "blowup_point_Rn needs n >= 2; a point blow-up of a line has no exceptional divisor");
  ConfigBundle b;
  b.config.n = n;
  b.config.components = {"E1"};
  // The exceptional divisor of a point blow-up of R^n is RP^{n-1}.
  b.config.strata.push_back(
      Stratum{{0}, catalog_beta(SetExpr::proj_space(static_cast<std::uint32_t>(n - 1))), true});
  b.nu.values = {n - 1};
  return b;
}

ConfigBundle builtin_config(std::string_view name) {
  constexpr std::string_view prefix = "blowup_point_R";
  if (name.substr(0, prefix.size()) == prefix) {
    std::string_view rest = name.substr(prefix.size());
    if (rest.size() > 3 && rest.substr(0, 2) == "n(" && rest.back() == ')')
      rest = rest.substr(2, rest.size() - 3);
    if (!rest.empty() && rest.size() <= 4 &&
        std::all_of(rest.begin(), rest.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      return blowup_point_config(std::stoll(std::string(rest)));
  }
  throw Error(ErrorCode::UnknownBuiltin, "no builtin configuration named '" + std::string(name) + "'");
}

std::vector<std::string> builtin_config_names() {
  return {"blowup_point_R2", "blowup_point_R3", "blowup_point_Rn(n)"};
}

namespace {

[[noreturn]] void parse_fail(const std::string &field, const std::string &what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

std::int64_t require_integer(const json &j, const std::string &field) {
  if (!j.is_number_integer())
    parse_fail(field, "expected an integer");
  return j.get<std::int64_t>();
}

MultiplicityVector parse_nu_object(const json &j, const DivisorConfiguration &c, const std::string &field) {
  if (!j.is_object())
    parse_fail(field, "expected an object mapping component ids to integers");
  MultiplicityVector nu;
  nu.values.assign(c.components.size(), 0);
  std::vector<bool> seen(c.components.size(), false);
  for (const auto &[key, value] : j.items()) {
    auto idx = c.component_index(key);
    if (!idx)
      parse_fail(field, "unknown component '" + key + "'");
    nu.values[*idx] = require_integer(value, field + "." + key);
    seen[*idx] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      parse_fail(field, "missing component '" + c.components[i] + "'");
  return nu;
}

} // namespace

ConfigBundle parse_config(const json &doc) {
  if (!doc.is_object())
    parse_fail("<root>", "expected a JSON object");
  for (const auto &[key, value] : doc.items()) {
    (void)value;
    if (key != "n" && key != "components" && key != "strata" && key != "nu_prime")
      parse_fail(key, "unknown field");
  }
  ConfigBundle b;
  if (!doc.contains("n"))
    parse_fail("n", "missing");
  b.config.n = require_integer(doc["n"], "n");

  if (!doc.contains("components") || !doc["components"].is_array())
    parse_fail("components", "expected an array");
  const json &comps = doc["components"];
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string field = "components[" + std::to_string(i) + "]";
    const json &item = comps[i];
    if (!item.is_object() || !item.contains("id") || !item["id"].is_string())
      parse_fail(field, "expected {\"id\": string, \"nu\": integer}");
    if (!item.contains("nu"))
      parse_fail(field + ".nu", "missing");
    b.config.components.push_back(item["id"].get<std::string>());
    b.nu.values.push_back(require_integer(item["nu"], field + ".nu"));
  }

  if (!doc.contains("strata") || !doc["strata"].is_array())
    parse_fail("strata", "expected an array");
  const json &strata = doc["strata"];
  for (std::size_t s = 0; s < strata.size(); ++s) {
    const std::string field = "strata[" + std::to_string(s) + "]";
    const json &item = strata[s];
    if (!item.is_object())
      parse_fail(field, "expected an object");
    Stratum st;
    if (!item.contains("J") || !item["J"].is_array())
      parse_fail(field + ".J", "expected an array of component ids");
    for (const auto &id : item["J"]) {
      if (!id.is_string())
        parse_fail(field + ".J", "component ids must be strings");
      auto idx = b.config.component_index(id.get<std::string>());
      if (!idx)
        parse_fail(field + ".J", "unknown component '" + id.get<std::string>() + "'");
      st.support.push_back(*idx);
    }
    std::sort(st.support.begin(), st.support.end());
    if (!item.contains("beta"))
      parse_fail(field + ".beta", "missing");
    const json &beta = item["beta"];
    try {
      st.beta = beta.is_string() ? beta_eval(parse_set_expr(beta.get<std::string>())) : poly_from_json(beta);
    } catch (const Error &e) {
      parse_fail(field + ".beta", e.what());
    }
    if (!item.contains("origin") || !item["origin"].is_boolean())
      parse_fail(field + ".origin", "expected a boolean");
    st.maps_to_origin = item["origin"].get<bool>();
    b.config.strata.push_back(std::move(st));
  }

  if (doc.contains("nu_prime"))
    b.nu_prime = parse_nu_object(doc["nu_prime"], b.config, "nu_prime");
  return b;
}

ConfigBundle parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n');
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + e.what());
  }
  return parse_config(doc);
}

std::vector<Violation> validate_bundle(const ConfigBundle &bundle) {
  auto out = validate_config(bundle.config);
  auto nu = validate_multiplicities(bundle.config, bundle.nu, "nu");
  out.insert(out.end(), nu.begin(), nu.end());
  if (bundle.nu_prime) {
    auto np = validate_multiplicities(bundle.config, *bundle.nu_prime, "nu_prime");
    out.insert(out.end(), np.begin(), np.end());
  }
  return out;
}

ConfigBundle load_config(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad())
    throw Error(ErrorCode::IoError, "failed reading " + path.string());
  ConfigBundle b;
  try {
    b = parse_config_text(buf.str());
  } catch (const Error &e) {
    if (e.code() == ErrorCode::ParseError)
      throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    throw;
  }
  if (auto violations = validate_bundle(b); !violations.empty())
    throw ValidationFailure(std::move(violations));
  return b;
}

json serialize_config(const ConfigBundle &bundle) {
  const auto &c = bundle.config;
  json doc;
  doc["n"] = c.n;
  json comps = json::array();
  for (std::size_t i = 0; i < c.components.size(); ++i) {
    json item;
    item["id"] = c.components[i];
    item["nu"] = i < bundle.nu.size() ? bundle.nu[i] : 0;
    comps.push_back(std::move(item));
  }
  doc["components"] = std::move(comps);
  json strata = json::array();
  for (const auto &st : c.strata) {
    json item;
    json ids = json::array();
    for (auto idx : st.support)
      ids.push_back(c.components.at(idx));
    item["J"] = std::move(ids);
    item["beta"] = poly_to_json(st.beta);
    item["origin"] = st.maps_to_origin;
    strata.push_back(std::move(item));
  }
  doc["strata"] = std::move(strata);
  if (bundle.nu_prime) {
    json np = json::object();
    for (std::size_t i = 0; i < c.components.size(); ++i)
      np[c.components[i]] = (*bundle.nu_prime)[i];
    doc["nu_prime"] = std::move(np);
  }
  return doc;
}

MultiplicityVector parse_multiplicity_assignment(const DivisorConfiguration &c, std::string_view text) {
  MultiplicityVector nu;
  nu.values.assign(c.components.size(), 0);
  std::vector<bool> seen(c.components.size(), false);
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view item = text.substr(start, end - start);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "expected ID=VALUE in '" + std::string(item) + "'");
    const std::string id(item.substr(0, eq));
    const std::string value(item.substr(eq + 1));
    auto idx = c.component_index(id);
    if (!idx)
      throw Error(ErrorCode::ParseError, "unknown component '" + id + "'");
    if (value.empty() || !std::all_of(value.begin(), value.end(), [](char ch) {
          return (ch >= '0' && ch <= '9') || ch == '-';
        }))
      throw Error(ErrorCode::ParseError, "multiplicity for '" + id + "' is not an integer");
    try {
      nu.values[*idx] = std::stoll(value);
    } catch (const std::exception &) {
      throw Error(ErrorCode::ParseError, "multiplicity for '" + id + "' is not an integer");
    }
    seen[*idx] = true;
    start = end + 1;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw Error(ErrorCode::ParseError, "no multiplicity given for component '" + c.components[i] + "'");
  return nu;
}

} // namespace jetbeta
