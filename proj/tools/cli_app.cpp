#include "cli_app.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "jetbeta/beta.hpp"
#include "jetbeta/compare.hpp"
#include "jetbeta/config.hpp"
#include "jetbeta/error.hpp"
#include "jetbeta/probe_spec.hpp"
#include "jetbeta/strata.hpp"

namespace jetbeta::cli {

using json = nlohmann::ordered_json;

namespace {

struct GlobalFlags {
  bool json_output = false;
  bool quiet = false;
  std::string csv_path;
};

struct SourceFlags {
  std::string builtin;
  std::string file;
  std::string nu; // optional override of the configuration's multiplicities
};

int exit_code_for(ErrorCode code) {
  switch (code) {
  case ErrorCode::IoError:
  case ErrorCode::ParseError:
  case ErrorCode::ValidationError:
  case ErrorCode::UnknownBuiltin:
  case ErrorCode::InvalidArgument:
  case ErrorCode::PreconditionOrder:
    return kExitInvalidInput;
  default:
    return kExitInconsistency;
  }
}

// Reports carry SOURCE_DATE_EPOCH when set so reruns stay byte-identical.
json timestamp() {
  const char *epoch = std::getenv("SOURCE_DATE_EPOCH");
  if (epoch == nullptr || *epoch == '\0')
    return nullptr;
  char *end = nullptr;
  const long long seconds = std::strtoll(epoch, &end, 10);
  if (end == epoch || *end != '\0')
    return nullptr;
  const std::time_t t = static_cast<std::time_t>(seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

json manifest(const std::string &subcommand, json source, json parameters) {
  json m;
  m["subcommand"] = subcommand;
  m["source"] = std::move(source);
  m["parameters"] = std::move(parameters);
  m["tool_version"] = kToolVersion;
  m["timestamp"] = timestamp();
  return m;
}

json source_json(const SourceFlags &src) {
  json out = src.builtin.empty() ? json{{"file", src.file}} : json{{"builtin", src.builtin}};
  if (!src.nu.empty())
    out["nu"] = src.nu;
  return out;
}

ConfigBundle resolve_source(const SourceFlags &src) {
  if (src.builtin.empty() == src.file.empty())
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --builtin or --file");
  ConfigBundle bundle = src.builtin.empty() ? load_config(src.file) : builtin_config(src.builtin);
  if (!src.nu.empty()) {
    bundle.nu = parse_multiplicity_assignment(bundle.config, src.nu);
    if (auto violations = validate_multiplicities(bundle.config, bundle.nu); !violations.empty())
      throw ValidationFailure(std::move(violations));
  }
  return bundle;
}

void write_csv(const std::string &path, const std::string &text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os)
    throw Error(ErrorCode::IoError, "cannot write " + path);
  os << text;
  if (!os)
    throw Error(ErrorCode::IoError, "failed writing " + path);
}

void add_source_options(CLI::App *cmd, SourceFlags &src) {
  auto *b = cmd->add_option("--builtin", src.builtin, "Builtin configuration name");
  auto *f = cmd->add_option("--file", src.file, "Configuration file (JSON)");
  b->excludes(f);
}

std::string nu_label(const DivisorConfiguration &c, const MultiplicityVector &nu) {
  std::string out;
  for (std::size_t i = 0; i < nu.size(); ++i)
    out += (i ? "," : "") + c.components[i] + "=" + std::to_string(nu[i]);
  return out;
}

std::string j_label(const DivisorConfiguration &c, const MultiIndex &j) {
  return multiindex_to_json(c, j).dump();
}

std::pair<std::int64_t, std::int64_t> parse_k_range(const std::string &text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorCode::InvalidArgument, "--k-range expects FIRST:LAST");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = text.substr(0, colon);
    const std::string b = text.substr(colon + 1);
    const std::int64_t first = std::stoll(a, &used_a);
    const std::int64_t last = std::stoll(b, &used_b);
    if (used_a != a.size() || used_b != b.size())
      throw std::invalid_argument("trailing");
    if (first < 1 || last < first)
      throw Error(ErrorCode::InvalidArgument, "--k-range needs 1 <= FIRST <= LAST");
    return {first, last};
  } catch (const std::logic_error &) {
    throw Error(ErrorCode::InvalidArgument, "--k-range expects integers FIRST:LAST");
  }
}

int cmd_catalog(bool atoms, const GlobalFlags &g, std::ostream &out) {
  if (g.json_output) {
    json doc;
    doc["manifest"] = manifest("catalog", nullptr, json{{"atoms", atoms}});
    doc["builtins"] = builtin_config_names();
    if (atoms)
      doc["atoms"] = catalog_atom_names();
    out << doc.dump(2) << "\n";
  } else if (!g.quiet) {
    out << "builtin configurations:\n";
    for (const auto &name : builtin_config_names())
      out << "  " << name << "\n";
    if (atoms) {
      out << "catalog atoms:\n";
      for (const auto &name : catalog_atom_names())
        out << "  " << name << "\n";
      out << "combinators: U(...) disjoint union, X(...) product, D(ambient,subset) difference\n";
    }
  }
  return kExitOk;
}

int cmd_validate(const SourceFlags &src, const GlobalFlags &g, std::ostream &out) {
  if (src.builtin.empty() == src.file.empty())
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --builtin or --file");
  std::vector<Violation> violations;
  if (!src.builtin.empty()) {
    violations = validate_bundle(builtin_config(src.builtin));
  } else {
    try {
      load_config(src.file);
    } catch (const ValidationFailure &v) {
      violations = v.violations();
    }
  }
  if (g.json_output) {
    json doc;
    doc["manifest"] = manifest("validate", source_json(src), json::object());
    doc["valid"] = violations.empty();
    json list = json::array();
    for (const auto &v : violations)
      list.push_back(json{{"code", v.code}, {"message", v.message}});
    doc["violations"] = std::move(list);
    out << doc.dump(2) << "\n";
  } else if (!g.quiet) {
    if (violations.empty())
      out << "valid\n";
    for (const auto &v : violations)
      out << v.code << ": " << v.message << "\n";
  }
  return violations.empty() ? kExitOk : kExitInvalidInput;
}

int cmd_stratify(const SourceFlags &src, std::optional<std::int64_t> k, const std::string &k_range,
                 const GlobalFlags &g, std::ostream &out) {
  if (k.has_value() == !k_range.empty())
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --k or --k-range");
  const ConfigBundle bundle = resolve_source(src);
  std::int64_t first = 0;
  std::int64_t last = 0;
  if (k) {
    if (*k < 1)
      throw Error(ErrorCode::InvalidArgument, "--k must be positive");
    first = last = *k;
  } else {
    std::tie(first, last) = parse_k_range(k_range);
  }

  std::vector<JetStratification> runs;
  for (std::int64_t kk = first; kk <= last; ++kk)
    runs.push_back(stratify(bundle.config, bundle.nu, kk));

  if (!g.csv_path.empty()) {
    std::string text = stratification_csv_header() + "\n";
    for (const auto &s : runs)
      text += stratification_csv_row(s) + "\n";
    write_csv(g.csv_path, text);
  }
  if (g.json_output) {
    json params;
    params["k_first"] = first;
    params["k_last"] = last;
    json doc;
    doc["manifest"] = manifest("stratify", source_json(src), std::move(params));
    json list = json::array();
    for (const auto &s : runs)
      list.push_back(stratification_to_json(bundle.config, s));
    doc["stratifications"] = std::move(list);
    out << doc.dump(2) << "\n";
  } else if (!g.quiet) {
    for (const auto &s : runs) {
      out << "k=" << s.k << " strata=" << s.strata.size() << " residual=" << s.residual_beta.to_string()
          << " deg=" << s.residual_beta.degree().to_string() << " bound<" << s.bound_rhs.to_string()
          << (s.bound_ok ? " ok" : " VIOLATED") << "\n";
      for (const auto &st : s.strata)
        out << "  j=" << j_label(bundle.config, st.j) << " dim=" << st.dim << " beta=" << st.beta.to_string()
            << "\n";
      for (const auto &w : s.warnings)
        out << "  warning: " << w << "\n";
    }
  }
  return kExitOk;
}

struct CompareFlags {
  std::string nu_prime;
  std::string mode = "jacobian";
  std::int64_t k_max = 12;
  std::int64_t window = 4;
};

int cmd_compare(const SourceFlags &src, const CompareFlags &flags, const GlobalFlags &g, std::ostream &out) {
  const ConfigBundle bundle = resolve_source(src);
  MultiplicityVector nu_prime;
  if (!flags.nu_prime.empty())
    nu_prime = parse_multiplicity_assignment(bundle.config, flags.nu_prime);
  else if (bundle.nu_prime)
    nu_prime = *bundle.nu_prime;
  else
    throw Error(ErrorCode::InvalidArgument, "no nu' given: use --nu-prime or a config with nu_prime");

  CompareOptions options;
  options.k_max = flags.k_max;
  options.stabilization_window = flags.window;
  ComparisonReport report;
  if (flags.mode == "jacobian")
    report = thm1_verdict(bundle.config, bundle.nu, nu_prime, options);
  else if (flags.mode == "lipschitz")
    report = lipschitz_verdict(bundle.config, bundle.nu, nu_prime, options);
  else
    throw Error(ErrorCode::InvalidArgument, "--mode must be jacobian or lipschitz");

  if (!g.csv_path.empty())
    write_csv(g.csv_path, comparison_csv(report));
  if (g.json_output) {
    json params;
    params["mode"] = flags.mode;
    params["nu_prime"] = nu_label(bundle.config, nu_prime);
    params["k_max"] = flags.k_max;
    params["window"] = flags.window;
    json doc;
    doc["manifest"] = manifest("compare", source_json(src), std::move(params));
    doc["report"] = comparison_to_json(bundle.config, report);
    out << doc.dump(2) << "\n";
  } else if (!g.quiet) {
    out << "mode " << to_string(report.mode) << ": nu=(" << nu_label(bundle.config, report.nu) << ") nu'=("
        << nu_label(bundle.config, report.nu_prime) << ")\n";
    for (const auto &s : report.jacobian_steps)
      out << "  k=" << s.k << " deg P=" << s.P.degree().to_string() << " bound=" << s.bound.to_string()
          << " c_k=" << (s.c_k ? std::to_string(*s.c_k) : "-") << (s.contradiction ? " contradiction" : "") << "\n";
    for (const auto &s : report.lipschitz_steps)
      out << "  k=" << s.k << " |A'|=" << s.a_prime.size() << " |A''|=" << s.a_double_prime.size()
          << (s.contradiction ? " contradiction at j=" + j_label(bundle.config, *s.witness_j) : "") << "\n";
    out << "verdict: " << to_string(report.verdict.kind);
    if (report.verdict.kind == VerdictKind::EqualForced)
      out << " (witness k=" << report.verdict.k << ")";
    else if (report.verdict.kind == VerdictKind::Inconclusive)
      out << " (max k tried " << report.verdict.k << ")";
    out << "\n";
  }
  return kExitOk;
}

int cmd_oracle(const std::string &path, const GlobalFlags &g, std::ostream &out) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const ProbeRun run = run_probe_spec_text(buf.str());
  if (g.json_output) {
    json doc;
    doc["manifest"] = manifest("oracle", json{{"file", path}}, json{{"seed", run.report["seed"]}});
    doc["report"] = run.report;
    out << doc.dump(2) << "\n";
  } else if (!g.quiet) {
    for (const auto &p : run.report["probes"]) {
      out << p["status"].get<std::string>() << "  " << p["name"].get<std::string>();
      if (p.contains("error"))
        out << "  " << p["error"].get<std::string>();
      out << "\n";
    }
    out << (run.all_passed ? "all probes passed" : "some probes failed") << "\n";
  }
  return run.all_passed ? kExitOk : kExitProbeFailure;
}

int cmd_beta(const std::string &expr, const GlobalFlags &g, std::ostream &out) {
  const auto result = evaluate_beta(parse_set_expr(expr));
  if (g.json_output) {
    json doc;
    doc["manifest"] = manifest("beta", nullptr, json{{"expr", expr}});
    doc["beta"] = poly_to_json(result.value);
    doc["suspicious"] = result.suspicious;
    doc["subset_assertions"] = result.subset_assertions;
    doc["suspicious_nodes"] = result.suspicious_nodes;
    out << doc.dump(2) << "\n";
  } else if (!g.quiet) {
    out << result.value.to_string() << "\n";
    for (const auto &a : result.subset_assertions)
      out << "  assumes " << a << "\n";
    if (result.suspicious)
      out << "  suspicious: negative leading coefficient\n";
  }
  return kExitOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Jet-space stratifications and virtual Poincare polynomial identities", "jetbeta"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_flag("--json", g.json_output, "Emit a JSON report on stdout");
  app.add_option("--csv", g.csv_path, "Also write a CSV sweep to this path");
  app.add_flag("--quiet", g.quiet, "Suppress human-readable output");

  bool atoms = false;
  auto *catalog = app.add_subcommand("catalog", "List builtin configurations and set atoms");
  catalog->add_flag("--atoms", atoms, "Include the beta catalog atoms");

  SourceFlags validate_src;
  auto *validate = app.add_subcommand("validate", "Check a configuration");
  add_source_options(validate, validate_src);

  SourceFlags stratify_src;
  std::optional<std::int64_t> k;
  std::string k_range;
  auto *stratify_cmd = app.add_subcommand("stratify", "Jet stratification for one k or a range");
  add_source_options(stratify_cmd, stratify_src);
  stratify_cmd->add_option("--nu", stratify_src.nu, "Override multiplicities, e.g. E1=2");
  stratify_cmd->add_option("--k", k, "Jet order");
  stratify_cmd->add_option("--k-range", k_range, "Jet orders FIRST:LAST");

  SourceFlags compare_src;
  CompareFlags cflags;
  auto *compare_cmd = app.add_subcommand("compare", "Decide whether two multiplicity vectors must agree");
  add_source_options(compare_cmd, compare_src);
  compare_cmd->add_option("--nu", compare_src.nu, "Override the first multiplicity vector, e.g. E1=2");
  compare_cmd->add_option("--nu-prime", cflags.nu_prime, "Second multiplicity vector, e.g. E1=2,E2=1");
  compare_cmd->add_option("--mode", cflags.mode, "jacobian (nu <= nu') or lipschitz (nu' <= nu)")
      ->check(CLI::IsMember({"jacobian", "lipschitz"}));
  compare_cmd->add_option("--k-max", cflags.k_max, "Largest jet order to scan");
  compare_cmd->add_option("--window", cflags.window, "c_k stabilization window");

  std::string probe_path;
  auto *oracle = app.add_subcommand("oracle", "Run truncated-series probes from a spec file");
  oracle->add_option("spec", probe_path, "Probe specification (JSON)")->required();

  std::string expr;
  auto *beta = app.add_subcommand("beta", "Evaluate the virtual Poincare polynomial of a set expression");
  beta->add_option("expr", expr, "Set expression, e.g. X(Rstar,A(2))")->required();

  for (auto *sub : {catalog, validate, stratify_cmd, compare_cmd, oracle, beta})
    sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  try {
    if (catalog->parsed())
      return cmd_catalog(atoms, g, out);
    if (validate->parsed())
      return cmd_validate(validate_src, g, out);
    if (stratify_cmd->parsed())
      return cmd_stratify(stratify_src, k, k_range, g, out);
    if (compare_cmd->parsed())
      return cmd_compare(compare_src, cflags, g, out);
    if (oracle->parsed())
      return cmd_oracle(probe_path, g, out);
    if (beta->parsed())
      return cmd_beta(expr, g, out);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitInconsistency;
  }
  return kExitInvalidInput;
}

} // namespace jetbeta::cli
