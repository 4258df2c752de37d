#pragma once

#include <cstdint>
#include <string_view>

#include "json.hpp"

namespace jetbeta {

/// Outcome of a batch of oracle probes.
struct ProbeRun {
  nlohmann::ordered_json report;
  bool all_passed = false;
};

/// Runs a probe specification document:
///
///   {"seed": 7, "probes": [{"kind": "multiplicity", ...}, ...]}
///
/// Probe kinds: multiplicity, multiplicity_grid, chain_rule, fiber,
/// fiber_grid. Series are given either as polynomial strings in t ("t^2+t^3")
/// or as arrays of rational strings, low-to-high. A malformed document throws
/// PARSE_ERROR or INVALID_ARGUMENT; an engine error inside a probe (for
/// example PRECISION_EXHAUSTED) is reported as that probe's status instead.
ProbeRun run_probe_spec(const nlohmann::ordered_json &spec);
ProbeRun run_probe_spec_text(std::string_view text);

} // namespace jetbeta
