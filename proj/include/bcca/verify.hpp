#pragma once

#include <string>
#include <utility>
#include <vector>

namespace bcca {

// One verification check: an exact certificate over a bounded window. The
// details list is deterministic for a fixed seed, so serialized reports are
// reproducible byte for byte; runtime_ms is measured wall time and is kept
// out of serialized output by the CLI.
struct CheckReport {
  std::string check_id;
  std::string status;  // "pass", "fail", or "bounded-evidence"
  std::vector<std::pair<std::string, std::string>> details;
  long runtime_ms = 0;
};

struct VerifyOptions {
  long window = 10;  // index window for the bracket-level checks
  long depth = 8;    // iteration depth for the two-generator probe
  unsigned long long seed = 7;
};

// Group names accepted by run_verify, "all" first.
std::vector<std::string> verify_groups();

// Runs the checks of one group (or every check for "all") and returns their
// reports ordered by check_id. Unknown group names throw DomainError. A
// check that fails mathematically reports status "fail" rather than
// throwing; checks that can only scan a bounded window of an infinite claim
// report "bounded-evidence" when everything in the window agrees.
std::vector<CheckReport> run_verify(const std::string& group,
                                    const VerifyOptions& opts);

}  // namespace bcca
