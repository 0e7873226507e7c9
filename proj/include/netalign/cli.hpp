#pragma once

// Command-line front end:
//
//   netalign check <network.json>      feasibility verdict
//   netalign simulate <network.json>   full precode/transmit/decode run
//   netalign gen                       random network file
//   netalign oracle <network.json>     cross-checks against brute force
//
// Exit status: 0 success / feasible, 1 infeasible or decode failure,
// 2 unsupported (zero min-cut), 3 input error, 4 disagreement.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "netalign/netgraph.hpp"
#include "netalign/report.hpp"

namespace netalign {

enum ExitStatus : int {
    kExitOk = 0,
    kExitNegative = 1,
    kExitUnsupported = 2,
    kExitInputError = 3,
    kExitMismatch = 4,
};

struct OracleOptions {
    unsigned m = 16;
    int k = 5;
    std::uint64_t seed = 0;
    int trials = 20;
    std::vector<int> tones;
    std::size_t path_limit = kDefaultPathLimit;
    // Test hook: perturbs one dynamic-programming coefficient.
    bool corrupt_dp = false;
};

// Transfer DP vs path enumeration, time-domain run vs polynomial prediction,
// and reduced test vs S_n oracle (the last one only when every pair is
// connected).
OracleSummary run_oracle(const DelayNetwork& net, const OracleOptions& opts);

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netalign
