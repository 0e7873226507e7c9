#pragma once

// Machine-readable (JSON) and text renderings of command results. The JSON
// form parses back to the same document; see docs/report-format.md.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "netalign/feasibility.hpp"
#include "netalign/simulator.hpp"

namespace netalign {

inline constexpr int kReportFormatVersion = 1;

std::string tool_version();

struct RunConfig {
    std::string command;
    std::string input;
    unsigned m = 16;
    int k = 5;
    int n = 2;
    std::uint64_t seed = 0;
    int trials = 20;
    std::vector<int> tones;
    bool force = false;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// The serialisable part of a SimResult.
struct ToneOutcome {
    int p = 0;
    bool decoded = false;  // in the decode set
    std::array<bool, 3> success{};
    std::array<long long, 3> rank{};

    friend bool operator==(const ToneOutcome&, const ToneOutcome&) = default;
};

struct SimSummary {
    int n = 0;
    int k = 0;
    unsigned m = 0;
    std::uint64_t seed = 0;
    int shift = 0;
    int cp = 0;
    int schedule_attempts = 0;
    // The received tones matched the per-tone channel model exactly.
    bool channel_model_exact = false;
    std::vector<ToneOutcome> tones;
    std::array<long long, 3> decoded_symbols{};
    Throughput throughput;
    std::vector<std::string> warnings;

    bool all_decoded() const;
};

SimSummary summarize(const SimResult& sr);

struct OracleCheck {
    std::string name;
    bool ok = false;
    std::string detail;

    friend bool operator==(const OracleCheck&, const OracleCheck&) = default;
};

struct OracleSummary {
    std::vector<OracleCheck> checks;

    bool ok() const;
    // First failing check, if any.
    const OracleCheck* first_failure() const;
};

struct Report {
    std::string tool_version;
    RunConfig config;
    std::optional<FeasibilityReport> feasibility;
    std::optional<SimSummary> simulation;
    std::optional<OracleSummary> oracle;
    std::optional<std::string> error;
    int exit_status = 0;
    double elapsed_seconds = 0.0;
};

nlohmann::json to_json(const FeasibilityReport& r);
FeasibilityReport feasibility_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SimSummary& s);
SimSummary simulation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const OracleSummary& o);
OracleSummary oracle_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

std::string to_text(const FeasibilityReport& r);
std::string to_text(const SimSummary& s);
std::string to_text(const OracleSummary& o);
std::string to_text(const Report& r);

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

}  // namespace netalign
