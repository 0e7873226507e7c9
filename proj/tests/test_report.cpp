#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "netalign/cli.hpp"
#include "netalign/report.hpp"
#include "support.hpp"

using namespace netalign;
using nlohmann::json;

namespace {

FeasibilityReport check(const DelayNetwork& net) {
    FeasibilityParams fp;
    fp.trials = 8;
    return feasibility_verdict(net, fp);
}

SimSummary simulate(const DelayNetwork& net) {
    PipelineConfig cfg;
    cfg.seed = 4;
    return summarize(pbna_pipeline(net, cfg));
}

}  // namespace

TEST_CASE("rationals print and parse as a/b") {
    CHECK(to_string(Rational{12, 25}) == "12/25");
    CHECK(to_string(Rational{0, 1}) == "0/1");
    CHECK(parse_rational("3/5") == Rational{3, 5});
    CHECK(parse_rational("6/10") == Rational{3, 5});
    CHECK_THROWS(parse_rational("3"));
    CHECK_THROWS(parse_rational("3/0"));
    CHECK_THROWS(parse_rational("a/b"));
}

TEST_CASE("feasibility reports round-trip through JSON") {
    for (const DelayNetwork& net : {fixtures::generated(0), fixtures::bottleneck_b1(), fixtures::bottleneck_direct(),
                                    fixtures::diagonal()}) {
        const json j = to_json(check(net));
        CHECK(to_json(feasibility_from_json(j)) == j);
    }
}

TEST_CASE("feasibility JSON layout") {
    const json j = to_json(check(fixtures::bottleneck_b1()));
    CHECK(j.at("verdict") == "infeasible");
    CHECK(j.at("tones").size() == 5);
    const json& c1 = j.at("tones")[0].at("conditions")[0];
    CHECK(c1.at("b") == 1);
    CHECK(c1.at("met") == false);
    CHECK(c1.at("identities")[0].at("identity") == "1");
    CHECK(c1.at("identities")[3].at("identity") == "eta/(eta+1)");
    CHECK(c1.at("identities")[0].at("holds") == true);
    CHECK(c1.at("identities")[1].at("witness").is_number_integer());

    const json u = to_json(check(fixtures::diagonal()));
    CHECK(u.at("verdict") == "unsupported");
    CHECK(u.at("missing_pairs").size() == 6);
    CHECK(u.at("missing_pairs")[0] == json::array({1, 2}));
}

TEST_CASE("simulation summaries round-trip through JSON") {
    const SimSummary s = simulate(fixtures::generated(1));
    CHECK(s.channel_model_exact);
    CHECK(s.all_decoded());
    const json j = to_json(s);
    CHECK(j.at("throughput").at("payload")[0] == "12/25");
    CHECK(to_json(simulation_from_json(j)) == j);
}

TEST_CASE("complete reports round-trip and carry the format version") {
    Report r;
    r.tool_version = tool_version();
    r.config.command = "simulate";
    r.config.input = "net.json";
    r.config.tones = {1, 2};
    r.feasibility = check(fixtures::generated(2));
    r.simulation = simulate(fixtures::generated(2));
    r.oracle = OracleSummary{{{"transfer", true, "3 x 3 pairs agree"}, {"time-domain", false, "mismatch"}}};
    r.error = "something";
    r.exit_status = 1;
    r.elapsed_seconds = 0.25;
    const json j = to_json(r);
    CHECK(j.at("format") == "netalign-report");
    CHECK(j.at("version") == kReportFormatVersion);
    CHECK(to_json(report_from_json(j)) == j);
    CHECK(report_from_json(j).config == r.config);

    Report empty;
    const json e = to_json(empty);
    CHECK(e.at("simulation").is_null());
    CHECK(to_json(report_from_json(e)) == e);
}

TEST_CASE("reports from another format version are rejected") {
    json j = to_json(Report{});
    j["version"] = kReportFormatVersion + 1;
    CHECK_THROWS(report_from_json(j));
    j = to_json(Report{});
    j["format"] = "something-else";
    CHECK_THROWS(report_from_json(j));
}

TEST_CASE("oracle summaries") {
    OracleSummary o{{{"a", true, ""}, {"b", false, "x"}, {"c", false, "y"}}};
    CHECK_FALSE(o.ok());
    REQUIRE(o.first_failure() != nullptr);
    CHECK(o.first_failure()->name == "b");
    CHECK(OracleSummary{}.ok());
    CHECK(to_json(oracle_from_json(to_json(o))) == to_json(o));
}

TEST_CASE("text rendering names each condition") {
    const std::string text = to_text(check(fixtures::bottleneck_b1()));
    CHECK(text.find("infeasible") != std::string::npos);
    CHECK(text.find("condition 1: violated") != std::string::npos);
    CHECK(text.find("condition 2: met") != std::string::npos);
    const std::string sim = to_text(simulate(fixtures::generated(0)));
    CHECK(sim.find("12/25") != std::string::npos);
}
