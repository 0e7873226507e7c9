#include "netalign/report.hpp"

#include <iomanip>
#include <sstream>

#include "netalign/transform.hpp"

#ifndef NETALIGN_VERSION
#define NETALIGN_VERSION "0.0.0"
#endif

namespace netalign {

using nlohmann::json;

std::string tool_version() { return NETALIGN_VERSION; }

std::string to_string(const Rational& r) { return std::to_string(r.num) + "/" + std::to_string(r.den); }

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("rational without '/': " + text);
    return Rational::make(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

namespace {

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

std::optional<int> read_optional_int(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<int>();
}

Identity identity_from_string(const std::string& s) {
    for (Identity id : kIdentities)
        if (to_string(id) == s) return id;
    throw std::invalid_argument("unknown identity '" + s + "'");
}

Verdict verdict_from_string(const std::string& s) {
    for (Verdict v : {Verdict::feasible, Verdict::infeasible, Verdict::unsupported})
        if (to_string(v) == s) return v;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

json to_json(const ConstancyVerdict& v) {
    return {{"constant", v.constant},
            {"draws", v.draws},
            {"witness", optional_int(v.witness)},
            {"error_bound", v.error_bound}};
}

ConstancyVerdict constancy_from_json(const json& j) {
    ConstancyVerdict v;
    v.constant = j.at("constant").get<bool>();
    v.draws = j.at("draws").get<int>();
    v.witness = read_optional_int(j.at("witness"));
    v.error_bound = j.at("error_bound").get<double>();
    return v;
}

json to_json(const ToneVerdict& tv) {
    json pairs = json::array();
    for (std::size_t i = 0; i < 3; ++i) {
        json pair = {{"b", i + 1}, {"met", tv.condition_met[i]}};
        if (tv.eta.constant) {
            pair["b_constant"] = to_json(tv.b_constant[i]);
        } else {
            json ids = json::array();
            for (const auto& m : tv.membership[i])
                ids.push_back({{"identity", to_string(m.identity)},
                               {"holds", m.holds},
                               {"witness", optional_int(m.witness)},
                               {"error_bound", m.error_bound}});
            pair["identities"] = std::move(ids);
        }
        pairs.push_back(std::move(pair));
    }
    return {{"p", tv.p}, {"eta", to_json(tv.eta)}, {"conditions", std::move(pairs)}, {"feasible", tv.feasible}};
}

ToneVerdict tone_from_json(const json& j) {
    ToneVerdict tv;
    tv.p = j.at("p").get<int>();
    tv.eta = constancy_from_json(j.at("eta"));
    tv.feasible = j.at("feasible").get<bool>();
    const json& pairs = j.at("conditions");
    if (pairs.size() != 3) throw std::invalid_argument("tone verdict needs three conditions");
    for (std::size_t i = 0; i < 3; ++i) {
        const json& pair = pairs.at(i);
        tv.condition_met[i] = pair.at("met").get<bool>();
        if (pair.contains("b_constant")) tv.b_constant[i] = constancy_from_json(pair.at("b_constant"));
        if (pair.contains("identities")) {
            const json& ids = pair.at("identities");
            if (ids.size() != 4) throw std::invalid_argument("membership needs four identities");
            for (std::size_t q = 0; q < 4; ++q) {
                MembershipVerdict& m = tv.membership[i][q];
                m.identity = identity_from_string(ids.at(q).at("identity").get<std::string>());
                m.holds = ids.at(q).at("holds").get<bool>();
                m.witness = read_optional_int(ids.at(q).at("witness"));
                m.error_bound = ids.at(q).at("error_bound").get<double>();
            }
        }
    }
    return tv;
}

json rationals(const std::array<Rational, 3>& r) {
    return json::array({to_string(r[0]), to_string(r[1]), to_string(r[2])});
}

std::array<Rational, 3> rationals_from_json(const json& j) {
    return {parse_rational(j.at(0).get<std::string>()), parse_rational(j.at(1).get<std::string>()),
            parse_rational(j.at(2).get<std::string>())};
}

std::string pair_name(int i, int j) { return "(S" + std::to_string(i + 1) + ", T" + std::to_string(j + 1) + ")"; }

}  // namespace

json to_json(const FeasibilityReport& r) {
    json missing = json::array();
    for (auto [i, j] : r.missing_pairs) missing.push_back({i + 1, j + 1});
    json tones = json::array();
    for (const auto& tv : r.tones) tones.push_back(to_json(tv));
    return {{"verdict", to_string(r.verdict)},
            {"field_degree", r.m},
            {"block_length", r.k},
            {"trials", r.trials},
            {"seed", r.seed},
            {"resamples", r.resamples},
            {"missing_pairs", std::move(missing)},
            {"eta_constant", r.eta_constant()},
            {"tones", std::move(tones)},
            {"anomalies", r.anomalies},
            {"error_bound", r.error_bound}};
}

FeasibilityReport feasibility_from_json(const json& j) {
    FeasibilityReport r;
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.m = j.at("field_degree").get<unsigned>();
    r.k = j.at("block_length").get<int>();
    r.trials = j.at("trials").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.resamples = j.at("resamples").get<int>();
    for (const auto& p : j.at("missing_pairs")) r.missing_pairs.emplace_back(p.at(0).get<int>() - 1, p.at(1).get<int>() - 1);
    for (const auto& t : j.at("tones")) r.tones.push_back(tone_from_json(t));
    r.anomalies = j.at("anomalies").get<std::vector<std::string>>();
    r.error_bound = j.at("error_bound").get<double>();
    return r;
}

bool SimSummary::all_decoded() const {
    for (const auto& t : tones)
        if (t.decoded && !(t.success[0] && t.success[1] && t.success[2])) return false;
    return true;
}

SimSummary summarize(const SimResult& sr) {
    SimSummary s;
    s.n = sr.config.n;
    s.k = sr.config.k;
    s.m = sr.config.m;
    s.seed = sr.config.seed;
    s.shift = sr.span.shift;
    s.cp = sr.span.spread;
    s.schedule_attempts = sr.schedule_attempts;
    s.channel_model_exact = true;  // pbna_pipeline throws otherwise
    for (int p = 0; p < sr.config.k; ++p) {
        ToneOutcome t;
        t.p = p;
        t.decoded = sr.decoded_tone[static_cast<std::size_t>(p)];
        for (int j = 0; j < 3; ++j) {
            t.success[static_cast<std::size_t>(j)] = sr.success(p, j);
            t.rank[static_cast<std::size_t>(j)] = sr.decode_rank[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)];
        }
        s.tones.push_back(t);
    }
    s.decoded_symbols = sr.decoded_symbols();
    s.throughput = throughput(sr);
    if (auto w = block_length_warning(sr.config.k, sr.span.spread)) s.warnings.push_back(*w);
    return s;
}

json to_json(const SimSummary& s) {
    json tones = json::array();
    for (const auto& t : s.tones)
        tones.push_back({{"p", t.p}, {"decoded", t.decoded}, {"success", t.success}, {"rank", t.rank}});
    return {{"n", s.n},
            {"block_length", s.k},
            {"field_degree", s.m},
            {"seed", s.seed},
            {"delay_shift", s.shift},
            {"cyclic_prefix", s.cp},
            {"schedule_attempts", s.schedule_attempts},
            {"channel_model_exact", s.channel_model_exact},
            {"tones", std::move(tones)},
            {"decoded_symbols", s.decoded_symbols},
            {"throughput", {{"payload", rationals(s.throughput.payload)}, {"wall_clock", rationals(s.throughput.wall_clock)}}},
            {"warnings", s.warnings}};
}

SimSummary simulation_from_json(const json& j) {
    SimSummary s;
    s.n = j.at("n").get<int>();
    s.k = j.at("block_length").get<int>();
    s.m = j.at("field_degree").get<unsigned>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.shift = j.at("delay_shift").get<int>();
    s.cp = j.at("cyclic_prefix").get<int>();
    s.schedule_attempts = j.at("schedule_attempts").get<int>();
    s.channel_model_exact = j.at("channel_model_exact").get<bool>();
    for (const auto& t : j.at("tones")) {
        ToneOutcome o;
        o.p = t.at("p").get<int>();
        o.decoded = t.at("decoded").get<bool>();
        o.success = t.at("success").get<std::array<bool, 3>>();
        o.rank = t.at("rank").get<std::array<long long, 3>>();
        s.tones.push_back(o);
    }
    s.decoded_symbols = j.at("decoded_symbols").get<std::array<long long, 3>>();
    s.throughput.payload = rationals_from_json(j.at("throughput").at("payload"));
    s.throughput.wall_clock = rationals_from_json(j.at("throughput").at("wall_clock"));
    s.warnings = j.at("warnings").get<std::vector<std::string>>();
    return s;
}

bool OracleSummary::ok() const { return first_failure() == nullptr; }

const OracleCheck* OracleSummary::first_failure() const {
    for (const auto& c : checks)
        if (!c.ok) return &c;
    return nullptr;
}

json to_json(const OracleSummary& o) {
    json checks = json::array();
    for (const auto& c : o.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    return {{"ok", o.ok()}, {"checks", std::move(checks)}};
}

OracleSummary oracle_from_json(const json& j) {
    OracleSummary o;
    for (const auto& c : j.at("checks"))
        o.checks.push_back({c.at("name").get<std::string>(), c.at("ok").get<bool>(), c.at("detail").get<std::string>()});
    return o;
}

json to_json(const Report& r) {
    json doc = {{"format", "netalign-report"},
                {"version", kReportFormatVersion},
                {"tool_version", r.tool_version},
                {"config",
                 {{"command", r.config.command},
                  {"input", r.config.input},
                  {"field_degree", r.config.m},
                  {"block_length", r.config.k},
                  {"n", r.config.n},
                  {"seed", r.config.seed},
                  {"trials", r.config.trials},
                  {"tones", r.config.tones},
                  {"force", r.config.force}}},
                {"exit_status", r.exit_status},
                {"elapsed_seconds", r.elapsed_seconds}};
    doc["feasibility"] = r.feasibility ? to_json(*r.feasibility) : json(nullptr);
    doc["simulation"] = r.simulation ? to_json(*r.simulation) : json(nullptr);
    doc["oracle"] = r.oracle ? to_json(*r.oracle) : json(nullptr);
    doc["error"] = r.error ? json(*r.error) : json(nullptr);
    return doc;
}

Report report_from_json(const json& j) {
    if (j.at("format").get<std::string>() != "netalign-report") throw std::invalid_argument("not a netalign report");
    if (j.at("version").get<int>() != kReportFormatVersion)
        throw std::invalid_argument("unsupported report version " + j.at("version").dump());
    Report r;
    r.tool_version = j.at("tool_version").get<std::string>();
    const json& c = j.at("config");
    r.config.command = c.at("command").get<std::string>();
    r.config.input = c.at("input").get<std::string>();
    r.config.m = c.at("field_degree").get<unsigned>();
    r.config.k = c.at("block_length").get<int>();
    r.config.n = c.at("n").get<int>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.trials = c.at("trials").get<int>();
    r.config.tones = c.at("tones").get<std::vector<int>>();
    r.config.force = c.at("force").get<bool>();
    r.exit_status = j.at("exit_status").get<int>();
    r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    if (!j.at("feasibility").is_null()) r.feasibility = feasibility_from_json(j.at("feasibility"));
    if (!j.at("simulation").is_null()) r.simulation = simulation_from_json(j.at("simulation"));
    if (!j.at("oracle").is_null()) r.oracle = oracle_from_json(j.at("oracle"));
    if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
    return r;
}

std::string to_text(const FeasibilityReport& r) {
    std::ostringstream os;
    os << "verdict: " << to_string(r.verdict) << "\n";
    os << "field GF(2^" << r.m << "), k = " << r.k << ", trials = " << r.trials << ", seed = " << r.seed
       << ", resampled draws = " << r.resamples << "\n";
    if (r.verdict == Verdict::unsupported) {
        os << "zero min-cut; no path for";
        for (auto [i, j] : r.missing_pairs) os << " " << pair_name(i, j);
        os << "\n";
        return os.str();
    }
    for (const auto& tv : r.tones) {
        os << "tone " << tv.p << ": eta " << (tv.eta.constant ? "constant" : "not constant") << ", "
           << (tv.feasible ? "feasible" : "infeasible") << "\n";
        for (std::size_t i = 0; i < 3; ++i) {
            os << "  condition " << i + 1 << ": " << (tv.condition_met[i] ? "met" : "violated");
            if (tv.eta.constant) {
                os << " (b" << i + 1 << (tv.b_constant[i].constant ? " constant" : " not constant") << ")";
            } else {
                std::vector<std::string> held, violated;
                for (const auto& m : tv.membership[i]) (m.holds ? held : violated).push_back(to_string(m.identity));
                auto list = [](const std::vector<std::string>& v) {
                    std::string s;
                    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
                    return s.empty() ? std::string("none") : s;
                };
                os << " (b" << i + 1 << " equals: " << list(held) << "; differs from: " << list(violated) << ")";
            }
            os << "\n";
        }
    }
    os << "cross-tone disagreements: " << r.anomalies.size() << "\n";
    for (const auto& a : r.anomalies) os << "  " << a << "\n";
    os << "error bound: " << std::setprecision(3) << r.error_bound << "\n";
    return os.str();
}

std::string to_text(const SimSummary& s) {
    std::ostringstream os;
    os << "simulation: n = " << s.n << ", k = " << s.k << ", GF(2^" << s.m << "), cyclic prefix " << s.cp
       << ", delay shift " << s.shift << ", seed " << s.seed << "\n";
    os << "channel model check: " << (s.channel_model_exact ? "exact" : "MISMATCH") << "\n";
    for (const auto& t : s.tones) {
        os << "tone " << t.p << ":";
        if (!t.decoded) {
            os << " not decoded\n";
            continue;
        }
        for (std::size_t j = 0; j < 3; ++j)
            os << " T" << j + 1 << " " << (t.success[j] ? "ok" : "FAIL") << " (rank " << t.rank[j] << ")";
        os << "\n";
    }
    os << "decoded symbols:";
    for (auto d : s.decoded_symbols) os << " " << d;
    os << "\nthroughput (payload):";
    for (const auto& r : s.throughput.payload) os << " " << to_string(r);
    os << "\nthroughput (wall clock):";
    for (const auto& r : s.throughput.wall_clock) os << " " << to_string(r);
    os << "\n";
    for (const auto& w : s.warnings) os << "warning: " << w << "\n";
    return os.str();
}

std::string to_text(const OracleSummary& o) {
    std::ostringstream os;
    for (const auto& c : o.checks) os << (c.ok ? "agree   " : "MISMATCH") << " " << c.name << ": " << c.detail << "\n";
    return os.str();
}

std::string to_text(const Report& r) {
    std::string out;
    if (r.feasibility) out += to_text(*r.feasibility);
    if (r.simulation) out += to_text(*r.simulation);
    if (r.oracle) out += to_text(*r.oracle);
    return out;
}

}  // namespace netalign
