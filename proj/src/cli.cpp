#include "netalign/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "netalign/generator.hpp"
#include "netalign/network_io.hpp"
#include "netalign/simulator.hpp"

namespace netalign {

namespace {

std::string hex(const Element& x) {
    std::ostringstream os;
    os << "0x" << std::hex << x.value();
    return os.str();
}

OracleCheck check_transfer(const DelayNetwork& net, const LekAssignment& leks, const OracleOptions& opts) {
    const DelaySpan span = delay_extrema(net);
    int compared = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            TransferPoly dp = transfer_poly(net, leks, span, i, j);
            if (opts.corrupt_dp && i == 0 && j == 0) dp.coeffs.front() += Element(1);
            const TransferPoly ref = transfer_oracle(net, leks, i, j, opts.path_limit);
            for (std::size_t d = 0; d < std::max(dp.coeffs.size(), ref.coeffs.size()); ++d) {
                const Element a = d < dp.coeffs.size() ? dp.coeffs[d] : Element(0);
                const Element b = d < ref.coeffs.size() ? ref.coeffs[d] : Element(0);
                if (a != b || dp.shift != ref.shift) {
                    std::ostringstream os;
                    os << "coefficient (i, j, d) = (" << i + 1 << ", " << j + 1 << ", " << d << "): dp " << hex(a)
                       << ", paths " << hex(b);
                    return {"transfer polynomials", false, os.str()};
                }
                ++compared;
            }
        }
    }
    return {"transfer polynomials", true, std::to_string(compared) + " coefficients agree"};
}

OracleCheck check_time_domain(const DelayNetwork& net, const Field& field, const LekAssignment& leks, Rng& rng) {
    const DelaySpan span = delay_extrema(net);
    LekSchedule sched;
    sched.blocks = {leks};
    sched.n = 0;
    sched.k = span.spread + 1;
    sched.cp = 0;

    const int length = 3 * (span.spread + 1) + 5;
    SourceTimeline in;
    for (auto& x : in.symbols) {
        const Vector v = random_vector(field, length, rng);
        x.assign(v.begin(), v.end());
    }
    const int end = length + span.shift + span.spread;
    const TimeTrace trace = run_time_domain(net, sched, in, end);
    const TransferMatrix tm = transfer_matrix(net, leks, span);

    for (int j = 0; j < 3; ++j) {
        for (int t = 0; t < end; ++t) {
            Element expected(0);
            for (int i = 0; i < 3; ++i) {
                const auto& c = tm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].coeffs;
                for (std::size_t d = 0; d < c.size(); ++d) {
                    const int s = t - span.shift - static_cast<int>(d);
                    if (s >= 0 && s < length) expected += c[d] * in.symbols[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
                }
            }
            if (expected != trace.output_at(j, t))
                return {"time domain", false,
                        "T" + std::to_string(j + 1) + " at t = " + std::to_string(t) + ": simulated " +
                            hex(trace.output_at(j, t)) + ", predicted " + hex(expected)};
        }
    }
    return {"time domain", true, std::to_string(3 * end) + " output symbols match the transfer polynomials"};
}

OracleCheck check_sn(const DelayNetwork& net, const OracleOptions& opts) {
    FeasibilityParams fp;
    fp.m = opts.m;
    fp.k = opts.k;
    fp.seed = opts.seed;
    fp.trials = opts.trials;
    fp.tones = opts.tones;
    const DrawSet ds = draw_trials(net, fp, fp.trials);
    int compared = 0;
    for (int p : ds.tones) {
        const ToneVerdict tv = tone_verdict(ds, p);
        for (int i = 0; i < 3; ++i) {
            for (int n : {1, 2}) {
                const SnVerdict sn = sn_oracle(net, i, p, n, fp);
                if (!sn_consistent(sn, tv, i))
                    return {"reduced test vs S_n", false,
                            "b" + std::to_string(i + 1) + ", tone " + std::to_string(p) + ", n = " +
                                std::to_string(n) + ": S_n says " + (sn.member ? "member" : "not a member")};
                ++compared;
            }
        }
    }
    return {"reduced test vs S_n", true, std::to_string(compared) + " verdicts consistent"};
}

}  // namespace

OracleSummary run_oracle(const DelayNetwork& net, const OracleOptions& opts) {
    const Connectivity conn = validate(net);
    const FieldPtr field = make_field(opts.m);
    Rng rng(opts.seed);
    const LekAssignment leks = random_leks(net, *field, rng);

    OracleSummary out;
    out.checks.push_back(check_transfer(net, leks, opts));
    out.checks.push_back(check_time_domain(net, *field, leks, rng));
    if (conn.full())
        out.checks.push_back(check_sn(net, opts));
    else
        out.checks.push_back({"reduced test vs S_n", true, "skipped: some source-destination pair is disconnected"});
    return out;
}

namespace {

struct Options {
    std::string input;
    unsigned m = 16;
    int k = 5;
    int n = 2;
    std::uint64_t seed = 0;
    int trials = 20;
    std::vector<int> tones;
    bool force = false;
    bool corrupt_dp = false;
    std::string format = "text";
    GenParams gen;
    std::string output;
};

RunConfig run_config(const std::string& command, const Options& o) {
    return {command, o.input, o.m, o.k, o.n, o.seed, o.trials, o.tones, o.force};
}

FeasibilityParams feasibility_params(const Options& o) {
    FeasibilityParams fp;
    fp.m = o.m;
    fp.k = o.k;
    fp.trials = o.trials;
    fp.seed = o.seed;
    fp.tones = o.tones;
    return fp;
}

void emit(const Report& rep, const Options& o, std::ostream& out, std::ostream& err) {
    if (o.format == "json")
        out << to_json(rep).dump(2) << "\n";
    else
        out << to_text(rep);
    if (rep.error) err << "netalign: " << *rep.error << "\n";
}

int cmd_check(const Options& o, Report& rep) {
    const DelayNetwork net = load_network(o.input);
    rep.feasibility = feasibility_verdict(net, feasibility_params(o));
    switch (rep.feasibility->verdict) {
        case Verdict::feasible: return kExitOk;
        case Verdict::infeasible: return kExitNegative;
        case Verdict::unsupported: return kExitUnsupported;
    }
    return kExitInputError;
}

int cmd_simulate(const Options& o, Report& rep) {
    const DelayNetwork net = load_network(o.input);
    FeasibilityParams fp = feasibility_params(o);
    fp.tones.clear();
    rep.feasibility = feasibility_verdict(net, fp);
    if (rep.feasibility->verdict == Verdict::unsupported) {
        rep.error = "zero min-cut network; the alignment scheme needs every pair connected";
        return kExitUnsupported;
    }
    if (rep.feasibility->verdict == Verdict::infeasible && !o.force) {
        rep.error = "network is infeasible for alignment; pass --force to simulate anyway";
        return kExitNegative;
    }

    PipelineConfig pc;
    pc.n = o.n;
    pc.k = o.k;
    pc.m = o.m;
    pc.seed = o.seed;
    pc.tones = o.tones;
    rep.simulation = summarize(pbna_pipeline(net, pc));
    if (rep.feasibility->eta_constant())
        rep.simulation->warnings.push_back("eta is constant on this network; the aligned precoders lose rank");
    return rep.simulation->all_decoded() ? kExitOk : kExitNegative;
}

int cmd_oracle(const Options& o, Report& rep) {
    const DelayNetwork net = load_network(o.input);
    OracleOptions opts;
    opts.m = o.m;
    opts.k = o.k;
    opts.seed = o.seed;
    opts.trials = o.trials;
    opts.tones = o.tones;
    opts.corrupt_dp = o.corrupt_dp;
    rep.oracle = run_oracle(net, opts);
    if (const OracleCheck* bad = rep.oracle->first_failure()) {
        rep.error = bad->name + " disagree: " + bad->detail;
        return kExitMismatch;
    }
    return kExitOk;
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream& err) {
    GenParams g = o.gen;
    g.seed = o.seed;
    try {
        const std::string text = network_to_json(generate_network(g)).dump(2) + "\n";
        if (o.output.empty() || o.output == "-") {
            out << text;
        } else {
            std::ofstream file(o.output, std::ios::binary);
            if (!(file << text)) {
                err << "netalign: cannot write " << o.output << "\n";
                return kExitInputError;
            }
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "netalign: " << e.what() << "\n";
        return kExitInputError;
    }
}

using Command = int (*)(const Options&, Report&);

int run_reported(const std::string& name, Command command, const Options& o, std::ostream& out, std::ostream& err) {
    Report rep;
    rep.tool_version = tool_version();
    rep.config = run_config(name, o);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        rep.exit_status = command(o, rep);
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e)) {
            rep.error = e.what();
            rep.exit_status = kExitInputError;
        } else {
            rep.error = std::string("internal consistency check failed: ") + e.what();
            rep.exit_status = kExitMismatch;
        }
    } catch (const ZeroMinCut& e) {
        rep.error = e.what();
        rep.exit_status = kExitUnsupported;
    } catch (const std::exception& e) {
        rep.error = e.what();
        rep.exit_status = kExitInputError;
    }
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(rep, o, out, err);
    return rep.exit_status;
}

void add_common(CLI::App* sub, Options& o, bool needs_input) {
    if (needs_input) sub->add_option("network", o.input, "Network description (JSON)")->required();
    sub->add_option("--field-degree,-m", o.m, "Field GF(2^m) degree")->check(CLI::Range(1u, Field::kMaxDegree));
    sub->add_option("--block-length,-k", o.k, "Block length k (must divide 2^m - 1)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Random seed")->envname("NETALIGN_SEED");
    sub->add_option("--trials", o.trials, "Random LEK draws per test")->check(CLI::PositiveNumber);
    sub->add_option("--tones", o.tones, "Comma-separated tone indices")->delimiter(',');
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Precoding-based alignment for three-pair networks with delays", "netalign"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    Options o;
    CLI::App* check = app.add_subcommand("check", "Decide alignment feasibility");
    add_common(check, o, true);

    CLI::App* simulate = app.add_subcommand("simulate", "Precode, transmit through the network and decode");
    add_common(simulate, o, true);
    simulate->add_option("--n", o.n, "Alignment parameter n (2n+1 blocks)")->check(CLI::PositiveNumber);
    simulate->add_flag("--force", o.force, "Simulate even when the network is infeasible");

    CLI::App* oracle = app.add_subcommand("oracle", "Cross-check fast paths against brute force");
    add_common(oracle, o, true);
    oracle->add_flag("--corrupt-dp", o.corrupt_dp)->group("");

    CLI::App* gen = app.add_subcommand("gen", "Generate a random network file");
    gen->add_option("--relays", o.gen.relays, "Relay nodes")->check(CLI::NonNegativeNumber);
    gen->add_option("--edges", o.gen.edges, "Edges")->check(CLI::PositiveNumber);
    gen->add_option("--min-delay", o.gen.min_delay, "Smallest edge delay")->check(CLI::PositiveNumber);
    gen->add_option("--max-delay", o.gen.max_delay, "Largest edge delay")->check(CLI::PositiveNumber);
    gen->add_option("--retries", o.gen.retries, "Extra attempts to connect all pairs")->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", o.seed, "Random seed")->envname("NETALIGN_SEED");
    gen->add_option("--output,-o", o.output, "Output path (default stdout)");

    std::vector<const char*> argv{"netalign"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    if (check->parsed()) return run_reported("check", cmd_check, o, out, err);
    if (simulate->parsed()) return run_reported("simulate", cmd_simulate, o, out, err);
    if (oracle->parsed()) return run_reported("oracle", cmd_oracle, o, out, err);
    return cmd_gen(o, out, err);
}

}  // namespace netalign
