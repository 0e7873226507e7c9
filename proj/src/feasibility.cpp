#include "netalign/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "netalign/linalg.hpp"

namespace netalign {

const Ratio& RatioSample::get(Quantity q) const {
    switch (q) {
        case Quantity::eta: return eta;
        case Quantity::b1: return b[0];
        case Quantity::b2: return b[1];
        case Quantity::b3: return b[2];
    }
    throw std::logic_error("unknown quantity");
}

bool RatioSample::degenerate() const {
    return eta.degenerate() || std::any_of(b.begin(), b.end(), [](const Ratio& r) { return r.degenerate(); });
}

RatioSample ratios_from_values(const std::array<std::array<Element, 3>, 3>& v) {
    // v[i][j] = M_(i+1)(j+1)
    RatioSample s;
    s.eta = {v[1][0] * v[2][1] * v[0][2], v[2][0] * v[1][2] * v[0][1]};
    s.b[0] = {v[1][0] * v[0][2], v[0][0] * v[1][2]};
    s.b[1] = {v[1][1] * v[0][2], v[0][1] * v[1][2]};
    s.b[2] = {v[2][2] * v[1][0], v[2][0] * v[1][2]};
    return s;
}

RatioSample ratios_at(const TransferMatrix& tm, int p, const RootOfUnity& root) {
    const Element x = pow(root.alpha, p);
    std::array<std::array<Element, 3>, 3> v;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) v[i][j] = eval_transfer(tm[i][j], x);
    RatioSample s = ratios_from_values(v);
    s.p = p;
    return s;
}

std::string to_string(Identity id) {
    switch (id) {
        case Identity::one: return "1";
        case Identity::eta: return "eta";
        case Identity::eta_plus_one: return "eta+1";
        case Identity::eta_over_eta_plus_one: return "eta/(eta+1)";
    }
    return "?";
}

std::string to_string(Quantity q) {
    switch (q) {
        case Quantity::eta: return "eta";
        case Quantity::b1: return "b1";
        case Quantity::b2: return "b2";
        case Quantity::b3: return "b3";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::feasible: return "feasible";
        case Verdict::infeasible: return "infeasible";
        case Verdict::unsupported: return "unsupported";
    }
    return "?";
}

bool identity_holds(Identity id, const Ratio& b, const Ratio& eta) {
    switch (id) {
        case Identity::one: return b.num == b.den;
        case Identity::eta: return b.num * eta.den == eta.num * b.den;
        case Identity::eta_plus_one: return b.num * eta.den == (eta.num + eta.den) * b.den;
        case Identity::eta_over_eta_plus_one: return b.num * (eta.num + eta.den) == eta.num * b.den;
    }
    throw std::logic_error("unknown identity");
}

namespace {

int factors(Quantity q) { return q == Quantity::eta ? 3 : 2; }
int factors(Identity id) { return id == Identity::one ? 2 : 5; }

int longest_edge_path(const DelayNetwork& net) {
    const auto order = net.edge_order();
    std::vector<int> hops(static_cast<std::size_t>(net.node_count()), -1);
    for (int i = 0; i < 3; ++i) hops[static_cast<std::size_t>(net.source(i))] = 0;
    for (int e : order) {
        const Edge& edge = net.edges()[static_cast<std::size_t>(e)];
        const int t = hops[static_cast<std::size_t>(edge.tail)];
        if (t < 0) continue;
        auto& h = hops[static_cast<std::size_t>(edge.head)];
        h = std::max(h, t + 1);
    }
    int best = 0;
    for (int j = 0; j < 3; ++j) best = std::max(best, hops[static_cast<std::size_t>(net.destination(j))]);
    return best;
}

void require_full(const DelayNetwork& net) {
    const Connectivity c = validate(net);
    if (!c.full()) throw ZeroMinCut(c.missing_pairs());
}

}  // namespace

std::vector<int> FeasibilityParams::probe_tones() const {
    std::set<int> out{0};
    if (tones.empty()) {
        for (int p = 1; p < k; ++p) out.insert(p);
    } else {
        for (int p : tones) {
            if (p < 0 || p >= k) throw std::invalid_argument("tone " + std::to_string(p) + " outside [0, k)");
            out.insert(p);
        }
    }
    return {out.begin(), out.end()};
}

RatioSample DrawSet::sample(int draw, int p) const {
    RatioSample s = ratios_at(draws[static_cast<std::size_t>(draw)], p, root);
    s.draw = draw;
    return s;
}

double DrawSet::bound(int factor_count, int draw_count) const {
    const double per_draw = std::min(1.0, static_cast<double>(degree(factor_count)) / field->size());
    return std::pow(per_draw, draw_count);
}

DrawSet draw_trials(const DelayNetwork& net, const FeasibilityParams& params, int trials, std::uint64_t stream) {
    if (trials < 1) throw std::invalid_argument("at least one trial is required");
    require_full(net);

    DrawSet ds;
    ds.field = make_field(params.m);
    ds.root = root_of_unity(*ds.field, static_cast<unsigned>(params.k));
    ds.span = delay_extrema(net);
    ds.tones = params.probe_tones();
    ds.longest_path = longest_edge_path(net);

    for (int t = 0; t < trials; ++t) {
        std::seed_seq seq{static_cast<std::uint32_t>(params.seed), static_cast<std::uint32_t>(params.seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(t)};
        Rng rng(seq);
        for (int attempt = 0;; ++attempt) {
            if (attempt == params.max_resample)
                throw DegenerateLeks("draw " + std::to_string(t) + " stayed degenerate after " +
                                     std::to_string(params.max_resample) +
                                     " attempts; the field may be too small for this network");
            TransferMatrix tm = transfer_matrix(net, random_leks(net, *ds.field, rng), ds.span);
            const bool bad = std::any_of(ds.tones.begin(), ds.tones.end(),
                                         [&](int p) { return ratios_at(tm, p, ds.root).degenerate(); });
            if (bad) {
                ++ds.resamples;
                continue;
            }
            ds.draws.push_back(std::move(tm));
            break;
        }
    }
    return ds;
}

RatioSample sample_ratios(const DelayNetwork& net, const Field& field, const RootOfUnity& root, int p,
                          std::uint64_t seed, int max_resample) {
    require_full(net);
    const DelaySpan span = delay_extrema(net);
    Rng rng(seed);
    for (int attempt = 0; attempt < max_resample; ++attempt) {
        RatioSample s = ratios_at(transfer_matrix(net, random_leks(net, field, rng), span), p, root);
        if (!s.degenerate()) return s;
    }
    throw DegenerateLeks("ratio denominators vanished on " + std::to_string(max_resample) + " consecutive draws");
}

ConstancyVerdict is_constant(const DrawSet& ds, Quantity q, int p) {
    const int count = static_cast<int>(ds.draws.size());
    if (count < FeasibilityParams::kMinTrials)
        throw std::invalid_argument("constancy needs at least " + std::to_string(FeasibilityParams::kMinTrials) +
                                    " draws, got " + std::to_string(count));
    ConstancyVerdict v;
    v.draws = count;
    const Ratio base = ds.sample(0, p).get(q);
    for (int t = 1; t < count; ++t) {
        if (!ds.sample(t, p).get(q).same_as(base)) {
            v.witness = t;
            return v;
        }
    }
    v.constant = true;
    v.error_bound = ds.bound(factors(q), count - 1);
    return v;
}

std::array<MembershipVerdict, 4> membership_check(const DrawSet& ds, int i, int p) {
    std::vector<RatioSample> samples;
    for (int t = 0; t < static_cast<int>(ds.draws.size()); ++t) samples.push_back(ds.sample(t, p));

    std::array<MembershipVerdict, 4> out;
    for (std::size_t q = 0; q < kIdentities.size(); ++q) {
        MembershipVerdict& v = out[q];
        v.identity = kIdentities[q];
        for (const auto& s : samples) {
            if (!identity_holds(v.identity, s.b[static_cast<std::size_t>(i)], s.eta)) {
                v.witness = s.draw;
                break;
            }
        }
        v.holds = !v.witness;
        if (v.holds) v.error_bound = ds.bound(factors(v.identity), static_cast<int>(samples.size()));
    }
    return out;
}

bool condition_met(bool eta_constant, const std::array<MembershipVerdict, 4>& membership,
                   const ConstancyVerdict& b_constant) {
    if (eta_constant) return !b_constant.constant;
    return std::none_of(membership.begin(), membership.end(), [](const MembershipVerdict& m) { return m.holds; });
}

ToneVerdict tone_verdict(const DrawSet& ds, int p) {
    ToneVerdict tv;
    tv.p = p;
    tv.eta = is_constant(ds, Quantity::eta, p);
    for (int i = 0; i < 3; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (tv.eta.constant)
            tv.b_constant[ui] = is_constant(ds, static_cast<Quantity>(i + 1), p);
        else
            tv.membership[ui] = membership_check(ds, i, p);
        tv.condition_met[ui] = condition_met(tv.eta.constant, tv.membership[ui], tv.b_constant[ui]);
    }
    tv.feasible = tv.condition_met[0] && tv.condition_met[1] && tv.condition_met[2];
    return tv;
}

double ToneVerdict::error_bound() const {
    double sum = eta.error_bound;
    for (std::size_t i = 0; i < 3; ++i) {
        sum += b_constant[i].error_bound;
        for (const auto& m : membership[i]) sum += m.error_bound;
    }
    return sum;
}

namespace {

std::vector<std::string> compare_tones(const ToneVerdict& ref, const ToneVerdict& tv) {
    std::vector<std::string> out;
    const std::string at = "tone " + std::to_string(tv.p) + " vs tone " + std::to_string(ref.p) + ": ";
    if (ref.eta.constant != tv.eta.constant) {
        out.push_back(at + "eta constancy differs");
        return out;
    }
    for (std::size_t i = 0; i < 3; ++i) {
        const std::string pair = "b" + std::to_string(i + 1);
        if (ref.eta.constant) {
            if (ref.b_constant[i].constant != tv.b_constant[i].constant)
                out.push_back(at + pair + " constancy differs");
            continue;
        }
        for (std::size_t q = 0; q < 4; ++q) {
            if (ref.membership[i][q].holds != tv.membership[i][q].holds)
                out.push_back(at + pair + " = " + to_string(kIdentities[q]) + " holds on one tone only");
        }
    }
    if (out.empty() && ref.feasible != tv.feasible) out.push_back(at + "overall verdict differs");
    return out;
}

}  // namespace

FeasibilityReport feasibility_verdict(const DelayNetwork& net, const FeasibilityParams& params) {
    if (params.trials < FeasibilityParams::kMinTrials)
        throw std::invalid_argument("at least " + std::to_string(FeasibilityParams::kMinTrials) +
                                    " trials are required, got " + std::to_string(params.trials));
    FeasibilityReport r;
    r.m = params.m;
    r.k = params.k;
    r.trials = params.trials;
    r.seed = params.seed;

    const Connectivity c = validate(net);
    if (!c.full()) {
        r.verdict = Verdict::unsupported;
        r.missing_pairs = c.missing_pairs();
        return r;
    }

    const DrawSet ds = draw_trials(net, params, params.trials);
    r.resamples = ds.resamples;
    for (int p : ds.tones) r.tones.push_back(tone_verdict(ds, p));

    const ToneVerdict& ref = r.tones.front();
    for (std::size_t q = 1; q < r.tones.size(); ++q) {
        auto diffs = compare_tones(ref, r.tones[q]);
        r.anomalies.insert(r.anomalies.end(), diffs.begin(), diffs.end());
    }
    for (const auto& tv : r.tones) r.error_bound += tv.error_bound();
    r.verdict = ref.feasible ? Verdict::feasible : Verdict::infeasible;
    return r;
}

SnVerdict sn_oracle(const DelayNetwork& net, int i, int p, int n, const FeasibilityParams& params, int budget) {
    if (n != 1 && n != 2) throw std::invalid_argument("the S_n oracle supports n = 1 and n = 2 only");
    if (i < 0 || i > 2) throw std::invalid_argument("condition index must be 0, 1 or 2");
    const int unknowns = n == 1 ? 2 : 5;
    constexpr int verify = 8;
    if (budget < unknowns + verify)
        throw Error("S_n oracle budget of " + std::to_string(budget) + " draws is below the " +
                    std::to_string(unknowns + verify) + " samples it needs");

    FeasibilityParams local = params;
    local.tones = {p};
    const DrawSet ds = draw_trials(net, local, budget, 0x5a5a5a5aULL + static_cast<std::uint64_t>(i));

    std::vector<RatioSample> samples;
    for (int t = 0; t < budget; ++t) samples.push_back(ds.sample(t, p));
    const auto ui = static_cast<std::size_t>(i);

    SnVerdict v;
    v.n = n;
    v.samples = budget;
    v.eta_constant = std::all_of(samples.begin(), samples.end(),
                                 [&](const RatioSample& s) { return s.eta.same_as(samples.front().eta); });
    if (v.eta_constant) {
        // f(c)/g(c) ranges over every constant.
        v.member = std::all_of(samples.begin(), samples.end(),
                               [&](const RatioSample& s) { return s.b[ui].same_as(samples.front().b[ui]); });
        if (v.member) v.fit = {samples.front().b[ui].value()};
        return v;
    }

    if (n == 1) {
        const RatioSample& a = samples.front();
        const auto other = std::find_if(samples.begin(), samples.end(),
                                        [&](const RatioSample& s) { return !s.eta.same_as(a.eta); });
        const RatioSample& b = *other;
        const Element h1 = (a.b[ui].value() - b.b[ui].value()) / (a.eta.value() - b.eta.value());
        const Element h0 = a.b[ui].value() - h1 * a.eta.value();
        v.member = !(h0.is_zero() && h1.is_zero()) &&
                   std::all_of(samples.begin(), samples.end(), [&](const RatioSample& s) {
                       return s.b[ui].num * s.eta.den == (h0 * s.eta.den + h1 * s.eta.num) * s.b[ui].den;
                   });
        if (v.member) v.fit = {h0, h1};
        return v;
    }

    Matrix system(budget, 5);
    for (int t = 0; t < budget; ++t) {
        const Element b = samples[static_cast<std::size_t>(t)].b[ui].value();
        const Element eta = samples[static_cast<std::size_t>(t)].eta.value();
        system.row(t) << b, b * eta, Element(1), eta, eta * eta;
    }
    const Matrix kernel = null_space(system);
    v.member = kernel.cols() > 0;
    if (v.member) v.fit.assign(kernel.col(0).begin(), kernel.col(0).end());
    return v;
}

bool sn_consistent(const SnVerdict& sn, const ToneVerdict& reduced, int i) {
    const auto ui = static_cast<std::size_t>(i);
    if (sn.eta_constant != reduced.eta.constant) return false;
    if (sn.eta_constant) return sn.member == reduced.b_constant[ui].constant;
    const auto& m = reduced.membership[ui];
    const bool any = std::any_of(m.begin(), m.end(), [](const MembershipVerdict& x) { return x.holds; });
    const bool low_degree = m[0].holds || m[1].holds || m[2].holds;
    if (sn.n == 2) return sn.member == any;
    return (!sn.member || any) && (!low_degree || sn.member);
}

}  // namespace netalign
