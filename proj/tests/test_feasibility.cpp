#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "netalign/feasibility.hpp"
#include "support.hpp"

using namespace netalign;

namespace {

FeasibilityParams params(std::uint64_t seed = 0) {
    FeasibilityParams fp;
    fp.seed = seed;
    return fp;
}

bool holds(const ToneVerdict& tv, int i, Identity id) {
    for (const auto& m : tv.membership[static_cast<std::size_t>(i)])
        if (m.identity == id) return m.holds;
    return false;
}

int held_count(const ToneVerdict& tv, int i) {
    int n = 0;
    for (const auto& m : tv.membership[static_cast<std::size_t>(i)]) n += m.holds;
    return n;
}

}  // namespace

TEST_CASE("ratios from transfer values") {
    const auto f = make_field(16);
    Rng rng(1);
    std::array<std::array<Element, 3>, 3> v;
    for (auto& row : v)
        for (auto& x : row) x = f->random_nonzero(rng);
    const RatioSample s = ratios_from_values(v);
    // Straight from the definitions with 1-based names.
    auto M = [&](int i, int j) { return v[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]; };
    CHECK(s.eta.value() == M(2, 1) * M(3, 2) * M(1, 3) / (M(3, 1) * M(2, 3) * M(1, 2)));
    CHECK(s.b[0].value() == M(2, 1) * M(1, 3) / (M(1, 1) * M(2, 3)));
    CHECK(s.b[1].value() == M(2, 2) * M(1, 3) / (M(1, 2) * M(2, 3)));
    CHECK(s.b[2].value() == M(3, 3) * M(1, 2) / (M(1, 3) * M(3, 2)) * s.eta.value());
    CHECK(s.b[2].value() == M(3, 3) * M(2, 1) / (M(3, 1) * M(2, 3)));
    CHECK_FALSE(s.degenerate());
    v[2][0] = f->zero();  // M31 sits in eta's denominator
    CHECK(ratios_from_values(v).degenerate());
}

TEST_CASE("cross-multiplied identities agree with division") {
    const auto f = make_field(16);
    Rng rng(2);
    for (int t = 0; t < 200; ++t) {
        const Ratio eta{f->random_nonzero(rng), f->random_nonzero(rng)};
        const Element e = eta.value();
        if (e == f->one()) continue;
        const Element scale = f->random_nonzero(rng);
        auto as_ratio = [&](const Element& x) { return Ratio{x * scale, scale}; };
        CHECK(identity_holds(Identity::one, as_ratio(f->one()), eta));
        CHECK(identity_holds(Identity::eta, as_ratio(e), eta));
        CHECK(identity_holds(Identity::eta_plus_one, as_ratio(e + f->one()), eta));
        CHECK(identity_holds(Identity::eta_over_eta_plus_one, as_ratio(e / (e + f->one())), eta));
        const Ratio other = as_ratio(f->random_nonzero(rng));
        const Element o = other.value();
        CHECK(identity_holds(Identity::one, other, eta) == (o == f->one()));
        CHECK(identity_holds(Identity::eta, other, eta) == (o == e));
        CHECK(identity_holds(Identity::eta_plus_one, other, eta) == (o == e + f->one()));
        CHECK(identity_holds(Identity::eta_over_eta_plus_one, other, eta) == (o == e / (e + f->one())));
    }
}

TEST_CASE("probe tones always include p = 0") {
    FeasibilityParams fp;
    CHECK(fp.probe_tones() == std::vector<int>{0, 1, 2, 3, 4});
    fp.tones = {3, 1};
    CHECK(fp.probe_tones() == std::vector<int>{0, 1, 3});
    fp.tones = {5};
    CHECK_THROWS_AS(fp.probe_tones(), std::invalid_argument);
}

TEST_CASE("minimum trial guard") {
    FeasibilityParams fp = params();
    fp.trials = 1;
    CHECK_THROWS_AS(feasibility_verdict(fixtures::generated(0), fp), std::invalid_argument);
    const DrawSet few = draw_trials(fixtures::generated(0), params(), 3);
    CHECK_THROWS_AS(is_constant(few, Quantity::eta, 0), std::invalid_argument);
}

TEST_CASE("sampling requires every pair to be connected") {
    const auto f = make_field(16);
    const RootOfUnity root = root_of_unity(*f, 5);
    CHECK_THROWS_AS(sample_ratios(fixtures::diagonal(), *f, root, 0, 1), ZeroMinCut);
    CHECK_THROWS_AS(draw_trials(fixtures::diagonal(), params(), 8), ZeroMinCut);
    const RatioSample s = sample_ratios(fixtures::generated(0), *f, root, 2, 1);
    CHECK_FALSE(s.degenerate());
}

TEST_CASE("a full shared bottleneck makes eta == 1 on every draw") {
    const auto f = make_field(16);
    const RootOfUnity root = root_of_unity(*f, 5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const RatioSample s = sample_ratios(fixtures::bottleneck_all(), *f, root, 0, seed);
        CHECK(s.eta.value() == f->one());
    }
}

TEST_CASE("eta varies on a generic network") {
    const DrawSet ds = draw_trials(fixtures::generated(1), params(), 8);
    const ConstancyVerdict v = is_constant(ds, Quantity::eta, 0);
    CHECK_FALSE(v.constant);
    REQUIRE(v.witness.has_value());
    CHECK_FALSE(ds.sample(*v.witness, 0).eta.same_as(ds.sample(0, 0).eta));
    CHECK(v.error_bound == 0.0);
}

TEST_CASE("single-path pairs can still give a non-constant eta") {
    // Each M_ij is a single path here; eta = a1 g3 / (a3 g1) keeps LEKs.
    const DrawSet ds = draw_trials(fixtures::bottleneck_b1(), params(), 8);
    CHECK_FALSE(is_constant(ds, Quantity::eta, 0).constant);
}

TEST_CASE("draws are reproducible and stream-separated") {
    const auto net = fixtures::generated(2);
    const DrawSet a = draw_trials(net, params(5), 8), b = draw_trials(net, params(5), 8);
    const DrawSet c = draw_trials(net, params(5), 8, 1);
    for (int t = 0; t < 8; ++t) CHECK(a.sample(t, 1).eta.same_as(b.sample(t, 1).eta));
    CHECK_FALSE(a.sample(0, 1).eta.same_as(c.sample(0, 1).eta));
}

TEST_CASE("b1 == 1 construction") {
    const FeasibilityReport r = feasibility_verdict(fixtures::bottleneck_b1(), params());
    CHECK(r.verdict == Verdict::infeasible);
    CHECK_FALSE(r.eta_constant());
    CHECK(r.anomalies.empty());
    for (const auto& tv : r.tones) {
        CHECK(holds(tv, 0, Identity::one));
        CHECK(held_count(tv, 0) == 1);
        CHECK_FALSE(tv.condition_met[0]);
        CHECK(holds(tv, 2, Identity::one));  // T3 sees the same bottleneck
        CHECK(tv.condition_met[1]);
        CHECK(tv.membership[0][0].error_bound > 0.0);
        CHECK(tv.membership[0][0].error_bound < 1e-12);
        CHECK(tv.membership[0][1].witness.has_value());
    }
    CHECK(r.error_bound > 0.0);
    CHECK(r.error_bound < 1e-12);
}

TEST_CASE("b1 == eta construction") {
    const FeasibilityReport r = feasibility_verdict(fixtures::shared_pair(), params());
    CHECK(r.verdict == Verdict::infeasible);
    CHECK(r.anomalies.empty());
    for (const auto& tv : r.tones) {
        CHECK(holds(tv, 0, Identity::eta));
        CHECK(held_count(tv, 0) == 1);
    }
}

TEST_CASE("b1 == eta / (eta + 1) construction") {
    const FeasibilityReport r = feasibility_verdict(fixtures::split_relays(), params());
    CHECK(r.verdict == Verdict::infeasible);
    CHECK(r.anomalies.empty());
    for (const auto& tv : r.tones) {
        CHECK_FALSE(tv.eta.constant);
        CHECK(holds(tv, 0, Identity::eta_over_eta_plus_one));
        CHECK(held_count(tv, 0) == 1);
    }
}

TEST_CASE("shared bottleneck: constant eta, feasibility follows b_i constancy") {
    SUBCASE("every b_i constant") {
        const FeasibilityReport r = feasibility_verdict(fixtures::bottleneck_all(), params());
        CHECK(r.verdict == Verdict::infeasible);
        CHECK(r.eta_constant());
        for (const auto& tv : r.tones)
            for (int i = 0; i < 3; ++i) {
                CHECK(tv.b_constant[static_cast<std::size_t>(i)].constant);
                CHECK_FALSE(tv.condition_met[static_cast<std::size_t>(i)]);
            }
    }
    SUBCASE("direct edges make every b_i vary") {
        const FeasibilityReport r = feasibility_verdict(fixtures::bottleneck_direct(), params());
        CHECK(r.verdict == Verdict::feasible);
        CHECK(r.eta_constant());
        for (const auto& tv : r.tones)
            for (int i = 0; i < 3; ++i) {
                CHECK_FALSE(tv.b_constant[static_cast<std::size_t>(i)].constant);
                CHECK(tv.b_constant[static_cast<std::size_t>(i)].witness.has_value());
            }
        CHECK(r.error_bound > 0.0);  // the "eta constant" verdicts are probabilistic
    }
}

TEST_CASE("zero min-cut is reported as unsupported") {
    const FeasibilityReport r = feasibility_verdict(fixtures::diagonal(), params());
    CHECK(r.verdict == Verdict::unsupported);
    CHECK(r.missing_pairs.size() == 6);
    CHECK(r.tones.empty());
}

TEST_CASE("generic networks: every identity violated, verdicts agree across tones") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const FeasibilityReport r = feasibility_verdict(fixtures::generated(seed), params(seed));
        CHECK(r.anomalies.empty());
        REQUIRE(r.tones.size() == 5);
        CHECK(r.tones.front().p == 0);
        for (const auto& tv : r.tones) CHECK(tv.feasible == r.tones.front().feasible);
    }
    const FeasibilityReport r = feasibility_verdict(fixtures::generated(0), params());
    CHECK(r.feasible());
    for (const auto& tv : r.tones)
        for (int i = 0; i < 3; ++i) CHECK(held_count(tv, i) == 0);
}

TEST_CASE("the case split is a pure function of the sub-verdicts") {
    std::array<MembershipVerdict, 4> none{}, one{};
    one[2].holds = true;
    ConstancyVerdict constant, varying;
    constant.constant = true;
    CHECK(condition_met(false, none, constant));
    CHECK_FALSE(condition_met(false, one, varying));
    CHECK(condition_met(true, one, varying));
    CHECK_FALSE(condition_met(true, none, constant));
}

TEST_CASE("error bounds shrink with more draws") {
    const DrawSet ds = draw_trials(fixtures::bottleneck_b1(), params(), 8);
    CHECK(ds.longest_path == 3);
    CHECK(ds.degree(2) == 8);
    CHECK(ds.bound(2, 8) < ds.bound(2, 4));
    CHECK(ds.bound(2, 1) == doctest::Approx(8.0 / 65536.0));
}

TEST_CASE("S_n oracle") {
    const FeasibilityParams fp = params(3);
    SUBCASE("b1 == 1 lies in S_1 with the fit (1, 0)") {
        const SnVerdict sn = sn_oracle(fixtures::bottleneck_b1(), 0, 1, 1, fp);
        CHECK(sn.member);
        REQUIRE(sn.fit.size() == 2);
        CHECK(sn.fit[0].is_one());
        CHECK(sn.fit[1].is_zero());
        CHECK(sn_oracle(fixtures::bottleneck_b1(), 0, 1, 2, fp).member);
    }
    SUBCASE("b1 == eta / (eta + 1) lies in S_2 but not S_1") {
        CHECK_FALSE(sn_oracle(fixtures::split_relays(), 0, 1, 1, fp).member);
        CHECK(sn_oracle(fixtures::split_relays(), 0, 1, 2, fp).member);
    }
    SUBCASE("generic feasible network: no membership") {
        for (int i = 0; i < 3; ++i) {
            CHECK_FALSE(sn_oracle(fixtures::generated(0), i, 2, 1, fp).member);
            CHECK_FALSE(sn_oracle(fixtures::generated(0), i, 2, 2, fp).member);
        }
    }
    SUBCASE("constant eta reduces to constancy") {
        const SnVerdict sn = sn_oracle(fixtures::bottleneck_all(), 1, 0, 2, fp);
        CHECK(sn.eta_constant);
        CHECK(sn.member);
        CHECK_FALSE(sn_oracle(fixtures::bottleneck_direct(), 1, 0, 2, fp).member);
    }
    SUBCASE("parameter and budget errors") {
        CHECK_THROWS_AS(sn_oracle(fixtures::generated(0), 0, 0, 3, fp), std::invalid_argument);
        CHECK_THROWS_AS(sn_oracle(fixtures::generated(0), 3, 0, 1, fp), std::invalid_argument);
        CHECK_THROWS_AS(sn_oracle(fixtures::generated(0), 0, 0, 2, fp, 5), Error);
    }
}

TEST_CASE("S_n verdicts never contradict the reduced test") {
    const FeasibilityParams fp = params(4);
    const std::vector<DelayNetwork> nets{fixtures::bottleneck_b1(), fixtures::bottleneck_all(),
                                         fixtures::bottleneck_direct(), fixtures::split_relays(),
                                         fixtures::shared_pair(), fixtures::generated(9)};
    for (const auto& net : nets) {
        const DrawSet ds = draw_trials(net, fp, fp.trials);
        for (int p : {0, 2}) {
            const ToneVerdict tv = tone_verdict(ds, p);
            for (int i = 0; i < 3; ++i)
                for (int n : {1, 2}) {
                    CAPTURE(i);
                    CAPTURE(n);
                    CAPTURE(p);
                    CAPTURE(&net - nets.data());
                    CHECK(sn_consistent(sn_oracle(net, i, p, n, fp), tv, i));
                }
        }
    }
}
