#pragma once

// Randomised decision of alignment feasibility from the ratios
//
//   eta = M21 M32 M13 / (M31 M23 M12)
//   b1  = M21 M13 / (M11 M23)
//   b2  = M22 M13 / (M12 M23)
//   b3  = M33 M21 / (M31 M23)
//
// evaluated at (eps, alpha^p) for random LEK draws eps. Each b_i is the
// ratio that T_i's decode matrix sees against the powers of eta, so b3 is
// the eta-multiple of M33 M12 / (M13 M32). Condition i is met
// when b_i avoids {1, eta, eta+1, eta/(eta+1)} (eta not a constant) or when
// b_i is not a constant (eta a constant); alignment is feasible iff all
// three conditions are met.
//
// Every comparison is a cross-multiplied polynomial identity between
// transfer-value products, so no test ever divides. Negative outcomes ("not
// constant", "identity violated") come with the index of a violating draw and
// are certain; positive outcomes are probabilistic, with a Schwartz-Zippel
// bound (degree / 2^m)^draws attached.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netalign/galois.hpp"
#include "netalign/netgraph.hpp"

namespace netalign {

// A field fraction kept unreduced.
struct Ratio {
    Element num;
    Element den;

    bool degenerate() const { return den.is_zero(); }
    Element value() const { return num / den; }
    // num * other.den == other.num * den
    bool same_as(const Ratio& other) const { return num * other.den == other.num * den; }
};

enum class Quantity { eta, b1, b2, b3 };

struct RatioSample {
    int draw = 0;
    int p = 0;
    Ratio eta;
    std::array<Ratio, 3> b;

    const Ratio& get(Quantity q) const;
    bool degenerate() const;
};

// Ratios from transfer values v[i][j] = M_ij(eps, x).
RatioSample ratios_from_values(const std::array<std::array<Element, 3>, 3>& v);
RatioSample ratios_at(const TransferMatrix& tm, int p, const RootOfUnity& root);

enum class Identity { one, eta, eta_plus_one, eta_over_eta_plus_one };

inline constexpr std::array<Identity, 4> kIdentities = {Identity::one, Identity::eta, Identity::eta_plus_one,
                                                        Identity::eta_over_eta_plus_one};

std::string to_string(Identity id);
std::string to_string(Quantity q);

// Cross-multiplied test of b_i == <identity>(eta) on one sample.
bool identity_holds(Identity id, const Ratio& b, const Ratio& eta);

struct FeasibilityParams {
    unsigned m = 16;
    int k = 5;
    int trials = 20;
    std::uint64_t seed = 0;
    // Tones to probe besides p = 0; empty means all of 0..k-1.
    std::vector<int> tones;
    int max_resample = 32;

    static constexpr int kMinTrials = 8;

    // Sorted probe set, always containing 0.
    std::vector<int> probe_tones() const;
};

// Independent LEK draws shared by every probed tone; each draw is resampled
// (up to max_resample times) until no ratio denominator vanishes on any tone.
struct DrawSet {
    FieldPtr field;
    RootOfUnity root;
    DelaySpan span;
    std::vector<int> tones;
    std::vector<TransferMatrix> draws;
    int resamples = 0;
    int longest_path = 0;  // edges on the longest source-to-destination path

    RatioSample sample(int draw, int p) const;
    // Total degree of a product of `factors` transfer values in the LEKs.
    int degree(int factors) const { return factors * (longest_path + 1); }
    double bound(int factors, int draws) const;
};

// Throws ZeroMinCut when some pair is disconnected, DegenerateLeks when a
// draw stays degenerate after max_resample attempts, std::invalid_argument on
// bad parameters. `stream` separates independent uses of the same seed.
DrawSet draw_trials(const DelayNetwork& net, const FeasibilityParams& params, int trials,
                    std::uint64_t stream = 0);

// One non-degenerate draw at tone p.
RatioSample sample_ratios(const DelayNetwork& net, const Field& field, const RootOfUnity& root, int p,
                          std::uint64_t seed, int max_resample = 32);

struct ConstancyVerdict {
    bool constant = false;
    int draws = 0;
    // Draw whose value differs from draw 0 (certificate of non-constancy).
    std::optional<int> witness;
    // Probability bound of a wrong "constant" verdict (0 when not constant).
    double error_bound = 0.0;
};

ConstancyVerdict is_constant(const DrawSet& ds, Quantity q, int p);

struct MembershipVerdict {
    Identity identity = Identity::one;
    bool holds = false;
    std::optional<int> witness;  // violating draw
    double error_bound = 0.0;
};

std::array<MembershipVerdict, 4> membership_check(const DrawSet& ds, int i, int p);

struct ToneVerdict {
    int p = 0;
    ConstancyVerdict eta;
    // Filled when eta is not constant.
    std::array<std::array<MembershipVerdict, 4>, 3> membership{};
    // Filled when eta is constant.
    std::array<ConstancyVerdict, 3> b_constant{};
    std::array<bool, 3> condition_met{};
    bool feasible = false;

    double error_bound() const;
};

// The case split, as a pure function of the sub-verdicts.
bool condition_met(bool eta_constant, const std::array<MembershipVerdict, 4>& membership,
                   const ConstancyVerdict& b_constant);

ToneVerdict tone_verdict(const DrawSet& ds, int p);

enum class Verdict { feasible, infeasible, unsupported };

std::string to_string(Verdict v);

struct FeasibilityReport {
    Verdict verdict = Verdict::unsupported;
    unsigned m = 16;
    int k = 5;
    int trials = 0;
    std::uint64_t seed = 0;
    int resamples = 0;
    // Unsupported: the disconnected (i, j) pairs.
    std::vector<std::pair<int, int>> missing_pairs;
    // Verdict at p = 0 first, then the other probed tones.
    std::vector<ToneVerdict> tones;
    // Cross-tone disagreements; expected to stay empty.
    std::vector<std::string> anomalies;
    // Sum of the bounds of every probabilistic (positive) sub-verdict.
    double error_bound = 0.0;

    bool eta_constant() const { return !tones.empty() && tones.front().eta.constant; }
    bool feasible() const { return verdict == Verdict::feasible; }
};

// Runs the case split at p = 0 and every probed tone and flags any tone whose
// verdict differs from p = 0. A zero min-cut network yields an unsupported
// report instead of an exception.
FeasibilityReport feasibility_verdict(const DelayNetwork& net, const FeasibilityParams& params);

// Brute-force membership of b_i(p) in
//   S_n = { f(eta)/g(eta) : deg f <= n, deg g <= n-1, f g != 0 }
// for n in {1, 2}. n = 1 fits b = h0 + h1 eta through two samples and checks
// the remaining ones; n = 2 solves for (f, g) as the null space of the
// linear system b g(eta) - f(eta) = 0 over all samples. A constant eta
// reduces membership to constancy of b_i.
struct SnVerdict {
    int n = 1;
    bool member = false;
    bool eta_constant = false;
    int samples = 0;
    // Coefficients of the fit when member: (h0, h1) for n = 1,
    // (g0, g1, f0, f1, f2) for n = 2.
    std::vector<Element> fit;
};

// `budget` caps the number of draws; throws Error when it is too small for
// the required number of non-degenerate samples.
SnVerdict sn_oracle(const DelayNetwork& net, int i, int p, int n, const FeasibilityParams& params,
                    int budget = 24);

// Whether an S_n verdict agrees with the reduced test at the same tone:
// membership in S_2 must match "some identity holds" (or constancy of b_i
// when eta is constant); membership in S_1 must imply it, and the identities
// 1, eta, eta+1 must imply membership in S_1.
bool sn_consistent(const SnVerdict& sn, const ToneVerdict& reduced, int i);

}  // namespace netalign
