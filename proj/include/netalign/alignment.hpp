#pragma once

// Per-tone precoding-based alignment over 2n+1 blocks of time-varying LEKs.
//
// On tone p every S_i -> T_j channel is diagonal across blocks,
// M_ij^p = diag(M_ij(eps_1, alpha^p), ..., M_ij(eps_{2n+1}, alpha^p)).
// Precoders are Vandermonde-like in U^p = M12^-1 M32 M31^-1 M21 M23^-1 M13:
//
//   V1 = [W, U W, ..., U^n W]
//   V2 = R [W, U W, ..., U^(n-1) W],   R = M13 M23^-1
//   V3 = S [U W, ..., U^n W],          S = M12 M32^-1
//
// with W the all-ones column. These make S_2 and S_3 interference coincide
// at T_1 and fold S_3 (resp. S_2) interference into S_1's span at T_2 (T_3).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "netalign/galois.hpp"
#include "netalign/netgraph.hpp"

namespace netalign {

// Transfer polynomials for each LEK block of a schedule.
std::vector<TransferMatrix> block_transfers(const DelayNetwork& net, const LekSchedule& sched,
                                            const DelaySpan& span);

struct ToneChannel {
    int p = 0;
    // gains[i][j](l) = M_ij(eps_l, alpha^p).
    std::array<std::array<Vector, 3>, 3> gains;

    const Vector& m(int i, int j) const { return gains[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    Eigen::Index blocks() const { return gains[0][0].size(); }
};

// Throws DegenerateLeks when M12, M31, M23 or M32 vanishes on some block.
ToneChannel tone_channel(const std::vector<TransferMatrix>& blocks, int p, const RootOfUnity& root);
ToneChannel tone_channel(const DelayNetwork& net, const LekSchedule& sched, const DelaySpan& span, int p,
                         const RootOfUnity& root);

struct PrecodeSet {
    int p = 0;
    int n = 0;
    Vector u;  // diagonal of U^p
    Vector r;  // diagonal of R^p
    Vector s;  // diagonal of S^p
    Matrix v1;  // (2n+1) x (n+1)
    Matrix v2;  // (2n+1) x n
    Matrix v3;  // (2n+1) x n

    const Matrix& v(int i) const { return i == 0 ? v1 : i == 1 ? v2 : v3; }
    // Symbols carried by S_i per tone: n+1 for S_1, n otherwise.
    static int streams(int i, int n) { return i == 0 ? n + 1 : n; }
};

PrecodeSet build_precoders(const ToneChannel& tc, int n);

// M_ij^p V_i.
Matrix received_block(const ToneChannel& tc, const PrecodeSet& pc, int i, int j);

// [M_jj V_j | interference basis] at T_j; the basis is M21 V2 at T_1, M12 V1
// at T_2 and M13 V1 at T_3.
Matrix decode_matrix(const ToneChannel& tc, const PrecodeSet& pc, int j);

struct AlignmentVerdict {
    Eigen::Index required_rank = 0;
    // Span containments: M31 V3 in M21 V2, M32 V3 in M12 V1, M23 V2 in M13 V1.
    std::array<bool, 3> contained{};
    // Exact column identities behind the containments.
    std::array<bool, 3> columns_match{};
    std::array<Eigen::Index, 3> decode_rank{};

    bool aligned() const { return contained[0] && contained[1] && contained[2]; }
    bool full_rank(int j) const { return decode_rank[static_cast<std::size_t>(j)] == required_rank; }
    bool ok() const { return aligned() && full_rank(0) && full_rank(1) && full_rank(2); }
    // First failing condition, empty when ok().
    std::string failure() const;
};

AlignmentVerdict check_alignment(const ToneChannel& tc, const PrecodeSet& pc);

struct ToneDecode {
    std::array<std::optional<Vector>, 3> recovered;
    std::array<Eigen::Index, 3> rank{};

    bool success(int j) const { return recovered[static_cast<std::size_t>(j)].has_value(); }
};

// Solves decode_matrix(j) z = received[j] exactly and keeps the desired
// coordinates. A singular decode matrix yields no symbols, only its rank.
ToneDecode decode(const ToneChannel& tc, const PrecodeSet& pc, const std::array<Vector, 3>& received);

}  // namespace netalign
