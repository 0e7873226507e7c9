#pragma once

// Cyclic-prefix framing turns the delay channel of one block into a k x k
// circulant, which the DFT matrix diagonalises.
//
// Block vectors use descending time order, [x^(k-1), ..., x^(0)]: index r
// holds time k-1-r. Frames on the wire (add_cp / strip_cp) are in ascending
// transmit order.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netalign/galois.hpp"
#include "netalign/netgraph.hpp"

namespace netalign {

// Row r, column c holds coeffs[(c - r) mod k] when that index is <= d_max,
// zero otherwise. Throws std::invalid_argument when k < d_max + 1.
Matrix circulant(const TransferPoly& poly, int k);

// Eigenvalues of circulant(poly, k). Position r (the r-th diagonal entry of
// the diagonalised matrix) is the tone-r value M(alpha^r), i.e. the entry
// with l = k-1-r in sum_d alpha^((k-1-l) d) M^(d).
struct DiagSpectrum {
    Vector entries;

    int k() const { return static_cast<int>(entries.size()); }
    const Element& tone(int r) const { return entries(r); }
    const Element& at_l(int l) const { return entries(k() - 1 - l); }
};

DiagSpectrum diagonalize(const TransferPoly& poly, const RootOfUnity& root);

// Prepends the last `cp` symbols. Throws std::invalid_argument when cp >= size.
std::vector<Element> add_cp(std::span<const Element> block, int cp);
// Drops the first `cp` symbols of a (k + cp)-symbol frame.
std::vector<Element> strip_cp(std::span<const Element> frame, int k, int cp);

// Warning text when the prefix overhead cp / (k + cp) is large (k < 4 cp).
std::optional<std::string> block_length_warning(int k, int cp);

}  // namespace netalign
