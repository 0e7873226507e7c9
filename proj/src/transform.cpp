#include "netalign/transform.hpp"

#include <stdexcept>

namespace netalign {

Matrix circulant(const TransferPoly& poly, int k) {
    const int spread = static_cast<int>(poly.coeffs.size()) - 1;
    if (k < spread + 1)
        throw std::invalid_argument("block length " + std::to_string(k) + " is shorter than d_max + 1 = " +
                                    std::to_string(spread + 1));
    Matrix m = zeros(k, k);
    for (int r = 0; r < k; ++r)
        for (int d = 0; d <= spread; ++d) m(r, (r + d) % k) = poly.coeffs[static_cast<std::size_t>(d)];
    return m;
}

DiagSpectrum diagonalize(const TransferPoly& poly, const RootOfUnity& root) {
    const int k = static_cast<int>(root.k);
    DiagSpectrum s{Vector(k)};
    for (int r = 0; r < k; ++r) s.entries(r) = eval_transfer(poly, pow(root.alpha, r));
    return s;
}

std::vector<Element> add_cp(std::span<const Element> block, int cp) {
    if (cp < 0 || static_cast<std::size_t>(cp) >= block.size())
        throw std::invalid_argument("cyclic prefix length must be in [0, k)");
    std::vector<Element> frame(block.end() - cp, block.end());
    frame.insert(frame.end(), block.begin(), block.end());
    return frame;
}

std::vector<Element> strip_cp(std::span<const Element> frame, int k, int cp) {
    if (cp < 0 || k < 1 || frame.size() != static_cast<std::size_t>(k + cp))
        throw std::invalid_argument("frame length " + std::to_string(frame.size()) + " != k + d_max = " +
                                    std::to_string(k + cp));
    return {frame.begin() + cp, frame.end()};
}

std::optional<std::string> block_length_warning(int k, int cp) {
    if (k >= 4 * cp) return std::nullopt;
    return "block length " + std::to_string(k) + " is under 4 * d_max = " + std::to_string(4 * cp) +
           "; cyclic prefix overhead is " + std::to_string(cp) + "/" + std::to_string(k + cp);
}

}  // namespace netalign
