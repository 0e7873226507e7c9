#pragma once

// Exact Gaussian elimination over GF(2^m): rank, linear solves, inverses and
// null spaces. Every nonzero entry is a valid pivot, so no pivoting strategy
// beyond "first nonzero" is needed.

#include <stdexcept>
#include <string>
#include <vector>

#include "netalign/galois.hpp"

namespace netalign {

// Raised when a solve or inverse meets a singular matrix.
class RankDeficiency : public std::runtime_error {
public:
    RankDeficiency(Eigen::Index achieved, Eigen::Index required)
        : std::runtime_error("rank deficient: rank " + std::to_string(achieved) + " < " +
                             std::to_string(required)),
          achieved_(achieved),
          required_(required) {}

    Eigen::Index achieved() const { return achieved_; }
    Eigen::Index required() const { return required_; }

private:
    Eigen::Index achieved_;
    Eigen::Index required_;
};

struct Echelon {
    Matrix reduced;                    // reduced row echelon form
    std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
    Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

// Reduced row echelon form of the first `cols` columns of a (all columns by
// default); the remaining columns are carried along as an augmented block.
template <typename Derived>
Echelon row_reduce(const Eigen::MatrixBase<Derived>& a, Eigen::Index cols = -1) {
    Echelon out{a.eval(), {}};
    Matrix& m = out.reduced;
    const Eigen::Index reduce_cols = cols < 0 ? m.cols() : cols;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < reduce_cols && row < m.rows(); ++col) {
        Eigen::Index pivot = row;
        while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        m.row(row).swap(m.row(pivot));
        const Element scale = inverse(m(row, col));
        m.row(row) *= scale;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            const Element factor = m(r, col);
            m.row(r) -= factor * m.row(row);
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& a) {
    return row_reduce(a).rank();
}

// Unique solution of a x = b for square full-rank a; throws RankDeficiency.
template <typename DA, typename DB>
Matrix solve(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve: matrix is not square");
    if (b.rows() != a.rows()) throw std::invalid_argument("solve: right-hand side has wrong height");
    Matrix aug(a.rows(), a.cols() + b.cols());
    aug << a, b;
    Echelon e = row_reduce(aug, a.cols());
    if (e.rank() < a.cols()) throw RankDeficiency(e.rank(), a.cols());
    return e.reduced.rightCols(b.cols());
}

template <typename Derived>
Matrix inverse(const Eigen::MatrixBase<Derived>& a) {
    return solve(a, identity(a.rows()));
}

// Basis of {x : a x = 0}, one column per free variable.
template <typename Derived>
Matrix null_space(const Eigen::MatrixBase<Derived>& a) {
    const Echelon e = row_reduce(a);
    const Eigen::Index n = a.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (auto c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;

    Matrix basis = zeros(n, n - e.rank());
    Eigen::Index out = 0;
    for (Eigen::Index free = 0; free < n; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        basis(free, out) = Element(1);
        for (Eigen::Index r = 0; r < e.rank(); ++r)
            basis(e.pivots[static_cast<std::size_t>(r)], out) = -e.reduced(r, free);
        ++out;
    }
    return basis;
}

}  // namespace netalign
