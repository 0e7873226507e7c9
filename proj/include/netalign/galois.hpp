#pragma once

// Arithmetic over GF(2^m), 1 <= m <= 20, and dense matrices over it. Wider
// fields, up to m = 60, exist only as splitting extensions for block lengths
// that do not divide 2^m - 1.
//
// Elements are small values that remember the field they belong to, which
// lets them act as an Eigen scalar type: Eigen only ever materialises the
// context-free constants 0 and 1, and every other element is created through
// a Field.

#include <cassert>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace netalign {

class Field;

class Element {
public:
    Element() = default;

    // Eigen builds Scalar(0) and Scalar(1); those need no field.
    Element(int v) : value_(static_cast<std::uint64_t>(v)) { assert(v == 0 || v == 1); }

    Element(std::uint64_t v, const Field* field) : value_(v), field_(field) {}

    std::uint64_t value() const { return value_; }
    const Field* field() const { return field_; }

    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }

    Element& operator+=(const Element& rhs);
    Element& operator-=(const Element& rhs) { return *this += rhs; }
    Element& operator*=(const Element& rhs);
    Element& operator/=(const Element& rhs);

    friend bool operator==(const Element& a, const Element& b) { return a.value_ == b.value_; }

private:
    std::uint64_t value_ = 0;
    const Field* field_ = nullptr;
};

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
inline Element operator-(const Element& a) { return a; }  // characteristic 2
Element operator*(Element a, const Element& b);
Element operator/(Element a, const Element& b);

// Throws std::domain_error on zero.
Element inverse(const Element& x);
// Negative exponents go through the inverse; 0^0 == 1.
Element pow(const Element& x, long long e);

std::ostream& operator<<(std::ostream& os, const Element& x);

class Field {
public:
    static constexpr unsigned kMaxDegree = 20;
    static constexpr unsigned kMaxTableDegree = 16;
    static constexpr unsigned kMaxExtensionDegree = 60;

    // Uses default_modulus(m).
    explicit Field(unsigned m);
    Field(unsigned m, std::uint64_t modulus);

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    unsigned degree() const { return m_; }
    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t size() const { return std::uint64_t{1} << m_; }
    // Order of the multiplicative group, 2^m - 1.
    std::uint64_t group_order() const { return size() - 1; }

    Element element(std::uint64_t v) const;
    Element zero() const { return {0, this}; }
    Element one() const { return {1, this}; }
    // The class of x modulo the reduction polynomial, primitive for every
    // default modulus.
    Element generator() const { return {m_ == 1 ? 1u : 2u, this}; }

    template <typename Rng>
    Element random(Rng& rng) const {
        std::uniform_int_distribution<std::uint64_t> dist(0, size() - 1);
        return {dist(rng), this};
    }

    template <typename Rng>
    Element random_nonzero(Rng& rng) const {
        std::uniform_int_distribution<std::uint64_t> dist(1, size() - 1);
        return {dist(rng), this};
    }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

private:
    std::uint64_t clmul_reduce(std::uint64_t a, std::uint64_t b) const;

    unsigned m_;
    std::uint64_t modulus_;
    bool tables_;
    std::vector<std::uint32_t> exp_;  // 2 * (2^m - 1) entries
    std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Lexicographically least primitive polynomial of degree m, encoded with bit i
// holding the coefficient of x^i (so 0x1002d is x^16 + x^5 + x^3 + x^2 + 1).
// Tabulated up to degree 20, searched above that.
std::uint64_t default_modulus(unsigned m);

// Trial division by every polynomial of degree <= m/2.
bool is_irreducible(std::uint64_t poly, unsigned m);

// Distinct prime factors of 2^m - 1 in increasing order.
std::vector<std::uint64_t> group_order_primes(unsigned m);

// Throws std::invalid_argument unless 1 <= m <= 20.
FieldPtr make_field(unsigned m);

struct RootOfUnity {
    Element alpha;
    unsigned k = 1;
};

// alpha = g^((2^m - 1) / k) for the field generator g. Throws
// std::invalid_argument when k does not divide 2^m - 1.
RootOfUnity root_of_unity(const Field& field, unsigned k);

}  // namespace netalign

namespace Eigen {

template <>
struct NumTraits<netalign::Element> : GenericNumTraits<netalign::Element> {
    using Real = netalign::Element;
    using NonInteger = netalign::Element;
    using Nested = netalign::Element;
    using Literal = netalign::Element;

    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 1,
        MulCost = 4
    };

    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace netalign {

using Matrix = Eigen::Matrix<Element, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Element, Eigen::Dynamic, 1>;

// (F, F^-1) with F(i, j) = alpha^(ij) and F^-1(i, j) = alpha^(-ij). No 1/k
// factor: k is odd, so k * 1 == 1 in characteristic 2.
std::pair<Matrix, Matrix> dft_matrix(const RootOfUnity& root);

Matrix zeros(Eigen::Index rows, Eigen::Index cols);
Vector zeros(Eigen::Index size);
Matrix identity(Eigen::Index n);

template <typename Rng>
Matrix random_matrix(const Field& field, Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Matrix out(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = field.random(rng);
    return out;
}

template <typename Rng>
Vector random_vector(const Field& field, Eigen::Index size, Rng& rng) {
    Vector out(size);
    for (Eigen::Index r = 0; r < size; ++r) out(r) = field.random(rng);
    return out;
}

// Exact equality of two dense matrices (shape and entries).
template <typename A, typename B>
bool equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.derived().array() == b.derived().array()).all();
}

// The smallest GF(2^(m r)) containing GF(2^m) and a primitive k-th root of
// unity, with the embedding that sends x to a root of the base modulus.
class Extension {
public:
    Extension(FieldPtr base, unsigned k);

    const Field& base() const { return *base_; }
    const FieldPtr& field() const { return field_; }
    // r = [GF(2^(m r)) : GF(2^m)].
    unsigned relative_degree() const { return field_->degree() / base_->degree(); }

    Element embed(const Element& x) const;
    Matrix embed(const Matrix& a) const;

private:
    FieldPtr base_;
    FieldPtr field_;
    std::vector<std::uint64_t> basis_;  // images of x^0 .. x^(m-1)
};

}  // namespace netalign
