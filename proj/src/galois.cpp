#include "netalign/galois.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <ostream>
#include <string>

namespace netalign {

namespace {

constexpr std::array<std::uint64_t, Field::kMaxDegree + 1> kDefaultModulus = {
    0,         // unused
    0x3,       // x + 1
    0x7,       // x^2 + x + 1
    0xb,       // x^3 + x + 1
    0x13,      // x^4 + x + 1
    0x25,      // x^5 + x^2 + 1
    0x43,      // x^6 + x + 1
    0x83,      // x^7 + x + 1
    0x11d,     // x^8 + x^4 + x^3 + x^2 + 1
    0x211,     // x^9 + x^4 + 1
    0x409,     // x^10 + x^3 + 1
    0x805,     // x^11 + x^2 + 1
    0x1053,    // x^12 + x^6 + x^4 + x + 1
    0x201b,    // x^13 + x^4 + x^3 + x + 1
    0x402b,    // x^14 + x^5 + x^3 + x + 1
    0x8003,    // x^15 + x + 1
    0x1002d,   // x^16 + x^5 + x^3 + x^2 + 1
    0x20009,   // x^17 + x^3 + 1
    0x40027,   // x^18 + x^5 + x^2 + x + 1
    0x80027,   // x^19 + x^5 + x^2 + x + 1
    0x100009,  // x^20 + x^3 + 1
};

__extension__ typedef unsigned __int128 u128;

int poly_degree(u128 p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1;
    }
    return d;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
    const int db = poly_degree(b);
    for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
    return a;
}

// a * b mod (modulus of degree m), for a, b of degree < m.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus, unsigned m) {
    u128 acc = 0;
    for (u128 aa = a; b; b >>= 1, aa <<= 1)
        if (b & 1) acc ^= aa;
    for (int d = poly_degree(acc); d >= static_cast<int>(m); d = poly_degree(acc))
        acc ^= static_cast<u128>(modulus) << (d - static_cast<int>(m));
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t modulus, unsigned m) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mul_mod(a, a, modulus, m))
        if (e & 1) r = mul_mod(r, a, modulus, m);
    return r;
}

// Integer arithmetic for factoring 2^m - 1.
std::uint64_t mul_mod_int(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

std::uint64_t pow_mod_int(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
    std::uint64_t r = 1 % n;
    for (a %= n; e; e >>= 1, a = mul_mod_int(a, a, n))
        if (e & 1) r = mul_mod_int(r, a, n);
    return r;
}

// Deterministic Miller-Rabin for 64-bit n.
bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (n % p == 0) return n == p;
    std::uint64_t d = n - 1;
    int s = 0;
    for (; d % 2 == 0; d /= 2) ++s;
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod_int(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s && composite; ++r) {
            x = mul_mod_int(x, x, n);
            composite = x != n - 1;
        }
        if (composite) return false;
    }
    return true;
}

// Pollard rho; n odd composite.
std::uint64_t find_factor(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        auto step = [&](std::uint64_t v) { return (mul_mod_int(v, v, n) + c) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void prime_factors(std::uint64_t n, std::vector<std::uint64_t>& out) {
    for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const std::uint64_t d = find_factor(n);
    prime_factors(d, out);
    prime_factors(n / d, out);
}

bool is_primitive(std::uint64_t poly, unsigned m, const std::vector<std::uint64_t>& primes) {
    const std::uint64_t order = (std::uint64_t{1} << m) - 1;
    const std::uint64_t x = m == 1 ? 1 : 2;
    if (pow_mod(x, order, poly, m) != 1) return false;
    return std::none_of(primes.begin(), primes.end(),
                        [&](std::uint64_t q) { return pow_mod(x, order / q, poly, m) == 1; });
}

std::string degree_range_error(unsigned m, unsigned max) {
    return "field degree must be in [1, " + std::to_string(max) + "], got " + std::to_string(m);
}

const Field* merge(const Element& a, const Element& b) {
    assert(!a.field() || !b.field() || a.field() == b.field());
    return a.field() ? a.field() : b.field();
}

}  // namespace

Element& Element::operator+=(const Element& rhs) {
    field_ = merge(*this, rhs);
    value_ ^= rhs.value_;
    return *this;
}

Element& Element::operator*=(const Element& rhs) {
    const Field* f = merge(*this, rhs);
    if (value_ == 0 || rhs.value_ == 0) {
        value_ = 0;
    } else if (value_ == 1) {
        value_ = rhs.value_;
    } else if (rhs.value_ != 1) {
        assert(f != nullptr);
        value_ = f->mul(value_, rhs.value_);
    }
    field_ = f;
    return *this;
}

Element& Element::operator/=(const Element& rhs) { return *this *= inverse(rhs); }

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }
Element operator*(Element a, const Element& b) { return a *= b; }
Element operator/(Element a, const Element& b) { return a /= b; }

Element inverse(const Element& x) {
    if (x.is_zero()) throw std::domain_error("inverse of zero in GF(2^m)");
    if (x.is_one()) return x;
    return {x.field()->inv(x.value()), x.field()};
}

Element pow(const Element& x, long long e) {
    if (e < 0) return pow(inverse(x), -e);
    if (e == 0) return Element(1, x.field());
    if (x.is_zero() || x.is_one()) return x;
    return {x.field()->pow(x.value(), static_cast<std::uint64_t>(e)), x.field()};
}

std::ostream& operator<<(std::ostream& os, const Element& x) { return os << x.value(); }

std::vector<std::uint64_t> group_order_primes(unsigned m) {
    if (m < 1 || m > Field::kMaxExtensionDegree) throw std::invalid_argument(degree_range_error(m, Field::kMaxExtensionDegree));
    std::vector<std::uint64_t> out;
    prime_factors((std::uint64_t{1} << m) - 1, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t default_modulus(unsigned m) {
    if (m < 1 || m > Field::kMaxExtensionDegree) throw std::invalid_argument(degree_range_error(m, Field::kMaxExtensionDegree));
    if (m <= Field::kMaxDegree) return kDefaultModulus[m];
    const auto primes = group_order_primes(m);
    for (std::uint64_t low = 1;; low += 2) {
        const std::uint64_t poly = (std::uint64_t{1} << m) | low;
        if (is_primitive(poly, m, primes)) return poly;
    }
}

bool is_irreducible(std::uint64_t poly, unsigned m) {
    if (poly_degree(poly) != static_cast<int>(m)) return false;
    for (std::uint64_t d = 2; poly_degree(d) <= static_cast<int>(m) / 2; ++d)
        if (poly_mod(poly, d) == 0) return false;
    return true;
}

Field::Field(unsigned m) : Field(m, default_modulus(m)) {}

Field::Field(unsigned m, std::uint64_t modulus)
    : m_(m), modulus_(modulus), tables_(m <= kMaxTableDegree) {
    if (m < 1 || m > kMaxExtensionDegree) throw std::invalid_argument(degree_range_error(m, kMaxExtensionDegree));
    if (poly_degree(modulus) != static_cast<int>(m))
        throw std::invalid_argument("reduction polynomial has the wrong degree");
    if (!tables_) return;

    const auto n = static_cast<std::uint32_t>(group_order());
    exp_.resize(2 * static_cast<std::size_t>(n));
    log_.assign(size(), 0);
    const std::uint64_t g = generator().value();
    std::uint64_t x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        exp_[i] = static_cast<std::uint32_t>(x);
        if (i > 0 && x == 1)
            throw std::invalid_argument("reduction polynomial is not primitive; table arithmetic needs a primitive one");
        log_[x] = i;
        x = clmul_reduce(x, g);
    }
    for (std::uint32_t i = n; i < 2 * n; ++i) exp_[i] = exp_[i - n];
}

std::uint64_t Field::clmul_reduce(std::uint64_t a, std::uint64_t b) const { return mul_mod(a, b, modulus_, m_); }

std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (tables_) return exp_[log_[a] + log_[b]];
    return clmul_reduce(a, b);
}

std::uint64_t Field::inv(std::uint64_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero in GF(2^m)");
    if (tables_) return exp_[(group_order() - log_[a]) % group_order()];
    return pow(a, group_order() - 1);
}

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    e %= group_order();
    if (tables_) return exp_[(static_cast<std::uint64_t>(log_[a]) * e) % group_order()];
    return pow_mod(a, e, modulus_, m_);
}

Element Field::element(std::uint64_t v) const {
    if (v >= size())
        throw std::out_of_range("value " + std::to_string(v) + " is not an element of GF(2^" +
                                std::to_string(m_) + ")");
    return {v, this};
}

FieldPtr make_field(unsigned m) {
    if (m < 1 || m > Field::kMaxDegree) throw std::invalid_argument(degree_range_error(m, Field::kMaxDegree));
    return std::make_shared<const Field>(m);
}

RootOfUnity root_of_unity(const Field& field, unsigned k) {
    if (k == 0 || field.group_order() % k != 0)
        throw std::invalid_argument("block length " + std::to_string(k) + " does not divide 2^" +
                                    std::to_string(field.degree()) + " - 1 = " +
                                    std::to_string(field.group_order()));
    return {pow(field.generator(), field.group_order() / k), k};
}

std::pair<Matrix, Matrix> dft_matrix(const RootOfUnity& root) {
    const auto k = static_cast<Eigen::Index>(root.k);
    Matrix f(k, k), f_inv(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const long long e = (i * j) % k;
            f(i, j) = pow(root.alpha, e);
            f_inv(i, j) = pow(root.alpha, -e);
        }
    }
    return {std::move(f), std::move(f_inv)};
}

Extension::Extension(FieldPtr base, unsigned k) : base_(std::move(base)) {
    if (k == 0) throw std::invalid_argument("block length must be positive");
    const unsigned m = base_->degree();
    unsigned r = 1;
    while (((std::uint64_t{1} << (m * r)) - 1) % k != 0) {
        if (m * (r + 1) > Field::kMaxExtensionDegree)
            throw std::invalid_argument("no extension of GF(2^" + std::to_string(m) + ") up to degree " +
                                        std::to_string(Field::kMaxExtensionDegree) + " has a root of unity of order " +
                                        std::to_string(k));
        ++r;
    }
    basis_.resize(m);
    if (r == 1) {
        field_ = base_;
        for (unsigned i = 0; i < m; ++i) basis_[i] = std::uint64_t{1} << i;
        return;
    }
    field_ = std::make_shared<const Field>(m * r);
    const Field& big = *field_;
    // beta generates the copy of GF(2^m)^*; one of its powers is a root of the
    // base modulus.
    const std::uint64_t beta = big.pow(big.generator().value(), big.group_order() / base_->group_order());
    std::uint64_t root = beta;
    for (;; root = big.mul(root, beta)) {
        std::uint64_t acc = 0;
        for (int bit = static_cast<int>(m); bit >= 0; --bit)
            acc = big.mul(acc, root) ^ ((base_->modulus() >> bit) & 1);
        if (acc == 0) break;
    }
    basis_[0] = 1;
    for (unsigned i = 1; i < m; ++i) basis_[i] = big.mul(basis_[i - 1], root);
}

Element Extension::embed(const Element& x) const {
    assert(!x.field() || x.field() == base_.get());
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if ((x.value() >> i) & 1) v ^= basis_[i];
    return {v, field_.get()};
}

Matrix Extension::embed(const Matrix& a) const {
    return a.unaryExpr([this](const Element& x) { return embed(x); });
}

Matrix zeros(Eigen::Index rows, Eigen::Index cols) { return Matrix::Constant(rows, cols, Element(0)); }
Vector zeros(Eigen::Index size) { return Vector::Constant(size, Element(0)); }
Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

}  // namespace netalign
