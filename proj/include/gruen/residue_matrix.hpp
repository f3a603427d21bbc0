#pragma once

/// Square matrices over Z/p^e with canonical reduced entries. Equality and
/// ordering go through the entry sequence, which makes matrices usable as
/// exact set members and gives every enumeration a reproducible order.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gruen/arith.hpp"
#include "gruen/errors.hpp"

namespace gruen {

/// The coefficient ring Z/p^e.
struct Modulus {
    std::int64_t p;
    int e;
    std::int64_t pe; // p^e

    Modulus(std::int64_t p_, int e_) : p(p_), e(e_) {
        require_prime(p, "modulus prime");
        if (e < 1) throw domain_error("Modulus: exponent e must be >= 1");
        pe = 1;
        for (int k = 0; k < e; ++k) {
            if (pe > (std::int64_t{1} << 31) / p)
                throw domain_error("Modulus: p^e too large for matrix entries");
            pe *= p;
        }
    }

    bool operator==(const Modulus& o) const { return p == o.p && e == o.e; }
    bool operator!=(const Modulus& o) const { return !(*this == o); }
};

class ResidueMatrix {
  public:
    ResidueMatrix(int dim, Modulus mod, const std::vector<std::int64_t>& vals)
        : dim_(dim), mod_(mod), ent_(static_cast<std::size_t>(dim) * dim) {
        if (dim < 1) throw domain_error("ResidueMatrix: dimension must be >= 1");
        if (vals.size() != ent_.size())
            throw domain_error("ResidueMatrix: expected " + std::to_string(ent_.size()) +
                               " entries, got " + std::to_string(vals.size()));
        for (std::size_t k = 0; k < vals.size(); ++k) {
            std::int64_t v = vals[k] % mod_.pe;
            if (v < 0) v += mod_.pe;
            ent_[k] = static_cast<std::uint32_t>(v);
        }
    }

    static ResidueMatrix identity(int dim, Modulus mod) {
        std::vector<std::int64_t> vals(static_cast<std::size_t>(dim) * dim, 0);
        for (int i = 0; i < dim; ++i) vals[static_cast<std::size_t>(i) * dim + i] = 1;
        return ResidueMatrix(dim, mod, vals);
    }

    int dim() const { return dim_; }
    const Modulus& modulus() const { return mod_; }
    std::uint32_t at(int i, int j) const {
        return ent_[static_cast<std::size_t>(i) * dim_ + j];
    }
    const std::vector<std::uint32_t>& entries() const { return ent_; }

    bool is_identity() const {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                if (at(i, j) != (i == j ? 1u : 0u)) return false;
        return true;
    }

    bool operator==(const ResidueMatrix& o) const {
        return dim_ == o.dim_ && mod_ == o.mod_ && ent_ == o.ent_;
    }
    bool operator!=(const ResidueMatrix& o) const { return !(*this == o); }

    /// Lexicographic order on the reduced entry sequence; the canonical
    /// element order used everywhere a deterministic sweep is required.
    bool operator<(const ResidueMatrix& o) const { return ent_ < o.ent_; }

  private:
    int dim_;
    Modulus mod_;
    std::vector<std::uint32_t> ent_;

    friend struct MatrixHash;
    friend ResidueMatrix mat_mul(const ResidueMatrix&, const ResidueMatrix&);
};

struct MatrixHash {
    std::size_t operator()(const ResidueMatrix& m) const {
        // FNV-1a over the entry words.
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        mix(static_cast<std::uint64_t>(m.dim_));
        mix(static_cast<std::uint64_t>(m.mod_.pe));
        for (std::uint32_t w : m.ent_) mix(w);
        return static_cast<std::size_t>(h);
    }
};

inline void require_compatible(const ResidueMatrix& a, const ResidueMatrix& b,
                               const char* op) {
    if (a.dim() != b.dim())
        throw domain_error(std::string(op) + ": dimension mismatch");
    if (a.modulus() != b.modulus())
        throw domain_error(std::string(op) + ": modulus mismatch");
}

inline ResidueMatrix mat_mul(const ResidueMatrix& a, const ResidueMatrix& b) {
    require_compatible(a, b, "mat_mul");
    const int n = a.dim();
    const std::uint64_t pe = static_cast<std::uint64_t>(a.modulus().pe);
    ResidueMatrix out = a; // same dim/modulus; entries overwritten
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::uint64_t acc = 0;
            for (int k = 0; k < n; ++k) {
                acc += static_cast<std::uint64_t>(a.at(i, k)) * b.at(k, j) % pe;
            }
            out.ent_[static_cast<std::size_t>(i) * n + j] =
                static_cast<std::uint32_t>(acc % pe);
        }
    }
    return out;
}

inline ResidueMatrix mat_pow(const ResidueMatrix& a, std::uint64_t k) {
    ResidueMatrix result = ResidueMatrix::identity(a.dim(), a.modulus());
    ResidueMatrix base = a;
    while (k > 0) {
        if (k & 1) result = mat_mul(result, base);
        base = mat_mul(base, base);
        k >>= 1;
    }
    return result;
}

namespace detail {

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    // extended gcd; p prime and a != 0 mod p
    std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        std::int64_t qt = r / new_r;
        t = std::exchange(new_t, t - qt * new_t);
        r = std::exchange(new_r, r - qt * new_r);
    }
    if (r != 1) throw domain_error("mod_inverse: not invertible");
    return t < 0 ? t + p : t;
}

/// Row-reduce a copy of m over F_p and report whether it has full rank.
/// When inv != nullptr, also produce the inverse mod p by Gauss-Jordan.
inline bool full_rank_mod_p(const ResidueMatrix& m, std::vector<std::int64_t>* inv) {
    const int n = m.dim();
    const std::int64_t p = m.modulus().p;
    std::vector<std::int64_t> a(static_cast<std::size_t>(n) * n);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = m.entries()[k] % p;
    std::vector<std::int64_t> b;
    if (inv) {
        b.assign(a.size(), 0);
        for (int i = 0; i < n; ++i) b[static_cast<std::size_t>(i) * n + i] = 1;
    }
    auto A = [&a, n](int i, int j) -> std::int64_t& { return a[static_cast<std::size_t>(i) * n + j]; };
    auto B = [&b, n](int i, int j) -> std::int64_t& { return b[static_cast<std::size_t>(i) * n + j]; };
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (A(row, col) % p != 0) { pivot = row; break; }
        if (pivot < 0) return false;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(A(pivot, j), A(col, j));
            if (inv)
                for (int j = 0; j < n; ++j) std::swap(B(pivot, j), B(col, j));
        }
        const std::int64_t scale = mod_inverse(A(col, col), p);
        for (int j = 0; j < n; ++j) A(col, j) = A(col, j) * scale % p;
        if (inv)
            for (int j = 0; j < n; ++j) B(col, j) = B(col, j) * scale % p;
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            const std::int64_t f = A(row, col) % p;
            if (f == 0) continue;
            for (int j = 0; j < n; ++j)
                A(row, j) = ((A(row, j) - f * A(col, j)) % p + p) % p;
            if (inv)
                for (int j = 0; j < n; ++j)
                    B(row, j) = ((B(row, j) - f * B(col, j)) % p + p) % p;
        }
    }
    if (inv) *inv = std::move(b);
    return true;
}

} // namespace detail

/// A matrix over Z/p^e is invertible iff its reduction mod p has full rank.
inline bool is_invertible(const ResidueMatrix& m) {
    return detail::full_rank_mod_p(m, nullptr);
}

/// Two-sided inverse over Z/p^e: invert mod p, then lift by Newton iteration
/// X <- X(2I - AX), which converges because the error is nilpotent mod p^e.
inline ResidueMatrix mat_inverse(const ResidueMatrix& m) {
    std::vector<std::int64_t> inv_p;
    if (!detail::full_rank_mod_p(m, &inv_p))
        throw domain_error("mat_inverse: matrix is not invertible");
    const int n = m.dim();
    ResidueMatrix x(n, m.modulus(), inv_p);
    if (m.modulus().e > 1) {
        for (int step = 0; step < m.modulus().e; ++step) {
            const ResidueMatrix ax = mat_mul(m, x);
            if (ax.is_identity()) break;
            std::vector<std::int64_t> diff(static_cast<std::size_t>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    diff[static_cast<std::size_t>(i) * n + j] =
                        (i == j ? 2 : 0) - static_cast<std::int64_t>(ax.at(i, j));
            x = mat_mul(x, ResidueMatrix(n, m.modulus(), diff));
        }
    }
    if (!mat_mul(m, x).is_identity() || !mat_mul(x, m).is_identity())
        throw internal_error("mat_inverse: lift failed to converge");
    return x;
}

inline ResidueMatrix conjugate(const ResidueMatrix& x, const ResidueMatrix& h) {
    return mat_mul(mat_mul(x, h), mat_inverse(x));
}

} // namespace gruen
