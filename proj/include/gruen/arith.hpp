#pragma once

/// Exact integer number theory: primality, multiplicative orders, ell-adic
/// valuations, the order formula for GL_n(F_q), and the minimal trivial-action
/// exponent nu. Everything is deterministic and overflow-free; group orders
/// use arbitrary precision.

#include <cstdint>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "gruen/errors.hpp"

namespace gruen {

using BigInt = boost::multiprecision::cpp_int;

/// Deterministic trial division. Inputs are small (primes ell, p up to ~1e9);
/// no probabilistic shortcut so the result can serve as a test oracle.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

inline void require_prime(std::int64_t n, const char* what) {
    if (n < 2 || !is_prime(static_cast<std::uint64_t>(n)))
        throw domain_error(std::string(what) + " must be prime, got " + std::to_string(n));
}

/// Least t >= 1 with a^t == 1 (mod n). Rejects gcd(a, n) != 1.
inline std::int64_t multiplicative_order(std::int64_t a, std::int64_t n) {
    if (n < 2) throw domain_error("multiplicative_order: modulus must be >= 2");
    std::int64_t r = a % n;
    if (r < 0) r += n;
    if (std::gcd(r, n) != 1)
        throw domain_error("multiplicative_order: gcd(" + std::to_string(a) + ", " +
                           std::to_string(n) + ") != 1");
    std::int64_t t = 1;
    std::int64_t acc = r;
    while (acc != 1) {
        acc = static_cast<std::int64_t>(
            static_cast<__int128>(acc) * r % n);
        ++t;
    }
    return t;
}

/// Exact exponent i with ell^i | x and ell^{i+1} !| x. Rejects x = 0.
inline int ell_adic_valuation(const BigInt& x, std::int64_t ell) {
    if (x <= 0) throw domain_error("ell_adic_valuation: x must be positive");
    require_prime(ell, "ell");
    BigInt rest = x;
    int v = 0;
    while (rest % ell == 0) {
        rest /= ell;
        ++v;
    }
    return v;
}

inline int ell_adic_valuation(std::int64_t x, std::int64_t ell) {
    return ell_adic_valuation(BigInt(x), ell);
}

/// A prime-power field size q = p^f.
struct PrimePower {
    std::int64_t p;
    int f;
    BigInt q;

    PrimePower(std::int64_t p_, int f_) : p(p_), f(f_) {
        require_prime(p, "p");
        if (f < 1) throw domain_error("PrimePower: exponent f must be >= 1");
        q = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(f));
    }

    /// Convenience for prime fields.
    explicit PrimePower(std::int64_t p_) : PrimePower(p_, 1) {}

    bool operator==(const PrimePower& o) const { return p == o.p && f == o.f; }
};

/// |GL_n(F_q)| = prod_{j=0}^{n-1} (q^n - q^j), exactly.
inline BigInt gl_order(int n, const PrimePower& q) {
    if (n < 1) throw domain_error("gl_order: n must be >= 1");
    const BigInt qn = boost::multiprecision::pow(q.q, static_cast<unsigned>(n));
    BigInt result = 1;
    BigInt qj = 1;
    for (int j = 0; j < n; ++j) {
        result *= qn - qj;
        qj *= q.q;
    }
    return result;
}

/// Least m >= 1 with p^{f m} == 1 (mod ell), i.e. the multiplicative order of
/// q = p^f modulo ell. Rejects ell = p.
inline std::int64_t m_ell(std::int64_t p, int f, std::int64_t ell) {
    require_prime(p, "p");
    require_prime(ell, "ell");
    if (ell == p) throw domain_error("m_ell: ell must differ from p");
    if (f < 1) throw domain_error("m_ell: f must be >= 1");
    std::int64_t q_mod = p % ell;
    std::int64_t acc = 1;
    for (int k = 0; k < f; ++k)
        acc = static_cast<std::int64_t>(static_cast<__int128>(acc) * q_mod % ell);
    return multiplicative_order(acc, ell);
}

/// Least nu >= 0 with ell^nu > m / m_ell, decided as the integer inequality
/// ell^nu * m_ell > m so the strict boundary is exact.
inline int min_nu(std::int64_t m, std::int64_t mell, std::int64_t ell) {
    if (m < 0) throw domain_error("min_nu: m must be >= 0");
    if (mell < 1) throw domain_error("min_nu: m_ell must be >= 1");
    require_prime(ell, "ell");
    int nu = 0;
    __int128 lhs = mell;
    while (lhs <= m) {
        lhs *= ell;
        ++nu;
    }
    return nu;
}

} // namespace gruen
