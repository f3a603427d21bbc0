#pragma once

/// Parameter-only predictions from Gruen's structure theorems.
///
/// For GL_n(F_q) and a prime ell != p, with m_ell the multiplicative order of
/// q mod ell and i the exact power of ell in q^{m_ell} - 1:
///   - if r = floor(n / m_ell) < ell, the ell-Sylow subgroups are predicted
///     elementary abelian of order ell^{r i} (trivially so when r = 0);
///   - otherwise they are solvable with derived length at most r'+1, where
///     ell^{r'} <= floor(n / m_ell) < ell^{r'+1}.
///
/// For a group acting on an abelian p-group of p-rank m, the bounds GT1, GT2
/// and TS1 name the least nu with ell^nu * m_ell > m and conclude that the
/// nu-th derived subgroup of an ell-Sylow acts trivially. GT1 is the nu <= 1
/// special case and additionally requires A elementary abelian; TS1 assumes A
/// normal in the acting group. All three use the order of p mod ell.

#include <cstdint>
#include <optional>
#include <string>

#include "gruen/arith.hpp"
#include "gruen/errors.hpp"

namespace gruen {

enum class SylowClause { elementary_abelian, metabelian_bound, out_of_scope };

inline const char* to_string(SylowClause c) {
    switch (c) {
        case SylowClause::elementary_abelian: return "elementary_abelian";
        case SylowClause::metabelian_bound: return "metabelian_bound";
        case SylowClause::out_of_scope: return "out_of_scope";
    }
    return "?";
}

struct SylowPrediction {
    SylowClause clause;
    std::int64_t m_ell;
    /// floor(n / m_ell) for the elementary-abelian clause; the stage parameter
    /// r' for the metabelian clause.
    std::int64_t r;
    /// Exact power of ell dividing q^{m_ell} - 1.
    int i;
    /// r * i; present only for the elementary-abelian clause.
    std::optional<std::int64_t> order_exponent;
    int derived_length_bound;
};

inline SylowPrediction predict_gl_sylow(int n, const PrimePower& q, std::int64_t ell) {
    if (n < 1) throw domain_error("predict_gl_sylow: n must be >= 1");
    require_prime(ell, "ell");
    if (ell == q.p)
        throw domain_error("predict_gl_sylow: ell must differ from p (got ell = p = " +
                           std::to_string(ell) + ")");
    SylowPrediction pred{};
    pred.m_ell = m_ell(q.p, q.f, ell);
    pred.i = ell_adic_valuation(
        boost::multiprecision::pow(q.q, static_cast<unsigned>(pred.m_ell)) - 1, ell);
    const std::int64_t copies = n / pred.m_ell;
    if (copies < ell) {
        pred.clause = SylowClause::elementary_abelian;
        pred.r = copies;
        pred.order_exponent = copies * pred.i;
        pred.derived_length_bound = 1;
    } else {
        pred.clause = SylowClause::metabelian_bound;
        std::int64_t stage = 0;
        __int128 power = 1;
        while (power * ell <= copies) {
            power *= ell;
            ++stage;
        }
        pred.r = stage;
        pred.derived_length_bound = static_cast<int>(stage) + 1;
    }
    return pred;
}

enum class Theorem { GT1, GT2, TS1 };

inline const char* to_string(Theorem t) {
    switch (t) {
        case Theorem::GT1: return "GT1";
        case Theorem::GT2: return "GT2";
        case Theorem::TS1: return "TS1";
    }
    return "?";
}

struct TrivialActionBound {
    Theorem theorem;
    std::int64_t m;
    std::int64_t m_ell;
    int nu;
    std::string conclusion; // "L^(nu) acts trivially"
};

namespace detail {

inline std::int64_t action_m_ell(std::int64_t m, std::int64_t p, std::int64_t ell) {
    if (m < 1) throw domain_error("action bound: rank m must be >= 1");
    require_prime(p, "p");
    require_prime(ell, "ell");
    if (ell == p) throw domain_error("action bound: ell must differ from p");
    return multiplicative_order(p, ell);
}

inline std::string trivial_action_tag(int nu) {
    return "L^(" + std::to_string(nu) + ") acts trivially";
}

} // namespace detail

/// Applicable iff ell > m / m_ell (as the exact inequality ell * m_ell > m);
/// then the derived subgroup of any ell-Sylow of the acting group is trivial
/// on A, i.e. the ell-Sylow subgroups of Aut(A) are abelian.
inline std::optional<TrivialActionBound> gt1_bound(std::int64_t m, std::int64_t p,
                                                   std::int64_t ell) {
    const std::int64_t mell = detail::action_m_ell(m, p, ell);
    if (static_cast<__int128>(ell) * mell <= m) return std::nullopt;
    return TrivialActionBound{Theorem::GT1, m, mell, 1, detail::trivial_action_tag(1)};
}

inline TrivialActionBound gt2_bound(std::int64_t m, std::int64_t p, std::int64_t ell) {
    const std::int64_t mell = detail::action_m_ell(m, p, ell);
    const int nu = min_nu(m, mell, ell);
    return TrivialActionBound{Theorem::GT2, m, mell, nu, detail::trivial_action_tag(nu)};
}

/// Same numeric bound as GT2; the distinct tag records the extra hypothesis
/// (A normal in G), which is the caller's responsibility.
inline TrivialActionBound ts1_bound(std::int64_t m, std::int64_t p, std::int64_t ell) {
    TrivialActionBound b = gt2_bound(m, p, ell);
    b.theorem = Theorem::TS1;
    return b;
}

} // namespace gruen
