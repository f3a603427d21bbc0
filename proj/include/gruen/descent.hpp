#pragma once

/// Class-group descent deductions for normal extensions. Arithmetic data
/// (class numbers, ranks, Galois descriptors) are trusted inputs; the engine
/// applies divisibility and trivial-action results and emits conclusions with
/// machine-readable justification chains. It never computes class groups.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gruen/arith.hpp"
#include "gruen/errors.hpp"
#include "gruen/theorems.hpp"

namespace gruen {

/// An abelian p-group given by its nonincreasing exponent vector
/// (e_1 >= ... >= e_m >= 1); the length is the p-rank m. The classical type
/// notation (p^{e_1}, ..., p^{e_m}) lists the cyclic factor orders.
struct AbelianGroupType {
    std::int64_t p;
    std::vector<int> exponents;

    AbelianGroupType(std::int64_t p_, std::vector<int> exponents_)
        : p(p_), exponents(std::move(exponents_)) {
        require_prime(p, "p");
        for (std::size_t k = 0; k < exponents.size(); ++k) {
            if (exponents[k] < 1)
                throw domain_error("AbelianGroupType: exponents must be >= 1");
            if (k > 0 && exponents[k] > exponents[k - 1])
                throw domain_error("AbelianGroupType: exponents must be nonincreasing");
        }
    }

    int rank() const { return static_cast<int>(exponents.size()); }
    BigInt order() const {
        BigInt result = 1;
        for (int e : exponents)
            for (int k = 0; k < e; ++k) result *= p;
        return result;
    }
};

enum class DescriptorKind { catalog, explicit_series };
enum class CatalogId { nonabelian_order_ell_cubed, two_group_tower_step_3 };

inline const char* to_string(CatalogId id) {
    switch (id) {
        case CatalogId::nonabelian_order_ell_cubed: return "nonabelian_order_ell_cubed";
        case CatalogId::two_group_tower_step_3: return "two_group_tower_step_3";
    }
    return "?";
}

/// Shape of the Galois group of a normal ell-extension L/k, reduced to the
/// derived-series data the deductions consume.
///
/// Catalog entries:
///   - nonabelian_order_ell_cubed: either nonabelian group of order ell^3
///     (both have cyclic G' of order ell and G/G' of type (ell, ell), which is
///     all the deductions use, so one descriptor covers both).
///   - two_group_tower_step_3: G = Gal(k^3/k) for a 2-class field tower with
///     at least 3 steps; the derived terms fix the tower fields, G'' is
///     nontrivial and G''' is trivial.
/// Explicit descriptors carry the index list [|G:G'|, |G':G''|, ...] down to
/// the trivial term.
struct GaloisDescriptor {
    DescriptorKind kind;
    std::optional<CatalogId> catalog_id;
    std::int64_t ell_parameter = 0;              // catalog ell^3 entry
    std::vector<std::int64_t> derived_structure; // explicit kind
    std::optional<BigInt> order;

    static GaloisDescriptor nonabelian_ell_cubed(std::int64_t ell) {
        require_prime(ell, "ell");
        GaloisDescriptor d;
        d.kind = DescriptorKind::catalog;
        d.catalog_id = CatalogId::nonabelian_order_ell_cubed;
        d.ell_parameter = ell;
        d.order = BigInt(ell) * ell * ell;
        return d;
    }

    static GaloisDescriptor two_tower_step_3() {
        GaloisDescriptor d;
        d.kind = DescriptorKind::catalog;
        d.catalog_id = CatalogId::two_group_tower_step_3;
        return d;
    }

    static GaloisDescriptor explicit_series(std::vector<std::int64_t> indices,
                                            std::optional<BigInt> order = std::nullopt) {
        GaloisDescriptor d;
        d.kind = DescriptorKind::explicit_series;
        d.derived_structure = std::move(indices);
        d.order = std::move(order);
        return d;
    }

    /// Smallest depth d with G^{(d)} trivial.
    int trivial_depth() const {
        if (kind == DescriptorKind::catalog) {
            return *catalog_id == CatalogId::nonabelian_order_ell_cubed ? 2 : 3;
        }
        return static_cast<int>(derived_structure.size());
    }

    /// Rejects shapes that cannot describe a normal ell-extension.
    void validate(std::int64_t ell) const {
        if (kind == DescriptorKind::catalog) {
            if (!catalog_id) throw domain_error("descriptor: catalog entry missing id");
            if (*catalog_id == CatalogId::nonabelian_order_ell_cubed) {
                require_prime(ell_parameter, "descriptor ell");
                if (ell_parameter != ell)
                    throw domain_error(
                        "descriptor: catalog ell parameter does not match the "
                        "extension prime");
            } else if (ell != 2) {
                throw domain_error("descriptor: the 2-class field tower requires ell = 2");
            }
            return;
        }
        if (derived_structure.empty())
            throw domain_error("descriptor: explicit derived structure is empty");
        BigInt total = 1;
        for (std::int64_t index : derived_structure) {
            // every index |G^{(k)} : G^{(k+1)}| in a solvable ell-group is a
            // positive power of ell
            if (index < ell) throw domain_error("descriptor: derived index must be >= ell");
            std::int64_t rest = index;
            while (rest % ell == 0) rest /= ell;
            if (rest != 1)
                throw domain_error("descriptor: derived index " + std::to_string(index) +
                                   " is not a power of ell");
            total *= index;
        }
        if (order && *order != total)
            throw domain_error("descriptor: order does not match the index product");
    }
};

enum class Conclusion {
    divisibility_holds,
    divisibility_fails,
    rank_divisibility_pass,
    rank_divisibility_fail,
    comes_from_subfield,
    subgroup_embeds,
    no_conclusion,
};

inline const char* to_string(Conclusion c) {
    switch (c) {
        case Conclusion::divisibility_holds: return "divisibility_holds";
        case Conclusion::divisibility_fails: return "divisibility_fails";
        case Conclusion::rank_divisibility_pass: return "rank_divisibility_pass";
        case Conclusion::rank_divisibility_fail: return "rank_divisibility_fail";
        case Conclusion::comes_from_subfield: return "comes_from_subfield";
        case Conclusion::subgroup_embeds: return "subgroup_embeds";
        case Conclusion::no_conclusion: return "no_conclusion";
    }
    return "?";
}

struct JustificationStep {
    std::string rule;
    std::map<std::string, std::string> params;
    std::string detail;
};

struct Deduction {
    Conclusion conclusion;
    std::optional<std::string> subfield;
    std::vector<JustificationStep> justification;
    /// Set by the descent engine for machine consumption.
    std::optional<std::int64_t> m_ell;
    std::optional<int> nu;
};

inline const std::string kFieldBase = "k";
inline const std::string kFieldMaxAbelian = "maximal abelian subfield K";
inline const std::string kFieldTowerStep2 = "k^2";

/// Cyclic class group of order h acted on by a perfect group of order n:
/// every class satisfies c^n = 1, so h must divide n. A failed divisibility
/// means the asserted hypotheses cannot all hold.
inline Deduction check_pg0(std::int64_t n, std::int64_t h) {
    if (n < 1 || h < 1) throw domain_error("check_pg0: n and h must be positive");
    Deduction d;
    d.conclusion = n % h == 0 ? Conclusion::divisibility_holds
                              : Conclusion::divisibility_fails;
    d.justification.push_back(
        {"pg0_exponent_bound",
         {{"n", std::to_string(n)}, {"h", std::to_string(h)}},
         d.conclusion == Conclusion::divisibility_holds
             ? "h | n as required for a perfect action on a cyclic class group"
             : "h does not divide n; the asserted hypotheses cannot all hold"});
    return d;
}

/// h_L | (L:K) h_K for L/k normal with cyclic Cl(L) and K the maximal abelian
/// subextension.
inline Deduction check_pg1(std::int64_t h_L, std::int64_t index_LK, std::int64_t h_K) {
    if (h_L < 1 || index_LK < 1 || h_K < 1)
        throw domain_error("check_pg1: inputs must be positive");
    const BigInt rhs = BigInt(index_LK) * h_K;
    Deduction d;
    d.conclusion = rhs % h_L == 0 ? Conclusion::divisibility_holds
                                  : Conclusion::divisibility_fails;
    d.justification.push_back(
        {"pg1_divisibility",
         {{"h_L", std::to_string(h_L)},
          {"index_LK", std::to_string(index_LK)},
          {"h_K", std::to_string(h_K)}},
         d.conclusion == Conclusion::divisibility_holds
             ? "h_L divides (L:K) h_K"
             : "h_L does not divide (L:K) h_K; the asserted hypotheses cannot all hold"});
    return d;
}

/// For K/k cyclic of prime degree n and p not dividing n, the p-rank of the
/// relative class group Cl(K/k) is divisible by f = ord(p mod n).
inline Deduction check_pgal(std::int64_t n, std::int64_t p, std::int64_t observed_rank) {
    require_prime(n, "degree n");
    require_prime(p, "p");
    if (p == n) throw domain_error("check_pgal: p must not divide the degree n");
    if (observed_rank < 0) throw domain_error("check_pgal: rank must be >= 0");
    const std::int64_t f = multiplicative_order(p, n);
    Deduction d;
    d.conclusion = observed_rank % f == 0 ? Conclusion::rank_divisibility_pass
                                          : Conclusion::rank_divisibility_fail;
    d.justification.push_back(
        {"pgal_rank_divisibility",
         {{"n", std::to_string(n)},
          {"p", std::to_string(p)},
          {"f", std::to_string(f)},
          {"observed_rank", std::to_string(observed_rank)}},
         "f = ord(p mod n) must divide the p-rank of the relative class group"});
    return d;
}

/// If Cl_p(K) has rank < f, the relative part is forced trivial and the norm
/// map is injective on Cl_p(K): it comes from k.
inline Deduction comes_from(std::int64_t observed_rank, std::int64_t n, std::int64_t p) {
    require_prime(n, "degree n");
    require_prime(p, "p");
    if (p == n) throw domain_error("comes_from: p must not divide the degree n");
    if (observed_rank < 0) throw domain_error("comes_from: rank must be >= 0");
    const std::int64_t f = multiplicative_order(p, n);
    Deduction d;
    if (observed_rank < f) {
        d.conclusion = Conclusion::comes_from_subfield;
        d.subfield = kFieldBase;
        d.justification.push_back(
            {"norm_injectivity_corollary",
             {{"n", std::to_string(n)},
              {"p", std::to_string(p)},
              {"f", std::to_string(f)},
              {"observed_rank", std::to_string(observed_rank)}},
             "rank < f forces the relative p-part trivial, so the norm map is "
             "injective on Cl_p"});
    } else {
        d.conclusion = Conclusion::no_conclusion;
    }
    return d;
}

/// Descent deduction for a normal ell-extension L/k with Galois shape given
/// by the descriptor, a prime p != ell, and the observed p-rank m of the
/// class-group piece. Computes nu from the generic trivial-action bound and
/// maps the nu-th derived term onto the descriptor's known fixed fields.
inline Deduction deduce_descent(const GaloisDescriptor& galois, std::int64_t ell,
                                std::int64_t p, std::int64_t m) {
    require_prime(ell, "ell");
    require_prime(p, "p");
    if (p == ell) throw domain_error("deduce_descent: p must differ from ell");
    if (m < 0) throw domain_error("deduce_descent: observed rank must be >= 0");
    galois.validate(ell);

    Deduction d;
    const std::int64_t mell = multiplicative_order(p, ell);
    const int nu = m == 0 ? 0 : gt2_bound(m, p, ell).nu;
    d.m_ell = mell;
    d.nu = nu;
    d.justification.push_back(
        {"multiplicative_order",
         {{"p", std::to_string(p)}, {"ell", std::to_string(ell)},
          {"m_ell", std::to_string(mell)}},
         "m_ell = ord(p mod ell)"});
    d.justification.push_back(
        {"gt2_trivial_action",
         {{"m", std::to_string(m)}, {"m_ell", std::to_string(mell)},
          {"ell", std::to_string(ell)}, {"nu", std::to_string(nu)}},
         "the nu-th derived subgroup of an ell-Sylow acts trivially; here the "
         "Galois group is an ell-group, so it is its own ell-Sylow"});

    const int trivial_depth = galois.trivial_depth();
    if (nu >= trivial_depth) {
        // G^{(nu)} is already trivial; "acts trivially" carries no information.
        d.conclusion = Conclusion::no_conclusion;
        d.justification.push_back(
            {"vacuous_derived_term",
             {{"nu", std::to_string(nu)},
              {"trivial_depth", std::to_string(trivial_depth)}},
             "the nu-th derived subgroup is trivial for this Galois shape"});
        return d;
    }

    if (nu == 0) {
        // The whole (ell-Sylow-generated) Galois group acts trivially.
        d.conclusion = Conclusion::comes_from_subfield;
        d.subfield = kFieldBase;
        d.justification.push_back(
            {"base_field_descent",
             {{"nu", "0"}, {"fixed_field", kFieldBase}},
             "the full Galois group acts trivially, so the piece comes from the "
             "base field"});
        return d;
    }

    if (galois.kind == DescriptorKind::catalog &&
        *galois.catalog_id == CatalogId::two_group_tower_step_3) {
        if (nu <= 2) {
            // G'' or deeper acts trivially; its fixed field is k^2 and the
            // class piece embeds into Cl_p(k^2).
            d.conclusion = Conclusion::subgroup_embeds;
            d.subfield = kFieldTowerStep2;
            d.justification.push_back(
                {"tower_embedding",
                 {{"nu", std::to_string(nu)}, {"depth", "2"},
                  {"fixed_field", kFieldTowerStep2}},
                 "G'' contains the nu-th derived term, acts trivially, and fixes "
                 "k^2; Cl_p(k^2) has a subgroup isomorphic to the piece"});
            return d;
        }
        d.conclusion = Conclusion::no_conclusion;
        return d;
    }

    if (nu == 1) {
        // Fixed field of G' is the maximal abelian subextension.
        d.conclusion = Conclusion::comes_from_subfield;
        d.subfield = kFieldMaxAbelian;
        d.justification.push_back(
            {"commutator_fixed_field_descent",
             {{"nu", "1"}, {"depth", "1"}, {"fixed_field", kFieldMaxAbelian}},
             "G' acts trivially and fixes the maximal abelian subextension"});
        return d;
    }

    // Deeper derived terms have no named fixed field outside the catalog.
    d.conclusion = Conclusion::no_conclusion;
    return d;
}

} // namespace gruen
