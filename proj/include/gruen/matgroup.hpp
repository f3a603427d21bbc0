#pragma once

/// Brute-force finite matrix-group engine over Z/p^e: closure enumeration,
/// Sylow subgroup extraction, commutator and derived series, and structure
/// classification. This is the oracle side of every theorem check, so the
/// algorithms favor directness over cleverness: groups are full element sets,
/// membership is exact, and every construction is deterministic.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "gruen/arith.hpp"
#include "gruen/errors.hpp"
#include "gruen/finite_field.hpp"
#include "gruen/residue_matrix.hpp"

namespace gruen {

inline constexpr std::uint64_t kDefaultCap = 2'000'000;

/// A fully enumerated group of invertible matrices. Immutable once built;
/// elements are kept sorted in the canonical (lexicographic) order.
class MatrixGroup {
  public:
    MatrixGroup(std::vector<ResidueMatrix> generators,
                std::vector<ResidueMatrix> sorted_elements)
        : gens_(std::move(generators)), elems_(std::move(sorted_elements)) {
        if (elems_.empty())
            throw internal_error("MatrixGroup: element set cannot be empty");
    }

    const std::vector<ResidueMatrix>& generators() const { return gens_; }
    /// All elements, sorted lexicographically by entry sequence.
    const std::vector<ResidueMatrix>& elements() const { return elems_; }
    std::uint64_t order() const { return elems_.size(); }
    int dim() const { return elems_.front().dim(); }
    const Modulus& modulus() const { return elems_.front().modulus(); }

    bool contains(const ResidueMatrix& m) const {
        if (m.dim() != dim() || m.modulus() != modulus()) return false;
        return std::binary_search(elems_.begin(), elems_.end(), m);
    }

  private:
    std::vector<ResidueMatrix> gens_;
    std::vector<ResidueMatrix> elems_;
};

/// Breadth-first closure of the generated subgroup. Finiteness makes the
/// generated submonoid a group, so closing under right multiplication by the
/// generators starting from the identity is enough.
inline MatrixGroup generate_closure(const std::vector<ResidueMatrix>& generators,
                                    std::uint64_t cap = kDefaultCap) {
    if (generators.empty())
        throw domain_error("generate_closure: need at least one generator");
    for (const auto& g : generators) {
        require_compatible(generators.front(), g, "generate_closure");
        if (!is_invertible(g))
            throw domain_error("generate_closure: generator is not invertible");
    }
    const int n = generators.front().dim();
    const Modulus mod = generators.front().modulus();

    std::unordered_set<ResidueMatrix, MatrixHash> seen;
    std::vector<const ResidueMatrix*> queue;
    auto [it0, fresh0] = seen.insert(ResidueMatrix::identity(n, mod));
    queue.push_back(&*it0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        // references into the set stay valid across inserts (node-based)
        const ResidueMatrix& u = *queue[head];
        for (const auto& g : generators) {
            auto [it, fresh] = seen.insert(mat_mul(u, g));
            if (fresh) {
                if (seen.size() > cap)
                    throw cap_exceeded(cap, "generate_closure: group exceeds cap");
                queue.push_back(&*it);
            }
        }
    }

    std::vector<ResidueMatrix> elems;
    elems.reserve(seen.size());
    while (!seen.empty())
        elems.push_back(std::move(seen.extract(seen.begin()).value()));
    std::sort(elems.begin(), elems.end());
    return MatrixGroup(generators, std::move(elems));
}

inline MatrixGroup trivial_group(int dim, Modulus mod) {
    auto id = ResidueMatrix::identity(dim, mod);
    return MatrixGroup({}, {id});
}

/// Full enumeration of GL_n(F_q). For f > 1 the field is realized through the
/// regular representation, so the elements live in GL_{nf}(F_p); the order is
/// still |GL_n(F_q)|. Generators: elementary transvections plus one diagonal
/// unit carrying a generator of F_q^*.
inline MatrixGroup enumerate_gl(int n, const PrimePower& q,
                                std::uint64_t cap = kDefaultCap) {
    if (n < 1) throw domain_error("enumerate_gl: n must be >= 1");
    if (gl_order(n, q) > cap)
        throw cap_exceeded(cap, "enumerate_gl: |GL_" + std::to_string(n) + "(F_" +
                                    q.q.str() + ")| = " + gl_order(n, q).str());

    const FieldTable field(q.p, q.f);
    std::vector<ResidueMatrix> gens;
    auto make = [&](const std::vector<std::vector<std::int64_t>>& cells) {
        return field.embed(n, cells);
    };
    std::vector<std::vector<std::int64_t>> id_cells(static_cast<std::size_t>(n) * n,
                                                    field.zero());
    for (int i = 0; i < n; ++i) id_cells[static_cast<std::size_t>(i) * n + i] = field.one();

    // diag(w, 1, ..., 1) with w generating F_q^*; omitted when the unit group
    // is trivial (q = 2).
    if (q.q != 2) {
        auto cells = id_cells;
        cells[0] = field.generator();
        gens.push_back(make(cells));
    }
    // I + x^k E_{ij}: enough to generate SL_n(F_q).
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (int k = 0; k < q.f; ++k) {
                auto cells = id_cells;
                cells[static_cast<std::size_t>(i) * n + j] = field.power_of_x(k);
                gens.push_back(make(cells));
            }
        }
    }
    if (gens.empty()) gens.push_back(make(id_cells)); // GL_1(F_2)

    MatrixGroup g = generate_closure(gens, cap);
    if (BigInt(g.order()) != gl_order(n, q))
        throw internal_error("enumerate_gl: closure order " + std::to_string(g.order()) +
                             " does not match the order formula " + gl_order(n, q).str());
    return g;
}

namespace detail {

inline std::vector<std::int64_t> prime_factors(std::uint64_t n) {
    std::vector<std::int64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(static_cast<std::int64_t>(d));
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(static_cast<std::int64_t>(n));
    return out;
}

/// Order of one element given the group order and its prime factors.
inline std::uint64_t element_order(const ResidueMatrix& x, std::uint64_t group_order,
                                   const std::vector<std::int64_t>& primes) {
    std::uint64_t ord = group_order;
    for (std::int64_t p : primes) {
        while (ord % static_cast<std::uint64_t>(p) == 0) {
            const std::uint64_t candidate = ord / static_cast<std::uint64_t>(p);
            if (mat_pow(x, candidate).is_identity())
                ord = candidate;
            else
                break;
        }
    }
    return ord;
}

inline bool has_ell_power_order(const ResidueMatrix& x, std::int64_t ell, int max_val) {
    ResidueMatrix y = x;
    for (int j = 0; j <= max_val; ++j) {
        if (y.is_identity()) return true;
        y = mat_pow(y, static_cast<std::uint64_t>(ell));
    }
    return false;
}

} // namespace detail

/// Deterministic Sylow construction: walk the ell-power-order elements in
/// canonical order and grow the current ell-subgroup by the first one that
/// normalizes it, reclosing after every extension, until the full ell-part of
/// the group order is reached. A stall would falsify Sylow's theorem, so it
/// aborts loudly instead of returning a partial subgroup.
inline MatrixGroup sylow_subgroup(const MatrixGroup& g, std::int64_t ell) {
    require_prime(ell, "ell");
    const int v = ell_adic_valuation(BigInt(g.order()), ell);
    if (v == 0) return trivial_group(g.dim(), g.modulus());
    std::uint64_t target = 1;
    for (int k = 0; k < v; ++k) target *= static_cast<std::uint64_t>(ell);

    std::vector<const ResidueMatrix*> candidates;
    for (const auto& x : g.elements())
        if (detail::has_ell_power_order(x, ell, v)) candidates.push_back(&x);

    std::vector<ResidueMatrix> sub_gens;
    MatrixGroup sub = trivial_group(g.dim(), g.modulus());
    while (sub.order() < target) {
        bool extended = false;
        for (const ResidueMatrix* z : candidates) {
            if (sub.contains(*z)) continue;
            const ResidueMatrix zinv = mat_inverse(*z);
            bool normalizes = true;
            for (const auto& h : sub.elements()) {
                if (!sub.contains(mat_mul(mat_mul(*z, h), zinv))) {
                    normalizes = false;
                    break;
                }
            }
            if (!normalizes) continue;
            sub_gens.push_back(*z);
            sub = generate_closure(sub_gens, target);
            extended = true;
            break;
        }
        if (!extended)
            throw internal_error(
                "sylow_subgroup: no normalizing extension found; this would "
                "falsify Sylow's theorem");
    }
    return sub;
}

/// Subgroup generated by all commutators a b a^-1 b^-1 of elements of g.
inline MatrixGroup commutator_subgroup(const MatrixGroup& g,
                                       std::uint64_t cap = kDefaultCap) {
    if (g.order() == 1) return trivial_group(g.dim(), g.modulus());
    const auto& elems = g.elements();
    std::vector<ResidueMatrix> inv;
    inv.reserve(elems.size());
    for (const auto& x : elems) inv.push_back(mat_inverse(x));

    std::unordered_set<ResidueMatrix, MatrixHash> comms;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = 0; j < elems.size(); ++j) {
            comms.insert(
                mat_mul(mat_mul(mat_mul(elems[i], elems[j]), inv[i]), inv[j]));
        }
    }
    std::vector<ResidueMatrix> comm_gens;
    comm_gens.reserve(comms.size());
    while (!comms.empty())
        comm_gens.push_back(std::move(comms.extract(comms.begin()).value()));
    std::sort(comm_gens.begin(), comm_gens.end());
    return generate_closure(comm_gens, cap);
}

struct DerivedSeries {
    /// g, g', g'', ... ending at the trivial group (solvable) or at the first
    /// repeated term (perfect, hence non-solvable).
    std::vector<MatrixGroup> terms;
    bool solvable = false;
    std::optional<int> derived_length; // set iff solvable
};

inline DerivedSeries derived_series(const MatrixGroup& g) {
    DerivedSeries out;
    out.terms.push_back(g);
    while (out.terms.back().order() > 1) {
        MatrixGroup next = commutator_subgroup(out.terms.back(), out.terms.back().order());
        if (next.order() == out.terms.back().order()) {
            out.solvable = false;
            return out;
        }
        out.terms.push_back(std::move(next));
    }
    out.solvable = true;
    out.derived_length = static_cast<int>(out.terms.size()) - 1;
    return out;
}

struct GroupStructureReport {
    std::uint64_t order = 1;
    bool is_abelian = true;
    /// Abelian with exponent exactly the declared prime; the trivial group
    /// reports false here (its exponent is 1).
    bool is_elementary_abelian = false;
    bool solvable = true;
    std::optional<int> derived_length; // set iff solvable
    std::uint64_t exponent = 1;
};

inline GroupStructureReport structure_report(const MatrixGroup& g, std::int64_t ell) {
    require_prime(ell, "ell");
    GroupStructureReport rep;
    rep.order = g.order();

    rep.is_abelian = true;
    const auto& gens = g.generators();
    for (std::size_t i = 0; i < gens.size() && rep.is_abelian; ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (mat_mul(gens[i], gens[j]) != mat_mul(gens[j], gens[i])) {
                rep.is_abelian = false;
                break;
            }

    const auto primes = detail::prime_factors(rep.order);
    rep.exponent = 1;
    for (const auto& x : g.elements()) {
        const std::uint64_t ord = detail::element_order(x, rep.order, primes);
        rep.exponent = std::lcm(rep.exponent, ord);
        if (rep.exponent == rep.order) break; // lcm cannot grow past |g|
    }

    rep.is_elementary_abelian =
        rep.is_abelian && rep.exponent == static_cast<std::uint64_t>(ell);

    if (rep.order == 1) {
        rep.solvable = true;
        rep.derived_length = 0;
    } else if (rep.is_abelian) {
        rep.solvable = true;
        rep.derived_length = 1;
    } else {
        const DerivedSeries series = derived_series(g);
        rep.solvable = series.solvable;
        rep.derived_length = series.derived_length;
    }
    return rep;
}

} // namespace gruen
