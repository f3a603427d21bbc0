#pragma once

/// F_q for q = p^f realized concretely: elements are polynomials in x modulo a
/// fixed primitive polynomial, and each element embeds into M_f(F_p) through
/// its multiplication action on the power basis (the regular representation).
/// GL_n(F_q) thereby embeds into GL_{nf}(F_p) with reproducible matrices.

#include <cstdint>
#include <vector>

#include "gruen/arith.hpp"
#include "gruen/errors.hpp"
#include "gruen/residue_matrix.hpp"

namespace gruen {

/// Arithmetic tables for one F_q. Element = coefficient vector of length f
/// (constant term first), reduced mod the stored polynomial.
class FieldTable {
  public:
    FieldTable(std::int64_t p, int f) : p_(p), f_(f) {
        require_prime(p, "p");
        if (f < 1) throw domain_error("FieldTable: f must be >= 1");
        std::int64_t q = 1;
        for (int k = 0; k < f; ++k) {
            if (q > 4000000 / p) throw domain_error("FieldTable: q too large to tabulate");
            q *= p;
        }
        q_ = q;
        if (f_ == 1) {
            modpoly_ = {smallest_primitive_root(p)};
            return;
        }
        // Smallest monic polynomial x^f + c_{f-1} x^{f-1} + ... + c_0 (coefficient
        // vectors in base-p counter order) for which x generates the unit group.
        // Such an x of order q-1 forces irreducibility, so one check suffices.
        std::vector<std::int64_t> c(static_cast<std::size_t>(f), 0);
        for (std::int64_t code = 0; code < q; ++code) {
            std::int64_t rest = code;
            for (int k = f - 1; k >= 0; --k) {
                c[static_cast<std::size_t>(k)] = rest % p;
                rest /= p;
            }
            if (x_has_full_order(c)) {
                modpoly_ = c;
                return;
            }
        }
        throw internal_error("FieldTable: no primitive polynomial found");
    }

    std::int64_t p() const { return p_; }
    int f() const { return f_; }
    std::int64_t q() const { return q_; }

    /// Coefficients c_0..c_{f-1} with x^f = -(c_{f-1} x^{f-1} + ... + c_0).
    const std::vector<std::int64_t>& modulus_poly() const { return modpoly_; }

    std::vector<std::int64_t> zero() const { return std::vector<std::int64_t>(f_, 0); }
    std::vector<std::int64_t> one() const {
        auto v = zero();
        v[0] = 1;
        return v;
    }
    /// The fixed generator of the unit group: x itself (or the smallest
    /// primitive root when f = 1).
    std::vector<std::int64_t> generator() const {
        auto v = zero();
        if (f_ == 1)
            v[0] = modpoly_[0];
        else
            v[1] = 1;
        return v;
    }
    /// x^k as an element, for assembling a basis of F_q over F_p.
    std::vector<std::int64_t> power_of_x(int k) const {
        auto v = one();
        auto x = zero();
        if (f_ == 1)
            x[0] = 1; // x reduces to itself only in the trivial sense; callers use k < f = 1
        else
            x[1] = 1;
        for (int i = 0; i < k; ++i) v = mul(v, x);
        return v;
    }

    std::vector<std::int64_t> add(const std::vector<std::int64_t>& a,
                                  const std::vector<std::int64_t>& b) const {
        auto r = zero();
        for (int k = 0; k < f_; ++k) r[k] = (a[k] + b[k]) % p_;
        return r;
    }

    std::vector<std::int64_t> mul(const std::vector<std::int64_t>& a,
                                  const std::vector<std::int64_t>& b) const {
        if (f_ == 1) return {a[0] * b[0] % p_};
        std::vector<std::int64_t> prod(static_cast<std::size_t>(2 * f_ - 1), 0);
        for (int i = 0; i < f_; ++i)
            for (int j = 0; j < f_; ++j)
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
        // reduce: x^f == -(c_{f-1} x^{f-1} + ... + c_0)
        for (int d = 2 * f_ - 2; d >= f_; --d) {
            const std::int64_t coef = prod[d];
            if (coef == 0) continue;
            prod[d] = 0;
            for (int k = 0; k < f_; ++k) {
                prod[d - f_ + k] =
                    ((prod[d - f_ + k] - coef * modpoly_[k]) % p_ + p_) % p_;
            }
        }
        prod.resize(static_cast<std::size_t>(f_));
        return prod;
    }

    bool is_zero(const std::vector<std::int64_t>& a) const {
        for (auto v : a)
            if (v != 0) return false;
        return true;
    }

    /// Regular-representation matrix of the element: column j holds a * x^j.
    ResidueMatrix regular_matrix(const std::vector<std::int64_t>& a) const {
        std::vector<std::int64_t> vals(static_cast<std::size_t>(f_) * f_, 0);
        std::vector<std::int64_t> col = a;
        for (int j = 0; j < f_; ++j) {
            for (int i = 0; i < f_; ++i)
                vals[static_cast<std::size_t>(i) * f_ + j] = col[i];
            if (j + 1 < f_) {
                auto x = zero();
                x[1] = 1;
                col = mul(col, x);
            }
        }
        return ResidueMatrix(f_, Modulus(p_, 1), vals);
    }

    /// Embed an n x n matrix of field elements into M_{nf}(F_p) blockwise.
    ResidueMatrix embed(int n,
                        const std::vector<std::vector<std::int64_t>>& field_entries) const {
        if (static_cast<int>(field_entries.size()) != n * n)
            throw domain_error("FieldTable::embed: wrong entry count");
        const int dim = n * f_;
        std::vector<std::int64_t> vals(static_cast<std::size_t>(dim) * dim, 0);
        for (int bi = 0; bi < n; ++bi) {
            for (int bj = 0; bj < n; ++bj) {
                const ResidueMatrix block =
                    regular_matrix(field_entries[static_cast<std::size_t>(bi) * n + bj]);
                for (int i = 0; i < f_; ++i)
                    for (int j = 0; j < f_; ++j)
                        vals[static_cast<std::size_t>(bi * f_ + i) * dim + (bj * f_ + j)] =
                            block.at(i, j);
            }
        }
        return ResidueMatrix(dim, Modulus(p_, 1), vals);
    }

    static std::int64_t smallest_primitive_root(std::int64_t p) {
        if (p == 2) return 1;
        for (std::int64_t g = 2; g < p; ++g) {
            if (multiplicative_order(g, p) == p - 1) return g;
        }
        throw internal_error("smallest_primitive_root: none found");
    }

  private:
    bool x_has_full_order(const std::vector<std::int64_t>& poly) const {
        // Walk x, x^2, ... mod (poly, p); x is primitive iff the first return
        // to 1 happens at exponent exactly q-1.
        std::vector<std::int64_t> acc(static_cast<std::size_t>(f_), 0);
        acc[1 % f_] = 1; // f >= 2 here
        std::vector<std::int64_t> cur = acc;
        const std::vector<std::int64_t> one_v = [this] {
            std::vector<std::int64_t> v(static_cast<std::size_t>(f_), 0);
            v[0] = 1;
            return v;
        }();
        auto mul_by_x = [this, &poly](std::vector<std::int64_t> v) {
            std::vector<std::int64_t> r(static_cast<std::size_t>(f_), 0);
            const std::int64_t top = v[static_cast<std::size_t>(f_ - 1)];
            for (int k = f_ - 1; k >= 1; --k) r[k] = v[k - 1];
            if (top != 0)
                for (int k = 0; k < f_; ++k)
                    r[k] = ((r[k] - top * poly[k]) % p_ + p_) % p_;
            return r;
        };
        for (std::int64_t t = 1; t <= q_ - 1; ++t) {
            if (cur == one_v) return t == q_ - 1;
            cur = mul_by_x(std::move(cur));
        }
        return false;
    }

    std::int64_t p_;
    int f_;
    std::int64_t q_;
    std::vector<std::int64_t> modpoly_;
};

} // namespace gruen
