#pragma once

// Exact polyhedral machinery: elimination of an equality system to an affine
// parametrization, and vertex enumeration of {t : A t <= b} by the double
// description method or by exhaustive basis enumeration.

#include "qlogic/errors.hpp"
#include "qlogic/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace qlogic {

/// Sparse affine form: constant + sum coeff[k] * x_k.
struct AffineExpr {
    std::map<std::size_t, Rational> coeff;
    Rational constant;

    void add_scaled(const AffineExpr& other, const Rational& s) {
        if (s == 0) return;
        constant += s * other.constant;
        for (const auto& [k, v] : other.coeff) {
            auto& slot = coeff[k];
            slot += s * v;
            if (slot == 0) coeff.erase(k);
        }
    }
};

/// Incrementally solves a system of linear equalities over variables
/// 0..n-1. Every variable ends up either free or expressed as an affine form
/// of the free variables.
class EqualityReducer {
public:
    /// `priority[j]`: when a new equation is solved, the free variable of
    /// highest priority (ties: highest index) becomes the pivot.
    EqualityReducer(std::size_t n, std::vector<std::size_t> priority)
        : pivot_(n), priority_(std::move(priority)) {}

    /// Adds sum lhs[j] x_j = rhs. Returns false if the system became
    /// inconsistent.
    bool add(const std::vector<std::pair<std::size_t, Rational>>& lhs, const Rational& rhs) {
        AffineExpr form;
        form.constant = -rhs;
        for (const auto& [j, c] : lhs) form.add_scaled(expr_of(j), c);
        if (form.coeff.empty()) return form.constant == 0;

        std::size_t p = form.coeff.begin()->first;
        for (const auto& [k, v] : form.coeff) {
            if (priority_[k] > priority_[p] || (priority_[k] == priority_[p] && k > p)) p = k;
        }
        // form = 0  =>  x_p = -(form - c_p x_p) / c_p
        const Rational cp = form.coeff[p];
        form.coeff.erase(p);
        AffineExpr solved;
        solved.add_scaled(form, Rational(-1) / cp);
        for (auto& slot : pivot_) {
            if (!slot) continue;
            auto it = slot->coeff.find(p);
            if (it == slot->coeff.end()) continue;
            Rational s = it->second;
            slot->coeff.erase(it);
            slot->add_scaled(solved, s);
        }
        pivot_[p] = std::move(solved);
        return true;
    }

    bool is_free(std::size_t j) const { return !pivot_[j].has_value(); }

    AffineExpr expr_of(std::size_t j) const {
        if (pivot_[j]) return *pivot_[j];
        AffineExpr e;
        e.coeff[j] = 1;
        return e;
    }

    std::vector<std::size_t> free_variables() const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < pivot_.size(); ++j) {
            if (!pivot_[j]) out.push_back(j);
        }
        return out;
    }

private:
    std::vector<std::optional<AffineExpr>> pivot_;
    std::vector<std::size_t> priority_;
};

/// {t in Q^dim : rows[i] . t <= rhs[i]}
struct HPolytope {
    std::size_t dim = 0;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;

    bool contains(const std::vector<Rational>& t) const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Rational s = 0;
            for (std::size_t k = 0; k < dim; ++k) s += rows[i][k] * t[k];
            if (s > rhs[i]) return false;
        }
        return true;
    }
};

/// Scales each inequality so its first nonzero coefficient has magnitude
/// one, drops duplicates (keeping the tightest bound) and trivial rows.
/// Returns nullopt if some row with zero coefficients is violated.
inline std::optional<HPolytope> normalize_rows(const HPolytope& p) {
    std::map<std::vector<Rational>, Rational> best;
    std::vector<std::vector<Rational>> order;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        std::vector<Rational> a = p.rows[i];
        Rational b = p.rhs[i];
        auto nz = std::find_if(a.begin(), a.end(), [](const Rational& v) { return v != 0; });
        if (nz == a.end()) {
            if (b < 0) return std::nullopt;
            continue;
        }
        Rational s = abs(*nz);
        for (auto& v : a) v /= s;
        b /= s;
        auto [it, inserted] = best.emplace(a, b);
        if (inserted) {
            order.push_back(a);
        } else if (b < it->second) {
            it->second = b;
        }
    }
    HPolytope out;
    out.dim = p.dim;
    for (auto& a : order) {
        out.rhs.push_back(best[a]);
        out.rows.push_back(std::move(a));
    }
    return out;
}

struct VertexOptions {
    std::size_t vertex_budget = 100'000;
    std::size_t basis_budget = 1'000'000;
};

namespace detail {

using RowSet = boost::dynamic_bitset<std::uint64_t>;

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] != 0 && b[k] != 0) s += a[k] * b[k];
    }
    return s;
}

/// Solves M x = rhs for square M; nullopt if singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> M,
                                                         std::vector<Rational> rhs) {
    const std::size_t n = M.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && M[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        const Rational p = M[col][col];
        for (std::size_t k = col; k < n; ++k) M[col][k] /= p;
        rhs[col] /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || M[r][col] == 0) continue;
            const Rational f = M[r][col];
            for (std::size_t k = col; k < n; ++k) M[r][k] -= f * M[col][k];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

inline void normalize_ray(std::vector<Rational>& r) {
    auto nz = std::find_if(r.begin(), r.end(), [](const Rational& v) { return v != 0; });
    if (nz == r.end()) return;
    Rational s = abs(*nz);
    if (s != 1) {
        for (auto& v : r) v /= s;
    }
}

}  // namespace detail

/// Vertices of a bounded polytope by the double description method on the
/// homogenized cone {(x0, t) : x0 >= 0, rhs x0 - A t >= 0}.
inline std::vector<std::vector<Rational>> vertices_double_description(const HPolytope& poly,
                                                                      const VertexOptions& opt = {}) {
    auto normalized = normalize_rows(poly);
    if (!normalized) return {};
    const HPolytope& p = *normalized;
    const std::size_t D = p.dim + 1;

    std::vector<std::vector<Rational>> H;
    H.push_back(std::vector<Rational>(D));
    H[0][0] = 1;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        std::vector<Rational> h(D);
        h[0] = p.rhs[i];
        for (std::size_t k = 0; k < p.dim; ++k) h[k + 1] = -p.rows[i][k];
        H.push_back(std::move(h));
    }
    const std::size_t M = H.size();

    // Greedy choice of D independent rows.
    std::vector<std::size_t> basis_rows;
    {
        std::vector<std::vector<Rational>> echelon;
        std::vector<std::size_t> lead;
        for (std::size_t i = 0; i < M && basis_rows.size() < D; ++i) {
            std::vector<Rational> v = H[i];
            for (std::size_t e = 0; e < echelon.size(); ++e) {
                if (v[lead[e]] != 0) {
                    Rational f = v[lead[e]] / echelon[e][lead[e]];
                    for (std::size_t k = 0; k < D; ++k) v[k] -= f * echelon[e][k];
                }
            }
            auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
            if (nz == v.end()) continue;
            lead.push_back(static_cast<std::size_t>(nz - v.begin()));
            echelon.push_back(std::move(v));
            basis_rows.push_back(i);
        }
    }
    if (basis_rows.size() < D) {
        throw Error(ErrorKind::InvalidInput, "polytope is unbounded (homogenized cone not pointed)");
    }

    struct Ray {
        std::vector<Rational> x;
        detail::RowSet zero;
    };
    std::vector<Ray> rays;
    detail::RowSet processed(M);
    for (std::size_t r : basis_rows) processed.set(r);
    for (std::size_t j = 0; j < D; ++j) {
        std::vector<std::vector<Rational>> K;
        for (std::size_t r : basis_rows) K.push_back(H[r]);
        std::vector<Rational> e(D);
        e[j] = 1;
        auto x = detail::solve_square(K, e);
        Ray ray{std::move(*x), detail::RowSet(M)};
        for (std::size_t k = 0; k < D; ++k) {
            if (k != j) ray.zero.set(basis_rows[k]);
        }
        detail::normalize_ray(ray.x);
        rays.push_back(std::move(ray));
    }

    for (std::size_t i = 0; i < M; ++i) {
        if (processed.test(i)) continue;
        std::vector<Rational> s(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            s[k] = detail::dot(H[i], rays[k].x);
            if (s[k] > 0) pos.push_back(k);
            else if (s[k] < 0) neg.push_back(k);
            else rays[k].zero.set(i);
        }
        processed.set(i);
        if (neg.empty()) continue;

        std::vector<Ray> next;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (s[k] >= 0) next.push_back(rays[k]);
        }
        for (std::size_t a : pos) {
            for (std::size_t b : neg) {
                detail::RowSet common = rays[a].zero & rays[b].zero;
                if (D >= 2 && common.count() + 2 < D) continue;
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
                    if (k != a && k != b && common.is_subset_of(rays[k].zero)) adjacent = false;
                }
                if (!adjacent) continue;
                Ray r{std::vector<Rational>(D), common};
                for (std::size_t c = 0; c < D; ++c) {
                    r.x[c] = s[a] * rays[b].x[c] - s[b] * rays[a].x[c];
                }
                r.zero.set(i);
                detail::normalize_ray(r.x);
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
        if (rays.size() > opt.vertex_budget) {
            throw Error(ErrorKind::VertexBudgetExceeded,
                        "double description exceeded " + std::to_string(opt.vertex_budget) + " rays");
        }
    }

    std::vector<std::vector<Rational>> out;
    for (const auto& r : rays) {
        if (r.x[0] == 0) {
            throw Error(ErrorKind::InvalidInput, "polytope is unbounded (recession ray found)");
        }
        std::vector<Rational> t(p.dim);
        for (std::size_t k = 0; k < p.dim; ++k) t[k] = r.x[k + 1] / r.x[0];
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Vertices by trying every choice of `dim` tight inequalities.
inline std::vector<std::vector<Rational>> vertices_basis_enumeration(const HPolytope& poly,
                                                                     const VertexOptions& opt = {}) {
    auto normalized = normalize_rows(poly);
    if (!normalized) return {};
    const HPolytope& p = *normalized;
    const std::size_t m = p.rows.size(), d = p.dim;
    std::set<std::vector<Rational>> found;
    if (d == 0) return {std::vector<Rational>{}};
    if (m < d) return {};

    std::vector<std::size_t> pick(d);
    for (std::size_t k = 0; k < d; ++k) pick[k] = k;
    std::size_t tried = 0;
    for (;;) {
        if (++tried > opt.basis_budget) {
            throw Error(ErrorKind::VertexBudgetExceeded,
                        "basis enumeration exceeded " + std::to_string(opt.basis_budget) + " bases");
        }
        std::vector<std::vector<Rational>> A;
        std::vector<Rational> b;
        for (std::size_t k : pick) {
            A.push_back(p.rows[k]);
            b.push_back(p.rhs[k]);
        }
        if (auto t = detail::solve_square(std::move(A), std::move(b)); t && p.contains(*t)) {
            found.insert(std::move(*t));
            if (found.size() > opt.vertex_budget) {
                throw Error(ErrorKind::VertexBudgetExceeded, "too many vertices");
            }
        }
        // next combination
        std::size_t k = d;
        while (k > 0 && pick[k - 1] == m - d + (k - 1)) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t j = k; j < d; ++j) pick[j] = pick[j - 1] + 1;
    }
    return {found.begin(), found.end()};
}

}  // namespace qlogic
