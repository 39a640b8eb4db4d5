#pragma once

// Exact rational simplex (two-phase, Bland's rule) for
//   maximize c.x  subject to  A x = b,  x >= 0.

#include "qlogic/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qlogic {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LinearProgram {
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    std::vector<Rational> c;
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    std::vector<Rational> x;
};

namespace detail {

class Tableau {
public:
    Tableau(const LinearProgram& lp) : m_(lp.A.size()), n_(lp.c.size()) {
        if (lp.b.size() != m_) throw std::invalid_argument("LP: |b| != rows of A");
        cols_ = n_ + m_;
        rows_.assign(m_, std::vector<Rational>(cols_ + 1));
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            if (lp.A[i].size() != n_) throw std::invalid_argument("LP: ragged constraint matrix");
            const bool flip = lp.b[i] < 0;
            for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = flip ? Rational(-lp.A[i][j]) : lp.A[i][j];
            rows_[i][n_ + i] = 1;
            rows_[i][cols_] = flip ? Rational(-lp.b[i]) : lp.b[i];
            basis_[i] = n_ + i;
        }
    }

    LpResult solve(const std::vector<Rational>& c) {
        // Phase 1: maximize -(sum of artificials).
        std::vector<Rational> phase1(cols_);
        for (std::size_t j = n_; j < cols_; ++j) phase1[j] = -1;
        set_objective(phase1);
        run(cols_);
        if (obj_[cols_] != 0) return {LpStatus::Infeasible, {}, {}};
        drive_out_artificials();

        std::vector<Rational> phase2(cols_);
        for (std::size_t j = 0; j < n_; ++j) phase2[j] = c[j];
        set_objective(phase2);
        if (!run(n_)) return {LpStatus::Unbounded, {}, {}};

        LpResult r;
        r.status = LpStatus::Optimal;
        r.x.assign(n_, Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] < n_) r.x[basis_[i]] = rows_[i][cols_];
        }
        r.value = -obj_[cols_];
        return r;
    }

private:
    // obj_[j] holds the reduced cost of column j; obj_[cols_] holds -value.
    void set_objective(const std::vector<Rational>& c) {
        obj_.assign(cols_ + 1, Rational(0));
        for (std::size_t j = 0; j < cols_; ++j) obj_[j] = c[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& cb = c[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= cb * rows_[i][j];
        }
    }

    void pivot(std::size_t r, std::size_t q) {
        const Rational p = rows_[r][q];
        for (auto& v : rows_[r]) v /= p;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || rows_[i][q] == 0) continue;
            const Rational f = rows_[i][q];
            for (std::size_t j = 0; j <= cols_; ++j) {
                if (rows_[r][j] != 0) rows_[i][j] -= f * rows_[r][j];
            }
        }
        if (obj_[q] != 0) {
            const Rational f = obj_[q];
            for (std::size_t j = 0; j <= cols_; ++j) {
                if (rows_[r][j] != 0) obj_[j] -= f * rows_[r][j];
            }
        }
        basis_[r] = q;
    }

    // Iterates to optimality over entering columns [0, limit). Returns false
    // when unbounded.
    bool run(std::size_t limit) {
        for (;;) {
            std::size_t q = limit;
            for (std::size_t j = 0; j < limit; ++j) {
                if (obj_[j] > 0) {
                    q = j;
                    break;
                }
            }
            if (q == limit) return true;
            std::size_t r = rows_.size();
            Rational best;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][q] <= 0) continue;
                Rational ratio = rows_[i][cols_] / rows_[i][q];
                if (r == rows_.size() || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
                    r = i;
                    best = ratio;
                }
            }
            if (r == rows_.size()) return false;
            pivot(r, q);
        }
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < rows_.size();) {
            if (basis_[i] < n_) {
                ++i;
                continue;
            }
            std::size_t q = n_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (rows_[i][j] != 0) {
                    q = j;
                    break;
                }
            }
            if (q == n_) {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, q);
            ++i;
        }
    }

    std::size_t m_, n_, cols_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> obj_;
};

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& lp) {
    detail::Tableau t(lp);
    return t.solve(lp.c);
}

}  // namespace qlogic
