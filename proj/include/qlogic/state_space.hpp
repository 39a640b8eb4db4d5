#pragma once

// States on a finite orthomodular poset, computed exactly. The state space
// is a polytope; everything here is answered either from its vertex list
// (optimization over a face {rho(e) = 1} is attained at a vertex of the
// face) or by small exact LPs over convex weights of vertices.

#include "qlogic/compatibility.hpp"
#include "qlogic/errors.hpp"
#include "qlogic/exact_lp.hpp"
#include "qlogic/logic.hpp"
#include "qlogic/polytope.hpp"
#include "qlogic/rational.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qlogic {

using LogicPtr = std::shared_ptr<const FiniteLogic>;

inline LogicPtr share(FiniteLogic L) { return std::make_shared<const FiniteLogic>(std::move(L)); }

/// Probability assignment indexed by element.
struct State {
    std::vector<Rational> values;

    const Rational& operator()(Element e) const { return values[e]; }
    friend bool operator==(const State&, const State&) = default;
};

/// Verifies the state axioms exactly; returns a description of the first
/// violation or nullopt.
inline std::optional<std::string> state_violation(const FiniteLogic& L, const State& s) {
    if (s.values.size() != L.size()) return "state has " + std::to_string(s.values.size()) + " values";
    if (s(L.one()) != 1) return "value on 1 is not 1";
    for (Element e = 0; e < L.size(); ++e) {
        if (s(e) < 0 || s(e) > 1) return "value on '" + L.label(e) + "' outside [0,1]";
    }
    for (Element e = 0; e < L.size(); ++e) {
        for (Element f = e; f < L.size(); ++f) {
            if (!orthogonal(L, e, f)) continue;
            auto j = try_sup(L, e, f);
            if (j && s(*j) != s(e) + s(f)) {
                return "not additive on '" + L.label(e) + "', '" + L.label(f) + "'";
            }
        }
    }
    return std::nullopt;
}

inline State make_state(const FiniteLogic& L, std::vector<Rational> values) {
    State s{std::move(values)};
    if (auto why = state_violation(L, s)) throw Error(ErrorKind::InvalidInput, "not a state: " + *why);
    return s;
}

enum class VertexMethod { DoubleDescription, BasisEnumeration };

struct StateOptions {
    VertexMethod method = VertexMethod::DoubleDescription;
    VertexOptions vertices;
};

/// v[sup] = v[e] + v[f] for an orthogonal pair.
struct AdditivityConstraint {
    Element sup, e, f;
};

/// The set of all states: {v in [0,1]^n : v[1] = 1, additivity}, with its
/// vertices enumerated exactly.
class StatePolytope {
public:
    StatePolytope(LogicPtr logic, const StateOptions& opt = {}) : logic_(std::move(logic)) { build(opt); }
    StatePolytope(const FiniteLogic& L, const StateOptions& opt = {}) : StatePolytope(share(L), opt) {}

    const FiniteLogic& logic() const { return *logic_; }
    const LogicPtr& logic_ptr() const { return logic_; }
    const std::vector<State>& vertices() const { return vertices_; }
    const std::vector<AdditivityConstraint>& equalities() const { return equalities_; }
    /// Affine dimension of the parametrization (free coordinates).
    std::size_t dimension() const { return free_.size(); }
    const HPolytope& bounds() const { return bounds_; }

    /// Indices of vertices with value 1 on e; they span the face {rho(e) = 1}.
    std::vector<std::size_t> face(Element e) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (vertices_[i](e) == 1) out.push_back(i);
        }
        return out;
    }

    /// Maps a point of the parameter space to element values.
    State evaluate(const std::vector<Rational>& t) const {
        State s;
        s.values.resize(logic_->size());
        for (Element x = 0; x < logic_->size(); ++x) {
            Rational v = exprs_[x].constant;
            for (const auto& [j, c] : exprs_[x].coeff) v += c * t[free_pos_[j]];
            s.values[x] = v;
        }
        return s;
    }

private:
    void build(const StateOptions& opt) {
        const FiniteLogic& L = *logic_;
        const std::size_t n = L.size();
        for (Element e = 0; e < n; ++e) {
            for (Element f = e; f < n; ++f) {
                if (e == L.zero() && f != L.zero()) continue;  // only restates v[0] = 0
                if (orthogonal(L, e, f)) equalities_.push_back({sup(L, e, f), e, f});
            }
        }
        std::stable_sort(equalities_.begin(), equalities_.end(),
                         [&](const AdditivityConstraint& a, const AdditivityConstraint& b) {
                             return L.down_count(a.sup) < L.down_count(b.sup);
                         });
        std::vector<std::size_t> priority(n);
        for (Element x = 0; x < n; ++x) priority[x] = L.down_count(x);
        EqualityReducer red(n, priority);
        bool ok = true;
        for (const auto& c : equalities_) {
            std::vector<std::pair<std::size_t, Rational>> lhs{{c.sup, Rational(1)}};
            lhs.emplace_back(c.e, Rational(-1));
            lhs.emplace_back(c.f, Rational(-1));
            ok = ok && red.add(lhs, 0);
        }
        ok = ok && red.add({{L.one(), Rational(1)}}, 1);
        if (!ok) throw Error(ErrorKind::EmptyStateSpace, "additivity and normalization are inconsistent");

        free_ = red.free_variables();
        free_pos_.assign(n, 0);
        for (std::size_t k = 0; k < free_.size(); ++k) free_pos_[free_[k]] = k;
        exprs_.resize(n);
        for (Element x = 0; x < n; ++x) exprs_[x] = red.expr_of(x);

        std::vector<Element> order(n);
        std::iota(order.begin(), order.end(), Element{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Element a, Element b) { return L.down_count(a) < L.down_count(b); });
        bounds_.dim = free_.size();
        for (Element x : order) {
            std::vector<Rational> a(free_.size());
            for (const auto& [j, c] : exprs_[x].coeff) a[free_pos_[j]] = c;
            std::vector<Rational> neg(a.size());
            for (std::size_t k = 0; k < a.size(); ++k) neg[k] = -a[k];
            bounds_.rows.push_back(neg);  // -a.t <= c        (v >= 0)
            bounds_.rhs.push_back(exprs_[x].constant);
            bounds_.rows.push_back(a);  //  a.t <= 1 - c    (v <= 1)
            bounds_.rhs.push_back(1 - exprs_[x].constant);
        }

        auto pts = opt.method == VertexMethod::DoubleDescription
                       ? vertices_double_description(bounds_, opt.vertices)
                       : vertices_basis_enumeration(bounds_, opt.vertices);
        if (pts.empty()) throw Error(ErrorKind::EmptyStateSpace, "the logic admits no state");
        for (const auto& t : pts) vertices_.push_back(evaluate(t));
        std::sort(vertices_.begin(), vertices_.end(),
                  [](const State& a, const State& b) { return a.values > b.values; });
    }

    LogicPtr logic_;
    std::vector<AdditivityConstraint> equalities_;
    std::vector<std::size_t> free_;
    std::vector<std::size_t> free_pos_;
    std::vector<AffineExpr> exprs_;
    HPolytope bounds_;
    std::vector<State> vertices_;
};

inline StatePolytope state_polytope(const FiniteLogic& L, const StateOptions& opt = {}) {
    return StatePolytope(L, opt);
}

namespace detail {

/// Rank of a rational matrix (rows).
inline std::size_t rank(std::vector<std::vector<Rational>> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            Rational f = rows[i][c] / rows[r][c];
            for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
        }
        ++r;
    }
    return r;
}

/// States written as convex weights on a set of polytope vertices, subject
/// to prescribed values on some elements.
class WeightProgram {
public:
    WeightProgram(const StatePolytope& P, std::vector<std::size_t> support)
        : P_(P), support_(std::move(support)) {
        add_row(std::vector<Rational>(support_.size(), Rational(1)), Rational(1));
    }

    void require(Element f, const Rational& value) {
        std::vector<Rational> row(support_.size());
        for (std::size_t i = 0; i < support_.size(); ++i) row[i] = P_.vertices()[support_[i]](f);
        add_row(std::move(row), value);
    }

    /// True when the constraints pin the weights (hence the state) down.
    bool weights_determined() const { return !inconsistent_ && A_.size() == support_.size(); }

    std::optional<State> feasible_state() const {
        if (inconsistent_ || support_.empty()) return std::nullopt;
        LinearProgram lp{A_, b_, std::vector<Rational>(support_.size())};
        auto r = solve_lp(lp);
        if (r.status != LpStatus::Optimal) return std::nullopt;
        return combine(r.x);
    }

    /// Optimizes the value on g; returns (value, optimal state) or nullopt
    /// if infeasible.
    std::optional<std::pair<Rational, State>> optimize(Element g, bool maximize) const {
        if (inconsistent_ || support_.empty()) return std::nullopt;
        LinearProgram lp{A_, b_, std::vector<Rational>(support_.size())};
        for (std::size_t i = 0; i < support_.size(); ++i) {
            lp.c[i] = P_.vertices()[support_[i]](g);
            if (!maximize) lp.c[i] = -lp.c[i];
        }
        auto r = solve_lp(lp);
        if (r.status != LpStatus::Optimal) return std::nullopt;
        Rational v = maximize ? r.value : Rational(-r.value);
        return std::make_pair(v, combine(r.x));
    }

    State combine(const std::vector<Rational>& w) const {
        State s;
        s.values.assign(P_.logic().size(), Rational(0));
        for (std::size_t i = 0; i < support_.size(); ++i) {
            if (w[i] == 0) continue;
            const auto& v = P_.vertices()[support_[i]].values;
            for (std::size_t x = 0; x < v.size(); ++x) s.values[x] += w[i] * v[x];
        }
        return s;
    }

private:
    // Keeps the equality system in echelon form so LPs see at most
    // |support| independent rows.
    void add_row(std::vector<Rational> row, Rational rhs) {
        for (std::size_t r = 0; r < A_.size(); ++r) {
            const Rational f = row[lead_[r]];
            if (f == 0) continue;
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (A_[r][k] != 0) row[k] -= f * A_[r][k];
            }
            rhs -= f * b_[r];
        }
        auto nz = std::find_if(row.begin(), row.end(), [](const Rational& v) { return v != 0; });
        if (nz == row.end()) {
            if (rhs != 0) inconsistent_ = true;
            return;
        }
        const std::size_t c = static_cast<std::size_t>(nz - row.begin());
        const Rational p = row[c];
        for (auto& v : row) v /= p;
        rhs /= p;
        for (std::size_t r = 0; r < A_.size(); ++r) {
            const Rational f = A_[r][c];
            if (f == 0) continue;
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (row[k] != 0) A_[r][k] -= f * row[k];
            }
            b_[r] -= f * rhs;
        }
        A_.push_back(std::move(row));
        b_.push_back(std::move(rhs));
        lead_.push_back(c);
    }

    const StatePolytope& P_;
    std::vector<std::size_t> support_;
    std::vector<std::vector<Rational>> A_;
    std::vector<Rational> b_;
    std::vector<std::size_t> lead_;
    bool inconsistent_ = false;
};

/// Conditioning constraints: mu(f) = rho(f) / rho(e) for 0 != f <= e.
inline WeightProgram conditioning_program(const StatePolytope& P, const State& rho, Element e) {
    const FiniteLogic& L = P.logic();
    WeightProgram w(P, P.face(e));
    const auto& dn = L.down(e);
    for (auto f = dn.find_first(); f != Bitset::npos; f = dn.find_next(f)) {
        if (f == L.zero() || f == e) continue;
        w.require(f, rho(f) / rho(e));
    }
    return w;
}

}  // namespace detail

// ---------------------------------------------------------------- (F)

struct ConditionFVerdict {
    bool holds = false;
    std::optional<State> witness_state;
    std::optional<Element> failing_element;
};

/// The witness is the barycenter of the extreme states, which is positive
/// wherever some state is.
inline ConditionFVerdict check_condition_F(const StatePolytope& P) {
    const FiniteLogic& L = P.logic();
    const auto& V = P.vertices();
    ConditionFVerdict out;
    for (Element e = 1; e < L.size(); ++e) {
        if (std::none_of(V.begin(), V.end(), [e](const State& v) { return v(e) > 0; })) {
            out.failing_element = e;
            return out;
        }
    }
    State avg;
    avg.values.assign(L.size(), Rational(0));
    const Rational k(static_cast<long>(V.size()));
    for (const State& v : V) {
        for (Element x = 0; x < L.size(); ++x) avg.values[x] += v(x) / k;
    }
    out.holds = true;
    out.witness_state = std::move(avg);
    return out;
}

// ---------------------------------------------------------------- rho(.|e)

enum class ConditionalKind { Unique, NonUnique, NonExistent };

inline const char* to_string(ConditionalKind k) {
    switch (k) {
        case ConditionalKind::Unique: return "Unique";
        case ConditionalKind::NonUnique: return "NonUnique";
        case ConditionalKind::NonExistent: return "NonExistent";
    }
    return "?";
}

/// A compatible f on which the classical ratio rho(f ^ e)/rho(e) differs
/// from the conditional state(s).
struct ConditionalDiscrepancy {
    Element f;
    Rational expected;
    Rational observed_min;
    Rational observed_max;
};

struct ConditionalResult {
    ConditionalKind kind = ConditionalKind::NonExistent;
    Element given = 0;
    State base;
    std::optional<State> state;                          // Unique
    std::optional<std::pair<State, State>> witnesses;    // NonUnique
    std::optional<Element> separating_element;           // NonUnique: where witnesses differ
    std::vector<ConditionalDiscrepancy> discrepancies;   // compatible-event cross-check
};

struct ConditionalOptions {
    bool cross_check_compatible = true;
};

inline ConditionalResult conditional_probability(const StatePolytope& P, const State& rho, Element e,
                                                 const ConditionalOptions& opt = {}) {
    const FiniteLogic& L = P.logic();
    if (e >= L.size()) throw Error(ErrorKind::InvalidInput, "element out of range", {e});
    if (rho(e) == 0) {
        throw Error(ErrorKind::ZeroCondition, "rho('" + L.label(e) + "') = 0, conditional undefined", {e});
    }
    ConditionalResult out;
    out.given = e;
    out.base = rho;
    auto prog = detail::conditioning_program(P, rho, e);
    auto feasible = prog.feasible_state();
    if (!feasible) {
        out.kind = ConditionalKind::NonExistent;
        return out;
    }
    out.kind = ConditionalKind::Unique;
    out.state = *feasible;
    if (!prog.weights_determined()) {
        for (Element g = 0; g < L.size(); ++g) {
            auto lo = prog.optimize(g, false);
            auto hi = prog.optimize(g, true);
            if (lo->first != hi->first) {
                out.kind = ConditionalKind::NonUnique;
                out.state.reset();
                out.witnesses = std::make_pair(lo->second, hi->second);
                out.separating_element = g;
                break;
            }
        }
    }

    if (opt.cross_check_compatible) {
        for (Element f = 0; f < L.size(); ++f) {
            // A compatible pair has a meet, and it is the meet inside any
            // Boolean subalgebra containing both.
            if (!compatible_pair(L, e, f)) continue;
            Rational expected = rho(inf(L, e, f)) / rho(e);
            Rational lo, hi;
            if (out.kind == ConditionalKind::Unique) {
                lo = hi = (*out.state)(f);
            } else {
                lo = prog.optimize(f, false)->first;
                hi = prog.optimize(f, true)->first;
            }
            if (lo != expected || hi != expected) out.discrepancies.push_back({f, expected, lo, hi});
        }
    }
    return out;
}

// ---------------------------------------------------------------- (G)

struct ConditionGVerdict {
    bool holds = true;
    std::optional<Element> e;
    // Uniqueness failure: two distinct conditional states agreeing below e.
    std::optional<std::pair<State, State>> non_unique;
    // Existence failure: vertex index with no conditional state under e.
    std::optional<std::size_t> non_existent_vertex;
};

inline ConditionGVerdict check_condition_G(const StatePolytope& P) {
    const FiniteLogic& L = P.logic();
    const auto& V = P.vertices();
    ConditionGVerdict out;
    for (Element e = 1; e < L.size(); ++e) {
        bool conditionable = std::any_of(V.begin(), V.end(), [e](const State& v) { return v(e) > 0; });
        if (!conditionable) continue;

        for (std::size_t i = 0; i < V.size(); ++i) {
            // rho(e) = 1 conditions to rho itself.
            if (V[i](e) == 0 || V[i](e) == 1) continue;
            if (!detail::conditioning_program(P, V[i], e).feasible_state()) {
                out.holds = false;
                out.e = e;
                out.non_existent_vertex = i;
                return out;
            }
        }

        const auto face = P.face(e);
        std::vector<Element> below;
        for (auto f = L.down(e).find_first(); f != Bitset::npos; f = L.down(e).find_next(f)) {
            if (f != L.zero() && f != e) below.push_back(f);
        }
        std::vector<std::vector<Rational>> restriction{std::vector<Rational>(face.size(), Rational(1))};
        for (Element f : below) {
            std::vector<Rational> row(face.size());
            for (std::size_t i = 0; i < face.size(); ++i) row[i] = V[face[i]](f);
            restriction.push_back(std::move(row));
        }
        if (detail::rank(restriction) == face.size()) continue;

        // Two weight vectors on the face agreeing below e; maximize their
        // difference on each g.
        const std::size_t k = face.size();
        LinearProgram lp;
        {
            std::vector<Rational> r1(2 * k), r2(2 * k);
            for (std::size_t i = 0; i < k; ++i) {
                r1[i] = 1;
                r2[k + i] = 1;
            }
            lp.A.push_back(r1);
            lp.b.push_back(1);
            lp.A.push_back(r2);
            lp.b.push_back(1);
        }
        for (std::size_t r = 1; r < restriction.size(); ++r) {
            std::vector<Rational> row(2 * k);
            for (std::size_t i = 0; i < k; ++i) {
                row[i] = restriction[r][i];
                row[k + i] = -restriction[r][i];
            }
            lp.A.push_back(std::move(row));
            lp.b.push_back(0);
        }
        for (Element g = 0; g < L.size(); ++g) {
            lp.c.assign(2 * k, Rational(0));
            for (std::size_t i = 0; i < k; ++i) {
                lp.c[i] = V[face[i]](g);
                lp.c[k + i] = -V[face[i]](g);
            }
            auto r = solve_lp(lp);
            if (r.status == LpStatus::Optimal && r.value > 0) {
                State mu1, mu2;
                mu1.values.assign(L.size(), Rational(0));
                mu2.values.assign(L.size(), Rational(0));
                for (std::size_t i = 0; i < k; ++i) {
                    for (Element x = 0; x < L.size(); ++x) {
                        mu1.values[x] += r.x[i] * V[face[i]](x);
                        mu2.values[x] += r.x[k + i] * V[face[i]](x);
                    }
                }
                out.holds = false;
                out.e = e;
                out.non_unique = std::make_pair(std::move(mu1), std::move(mu2));
                return out;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- (H)

struct ConditionHVerdict {
    bool holds = true;
    // Pair (e, f) with f not <= e although every state with rho(f) = 1 has
    // rho(e) = 1.
    std::optional<std::pair<Element, Element>> counterexample;
    // Pairs whose premise face {rho(f) = 1} is empty; such a pair violates
    // the implication vacuously.
    std::vector<std::pair<Element, Element>> empty_premise;
    std::optional<State> separating_state;
};

inline ConditionHVerdict check_condition_H(const StatePolytope& P) {
    const FiniteLogic& L = P.logic();
    const auto& V = P.vertices();
    ConditionHVerdict out;
    for (Element f = 0; f < L.size(); ++f) {
        const auto face = P.face(f);
        for (Element e = 0; e < L.size(); ++e) {
            if (L.leq(f, e)) continue;
            if (face.empty()) {
                out.empty_premise.emplace_back(e, f);
                if (out.holds) {
                    out.holds = false;
                    out.counterexample = std::make_pair(e, f);
                }
                continue;
            }
            bool separated = std::any_of(face.begin(), face.end(),
                                         [&](std::size_t i) { return V[i](e) < 1; });
            if (!separated && out.holds) {
                out.holds = false;
                out.counterexample = std::make_pair(e, f);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- P(f|e)

struct TransitionProbability {
    bool exists = false;
    Rational s;    // valid when exists
    Rational min;  // range of rho(f) over states with rho(e) = 1
    Rational max;
};

inline TransitionProbability transition_probability(const StatePolytope& P, Element f, Element e) {
    const FiniteLogic& L = P.logic();
    if (e >= L.size() || f >= L.size()) throw Error(ErrorKind::InvalidInput, "element out of range");
    const auto face = P.face(e);
    if (face.empty()) {
        throw Error(ErrorKind::Undefined, "no state has value 1 on '" + L.label(e) + "'", {e});
    }
    TransitionProbability t;
    t.min = t.max = P.vertices()[face[0]](f);
    for (std::size_t i : face) {
        const Rational& v = P.vertices()[i](f);
        if (v < t.min) t.min = v;
        if (v > t.max) t.max = v;
    }
    t.exists = t.min == t.max;
    if (t.exists) t.s = t.min;
    return t;
}

inline State atomic_state(const StatePolytope& P, Element e) {
    const FiniteLogic& L = P.logic();
    if (!is_atom(L, e)) throw Error(ErrorKind::NotAnAtom, "'" + L.label(e) + "' is not an atom", {e});
    const auto face = P.face(e);
    if (face.empty()) throw Error(ErrorKind::Undefined, "no state has value 1 on '" + L.label(e) + "'", {e});
    if (face.size() != 1) {
        throw Error(ErrorKind::NotUnique,
                    std::to_string(face.size()) + " extreme states have value 1 on atom '" + L.label(e) + "'",
                    {e});
    }
    return P.vertices()[face[0]];
}

struct AtomEquivalences {
    bool pe_f_is_one;
    bool pf_e_is_one;
    bool pe_equals_pf;
    bool e_equals_f;
    bool all_agree() const {
        return pe_f_is_one == pf_e_is_one && pf_e_is_one == pe_equals_pf && pe_equals_pf == e_equals_f;
    }
};

inline AtomEquivalences atom_equivalences(const StatePolytope& P, Element e, Element f) {
    State pe = atomic_state(P, e);
    State pf = atomic_state(P, f);
    AtomEquivalences r{pe(f) == 1, pf(e) == 1, pe == pf, e == f};
    if (!r.all_agree()) {
        auto b = [](bool v) { return v ? "true" : "false"; };
        throw Error(ErrorKind::EquivalenceViolated,
                    std::string("P_e(f)=1: ") + b(r.pe_f_is_one) + ", P_f(e)=1: " + b(r.pf_e_is_one) +
                        ", P_e=P_f: " + b(r.pe_equals_pf) + ", e=f: " + b(r.e_equals_f),
                    {e, f});
    }
    return r;
}

}  // namespace qlogic
