#pragma once

// Finite-dimensional Hilbert space model: projections as events, density
// operators as states, the trace formula for conditional probabilities, and
// numeric no-cloning checks on H (x) H.

#include "qlogic/errors.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qlogic::hilbert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr double default_tolerance = 1e-9;
constexpr double exact_tolerance = 1e-12;

namespace detail {

inline void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be a non-empty square matrix");
    }
}

inline double deviation(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace detail

class ProjectionOperator {
public:
    explicit ProjectionOperator(Matrix m, double tau = default_tolerance) : m_(std::move(m)) {
        detail::require_square(m_, "projection");
        if (detail::deviation(m_, m_.adjoint()) > tau) throw Error(ErrorKind::InvalidInput, "projection is not self-adjoint");
        if (detail::deviation(m_ * m_, m_) > tau) throw Error(ErrorKind::InvalidInput, "projection is not idempotent");
    }

    /// Projection onto the span of a nonzero vector.
    static ProjectionOperator onto(const Vector& v) {
        const double n = v.norm();
        if (n == 0) throw Error(ErrorKind::InvalidInput, "cannot project onto the zero vector");
        Vector u = v / n;
        return ProjectionOperator(u * u.adjoint());
    }

    /// Diagonal projection from a 0/1 pattern.
    static ProjectionOperator diagonal(const std::vector<int>& pattern) {
        Vector d(static_cast<Eigen::Index>(pattern.size()));
        for (std::size_t i = 0; i < pattern.size(); ++i) d(static_cast<Eigen::Index>(i)) = pattern[i] ? 1.0 : 0.0;
        return ProjectionOperator(d.asDiagonal().toDenseMatrix());
    }

    static ProjectionOperator identity(Eigen::Index dim) { return ProjectionOperator(Matrix::Identity(dim, dim)); }

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    double rank() const { return m_.trace().real(); }

private:
    Matrix m_;
};

class DensityOperator {
public:
    explicit DensityOperator(Matrix m, double tau = default_tolerance) : m_(std::move(m)) {
        detail::require_square(m_, "density operator");
        if (detail::deviation(m_, m_.adjoint()) > tau) throw Error(ErrorKind::InvalidInput, "density operator is not self-adjoint");
        if (std::abs(m_.trace() - Complex(1.0)) > tau) throw Error(ErrorKind::InvalidInput, "density operator trace is not 1");
        Eigen::SelfAdjointEigenSolver<Matrix> es(m_);
        if (es.eigenvalues().minCoeff() < -tau) throw Error(ErrorKind::InvalidInput, "density operator has a negative eigenvalue");
    }

    static DensityOperator maximally_mixed(Eigen::Index dim) {
        return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
    }

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }

private:
    Matrix m_;
};

class PureVector {
public:
    explicit PureVector(Vector v, double tau = default_tolerance) : v_(std::move(v)) {
        if (v_.size() == 0) throw Error(ErrorKind::DimensionMismatch, "empty vector");
        if (std::abs(v_.norm() - 1.0) > tau) throw Error(ErrorKind::InvalidInput, "vector is not normalized");
    }

    static PureVector normalized(const Vector& v) {
        const double n = v.norm();
        if (n == 0) throw Error(ErrorKind::InvalidInput, "cannot normalize the zero vector");
        return PureVector(v / n);
    }

    static PureVector basis(Eigen::Index dim, Eigen::Index i) { return PureVector(Vector::Unit(dim, i)); }

    Eigen::Index dim() const { return v_.size(); }
    const Vector& components() const { return v_; }
    ProjectionOperator projection() const { return ProjectionOperator::onto(v_); }

private:
    Vector v_;
};

class UnitaryOperator {
public:
    explicit UnitaryOperator(Matrix m, double tau = default_tolerance) : m_(std::move(m)) {
        detail::require_square(m_, "unitary");
        if (detail::deviation(m_.adjoint() * m_, Matrix::Identity(m_.rows(), m_.cols())) > tau) {
            throw Error(ErrorKind::InvalidInput, "operator is not unitary");
        }
    }

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }

private:
    Matrix m_;
};

inline void require_same_dim(Eigen::Index a, Eigen::Index b) {
    if (a != b) {
        throw Error(ErrorKind::DimensionMismatch,
                    "dimensions " + std::to_string(a) + " and " + std::to_string(b) + " differ");
    }
}

// ---------------------------------------------------------------- probabilities

/// trace(a e f e) / trace(a e).
inline double trace_cond_prob(const DensityOperator& a, const ProjectionOperator& e, const ProjectionOperator& f,
                              double tau = default_tolerance) {
    require_same_dim(a.dim(), e.dim());
    require_same_dim(e.dim(), f.dim());
    const double denom = (a.matrix() * e.matrix()).trace().real();
    if (denom <= tau) throw Error(ErrorKind::ZeroCondition, "trace(a e) vanishes");
    const Matrix& E = e.matrix();
    return (a.matrix() * E * f.matrix() * E).trace().real() / denom;
}

/// s with e f e = s e, when it exists.
inline std::optional<double> transition_exists(const ProjectionOperator& e, const ProjectionOperator& f,
                                               double tau = default_tolerance) {
    require_same_dim(e.dim(), f.dim());
    const Matrix& E = e.matrix();
    const double tr = E.trace().real();
    if (tr <= tau) return std::nullopt;
    const Matrix efe = E * f.matrix() * E;
    const double s = (efe * E).trace().real() / tr;
    if (detail::deviation(efe, s * E) > tau) return std::nullopt;
    return s;
}

/// <xi | f xi>.
inline double atom_transition(const PureVector& xi, const ProjectionOperator& f) {
    require_same_dim(xi.dim(), f.dim());
    return xi.components().dot(f.matrix() * xi.components()).real();
}

enum class Side { First, Second };

/// e (x) 1 for the first factor, 1 (x) e for the second.
inline ProjectionOperator tensor_embed(const ProjectionOperator& e, Side side, Eigen::Index other_dim) {
    const Matrix I = Matrix::Identity(other_dim, other_dim);
    if (side == Side::First) return ProjectionOperator(Eigen::kroneckerProduct(e.matrix(), I).eval());
    return ProjectionOperator(Eigen::kroneckerProduct(I, e.matrix()).eval());
}

inline Vector tensor(const Vector& a, const Vector& b) { return Eigen::kroneckerProduct(a, b).eval(); }

struct Lemma2MatrixReport {
    double se = 0;     // transition e1 -> e2
    double sf = 0;     // transition f1 -> f2
    double joint = 0;  // transition e1 (x) f1 -> e2 (x) f2
    bool dimension_two = false;
};

/// The joint transition between product events equals the product of the
/// factor transitions.
inline Lemma2MatrixReport lemma2_matrix_check(const ProjectionOperator& e1, const ProjectionOperator& e2,
                                              const ProjectionOperator& f1, const ProjectionOperator& f2,
                                              double tau = default_tolerance) {
    require_same_dim(e1.dim(), e2.dim());
    require_same_dim(f1.dim(), f2.dim());
    auto se = transition_exists(e1, e2, tau);
    auto sf = transition_exists(f1, f2, tau);
    if (!se || !sf) throw Error(ErrorKind::PreconditionFailed, "a factor transition probability does not exist");
    // (e1 (x) 1)(1 (x) f1) = e1 (x) f1.
    ProjectionOperator given(Eigen::kroneckerProduct(e1.matrix(), f1.matrix()).eval(), tau);
    ProjectionOperator target(Eigen::kroneckerProduct(e2.matrix(), f2.matrix()).eval(), tau);
    auto joint = transition_exists(given, target, tau);
    if (!joint) throw Error(ErrorKind::CheckFailed, "joint transition probability does not exist");
    if (std::abs(*joint - *se * *sf) > tau) {
        throw Error(ErrorKind::CheckFailed, "joint transition " + std::to_string(*joint) + " differs from " +
                                                std::to_string(*se) + " * " + std::to_string(*sf));
    }
    return {*se, *sf, *joint, e1.dim() == 2 || f1.dim() == 2};
}

// ---------------------------------------------------------------- cloning

/// U (xi (x) f) and xi (x) xi span the same ray for every xi in C.
inline bool test_unitary_cloner(const UnitaryOperator& U, const std::vector<PureVector>& C, const PureVector& f,
                                double tau = default_tolerance) {
    const Eigen::Index d = f.dim();
    if (U.dim() != d * d) {
        throw Error(ErrorKind::DimensionMismatch,
                    "unitary acts on dimension " + std::to_string(U.dim()) + ", expected " + std::to_string(d * d));
    }
    for (const auto& xi : C) {
        require_same_dim(xi.dim(), d);
        const Vector out = U.matrix() * tensor(xi.components(), f.components());
        const Vector want = tensor(xi.components(), xi.components());
        if (detail::deviation(out * out.adjoint(), want * want.adjoint()) > tau) return false;
    }
    return true;
}

/// |i, j> -> |i, i + j mod d>: copies basis states onto |0>.
inline UnitaryOperator basis_copier(Eigen::Index d) {
    Matrix U = Matrix::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) U(i * d + (i + j) % d, i * d + j) = 1.0;
    }
    return UnitaryOperator(std::move(U));
}

struct NoCloningWitness {
    double s = 0;          // |<xi1|xi2>|^2
    double s_squared = 0;  // what a cloner would force the same quantity to be
    bool cloneable = false;
    bool dimension_two = false;
};

inline NoCloningWitness no_cloning_witness(const PureVector& xi1, const PureVector& xi2, double tau = default_tolerance) {
    require_same_dim(xi1.dim(), xi2.dim());
    const double s = std::norm(xi1.components().dot(xi2.components()));
    return {s, s * s, std::abs(s) <= tau || std::abs(s - 1.0) <= tau, xi1.dim() == 2};
}

// ---------------------------------------------------------------- random instances

inline Vector random_vector(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
    return v;
}

inline PureVector random_unit_vector(Eigen::Index d, std::mt19937_64& rng) {
    return PureVector::normalized(random_vector(d, rng));
}

/// Projection onto a random subspace of the given rank.
inline ProjectionOperator random_projection(Eigen::Index d, Eigen::Index rank, std::mt19937_64& rng) {
    Matrix A(d, rank);
    for (Eigen::Index j = 0; j < rank; ++j) A.col(j) = random_vector(d, rng);
    Eigen::HouseholderQR<Matrix> qr(A);
    Matrix Q = qr.householderQ() * Matrix::Identity(d, rank);
    return ProjectionOperator(Q * Q.adjoint());
}

inline DensityOperator random_density(Eigen::Index d, std::mt19937_64& rng) {
    Matrix A(d, d);
    for (Eigen::Index j = 0; j < d; ++j) A.col(j) = random_vector(d, rng);
    Matrix rho = A * A.adjoint();
    rho /= rho.trace().real();
    return DensityOperator(0.5 * (rho + rho.adjoint()));
}

}  // namespace qlogic::hilbert
