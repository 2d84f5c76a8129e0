#pragma once

// Dense complex Hermitian linear algebra on top of Eigen.
//
// Matrices are stored as Eigen::MatrixXcd. Joint probe/environment operators
// use probe-major ordering: joint index = probe_index * dim_env + env_index.

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Dense>

#include "qprobe/errors.hpp"

namespace qprobe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double hermitian = 1e-9;
inline constexpr double psd = 1e-9;
inline constexpr double trace_real = 1e-9;
inline constexpr double trace_imag = 1e-12;
// Eigenvalues below this are treated as exactly zero by fractional powers.
inline constexpr double eig_floor = 1e-12;
// Looser Hermiticity accepted by project_to_state (tomography output).
inline constexpr double repair_hermitian = 1e-6;
}  // namespace tol

inline double max_abs_entry(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Largest entrywise |m - m^dagger|.
inline double max_asymmetry(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("matrix is not square");
    }
    return max_abs_entry(m - m.adjoint());
}

inline ComplexMatrix hermitize(const ComplexMatrix& m) {
    return (m + m.adjoint()) * 0.5;
}

struct Eigensystem {
    RealVector values;      // ascending
    ComplexMatrix vectors;  // orthonormal columns, vectors.col(i) <-> values(i)
};

/// Eigendecomposition of a Hermitian matrix. The asymmetry tolerance scales
/// with the magnitude of the entries (absolute 1e-9 for |m| <= 1).
inline Eigensystem eig_hermitian(const ComplexMatrix& m) {
    const double asym = max_asymmetry(m);
    const double scale = std::max(1.0, max_abs_entry(m));
    if (asym > tol::hermitian * scale) {
        std::ostringstream msg;
        msg << "eig_hermitian: input is not Hermitian (max |M - M^dagger| = " << asym << ")";
        throw PreconditionError(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m));
    if (solver.info() != Eigen::Success) {
        throw Error("eig_hermitian: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline ComplexMatrix from_eigensystem(const RealVector& values, const ComplexMatrix& vectors) {
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

/// m^p for positive semidefinite m, acting on the support: eigenvalues below
/// tol::eig_floor map to zero, so p = 0 gives the support projector.
inline ComplexMatrix mat_pow_psd(const ComplexMatrix& m, double p) {
    if (!(p >= 0.0)) {
        throw PreconditionError("mat_pow_psd: exponent must be >= 0");
    }
    Eigensystem es = eig_hermitian(m);
    const double lowest = es.values.size() ? es.values.minCoeff() : 0.0;
    if (lowest < -tol::psd) {
        std::ostringstream msg;
        msg << "mat_pow_psd: matrix is not positive semidefinite (eigenvalue " << lowest << ")";
        throw PsdViolation(msg.str());
    }
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        const double lambda = es.values(i);
        es.values(i) = lambda < tol::eig_floor ? 0.0 : std::pow(lambda, p);
    }
    return from_eigensystem(es.values, es.vectors);
}

/// Hermitian, positive semidefinite, unit-trace matrix. Construction validates.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) { validate(); }

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }
    Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

    static DensityMatrix pure(const Eigen::VectorXcd& psi) {
        const Eigen::VectorXcd v = psi.normalized();
        return DensityMatrix(v * v.adjoint());
    }

    static DensityMatrix maximally_mixed(Eigen::Index dim) {
        return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
    }

private:
    void validate() const {
        if (m_.rows() == 0 || m_.rows() != m_.cols()) {
            throw InvalidState("density matrix must be square and nonempty");
        }
        const double asym = max_asymmetry(m_);
        if (asym > tol::hermitian) {
            std::ostringstream msg;
            msg << "density matrix is not Hermitian (max |M - M^dagger| = " << asym << ")";
            throw InvalidState(msg.str());
        }
        const Complex tr = m_.trace();
        if (std::abs(tr.real() - 1.0) > tol::trace_real || std::abs(tr.imag()) > tol::trace_imag) {
            std::ostringstream msg;
            msg << "density matrix trace is " << tr.real() << " + " << tr.imag() << "i, expected 1";
            throw InvalidState(msg.str());
        }
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m_), Eigen::EigenvaluesOnly);
        const double lowest = solver.eigenvalues().minCoeff();
        if (lowest < -tol::psd) {
            std::ostringstream msg;
            msg << "density matrix has negative eigenvalue " << lowest;
            throw InvalidState(msg.str());
        }
    }

    ComplexMatrix m_;
};

/// Nearest-physical repair of a noisy estimate: Hermitize, clip negative
/// eigenvalues to zero, rescale to unit trace.
inline DensityMatrix project_to_state(const ComplexMatrix& m) {
    const double asym = max_asymmetry(m);
    if (asym > tol::repair_hermitian * std::max(1.0, max_abs_entry(m))) {
        std::ostringstream msg;
        msg << "project_to_state: input is not Hermitian (max |M - M^dagger| = " << asym << ")";
        throw PreconditionError(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m));
    RealVector values = solver.eigenvalues().cwiseMax(0.0);
    const double total = values.sum();
    if (!(total > 0.0)) {
        throw Unreconstructable("project_to_state: no positive eigenvalue survives clipping");
    }
    values /= total;
    ComplexMatrix out = from_eigensystem(values, solver.eigenvectors());
    return DensityMatrix(hermitize(out));
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// tr_env of a joint operator in probe-major ordering.
inline ComplexMatrix partial_trace_env(const ComplexMatrix& joint, Eigen::Index dim_probe,
                                       Eigen::Index dim_env) {
    if (dim_probe <= 0 || dim_env <= 0 || joint.rows() != dim_probe * dim_env ||
        joint.cols() != joint.rows()) {
        std::ostringstream msg;
        msg << "partial_trace_env: joint dimension " << joint.rows() << "x" << joint.cols()
            << " does not match " << dim_probe << " * " << dim_env;
        throw DimensionMismatch(msg.str());
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim_probe, dim_probe);
    for (Eigen::Index p = 0; p < dim_probe; ++p) {
        for (Eigen::Index q = 0; q < dim_probe; ++q) {
            out(p, q) = joint.block(p * dim_env, q * dim_env, dim_env, dim_env).trace();
        }
    }
    return out;
}

}  // namespace qprobe
