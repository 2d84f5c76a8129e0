#pragma once

// Random states, unitaries and channels for property tests.

#include <random>
#include <vector>

#include "qprobe/hermitian.hpp"

namespace qprobe::testing {

inline ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) g(r, c) = Complex(n(rng), n(rng));
    return g;
}

inline ComplexMatrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
    const ComplexMatrix g = ginibre(dim, dim, rng);
    return (g + g.adjoint()) * 0.5;
}

/// Random state of the given rank (full rank when rank <= 0).
inline DensityMatrix random_state(Eigen::Index dim, std::mt19937_64& rng, Eigen::Index rank = 0) {
    if (rank <= 0 || rank > dim) rank = dim;
    const ComplexMatrix g = ginibre(dim, rank, rng);
    ComplexMatrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix(hermitize(m));
}

/// Mixture of pure, low-rank and full-rank states.
inline DensityMatrix random_state_any_rank(Eigen::Index dim, std::mt19937_64& rng) {
    std::uniform_int_distribution<Eigen::Index> r(1, dim);
    return random_state(dim, rng, r(rng));
}

/// Haar-distributed unitary via QR of a Ginibre matrix with phase fix.
inline ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
    const ComplexMatrix g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < dim; ++i) {
        const Complex d = r(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

/// Kraus operators of a random CPTP map with `rank` operators: blocks of a
/// random isometry d -> rank * d.
inline std::vector<ComplexMatrix> random_kraus(Eigen::Index dim, int rank, std::mt19937_64& rng) {
    const ComplexMatrix g = ginibre(rank * dim, dim, rng);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g.adjoint() * g);
    const ComplexMatrix inv_sqrt =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
        es.eigenvectors().adjoint();
    const ComplexMatrix iso = g * inv_sqrt;
    std::vector<ComplexMatrix> kraus;
    for (int k = 0; k < rank; ++k) kraus.push_back(iso.block(k * dim, 0, dim, dim));
    return kraus;
}

inline DensityMatrix apply_kraus(const std::vector<ComplexMatrix>& kraus, const DensityMatrix& rho) {
    ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (const auto& k : kraus) out += k * rho.matrix() * k.adjoint();
    return DensityMatrix(hermitize(out));
}

inline DensityMatrix conjugate(const ComplexMatrix& u, const DensityMatrix& rho) {
    return DensityMatrix(hermitize(u * rho.matrix() * u.adjoint()));
}

}  // namespace qprobe::testing
