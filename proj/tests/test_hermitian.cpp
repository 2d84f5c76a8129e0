#include <random>

#include <gtest/gtest.h>

#include "qprobe/hermitian.hpp"
#include "support/oracles.hpp"
#include "support/random_states.hpp"

using namespace qprobe;
using qprobe::testing::random_hermitian;
using qprobe::testing::random_state;

namespace {

ComplexMatrix diag2(double a, double b) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(EigHermitian, Identity) {
    const Eigensystem es = eig_hermitian(ComplexMatrix::Identity(2, 2));
    EXPECT_NEAR(es.values(0), 1.0, 1e-15);
    EXPECT_NEAR(es.values(1), 1.0, 1e-15);
}

TEST(EigHermitian, PauliXAscending) {
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    const Eigensystem es = eig_hermitian(x);
    EXPECT_NEAR(es.values(0), -1.0, 1e-15);
    EXPECT_NEAR(es.values(1), 1.0, 1e-15);
}

TEST(EigHermitian, RandomReconstructionAndOrthonormality) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index dim = 1 + trial % 6;
        const ComplexMatrix m = random_hermitian(dim, rng);
        const Eigensystem es = eig_hermitian(m);
        const double scale = m.cwiseAbs().maxCoeff();
        EXPECT_LE(max_diff(from_eigensystem(es.values, es.vectors), m), 1e-10 * scale);
        EXPECT_LE(max_diff(es.vectors.adjoint() * es.vectors, ComplexMatrix::Identity(dim, dim)), 1e-10);
        for (Eigen::Index i = 1; i < dim; ++i) EXPECT_LE(es.values(i - 1), es.values(i));
    }
}

TEST(EigHermitian, RejectsNonHermitianNamingAsymmetry) {
    ComplexMatrix m(2, 2);
    m << 1, 0.5, 0.2, 1;
    try {
        eig_hermitian(m);
        FAIL() << "expected PreconditionError";
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("0.3"), std::string::npos) << e.what();
    }
}

TEST(EigHermitian, AgreesWithJacobiOracle) {
    std::mt19937_64 rng(5);
    const ComplexMatrix m = random_hermitian(4, rng);
    auto [values, vectors] = oracle::jacobi_eigen(m);
    std::sort(values.begin(), values.end());
    const Eigensystem es = eig_hermitian(m);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(es.values(i), values[static_cast<std::size_t>(i)], 1e-11);
}

TEST(MatPowPsd, IdentityExponent) {
    std::mt19937_64 rng(3);
    const DensityMatrix rho = random_state(3, rng);
    EXPECT_LE(max_diff(mat_pow_psd(rho.matrix(), 1.0), rho.matrix()), 1e-14);
}

TEST(MatPowPsd, AnalyticSquareRoot) {
    EXPECT_LE(max_diff(mat_pow_psd(diag2(4, 9), 0.5), diag2(2, 3)), 1e-14);
}

TEST(MatPowPsd, ProjectorIsIdempotentUnderPowers) {
    const ComplexMatrix proj = DensityMatrix::pure(Eigen::Vector2cd(Complex(0.6, 0.1), Complex(0.3, -0.7))).matrix();
    for (double p : {0.1, 0.5, 1.0, 2.0, 7.5}) {
        EXPECT_LE(max_diff(mat_pow_psd(proj, p), proj), 1e-13) << "p = " << p;
    }
}

TEST(MatPowPsd, ZeroExponentGivesSupportProjector) {
    EXPECT_LE(max_diff(mat_pow_psd(diag2(0.7, 0.0), 0.0), diag2(1.0, 0.0)), 1e-15);
}

TEST(MatPowPsd, RejectsNegativeEigenvalue) {
    EXPECT_THROW(mat_pow_psd(diag2(1.0, -1e-6), 0.5), PsdViolation);
    EXPECT_NO_THROW(mat_pow_psd(diag2(1.0, -1e-10), 0.5));
    EXPECT_THROW(mat_pow_psd(diag2(1.0, 0.5), -0.1), PreconditionError);
}

TEST(MatPowPsd, CompositionOfPowersOnSupport) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> expo(0.05, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
        // Spectrum kept away from the eigenvalue floor.
        const Eigen::Index dim = 2 + trial % 3;
        const ComplexMatrix u = qprobe::testing::random_unitary(dim, rng);
        std::uniform_real_distribution<double> ev(1e-3, 1.0);
        RealVector lambda(dim);
        for (Eigen::Index i = 0; i < dim; ++i) lambda(i) = ev(rng);
        const ComplexMatrix m = from_eigensystem(lambda, u);
        const double a = expo(rng), b = expo(rng);
        EXPECT_LE(max_diff(mat_pow_psd(mat_pow_psd(m, a), b), mat_pow_psd(m, a * b)), 1e-9);
    }
}

TEST(DensityMatrix, ValidatesInvariants) {
    EXPECT_NO_THROW(DensityMatrix(diag2(0.5, 0.5)));
    EXPECT_THROW(DensityMatrix(diag2(0.6, 0.5)), InvalidState);
    EXPECT_THROW(DensityMatrix(diag2(1.1, -0.1)), InvalidState);
    ComplexMatrix asym = diag2(0.5, 0.5);
    asym(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix{asym}, InvalidState);
    EXPECT_THROW(DensityMatrix(ComplexMatrix::Zero(2, 3)), InvalidState);
}

TEST(ProjectToState, ValidStateIsFixedPoint) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho = qprobe::testing::random_state_any_rank(2 + trial % 3, rng);
        EXPECT_LE(max_diff(project_to_state(rho.matrix()).matrix(), rho.matrix()), 1e-12);
    }
}

TEST(ProjectToState, ClipsNegativeEigenvalue) {
    // Oracle: grid search over diagonal states diag(p, 1 - p) for the one
    // closest in Frobenius norm to diag(1.1, -0.1).
    double best_p = 0.0, best = 1e300;
    for (int i = 0; i <= 10000; ++i) {
        const double p = i / 10000.0;
        const double d = std::hypot(1.1 - p, -0.1 - (1.0 - p));
        if (d < best) best = d, best_p = p;
    }
    EXPECT_NEAR(best_p, 1.0, 1e-12);
    const DensityMatrix out = project_to_state(diag2(1.1, -0.1));
    EXPECT_LE(max_diff(out.matrix(), diag2(best_p, 1.0 - best_p)), 1e-12);
}

TEST(ProjectToState, RescalesTrace) {
    EXPECT_LE(max_diff(project_to_state(diag2(0.6, 0.6)).matrix(), diag2(0.5, 0.5)), 1e-15);
}

TEST(ProjectToState, Idempotent) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix noisy = random_hermitian(2 + trial % 3, rng);
        try {
            const DensityMatrix once = project_to_state(noisy);
            const DensityMatrix twice = project_to_state(once.matrix());
            EXPECT_LE(max_diff(once.matrix(), twice.matrix()), 1e-12);
        } catch (const Unreconstructable&) {
            // Negative definite draw: nothing survives clipping.
        }
    }
}

TEST(ProjectToState, Errors) {
    EXPECT_THROW(project_to_state(diag2(-1.0, -2.0)), Unreconstructable);
    ComplexMatrix asym = diag2(0.5, 0.5);
    asym(0, 1) = 1e-3;
    EXPECT_THROW(project_to_state(asym), PreconditionError);
    asym(0, 1) = 1e-8;  // within the repair tolerance
    EXPECT_NO_THROW(project_to_state(asym));
}

TEST(PartialTrace, ProductStateFactorizes) {
    std::mt19937_64 rng(31);
    const DensityMatrix rho = random_state(2, rng);
    const DensityMatrix xi = random_state(5, rng);
    EXPECT_LE(max_diff(partial_trace_env(kron(rho.matrix(), xi.matrix()), 2, 5), rho.matrix()), 1e-14);
}

TEST(PartialTrace, BellStateReducesToMaximallyMixed) {
    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const ComplexMatrix joint = bell * bell.adjoint();
    EXPECT_LE(max_diff(partial_trace_env(joint, 2, 2), ComplexMatrix::Identity(2, 2) * 0.5), 1e-15);
}

TEST(PartialTrace, MatchesNaiveIndexOracle) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const int dp = 2 + trial % 2, de = 1 + trial % 7;
        const ComplexMatrix joint = random_state(dp * de, rng).matrix();
        const ComplexMatrix reduced = partial_trace_env(joint, dp, de);
        EXPECT_LE(max_diff(reduced, oracle::naive_partial_trace(joint, dp, de)), 1e-15);
        EXPECT_NEAR(reduced.trace().real(), 1.0, 1e-12);
    }
}

TEST(PartialTrace, UnitaryEvolutionPreservesTrace) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix u = qprobe::testing::random_unitary(8, rng);
        const ComplexMatrix joint = kron(random_state(2, rng).matrix(), random_state(4, rng).matrix());
        const ComplexMatrix reduced = partial_trace_env(u * joint * u.adjoint(), 2, 4);
        EXPECT_NEAR(reduced.trace().real(), 1.0, 1e-12);
        EXPECT_NEAR(reduced.trace().imag(), 0.0, 1e-12);
    }
}

TEST(PartialTrace, DimensionMismatch) {
    EXPECT_THROW(partial_trace_env(ComplexMatrix::Identity(6, 6), 2, 4), DimensionMismatch);
}
