#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qprobe/alpha_fidelity.hpp"
#include "qprobe/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_states.hpp"

using namespace qprobe;
using qprobe::testing::random_state;
using qprobe::testing::random_state_any_rank;

namespace {

DensityMatrix diag_state(const std::vector<double>& p) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
    return DensityMatrix(m);
}

// Value of the oracle at alpha = 0.5 on the printed initial states, computed by
// the Jacobi eigensolver in support/oracles.hpp and frozen here.
constexpr double kInitialStatesHalf = 0.996190867724;

}  // namespace

TEST(AlphaParameter, RangeAndGuarantee) {
    EXPECT_THROW(AlphaParameter(0.0), PreconditionError);
    EXPECT_THROW(AlphaParameter(1.0), PreconditionError);
    EXPECT_THROW(AlphaParameter(std::nan("")), PreconditionError);
    EXPECT_FALSE(AlphaParameter(0.3).guaranteed());
    EXPECT_TRUE(AlphaParameter(0.5).guaranteed());
    EXPECT_THROW(AlphaParameter(0.3).require_inequality_range(), PreconditionError);
}

TEST(AlphaGrid, DefaultShape) {
    const auto g = alpha_grid();
    ASSERT_EQ(g.size(), 500u);
    EXPECT_DOUBLE_EQ(g.front(), 0.5);
    EXPECT_DOUBLE_EQ(g.back(), 0.9999);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(g[i - 1], g[i]);
    EXPECT_THROW(alpha_grid(0.5, 1.0, 10), PreconditionError);
    EXPECT_THROW(alpha_grid(0.5, 0.9, 0), PreconditionError);
}

TEST(AlphaFidelity, IdenticalStatesGiveOne) {
    std::mt19937_64 rng(1);
    for (double a : {0.5, 0.75, 0.9999}) {
        const DensityMatrix rho = random_state(3, rng);
        EXPECT_NEAR(alpha_fidelity(rho, rho, AlphaParameter(a)), 1.0, 1e-9);
    }
}

TEST(AlphaFidelity, OrthogonalSupportsGiveZero) {
    EXPECT_EQ(alpha_fidelity(diag_state({1, 0}), diag_state({0, 1}), AlphaParameter(0.5)), 0.0);
}

TEST(AlphaFidelity, PureSecondArgumentShortcut) {
    EXPECT_NEAR(alpha_fidelity(diag_state({0.5, 0.5}), diag_state({1, 0}), AlphaParameter(0.5)), std::sqrt(0.5),
                1e-12);
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const DensityMatrix rho1 = random_state_any_rank(2 + trial % 2, rng);
        const DensityMatrix rho2 = random_state(2 + trial % 2, rng, 1);
        const Eigen::VectorXcd phi = eig_hermitian(rho2.matrix()).vectors.col(rho2.dim() - 1);
        const double overlap = (phi.adjoint() * rho1.matrix() * phi)(0, 0).real();
        const double a = 0.5 + 0.4999 * (trial % 10) / 9.0;
        EXPECT_NEAR(alpha_fidelity(rho1, rho2, AlphaParameter(a)), std::pow(overlap, a), 1e-9);
    }
}

TEST(AlphaFidelity, PrintedInitialStatesMatchFrozenOracle) {
    const double got = alpha_fidelity(fixtures::initial_rho1(), fixtures::initial_rho2(), AlphaParameter(0.5));
    EXPECT_NEAR(got, kInitialStatesHalf, 1e-10);
    EXPECT_NEAR(got,
                oracle::alpha_fidelity(fixtures::initial_rho1().matrix(), fixtures::initial_rho2().matrix(), 0.5),
                1e-10);
}

TEST(AlphaFidelity, AgreesWithJacobiOracleOnRandomPairs) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index dim = 2 + trial % 2;
        const DensityMatrix r1 = random_state_any_rank(dim, rng);
        const DensityMatrix r2 = random_state(dim, rng);
        const double a = 0.5 + 0.49 * (trial % 7) / 6.0;
        EXPECT_NEAR(alpha_fidelity(r1, r2, AlphaParameter(a)), oracle::alpha_fidelity(r1.matrix(), r2.matrix(), a),
                    1e-9);
    }
}

TEST(AlphaFidelity, ClassicalDiagonalConsistency) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 2 + static_cast<std::size_t>(trial % 2);
        std::vector<double> p(d), q(d);
        double sp = 0, sq = 0;
        for (std::size_t i = 0; i < d; ++i) sp += p[i] = u(rng), sq += q[i] = u(rng);
        double expected = 0.0;
        const double a = 0.5 + 0.45 * u(rng);
        for (std::size_t i = 0; i < d; ++i) {
            p[i] /= sp;
            q[i] /= sq;
            expected += std::pow(p[i], a) * std::pow(q[i], 1.0 - a);
        }
        EXPECT_NEAR(alpha_fidelity(diag_state(p), diag_state(q), AlphaParameter(a)), expected, 1e-10);
    }
}

TEST(AlphaFidelity, UnitaryInvarianceAndHalfSymmetry) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index dim = 2 + trial % 2;
        const DensityMatrix r1 = random_state_any_rank(dim, rng);
        const DensityMatrix r2 = random_state_any_rank(dim, rng);
        const ComplexMatrix u = qprobe::testing::random_unitary(dim, rng);
        const AlphaParameter a(0.5 + 0.4999 * (trial % 11) / 10.0);
        EXPECT_NEAR(alpha_fidelity(qprobe::testing::conjugate(u, r1), qprobe::testing::conjugate(u, r2), a),
                    alpha_fidelity(r1, r2, a), 1e-9);
        EXPECT_NEAR(alpha_fidelity(r1, r2, AlphaParameter(0.5)), alpha_fidelity(r2, r1, AlphaParameter(0.5)), 1e-9);
    }
}

TEST(AlphaFidelity, NotSymmetricAwayFromHalf) {
    const double a = alpha_fidelity(fixtures::evolved_5mm_phi1(), fixtures::evolved_5mm_phi2(), AlphaParameter(0.9));
    const double b = alpha_fidelity(fixtures::evolved_5mm_phi2(), fixtures::evolved_5mm_phi1(), AlphaParameter(0.9));
    EXPECT_GT(std::abs(a - b), 1e-6);
}

TEST(AlphaFidelity, DimensionMismatch) {
    EXPECT_THROW(alpha_fidelity(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(3),
                                AlphaParameter(0.5)),
                 DimensionMismatch);
}

TEST(AlphaFidelity, NoWarningOnValidInputs) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix rho = random_state_any_rank(2, rng);
        const FidelityResult r = alpha_fidelity_detailed(rho, rho, AlphaParameter(0.7));
        EXPECT_FALSE(r.warning);
        EXPECT_LE(r.value, 1.0);
    }
}

TEST(RenyiDivergence, Basics) {
    const DensityMatrix rho = fixtures::initial_rho1();
    EXPECT_NEAR(renyi_divergence(rho, rho, AlphaParameter(0.7)), 0.0, 1e-9);
    EXPECT_TRUE(std::isinf(renyi_divergence(diag_state({1, 0}), diag_state({0, 1}), AlphaParameter(0.7))));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix r1 = random_state(2, rng), r2 = random_state(2, rng);
        const AlphaParameter a(0.6);
        EXPECT_NEAR(std::exp((a.value() - 1.0) * renyi_divergence(r1, r2, a)), alpha_fidelity(r1, r2, a), 1e-12);
        EXPECT_GE(renyi_divergence(r1, r2, a), -1e-12);
    }
}

TEST(DpiMargin, IdentityChannelGivesZero) {
    const DensityMatrix r1 = fixtures::initial_rho1(), r2 = fixtures::initial_rho2();
    EXPECT_NEAR(dpi_margin(r1, r2, r1, r2, 1.0, AlphaParameter(0.8)), 0.0, 1e-15);
}

TEST(DpiMargin, RandomKrausChannelNonNegative) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        const DensityMatrix r1 = random_state_any_rank(2, rng), r2 = random_state_any_rank(2, rng);
        const auto kraus = qprobe::testing::random_kraus(2, 1 + trial % 4, rng);
        const AlphaParameter a(0.5 + 0.4999 * (trial % 13) / 12.0);
        EXPECT_GE(dpi_margin(r1, r2, qprobe::testing::apply_kraus(kraus, r1), qprobe::testing::apply_kraus(kraus, r2),
                             1.0, a),
                  -1e-9);
    }
}

TEST(DpiMargin, PrintedFiveMillimetreStatesAreNegative) {
    for (double a : alpha_grid()) {
        EXPECT_LT(dpi_margin(fixtures::initial_rho1(), fixtures::initial_rho2(), fixtures::evolved_5mm_phi1(),
                             fixtures::evolved_5mm_phi2(), 1.0, AlphaParameter(a)),
                  0.0)
            << "alpha " << a;
    }
}

TEST(DpiMargin, Preconditions) {
    const DensityMatrix r = DensityMatrix::maximally_mixed(2);
    EXPECT_THROW(dpi_margin(r, r, r, r, 1.5, AlphaParameter(0.5)), PreconditionError);
    EXPECT_THROW(dpi_margin(r, r, DensityMatrix::maximally_mixed(3), r, 1.0, AlphaParameter(0.5)), DimensionMismatch);
}
