#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qprobe/hermitian.hpp"

namespace qprobe {

/// alpha in (0, 1). The generalized data-processing inequality is only
/// guaranteed for alpha in [1/2, 1); smaller values are accepted for plain
/// fidelity evaluation and flagged through guaranteed().
class AlphaParameter {
public:
    explicit AlphaParameter(double value) : value_(value) {
        if (!(value > 0.0 && value < 1.0)) {
            std::ostringstream msg;
            msg << "alpha must lie in (0, 1), got " << value;
            throw PreconditionError(msg.str());
        }
    }

    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

    bool guaranteed() const noexcept { return value_ >= 0.5; }

    /// Exponent (1 - alpha) / (2 alpha) applied to the second argument.
    double sandwich_exponent() const noexcept { return (1.0 - value_) / (2.0 * value_); }

    void require_inequality_range() const {
        if (!guaranteed()) {
            std::ostringstream msg;
            msg << "alpha = " << value_ << " is below 1/2: inequality not guaranteed";
            throw PreconditionError(msg.str());
        }
    }

private:
    double value_;
};

inline constexpr double kAlphaGridMin = 0.5;
inline constexpr double kAlphaGridMax = 0.9999;
inline constexpr std::size_t kAlphaGridPoints = 500;

/// Uniform grid over [lo, hi], both ends included.
inline std::vector<double> alpha_grid(double lo = kAlphaGridMin, double hi = kAlphaGridMax,
                                      std::size_t points = kAlphaGridPoints) {
    if (points == 0 || !(lo > 0.0) || !(hi < 1.0) || lo > hi) {
        throw PreconditionError("alpha_grid: need 0 < lo <= hi < 1 and at least one point");
    }
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = lo;
        return grid;
    }
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = lo + step * static_cast<double>(i);
    }
    grid.back() = hi;
    return grid;
}

struct FidelityResult {
    double value = 0.0;  // clamped to [0, 1]
    double raw = 0.0;
    bool warning = false;  // raw exceeded 1 by more than 1e-9
};

inline constexpr double kFidelityExcessTolerance = 1e-9;

inline FidelityResult alpha_fidelity_detailed(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                              AlphaParameter alpha) {
    if (rho1.dim() != rho2.dim()) {
        std::ostringstream msg;
        msg << "alpha_fidelity: dimension mismatch (" << rho1.dim() << " vs " << rho2.dim() << ")";
        throw DimensionMismatch(msg.str());
    }
    const ComplexMatrix side = mat_pow_psd(rho2.matrix(), alpha.sandwich_exponent());
    const ComplexMatrix sandwich = hermitize(side * rho1.matrix() * side);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sandwich, Eigen::EigenvaluesOnly);

    double raw = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (lambda >= tol::eig_floor) {
            raw += std::pow(lambda, alpha.value());
        }
    }
    FidelityResult out;
    out.raw = raw;
    out.warning = raw > 1.0 + kFidelityExcessTolerance;
    out.value = std::clamp(raw, 0.0, 1.0);
    return out;
}

/// tr[(rho2^((1-a)/2a) rho1 rho2^((1-a)/2a))^a]. Not symmetric in general.
inline double alpha_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2,
                             AlphaParameter alpha) {
    return alpha_fidelity_detailed(rho1, rho2, alpha).value;
}

/// ln(F_alpha) / (alpha - 1); +infinity when F_alpha vanishes.
inline double renyi_divergence(const DensityMatrix& rho1, const DensityMatrix& rho2,
                               AlphaParameter alpha) {
    const double f = alpha_fidelity(rho1, rho2, alpha);
    if (f <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::log(f) / (alpha.value() - 1.0);
}

/// F_a(phi1, phi2) - F_a(rho1, rho2) * xi_fid. Nonnegative for any pair of
/// channels induced through a common unitary by environments with fidelity xi_fid.
inline double dpi_margin(const DensityMatrix& rho1, const DensityMatrix& rho2,
                         const DensityMatrix& phi1_rho1, const DensityMatrix& phi2_rho2,
                         double xi_fid, AlphaParameter alpha) {
    if (!(xi_fid >= 0.0 && xi_fid <= 1.0)) {
        throw PreconditionError("dpi_margin: xi_fid must lie in [0, 1]");
    }
    if (rho1.dim() != phi1_rho1.dim() || rho2.dim() != phi2_rho2.dim()) {
        throw DimensionMismatch("dpi_margin: probe dimensions differ before and after the channel");
    }
    return alpha_fidelity(phi1_rho1, phi2_rho2, alpha) - alpha_fidelity(rho1, rho2, alpha) * xi_fid;
}

}  // namespace qprobe
