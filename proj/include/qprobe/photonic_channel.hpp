#pragma once

// Frequency/polarization coupling in stacked birefringent plates.
//
// Each plate contributes R(theta) diag(1, exp(i 2 pi w dn x / c)) R(theta)^T
// in the {H, V} basis; the common phase of both refractive indices is dropped.
// Tracing out the frequency with a spectrum gives the probe channel
// Phi(rho) = sum_i w_i V(w_i) rho V(w_i)^dagger.

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "qprobe/hermitian.hpp"
#include "qprobe/spectra.hpp"

namespace qprobe {

// Quartz near 810 nm.
inline constexpr double kQuartzBirefringence = 0.00925;

struct WavePlate {
    double thickness_m;
    double orientation_rad;

    WavePlate(double thickness, double orientation) : thickness_m(thickness), orientation_rad(orientation) {
        if (!(thickness > 0.0) || !std::isfinite(thickness) || !std::isfinite(orientation)) {
            throw PreconditionError("WavePlate: thickness must be positive and finite");
        }
    }
};

class WavePlateStack {
public:
    explicit WavePlateStack(std::vector<WavePlate> plates, double birefringence = kQuartzBirefringence)
        : plates_(std::move(plates)), birefringence_(birefringence) {
        if (plates_.empty()) {
            throw PreconditionError("WavePlateStack: at least one plate required");
        }
        if (birefringence_ == 0.0 || !std::isfinite(birefringence_)) {
            throw PreconditionError("WavePlateStack: birefringence must be nonzero");
        }
    }

    /// Single plate with its axis along H.
    static WavePlateStack aligned(double thickness_m, double birefringence = kQuartzBirefringence) {
        return WavePlateStack({WavePlate(thickness_m, 0.0)}, birefringence);
    }

    const std::vector<WavePlate>& plates() const noexcept { return plates_; }
    double birefringence() const noexcept { return birefringence_; }

    double total_thickness() const noexcept {
        double t = 0.0;
        for (const auto& p : plates_) t += p.thickness_m;
        return t;
    }

    /// Effective delay of the whole stack when every axis is aligned.
    double aligned_delay() const noexcept { return birefringence_ * total_thickness() / kSpeedOfLight; }

private:
    std::vector<WavePlate> plates_;
    double birefringence_;
};

namespace detail {

inline Eigen::Matrix2cd plate_jones(const WavePlate& plate, double birefringence, double omega) {
    const double cycles = omega * birefringence * plate.thickness_m / kSpeedOfLight;
    const double phase = 2.0 * std::numbers::pi * (cycles - std::floor(cycles));
    const double c = std::cos(plate.orientation_rad);
    const double s = std::sin(plate.orientation_rad);
    Eigen::Matrix2d rot;
    rot << c, -s, s, c;
    Eigen::Matrix2cd diag = Eigen::Matrix2cd::Zero();
    diag(0, 0) = 1.0;
    diag(1, 1) = std::polar(1.0, phase);
    return rot.cast<Complex>() * diag * rot.transpose().cast<Complex>();
}

inline Eigen::Matrix2cd stack_jones(const WavePlateStack& stack, double omega) {
    Eigen::Matrix2cd v = Eigen::Matrix2cd::Identity();
    for (const auto& plate : stack.plates()) {
        v = plate_jones(plate, stack.birefringence(), omega) * v;
    }
    return v;
}

inline void require_qubit(const DensityMatrix& rho, const char* where) {
    if (rho.dim() != 2) {
        std::ostringstream msg;
        msg << where << ": probe must be a qubit (dimension " << rho.dim() << ")";
        throw DimensionMismatch(msg.str());
    }
}

}  // namespace detail

/// Polarization unitary at frequency omega (Hz); the first plate acts first.
inline ComplexMatrix jones_at_frequency(const WavePlateStack& stack, double omega) {
    if (!(omega > 0.0)) {
        throw PreconditionError("jones_at_frequency: omega must be positive");
    }
    return detail::stack_jones(stack, omega);
}

/// Reduced probe dynamics by quadrature over the frequency grid. The grid is
/// expected to come from discretize(spectrum); the spectrum itself is only used
/// for the overload that builds the default grid.
inline DensityMatrix apply_channel(const WavePlateStack& stack, const GaussianSpectrum& /*spectrum*/,
                                   const DensityMatrix& rho, const FrequencyGrid& grid) {
    detail::require_qubit(rho, "apply_channel");
    const Eigen::Matrix2cd in = rho.matrix();
    Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const Eigen::Matrix2cd v = detail::stack_jones(stack, grid.points[i]);
        acc.noalias() += grid.weights[i] * (v * in * v.adjoint());
    }
    return DensityMatrix(hermitize(acc));
}

inline DensityMatrix apply_channel(const WavePlateStack& stack, const GaussianSpectrum& spectrum,
                                   const DensityMatrix& rho) {
    return apply_channel(stack, spectrum, rho, discretize(spectrum));
}

inline constexpr int kMaxOracleEnvironment = 256;

/// Brute-force reference: tr_env[U (rho (x) xi) U^dagger] with xi the
/// discretized spectrum on n_env frequencies and U = sum_k V(w_k) (x) |k><k|.
inline DensityMatrix apply_channel_oracle(const WavePlateStack& stack, const GaussianSpectrum& spectrum,
                                          const DensityMatrix& rho, int n_env) {
    detail::require_qubit(rho, "apply_channel_oracle");
    if (n_env > kMaxOracleEnvironment) {
        std::ostringstream msg;
        msg << "apply_channel_oracle: n_env = " << n_env << " exceeds " << kMaxOracleEnvironment;
        throw DimensionMismatch(msg.str());
    }
    const FrequencyGrid grid = discretize(spectrum, kDefaultSpanSigmas, n_env);
    const Eigen::Index n = n_env;

    ComplexMatrix xi = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) xi(k, k) = grid.weights[static_cast<std::size_t>(k)];
    const ComplexMatrix joint_state = kron(rho.matrix(), xi);

    ComplexMatrix joint_unitary = ComplexMatrix::Zero(2 * n, 2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Matrix2cd v = detail::stack_jones(stack, grid.points[static_cast<std::size_t>(k)]);
        for (Eigen::Index p = 0; p < 2; ++p) {
            for (Eigen::Index q = 0; q < 2; ++q) {
                joint_unitary(p * n + k, q * n + k) = v(p, q);
            }
        }
    }
    const ComplexMatrix evolved = joint_unitary * joint_state * joint_unitary.adjoint();
    return DensityMatrix(hermitize(partial_trace_env(evolved, 2, n)));
}

}  // namespace qprobe
