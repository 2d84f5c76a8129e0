#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "qprobe/alpha_fidelity.hpp"
#include "qprobe/errors.hpp"

namespace qprobe {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Gaussian intensity spectrum |g(w)|^2 with mean mu and standard deviation
/// sigma, both in Hz.
class GaussianSpectrum {
public:
    GaussianSpectrum(double mu_hz, double sigma_hz) : mu_(mu_hz), sigma_(sigma_hz) {
        if (!(sigma_hz > 0.0) || !(mu_hz > 0.0) || !std::isfinite(mu_hz) || !std::isfinite(sigma_hz)) {
            std::ostringstream msg;
            msg << "GaussianSpectrum: need mu > 0 and sigma > 0 (got mu = " << mu_hz
                << ", sigma = " << sigma_hz << ")";
            throw PreconditionError(msg.str());
        }
    }

    /// Wavelength parameterization: nu = c / lambda, sigma_nu = c sigma_lambda / lambda^2.
    static GaussianSpectrum from_wavelength(double center_nm, double width_nm) {
        if (!(center_nm > 0.0) || !(width_nm > 0.0)) {
            throw PreconditionError("GaussianSpectrum: wavelength and width must be positive");
        }
        const double lambda = center_nm * 1e-9;
        return GaussianSpectrum(kSpeedOfLight / lambda, kSpeedOfLight * width_nm * 1e-9 / (lambda * lambda));
    }

    double mu() const noexcept { return mu_; }
    double sigma() const noexcept { return sigma_; }

    /// Normalized intensity at frequency w.
    double density(double w) const noexcept {
        const double z = (w - mu_) / sigma_;
        return std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * std::numbers::pi));
    }

private:
    double mu_;
    double sigma_;
};

inline double wavelength_width_to_hz(double center_nm, double width_nm) {
    const double lambda = center_nm * 1e-9;
    return kSpeedOfLight * width_nm * 1e-9 / (lambda * lambda);
}

struct FrequencyGrid {
    std::vector<double> points;   // Hz, ascending
    std::vector<double> weights;  // sum to 1
};

inline constexpr double kDefaultSpanSigmas = 6.0;
inline constexpr int kDefaultGridPoints = 2001;

/// Uniform grid of n points over mu +- span_sigmas * sigma, weighted by the
/// spectrum density and renormalized.
inline FrequencyGrid discretize(const GaussianSpectrum& s, double span_sigmas = kDefaultSpanSigmas,
                                int n = kDefaultGridPoints) {
    if (n < 3 || n % 2 == 0) {
        throw PreconditionError("discretize: point count must be odd and >= 3");
    }
    if (!(span_sigmas > 0.0)) {
        throw PreconditionError("discretize: span_sigmas must be positive");
    }
    FrequencyGrid grid;
    grid.points.resize(static_cast<std::size_t>(n));
    grid.weights.resize(static_cast<std::size_t>(n));
    const int half = n / 2;
    const double step = span_sigmas * s.sigma() / half;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double offset = static_cast<double>(i - half) * step;
        const double z = offset / s.sigma();
        grid.points[i] = s.mu() + offset;
        grid.weights[i] = std::exp(-0.5 * z * z);
        total += grid.weights[i];
    }
    for (double& w : grid.weights) {
        w /= total;
    }
    return grid;
}

/// exp(-(1 - a) a dmu^2 / (2 sigma^2)). Only defined for equal widths.
inline double gaussian_alpha_fidelity(const GaussianSpectrum& s1, const GaussianSpectrum& s2,
                                      AlphaParameter alpha) {
    const double rel = std::abs(s1.sigma() - s2.sigma()) / std::max(s1.sigma(), s2.sigma());
    if (rel > 1e-9) {
        throw UnsupportedCase(
            "gaussian_alpha_fidelity: closed form needs equal sigmas; "
            "use a discretized classical fidelity for unequal widths");
    }
    const double a = alpha.value();
    const double dmu = std::abs(s2.mu() - s1.mu());
    const double sigma = s1.sigma();
    return std::exp(-(1.0 - a) * a * dmu * dmu / (2.0 * sigma * sigma));
}

/// Dephasing coefficient: Fourier transform of the spectrum at effective
/// delay tau = birefringence * thickness / c,
/// kappa = exp(i 2 pi tau mu - (2 pi tau sigma)^2 / 2).
inline std::complex<double> kappa(const GaussianSpectrum& s, double tau) {
    const double two_pi_tau = 2.0 * std::numbers::pi * tau;
    const double decay = 0.5 * (two_pi_tau * s.sigma()) * (two_pi_tau * s.sigma());
    // Reduce the phase before exp; tau * mu can be ~1e3 cycles.
    const double cycles = tau * s.mu();
    const double phase = 2.0 * std::numbers::pi * (cycles - std::floor(cycles));
    return std::polar(std::exp(-decay), phase);
}

}  // namespace qprobe
