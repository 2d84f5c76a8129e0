#pragma once

// Coupling-agnostic probing of the width of a Gaussian spectrum.
//
// Two spectra with a known shift delta_mu and a shared unknown sigma induce
// channels Phi1, Phi2 on the probe. Since
//     F_a(rho1, rho2) F_a(xi1, xi2) <= F_a(Phi1 rho1, Phi2 rho2)
// and F_a(xi1, xi2) = exp(-(1 - a) a dmu^2 / (2 sigma^2)), a measured fraction
// F_a(Phi1 rho1, Phi2 rho2) / F_a(rho1, rho2) < 1 caps sigma from above.
// Swapping both argument orders gives a second family.

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qprobe/alpha_fidelity.hpp"

namespace qprobe {

enum class Order { forward, reversed };
enum class Family { B1, B2 };

inline const char* to_string(Family f) { return f == Family::B1 ? "B1" : "B2"; }

inline Order order_of(Family f) { return f == Family::B1 ? Order::forward : Order::reversed; }

struct ProbingRecord {
    DensityMatrix rho1;
    DensityMatrix rho2;
    DensityMatrix phi1_rho1;
    DensityMatrix phi2_rho2;
    double delta_mu;  // Hz

    ProbingRecord(DensityMatrix r1, DensityMatrix r2, DensityMatrix p1, DensityMatrix p2, double dmu)
        : rho1(std::move(r1)), rho2(std::move(r2)), phi1_rho1(std::move(p1)), phi2_rho2(std::move(p2)),
          delta_mu(dmu) {
        for (const DensityMatrix* m : {&rho1, &rho2, &phi1_rho1, &phi2_rho2}) {
            if (m->dim() != 2) {
                throw DimensionMismatch("ProbingRecord: all probe states must be qubits");
            }
        }
        if (!(delta_mu >= 0.0) || !std::isfinite(delta_mu)) {
            throw PreconditionError("ProbingRecord: delta_mu must be finite and >= 0");
        }
    }
};

/// Evolved over initial alpha-fidelity; +infinity when the initial one is 0.
inline double fraction(const ProbingRecord& r, AlphaParameter alpha, Order order) {
    const bool fwd = order == Order::forward;
    const double initial = fwd ? alpha_fidelity(r.rho1, r.rho2, alpha) : alpha_fidelity(r.rho2, r.rho1, alpha);
    const double evolved = fwd ? alpha_fidelity(r.phi1_rho1, r.phi2_rho2, alpha)
                               : alpha_fidelity(r.phi2_rho2, r.phi1_rho1, alpha);
    if (initial <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return evolved / initial;
}

enum class Classification { bound, no_information, degenerate_control };

/// The three outcomes per (alpha, order): an upper bound exists, the data
/// carries no information (fraction >= 1), or delta_mu = 0.
inline Classification classify(const ProbingRecord& r, AlphaParameter alpha, Order order) {
    if (r.delta_mu == 0.0) {
        return Classification::degenerate_control;
    }
    return fraction(r, alpha, order) < 1.0 ? Classification::bound : Classification::no_information;
}

namespace detail {

inline void require_control(const ProbingRecord& r) {
    if (r.delta_mu == 0.0) {
        throw DegenerateControl(
            "delta_mu = 0: the inequality reduces to the trivial condition sigma >= 0");
    }
}

inline std::optional<double> sigma_bound_from_fraction(double frac, double alpha, double delta_mu) {
    if (!(frac < 1.0)) {
        return std::nullopt;
    }
    return std::sqrt(alpha * (alpha - 1.0) * delta_mu * delta_mu / (2.0 * std::log(frac)));
}

// sqrt(2 ln(frac) / (a (a - 1))): the delta_mu / sigma ratio implied by frac.
inline std::optional<double> ratio_from_fraction(double frac, double alpha) {
    if (!(frac < 1.0)) {
        return std::nullopt;
    }
    return std::sqrt(2.0 * std::log(frac) / (alpha * (alpha - 1.0)));
}

}  // namespace detail

/// Upper bound on sigma from the forward ordering, absent when fraction >= 1.
inline std::optional<double> bound_b1(const ProbingRecord& r, AlphaParameter alpha) {
    alpha.require_inequality_range();
    detail::require_control(r);
    return detail::sigma_bound_from_fraction(fraction(r, alpha, Order::forward), alpha, r.delta_mu);
}

/// Upper bound on sigma from the reversed ordering.
inline std::optional<double> bound_b2(const ProbingRecord& r, AlphaParameter alpha) {
    alpha.require_inequality_range();
    detail::require_control(r);
    return detail::sigma_bound_from_fraction(fraction(r, alpha, Order::reversed), alpha, r.delta_mu);
}

struct TightestBound {
    double value;  // Hz
    double alpha;
    Family family;
};

struct BoundCurve {
    std::vector<double> alphas;
    std::vector<std::optional<double>> b1;
    std::vector<std::optional<double>> b2;
    std::vector<bool> valid1;
    std::vector<bool> valid2;
    std::vector<double> fraction_forward;
    std::vector<double> fraction_reversed;
    std::optional<TightestBound> b_inf;

    bool no_information() const noexcept { return !b_inf.has_value(); }
};

/// Evaluates both families over the grid and keeps the smallest present value
/// (first one in ascending alpha, B1 before B2, on ties).
inline BoundCurve tightest_bound(const ProbingRecord& r, const std::vector<double>& grid) {
    if (grid.empty()) {
        throw PreconditionError("tightest_bound: empty alpha grid");
    }
    detail::require_control(r);
    BoundCurve curve;
    curve.alphas = grid;
    const std::size_t n = grid.size();
    curve.b1.resize(n);
    curve.b2.resize(n);
    curve.valid1.resize(n);
    curve.valid2.resize(n);
    curve.fraction_forward.resize(n);
    curve.fraction_reversed.resize(n);

    auto consider = [&](const std::optional<double>& b, double a, Family fam) {
        if (b && (!curve.b_inf || *b < curve.b_inf->value)) {
            curve.b_inf = TightestBound{*b, a, fam};
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        const AlphaParameter alpha(grid[i]);
        alpha.require_inequality_range();
        curve.fraction_forward[i] = fraction(r, alpha, Order::forward);
        curve.fraction_reversed[i] = fraction(r, alpha, Order::reversed);
        curve.b1[i] = detail::sigma_bound_from_fraction(curve.fraction_forward[i], grid[i], r.delta_mu);
        curve.b2[i] = detail::sigma_bound_from_fraction(curve.fraction_reversed[i], grid[i], r.delta_mu);
        curve.valid1[i] = curve.b1[i].has_value();
        curve.valid2[i] = curve.b2[i].has_value();
        consider(curve.b1[i], grid[i], Family::B1);
        consider(curve.b2[i], grid[i], Family::B2);
    }
    return curve;
}

/// Lower bound on an unknown shift when sigma is known; the larger of the two
/// orderings when both are informative.
inline std::optional<double> lower_bound_delta_mu(const ProbingRecord& r, double sigma_known,
                                                  AlphaParameter alpha) {
    if (!(sigma_known > 0.0)) {
        throw PreconditionError("lower_bound_delta_mu: sigma_known must be positive");
    }
    alpha.require_inequality_range();
    std::optional<double> best;
    for (Order order : {Order::forward, Order::reversed}) {
        if (auto ratio = detail::ratio_from_fraction(fraction(r, alpha, order), alpha)) {
            const double b = sigma_known * *ratio;
            if (!best || b > *best) best = b;
        }
    }
    return best;
}

/// Lower bound on delta_mu / sigma when both are unknown.
inline std::optional<double> ratio_lower_bound(const ProbingRecord& r, AlphaParameter alpha) {
    alpha.require_inequality_range();
    std::optional<double> best;
    for (Order order : {Order::forward, Order::reversed}) {
        if (auto ratio = detail::ratio_from_fraction(fraction(r, alpha, order), alpha)) {
            if (!best || *ratio > *best) best = *ratio;
        }
    }
    return best;
}

}  // namespace qprobe
