#pragma once

// Simulated polarization tomography: Poissonian counting in the three
// mutually unbiased qubit bases, linear-inversion reconstruction, and
// Monte-Carlo propagation of counting noise into the sigma bound.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numbers>
#include <optional>
#include <random>
#include <thread>
#include <utility>
#include <vector>

#include "qprobe/hermitian.hpp"
#include "qprobe/probing_bounds.hpp"

namespace qprobe {

enum class Basis : std::size_t { hv = 0, diagonal = 1, circular = 2 };

inline constexpr std::array<Basis, 3> kStandardBases{Basis::hv, Basis::diagonal, Basis::circular};

inline const char* to_string(Basis b) {
    switch (b) {
        case Basis::hv: return "hv";
        case Basis::diagonal: return "diagonal";
        case Basis::circular: return "circular";
    }
    return "?";
}

/// Outcome vectors (plus, minus). The plus outcome is the +1 eigenvector of
/// sigma_z, sigma_x and sigma_y respectively.
inline std::pair<Eigen::Vector2cd, Eigen::Vector2cd> basis_vectors(Basis b) {
    const double r = std::numbers::sqrt2 / 2.0;
    const Complex i(0.0, 1.0);
    switch (b) {
        case Basis::hv: return {Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0)};
        case Basis::diagonal: return {Eigen::Vector2cd(r, r), Eigen::Vector2cd(r, -r)};
        case Basis::circular: return {Eigen::Vector2cd(r, r * i), Eigen::Vector2cd(r, -r * i)};
    }
    throw PreconditionError("unknown basis");
}

enum class CountingModel {
    poisson,   // counts drawn Poisson(rate * time * p)
    expected,  // counts = rounded expectation, no sampling noise
};

struct TomographySettings {
    std::array<Basis, 3> bases = kStandardBases;
    double integration_time = 60.0;  // seconds per basis
    double count_rate = 200.0;       // expected coincidences per second
    std::uint64_t seed = 1;
    CountingModel model = CountingModel::poisson;

    void validate() const {
        if (!(integration_time > 0.0) || !std::isfinite(integration_time)) {
            throw PreconditionError("TomographySettings: integration_time must be positive");
        }
        if (!(count_rate > 0.0) || !std::isfinite(count_rate)) {
            throw PreconditionError("TomographySettings: count_rate must be positive");
        }
        std::array<bool, 3> seen{};
        for (Basis b : bases) seen[static_cast<std::size_t>(b)] = true;
        if (!(seen[0] && seen[1] && seen[2])) {
            throw PreconditionError("TomographySettings: bases must be hv, diagonal and circular");
        }
    }

    double expected_total() const noexcept { return integration_time * count_rate; }
};

struct BasisCounts {
    std::int64_t plus = 0;
    std::int64_t minus = 0;

    std::int64_t total() const noexcept { return plus + minus; }
};

struct CountRecord {
    std::array<BasisCounts, 3> counts{};  // indexed by Basis

    BasisCounts& operator[](Basis b) { return counts[static_cast<std::size_t>(b)]; }
    const BasisCounts& operator[](Basis b) const { return counts[static_cast<std::size_t>(b)]; }
};

using BornTable = std::array<std::pair<double, double>, 3>;  // indexed by Basis

inline std::pair<double, double> born_probabilities(const DensityMatrix& rho, Basis b) {
    if (rho.dim() != 2) {
        throw DimensionMismatch("born_probabilities: qubit state required");
    }
    const auto [plus, minus] = basis_vectors(b);
    const double p_plus = std::clamp((plus.adjoint() * rho.matrix() * plus)(0, 0).real(), 0.0, 1.0);
    return {p_plus, 1.0 - p_plus};
}

inline BornTable born_table(const DensityMatrix& rho) {
    BornTable t;
    for (Basis b : kStandardBases) t[static_cast<std::size_t>(b)] = born_probabilities(rho, b);
    return t;
}

/// Independent engine per (seed, stream): splitmix64 of both words seeds an
/// mt19937_64, so streams never depend on scheduling.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    const std::uint64_t a = mix(seed);
    const std::uint64_t b = mix(a ^ mix(stream + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

inline std::int64_t draw_count(double mean, CountingModel model, std::mt19937_64& rng) {
    if (mean <= 0.0) return 0;
    if (model == CountingModel::expected) return std::llround(mean);
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(rng);
}

inline CountRecord sample_counts(const BornTable& probabilities, const TomographySettings& settings,
                                 std::uint64_t stream) {
    settings.validate();
    std::mt19937_64 rng = make_stream(settings.seed, stream);
    const double n = settings.expected_total();
    CountRecord out;
    for (Basis b : settings.bases) {
        const auto [p_plus, p_minus] = probabilities[static_cast<std::size_t>(b)];
        out[b].plus = draw_count(n * p_plus, settings.model, rng);
        out[b].minus = draw_count(n * p_minus, settings.model, rng);
    }
    return out;
}

/// Linear inversion rho = (I + sum_k <s_k> s_k) / 2 followed by project_to_state.
inline DensityMatrix reconstruct(const CountRecord& counts) {
    std::array<double, 3> bloch{};
    for (Basis b : kStandardBases) {
        const BasisCounts& c = counts[b];
        if (c.plus < 0 || c.minus < 0) {
            throw Unreconstructable(std::string("reconstruct: negative counts in basis ") + to_string(b));
        }
        if (c.total() == 0) {
            throw Unreconstructable(std::string("reconstruct: no counts in basis ") + to_string(b));
        }
        bloch[static_cast<std::size_t>(b)] =
            static_cast<double>(c.plus - c.minus) / static_cast<double>(c.total());
    }
    const double z = bloch[0], x = bloch[1], y = bloch[2];
    ComplexMatrix m(2, 2);
    m(0, 0) = 0.5 * (1.0 + z);
    m(1, 1) = 0.5 * (1.0 - z);
    m(0, 1) = Complex(0.5 * x, -0.5 * y);
    m(1, 0) = Complex(0.5 * x, 0.5 * y);
    return project_to_state(m);
}

inline DensityMatrix simulate_tomography(const DensityMatrix& rho, const TomographySettings& settings,
                                         std::uint64_t stream) {
    return reconstruct(sample_counts(born_table(rho), settings, stream));
}

/// Tomography of all four probe states of one replica. Streams 4r .. 4r+3.
inline ProbingRecord measure_record(const ProbingRecord& truth, const TomographySettings& settings,
                                    std::uint64_t replica) {
    const std::uint64_t base = 4 * replica;
    return ProbingRecord(simulate_tomography(truth.rho1, settings, base),
                         simulate_tomography(truth.rho2, settings, base + 1),
                         simulate_tomography(truth.phi1_rho1, settings, base + 2),
                         simulate_tomography(truth.phi2_rho2, settings, base + 3), truth.delta_mu);
}

struct MonteCarloResult {
    std::vector<std::optional<double>> b_inf;  // per replica, Hz
    double mean_b_inf = 0.0;
    double std_b_inf = 0.0;  // sample standard deviation (n - 1)
    double no_info_fraction = 0.0;
    std::optional<double> below_truth_fraction;  // share of present b_inf < true sigma
    int replicas = 0;
    std::uint64_t seed = 0;
};

/// Re-simulates tomography `replicas` times and aggregates the tightest bound.
/// Replica r always uses streams derived from (seed, r), and aggregation runs
/// in replica order, so the result does not depend on `threads`.
inline MonteCarloResult monte_carlo_bounds(const ProbingRecord& truth, const TomographySettings& settings,
                                           int replicas, const std::vector<double>& alpha_grid,
                                           std::optional<double> true_sigma = std::nullopt,
                                           unsigned threads = 0) {
    if (replicas < 2) {
        throw PreconditionError("monte_carlo_bounds: need at least 2 replicas");
    }
    settings.validate();
    MonteCarloResult out;
    out.replicas = replicas;
    out.seed = settings.seed;
    out.b_inf.resize(static_cast<std::size_t>(replicas));

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(replicas));

    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(threads);
    auto worker = [&](unsigned id) {
        try {
            for (int r = next++; r < replicas; r = next++) {
                const ProbingRecord measured = measure_record(truth, settings, static_cast<std::uint64_t>(r));
                const BoundCurve curve = tightest_bound(measured, alpha_grid);
                if (curve.b_inf) out.b_inf[static_cast<std::size_t>(r)] = curve.b_inf->value;
            }
        } catch (...) {
            errors[id] = std::current_exception();
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    std::vector<double> present;
    for (const auto& b : out.b_inf) {
        if (b) present.push_back(*b);
    }
    out.no_info_fraction = 1.0 - static_cast<double>(present.size()) / replicas;
    if (present.empty()) {
        throw AggregationError("monte_carlo_bounds: every replica was no-information", out.no_info_fraction);
    }
    // Shifted sums: identical replicas give exactly zero spread.
    const double shift = present.front();
    double sum = 0.0;
    for (double v : present) sum += v - shift;
    const double offset = sum / static_cast<double>(present.size());
    out.mean_b_inf = shift + offset;
    if (present.size() > 1) {
        double ss = 0.0;
        for (double v : present) ss += (v - shift - offset) * (v - shift - offset);
        out.std_b_inf = std::sqrt(ss / static_cast<double>(present.size() - 1));
    }
    if (true_sigma) {
        std::size_t below = 0;
        for (double v : present) below += v < *true_sigma ? 1 : 0;
        out.below_truth_fraction = static_cast<double>(below) / static_cast<double>(present.size());
    }
    return out;
}

/// Mean of |test - reference| / reference over replicas where both runs
/// produced a bound.
inline double mean_relative_difference(const MonteCarloResult& test, const MonteCarloResult& reference) {
    const std::size_t n = std::min(test.b_inf.size(), reference.b_inf.size());
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (test.b_inf[i] && reference.b_inf[i]) {
            sum += std::abs(*test.b_inf[i] - *reference.b_inf[i]) / *reference.b_inf[i];
            ++used;
        }
    }
    if (used == 0) {
        throw AggregationError("mean_relative_difference: no replica pair with both bounds present", 1.0);
    }
    return sum / static_cast<double>(used);
}

}  // namespace qprobe
