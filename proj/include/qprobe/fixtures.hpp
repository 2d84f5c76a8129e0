#pragma once

// Measured probe states of the 5 mm quartz plate run (three decimals) and the
// experiment's control and reference values.

#include "qprobe/probing_bounds.hpp"
#include "qprobe/spectra.hpp"

namespace qprobe::fixtures {

inline constexpr double kDeltaMuHz = 7.95e11;
inline constexpr double kSigmaHz = 5.68e11;
inline constexpr double kCenterWavelengthNm = 810.0;

// Reported bounds in units of sigma.
inline constexpr double kGoldenB2AtHalf = 2.22;
inline constexpr double kGoldenB2AtTop = 1.82;
inline constexpr double kGoldenTolerance = 0.05;  // 3-decimal matrix entries

inline DensityMatrix qubit(double a00, Complex a01, double a11) {
    ComplexMatrix m(2, 2);
    m << a00, a01, std::conj(a01), a11;
    return DensityMatrix(m);
}

// The source data lists the lower-left entry of rho1 as 0.482 + 0.06i, which is
// not Hermitian; the conjugate of the upper-right entry is used instead.
inline DensityMatrix initial_rho1() { return qubit(0.513, {0.482, -0.006}, 0.487); }
inline DensityMatrix initial_rho2() { return qubit(0.535, {0.496, -0.017}, 0.465); }
inline DensityMatrix evolved_5mm_phi1() { return qubit(0.51, {0.435, 0.073}, 0.49); }
inline DensityMatrix evolved_5mm_phi2() { return qubit(0.509, {0.257, 0.329}, 0.491); }

inline ProbingRecord record_5mm() {
    return ProbingRecord(initial_rho1(), initial_rho2(), evolved_5mm_phi1(), evolved_5mm_phi2(), kDeltaMuHz);
}

inline double center_frequency_hz() { return kSpeedOfLight / (kCenterWavelengthNm * 1e-9); }

}  // namespace qprobe::fixtures
