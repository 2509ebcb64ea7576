#pragma once

#include <span>
#include <vector>

#include "rydblock/lindblad.hpp"

namespace rydblock {

// Driven, blockaded effective two-level emitter: closed-form steady state,
// linewidth and photon rate, second-order correlation g2, and the emission
// spectrum with Mollow-triplet analysis.

struct EmitterParams {
    double omega_c = 0.0;  // collective Rabi frequency Omega', GHz
    double gamma = 1.0;    // effective (Purcell-scaled) decay, GHz
    double detuning = 0.0; // laser detuning, GHz
};
void validate(const EmitterParams& params);

// Two-level master-equation model in the rotating frame; basis index 0 is
// the ground state, 1 the excited state.
LindbladModel two_level_model(const EmitterParams& params);

// Steady excited-state population; in [0, 1/2].
double steady_population(const EmitterParams& params);

// Power-broadened linewidth Gamma sqrt(1 + 2 Omega'^2 / Gamma^2), GHz.
double fwhm_ghz(const EmitterParams& params);

// Steady photon emission rate rho_ee * Gamma, GHz.
double photon_rate_ghz(const EmitterParams& params);

struct G2Curve {
    std::vector<double> tau;   // 1/GHz
    std::vector<double> value; // dimensionless, >= 0
};

// Resonant closed form
//   g2(tau) = 1 - e^{-3 Gamma tau / 4} (cos(Oe tau) + 3 Gamma/(4 Oe) sin(Oe tau)),
//   Oe = sqrt(Omega'^2 - Gamma^2/16).
// Below Omega' = Gamma/4 the real-valued analytic continuation replaces
// cos/sin with cosh/sinh; exactly at Gamma/4 the limit form
// 1 - e^{-3 Gamma tau/4}(1 + 3 Gamma tau/4) is used. Requires detuning = 0.
G2Curve g2_closed_form(const EmitterParams& params, std::span<const double> tau_grid);

// Regression-theorem evaluation: evolve from the ground state and divide by
// the steady population. Valid at any detuning; serves as the oracle for the
// closed form. Zero steady population raises NumericError.
G2Curve g2_numeric(const EmitterParams& params, std::span<const double> tau_grid);

struct SpectrumPeak {
    double center = 0.0; // GHz offset of the detected grid maximum
    double fwhm = 0.0;   // GHz, from a per-peak Lorentzian fit
    double height = 0.0;
};

struct SpectrumResult {
    std::vector<double> freq;       // GHz offsets from the transition
    std::vector<double> incoherent; // one-sided transform of the g1 remainder
    double coherent_weight = 0.0;   // |<sigma_minus>_ss|^2 delta weight at zero offset
    std::vector<SpectrumPeak> peaks;
};

// Emission spectrum from the first-order correlation
// g1(tau) = Tr[sigma+ e^{L tau}(sigma- rho_ss)]: the coherent asymptote
// |<sigma->_ss|^2 is split off analytically, the remainder is transformed
// onto freq_grid, then peaks are detected and fitted. freq_grid spacing
// must resolve Gamma/2 or NumericError is raised.
SpectrumResult emission_spectrum(const EmitterParams& params,
                                 std::span<const double> freq_grid);

} // namespace rydblock
