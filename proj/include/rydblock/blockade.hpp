#pragma once

#include <vector>

#include "rydblock/exciton.hpp"

namespace rydblock {

// Imperfect-blockade model: per-pair double-excitation probabilities over the
// site lattice, their sum P_rr, and the resulting g2(0) = P_rr / (2 rho_ee).
//
// Two closed-form variants of the per-pair probability are carried, selected
// by config. Both use X = N Omega^2 / Gamma^2 and
// Y = (Omega^2 / N) / (V_ij^2 + Gamma^2/4):
//   eq8 - the saturated product form X/(1+2X) * Y/(1+2Y);
//   eq7 - the stationary solution of the driven pair cascade given the
//         collective single-excitation population, X/(1+2X) * (Y/4)/(1+Y/4).
// They differ by about a factor 4 at small Y; the exact three-level ladder
// below is the oracle that arbitrates.

enum class PairVariant { eq8, eq7 };
enum class C3Source { formula, observed };

struct ModelOptions {
    PairVariant variant = PairVariant::eq8;
    C3Source c3_source = C3Source::formula;
    double observed_volume_um3 = 2000.0; // measured blockade volume used by `observed`
};
void validate(const ModelOptions& model);

double resolve_c3(const ModelOptions& model, int n, const MaterialConstants& mat);

// V_ij = C3 / r^3, GHz.
double pair_interaction_ghz(double distance_um, double c3_ghz_um3);

double pair_double_excitation_eq8(double omega_single, int n_sites, double gamma,
                                  double v_ij);
double pair_double_excitation_eq7(double omega_single, int n_sites, double gamma,
                                  double v_ij);

// Exact steady state of the three-level excitation ladder
// |0> -- sqrt(N) Omega/2 --> |1> -- Omega/(2 sqrt(N)) --> |2>,
// with the pair shift V_ij on |2> and one-step decay at rate Gamma from each
// excited level. Returns the double-excitation population rho_22.
double ladder_oracle(double omega_single, int n_sites, double gamma, double v_ij);

struct PairTerm {
    int site_i = 0;
    int site_j = 0;
    double distance = 0.0; // um
    double v_ij = 0.0;     // GHz
    double rho2 = 0.0;
};

struct BlockadeResult {
    int n_sites = 0;
    double collective_rabi = 0.0; // GHz
    double rho_ee = 0.0;
    std::vector<PairTerm> pair_terms; // ordered by (i, j), i < j
    double p_rr = 0.0;
    double g2_zero = 0.0; // NaN when rho_ee = 0 (undriven emitter)
    double rate = 0.0;    // GHz
};

// Builds the lattice, evaluates the chosen per-pair variant for every pair
// i < j (no distance cutoff, deterministic (i, j) summation order) and forms
// the totals. Resonant drive is assumed; the config detuning does not enter.
// A single-site lattice gives P_rr = 0 and g2(0) = 0.
BlockadeResult blockade_report(const CrystalGeometry& geom, const ExcitonLevel& level,
                               const DriveConfig& drive, const MaterialConstants& mat,
                               const ModelOptions& model);

} // namespace rydblock
