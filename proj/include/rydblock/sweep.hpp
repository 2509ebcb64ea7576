#pragma once

#include <string>
#include <vector>

#include "rydblock/config.hpp"

namespace rydblock {

// Parameter sweeps, the operating-point report and the constrained grid
// optimizer. All evaluations are pure functions of Params, executed
// single-threaded in input order, so outputs are bitwise reproducible.

struct SweepRow {
    double sweep_value = 0.0;
    int n_sites = 0;
    double omega_collective = 0.0; // GHz
    double ratio = 0.0;            // Omega' / Gamma
    double rho_ee = 0.0;
    double rate = 0.0; // GHz
    double p_rr = 0.0;
    double g2_zero = 0.0;
    std::string error; // empty on success; numeric fields are NaN on failure
};

// One row per sweep value, in input order. drive_ratio sweeps parameterize
// Omega'/Gamma directly and back-solve the single-site Rabi frequency;
// `side` and `n` sweeps replace the respective input. Per-point failures are
// recorded in the error column and the sweep continues.
std::vector<SweepRow> run_sweep(const Params& params);

struct DerivedPoint {
    int n_sites = 0;
    double omega_collective = 0.0; // GHz
    double gamma = 0.0;            // GHz
    double ratio = 0.0;
    double rho_ee = 0.0;
    double rate = 0.0; // GHz
    double p_rr = 0.0;
    double g2_zero = 0.0;
    double c3 = 0.0;    // GHz um^3
    double pitch = 0.0; // um
};

struct OperatingPoint {
    double omega_single = 0.0; // GHz
    double side = 0.0;         // um
    int n = 0;
    double purcell = 1.0;
    DerivedPoint derived; // recomputed on every call, never stored stale
};

OperatingPoint operating_point(const Params& params);

// g2(0) and P_rr for every (variant, C3 calibration) combination at the
// configured operating point; row order: eq8/formula, eq8/observed,
// eq7/formula, eq7/observed.
struct SensitivityRow {
    PairVariant variant = PairVariant::eq8;
    C3Source c3_source = C3Source::formula;
    double c3 = 0.0;
    double p_rr = 0.0;
    double g2_zero = 0.0;
};
std::vector<SensitivityRow> g2_sensitivity(const Params& params);

struct OptimizeOptions {
    double g2_max = 0.01;   // in (0, 1/2)
    double omega_min = 0.0; // GHz
    double omega_max = 20.0;
    double side_min = 2.0; // um
    double side_max = 8.0;
    int omega_points = 50;
    int side_points = 50;
};

// Exhaustive grid search maximizing the photon rate subject to
// g2(0) <= g2_max and side >= 2 * spacing_factor * <r_n> (the crystal must
// stay well above the exciton size). Deterministic tie-break: smaller Omega,
// then smaller side. An empty feasible set raises InfeasibleError naming the
// binding constraint.
OperatingPoint optimize_point(const Params& params, const OptimizeOptions& opts);

} // namespace rydblock
