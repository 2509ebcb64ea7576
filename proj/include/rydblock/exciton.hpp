#pragma once

#include <array>
#include <vector>

namespace rydblock {

// Static properties of Rydberg excitons in the cuprous-oxide yellow series.
//
// Unit conventions used throughout the library: lengths in um, volumes in
// um^3, every rate and frequency (Rabi, decay, detuning, interaction shifts)
// in GHz, treated as mutually consistent rate units. Energies appear in eV
// only in the level-energy formula. Conversions happen here, at the module
// boundary, never inside downstream formulas.

struct MaterialConstants {
    double bohr_radius_nm = 1.1;
    double rydberg_mev = 92.0;
    double bandgap_ev = 2.17208;
    double defect_p = 0.23;            // quantum defect of the P envelope band
    double linewidth_thz = 28.0;       // Gamma(n) = linewidth_thz * n^-3
    double blockade_coeff_um3 = 3e-7;  // V_B(n) = blockade_coeff_um3 * n^7
    double dielectric = 7.5;           // metadata only
};
void validate(const MaterialConstants& mat);

struct ExcitonLevel {
    int n = 1;            // principal quantum number
    int l = 0;            // angular momentum, 0 <= l <= n-1
    double delta_l = 0.0; // quantum defect; only l=1 has a tabulated value
};
void validate(const ExcitonLevel& level);

struct CrystalGeometry {
    double side = 4.0;           // cubic crystal edge, um
    double spacing_factor = 2.0; // lattice pitch in units of <r_n>
};
void validate(const CrystalGeometry& geom);

struct DriveConfig {
    double rabi_single = 0.0; // single-site Rabi frequency, GHz
    double detuning = 0.0;    // laser detuning from the transition, GHz
    double purcell = 1.0;     // cavity enhancement of the decay rate
};
void validate(const DriveConfig& drive);

// <r_n> = a_B/2 (3n^2 - l(l+1)), in um.
double mean_radius_um(const ExcitonLevel& level, const MaterialConstants& mat);

// E_n = E_g - Ry/(n - delta_l)^2, in eV.
double rydberg_energy_ev(const ExcitonLevel& level, const MaterialConstants& mat);

// Purcell-scaled radiative linewidth, GHz.
double radiative_linewidth_ghz(int n, const MaterialConstants& mat, double purcell = 1.0);

// Blockade volume V_B(n), um^3.
double blockade_volume_um3(int n, const MaterialConstants& mat);

// Dipole-dipole coefficient C3 in GHz um^3, calibrated from the blockade
// volume law: V_B = (4 pi / 3) C3 / (Gamma_n / 2), with the natural
// (purcell = 1) linewidth.
double c3_coefficient(int n, const MaterialConstants& mat);

// Same inversion for an externally supplied (e.g. measured) blockade volume.
double c3_from_volume(double volume_um3, int n, const MaterialConstants& mat);

// Omega' = sqrt(N) Omega, GHz.
double collective_rabi_ghz(double rabi_single_ghz, int n_sites);

// Strong-field blockade radius (C3 / Omega')^(1/3), um.
double blockade_radius_um(double collective_rabi_ghz, double c3_ghz_um3);

// Single-site Rabi frequency from pump intensity (uW/mm^2), anchored at
// 9 GHz for 4 uW/mm^2 at n = 24 and scaled by sqrt(intensity) * n^(-3/2).
double rabi_from_intensity_ghz(double intensity_uw_mm2, int n);

// Simple cubic grid of exciton sites anchored at a corner of the crystal:
// pitch = spacing_factor * <r_n>, floor(side / pitch) sites per axis, at
// least one. A crystal smaller than the pitch degenerates to a single site
// at the origin.
struct SiteLattice {
    std::vector<std::array<double, 3>> positions; // um
    double pitch = 0.0;                           // um
    int sites_per_axis = 1;

    int size() const { return static_cast<int>(positions.size()); }
};
SiteLattice site_lattice(const CrystalGeometry& geom, const ExcitonLevel& level,
                         const MaterialConstants& mat);

} // namespace rydblock
