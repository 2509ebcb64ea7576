#include "rydblock/exciton.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rydblock {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Exact small integer powers; avoids libm pow for reproducibility.
double ipow(double base, int exponent) {
    double out = 1.0;
    for (int k = 0; k < exponent; ++k) out *= base;
    return out;
}

} // namespace

void validate(const MaterialConstants& mat) {
    require(mat.bohr_radius_nm > 0 && mat.rydberg_mev > 0 && mat.bandgap_ev > 0 &&
                mat.defect_p > 0 && mat.linewidth_thz > 0 && mat.blockade_coeff_um3 > 0 &&
                mat.dielectric > 0,
            "material constants must be strictly positive");
}

void validate(const ExcitonLevel& level) {
    require(level.n >= 1, "level: n must be >= 1");
    require(level.l >= 0 && level.l <= level.n - 1, "level: l must satisfy 0 <= l <= n-1");
    require(static_cast<double>(level.n) - level.delta_l > 0,
            "level: n - delta_l must be positive");
}

void validate(const CrystalGeometry& geom) {
    require(geom.side > 0, "geometry: side must be positive");
    require(geom.spacing_factor > 0, "geometry: spacing_factor must be positive");
}

void validate(const DriveConfig& drive) {
    require(drive.rabi_single >= 0, "drive: rabi_single must be >= 0");
    require(drive.purcell > 0, "drive: purcell must be positive");
}

double mean_radius_um(const ExcitonLevel& level, const MaterialConstants& mat) {
    validate(level);
    validate(mat);
    const double n = level.n;
    const double l = level.l;
    return 0.5 * mat.bohr_radius_nm * (3.0 * n * n - l * (l + 1.0)) * 1e-3; // nm -> um
}

double rydberg_energy_ev(const ExcitonLevel& level, const MaterialConstants& mat) {
    validate(level);
    validate(mat);
    const double neff = static_cast<double>(level.n) - level.delta_l;
    return mat.bandgap_ev - mat.rydberg_mev * 1e-3 / (neff * neff); // meV -> eV
}

double radiative_linewidth_ghz(int n, const MaterialConstants& mat, double purcell) {
    require(n >= 1, "linewidth: n must be >= 1");
    require(purcell > 0, "linewidth: purcell must be positive");
    validate(mat);
    return purcell * mat.linewidth_thz * 1e3 / ipow(n, 3); // THz -> GHz
}

double blockade_volume_um3(int n, const MaterialConstants& mat) {
    require(n >= 1, "blockade volume: n must be >= 1");
    validate(mat);
    return mat.blockade_coeff_um3 * ipow(n, 7);
}

double c3_coefficient(int n, const MaterialConstants& mat) {
    return c3_from_volume(blockade_volume_um3(n, mat), n, mat);
}

double c3_from_volume(double volume_um3, int n, const MaterialConstants& mat) {
    require(volume_um3 > 0, "C3: blockade volume must be positive");
    const double half_linewidth = radiative_linewidth_ghz(n, mat) / 2.0;
    return 3.0 / (4.0 * std::numbers::pi) * volume_um3 * half_linewidth;
}

double collective_rabi_ghz(double rabi_single_ghz, int n_sites) {
    require(rabi_single_ghz >= 0, "collective Rabi: single-site Rabi must be >= 0");
    require(n_sites >= 1, "collective Rabi: N must be >= 1");
    return std::sqrt(static_cast<double>(n_sites)) * rabi_single_ghz;
}

double blockade_radius_um(double collective_rabi_ghz, double c3_ghz_um3) {
    require(collective_rabi_ghz > 0, "blockade radius: drive must be nonzero");
    require(c3_ghz_um3 > 0, "blockade radius: C3 must be positive");
    return std::cbrt(c3_ghz_um3 / collective_rabi_ghz);
}

double rabi_from_intensity_ghz(double intensity_uw_mm2, int n) {
    require(intensity_uw_mm2 >= 0, "rabi_from_intensity: intensity must be >= 0");
    require(n >= 1, "rabi_from_intensity: n must be >= 1");
    // calibration point: 9 GHz at 4 uW/mm^2 for n = 24; Omega ~ d_n ~ n^(-3/2)
    return 9.0 * std::sqrt(intensity_uw_mm2 / 4.0) * std::pow(n / 24.0, -1.5);
}

SiteLattice site_lattice(const CrystalGeometry& geom, const ExcitonLevel& level,
                         const MaterialConstants& mat) {
    validate(geom);
    const double pitch = geom.spacing_factor * mean_radius_um(level, mat);

    SiteLattice lattice;
    lattice.pitch = pitch;
    lattice.sites_per_axis = std::max(1, static_cast<int>(std::floor(geom.side / pitch)));

    const int m = lattice.sites_per_axis;
    lattice.positions.reserve(static_cast<std::size_t>(m) * m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                lattice.positions.push_back({i * pitch, j * pitch, k * pitch});
    return lattice;
}

} // namespace rydblock
