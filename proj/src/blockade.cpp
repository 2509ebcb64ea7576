#include "rydblock/blockade.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rydblock/emitter.hpp"
#include "rydblock/lindblad.hpp"

namespace rydblock {

namespace {

void check_pair_args(int n_sites, double gamma) {
    if (n_sites < 2) throw std::invalid_argument("pair term: n_sites must be >= 2");
    if (!(gamma > 0)) throw std::invalid_argument("pair term: gamma must be positive");
}

// X = N Omega^2 / Gamma^2, the collective saturation parameter.
double saturation_x(double omega_single, int n_sites, double gamma) {
    return n_sites * omega_single * omega_single / (gamma * gamma);
}

// Y = (Omega^2 / N) / (V^2 + Gamma^2/4), the pair excitation parameter.
double pair_y(double omega_single, int n_sites, double gamma, double v_ij) {
    return (omega_single * omega_single / n_sites) /
           (v_ij * v_ij + gamma * gamma / 4.0);
}

} // namespace

void validate(const ModelOptions& model) {
    if (!(model.observed_volume_um3 > 0))
        throw std::invalid_argument("model: observed_volume must be positive");
}

double resolve_c3(const ModelOptions& model, int n, const MaterialConstants& mat) {
    validate(model);
    if (model.c3_source == C3Source::observed)
        return c3_from_volume(model.observed_volume_um3, n, mat);
    return c3_coefficient(n, mat);
}

double pair_interaction_ghz(double distance_um, double c3_ghz_um3) {
    if (!(distance_um > 0))
        throw std::invalid_argument("pair interaction: distance must be positive");
    return c3_ghz_um3 / (distance_um * distance_um * distance_um);
}

double pair_double_excitation_eq8(double omega_single, int n_sites, double gamma,
                                  double v_ij) {
    check_pair_args(n_sites, gamma);
    const double x = saturation_x(omega_single, n_sites, gamma);
    const double y = pair_y(omega_single, n_sites, gamma, v_ij);
    return x / (1.0 + 2.0 * x) * y / (1.0 + 2.0 * y);
}

double pair_double_excitation_eq7(double omega_single, int n_sites, double gamma,
                                  double v_ij) {
    check_pair_args(n_sites, gamma);
    const double x = saturation_x(omega_single, n_sites, gamma);
    const double y = pair_y(omega_single, n_sites, gamma, v_ij);
    // stationary rho_22 of the driven pair cascade given the collective
    // single-excitation population rho_11 = X/(1+2X)
    return x / (1.0 + 2.0 * x) * (y / 4.0) / (1.0 + y / 4.0);
}

double ladder_oracle(double omega_single, int n_sites, double gamma, double v_ij) {
    check_pair_args(n_sites, gamma);
    if (!(omega_single >= 0))
        throw std::invalid_argument("ladder: omega must be >= 0");

    const double root_n = std::sqrt(static_cast<double>(n_sites));
    const double g_lower = root_n * omega_single / 2.0;
    const double g_upper = omega_single / (2.0 * root_n);

    Matrix h = Matrix::Zero(3, 3);
    h(0, 1) = g_lower;
    h(1, 0) = g_lower;
    h(1, 2) = g_upper;
    h(2, 1) = g_upper;
    h(2, 2) = v_ij;

    Matrix down10 = Matrix::Zero(3, 3);
    down10(0, 1) = 1.0;
    Matrix down21 = Matrix::Zero(3, 3);
    down21(1, 2) = 1.0;

    const LindbladModel model{std::move(h), {{down10, gamma}, {down21, gamma}}};
    return steady_state(model).population(2);
}

BlockadeResult blockade_report(const CrystalGeometry& geom, const ExcitonLevel& level,
                               const DriveConfig& drive, const MaterialConstants& mat,
                               const ModelOptions& model) {
    validate(geom);
    validate(level);
    validate(drive);
    validate(mat);
    validate(model);

    const SiteLattice lattice = site_lattice(geom, level, mat);
    const int n_sites = lattice.size();
    const double gamma = radiative_linewidth_ghz(level.n, mat, drive.purcell);
    const double omega_c = collective_rabi_ghz(drive.rabi_single, n_sites);
    const double c3 = resolve_c3(model, level.n, mat);

    BlockadeResult result;
    result.n_sites = n_sites;
    result.collective_rabi = omega_c;
    // resonant drive throughout this module
    result.rho_ee = steady_population({omega_c, gamma, 0.0});
    result.rate = result.rho_ee * gamma;

    if (n_sites >= 2) {
        result.pair_terms.reserve(static_cast<std::size_t>(n_sites) * (n_sites - 1) / 2);
        for (int i = 0; i < n_sites; ++i) {
            for (int j = i + 1; j < n_sites; ++j) {
                const auto& a = lattice.positions[static_cast<std::size_t>(i)];
                const auto& b = lattice.positions[static_cast<std::size_t>(j)];
                const double dx = a[0] - b[0];
                const double dy = a[1] - b[1];
                const double dz = a[2] - b[2];
                const double distance = std::sqrt(dx * dx + dy * dy + dz * dz);
                const double v_ij = pair_interaction_ghz(distance, c3);
                const double rho2 =
                    model.variant == PairVariant::eq8
                        ? pair_double_excitation_eq8(drive.rabi_single, n_sites, gamma, v_ij)
                        : pair_double_excitation_eq7(drive.rabi_single, n_sites, gamma, v_ij);
                result.pair_terms.push_back({i, j, distance, v_ij, rho2});
                result.p_rr += rho2;
            }
        }
    }

    result.g2_zero = result.rho_ee > 0
                         ? 0.5 * result.p_rr / result.rho_ee
                         : std::numeric_limits<double>::quiet_NaN();
    return result;
}

} // namespace rydblock
