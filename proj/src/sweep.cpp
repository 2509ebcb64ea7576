#include "rydblock/sweep.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rydblock/emitter.hpp"
#include "rydblock/errors.hpp"

namespace rydblock {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

SweepRow row_from_report(double sweep_value, const BlockadeResult& report, double gamma) {
    SweepRow row;
    row.sweep_value = sweep_value;
    row.n_sites = report.n_sites;
    row.omega_collective = report.collective_rabi;
    row.ratio = report.collective_rabi / gamma;
    row.rho_ee = report.rho_ee;
    row.rate = report.rate;
    row.p_rr = report.p_rr;
    row.g2_zero = report.g2_zero;
    return row;
}

Params apply_sweep_value(const Params& params, double value) {
    Params point = params;
    switch (params.sweep.variable) {
        case SweepSpec::Variable::drive_ratio: {
            if (value < 0) throw std::invalid_argument("drive_ratio must be >= 0");
            const int n_sites = site_lattice(point.geometry, point.level, point.material).size();
            const double gamma =
                radiative_linewidth_ghz(point.level.n, point.material, point.drive.purcell);
            point.drive.rabi_single =
                value * gamma / std::sqrt(static_cast<double>(n_sites));
            break;
        }
        case SweepSpec::Variable::side:
            point.geometry.side = value;
            break;
        case SweepSpec::Variable::n: {
            const double rounded = std::round(value);
            if (std::abs(value - rounded) > 1e-9 || rounded < 1)
                throw std::invalid_argument("sweep over n requires integer values >= 1");
            point.level.n = static_cast<int>(rounded);
            break;
        }
    }
    return point;
}

} // namespace

std::vector<SweepRow> run_sweep(const Params& params) {
    std::vector<SweepRow> rows;
    rows.reserve(params.sweep.values.size());
    for (double value : params.sweep.values) {
        try {
            const Params point = apply_sweep_value(params, value);
            const BlockadeResult report = blockade_report(
                point.geometry, point.level, point.drive, point.material, point.model);
            const double gamma =
                radiative_linewidth_ghz(point.level.n, point.material, point.drive.purcell);
            rows.push_back(row_from_report(value, report, gamma));
        } catch (const std::exception& e) {
            SweepRow row;
            row.sweep_value = value;
            row.n_sites = 0;
            row.omega_collective = kNan;
            row.ratio = kNan;
            row.rho_ee = kNan;
            row.rate = kNan;
            row.p_rr = kNan;
            row.g2_zero = kNan;
            row.error = e.what();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

OperatingPoint operating_point(const Params& params) {
    const BlockadeResult report = blockade_report(params.geometry, params.level, params.drive,
                                                  params.material, params.model);
    const double gamma =
        radiative_linewidth_ghz(params.level.n, params.material, params.drive.purcell);
    const SiteLattice lattice = site_lattice(params.geometry, params.level, params.material);

    OperatingPoint point;
    point.omega_single = params.drive.rabi_single;
    point.side = params.geometry.side;
    point.n = params.level.n;
    point.purcell = params.drive.purcell;
    point.derived.n_sites = report.n_sites;
    point.derived.omega_collective = report.collective_rabi;
    point.derived.gamma = gamma;
    point.derived.ratio = report.collective_rabi / gamma;
    point.derived.rho_ee = report.rho_ee;
    point.derived.rate = report.rate;
    point.derived.p_rr = report.p_rr;
    point.derived.g2_zero = report.g2_zero;
    point.derived.c3 = resolve_c3(params.model, params.level.n, params.material);
    point.derived.pitch = lattice.pitch;
    return point;
}

std::vector<SensitivityRow> g2_sensitivity(const Params& params) {
    std::vector<SensitivityRow> rows;
    rows.reserve(4);
    for (PairVariant variant : {PairVariant::eq8, PairVariant::eq7}) {
        for (C3Source source : {C3Source::formula, C3Source::observed}) {
            Params combo = params;
            combo.model.variant = variant;
            combo.model.c3_source = source;
            const BlockadeResult report = blockade_report(
                combo.geometry, combo.level, combo.drive, combo.material, combo.model);
            rows.push_back({variant, source,
                            resolve_c3(combo.model, combo.level.n, combo.material),
                            report.p_rr, report.g2_zero});
        }
    }
    return rows;
}

OperatingPoint optimize_point(const Params& params, const OptimizeOptions& opts) {
    if (!(opts.g2_max > 0 && opts.g2_max < 0.5))
        throw std::invalid_argument("optimize: g2_max must lie in (0, 1/2)");
    if (!(opts.omega_min >= 0 && opts.omega_max >= opts.omega_min))
        throw std::invalid_argument("optimize: invalid omega bounds");
    if (!(opts.side_min > 0 && opts.side_max >= opts.side_min))
        throw std::invalid_argument("optimize: invalid side bounds");
    if (opts.omega_points < 1 || opts.side_points < 1)
        throw std::invalid_argument("optimize: grid must have at least one point");

    // the crystal must stay well above the exciton size
    const double side_floor =
        2.0 * params.geometry.spacing_factor * mean_radius_um(params.level, params.material);

    auto grid_value = [](double lo, double hi, int count, int index) {
        if (count == 1) return lo;
        return lo + (hi - lo) * static_cast<double>(index) / static_cast<double>(count - 1);
    };

    bool any_side_ok = false;
    bool found = false;
    double best_rate = -1.0;
    Params best = params;

    for (int iw = 0; iw < opts.omega_points; ++iw) {
        const double omega = grid_value(opts.omega_min, opts.omega_max, opts.omega_points, iw);
        for (int is = 0; is < opts.side_points; ++is) {
            const double side = grid_value(opts.side_min, opts.side_max, opts.side_points, is);
            if (side < side_floor) continue;
            any_side_ok = true;

            Params point = params;
            point.drive.rabi_single = omega;
            point.geometry.side = side;
            const BlockadeResult report = blockade_report(
                point.geometry, point.level, point.drive, point.material, point.model);
            if (!(report.g2_zero <= opts.g2_max)) continue; // NaN g2 is infeasible

            // strict improvement keeps the first (smallest omega, then side) maximizer
            if (report.rate > best_rate) {
                best_rate = report.rate;
                best = point;
                found = true;
            }
        }
    }

    if (!found) {
        if (!any_side_ok)
            throw InfeasibleError(
                "optimize: no feasible point; side bounds lie below the minimum crystal "
                "size 2 * spacing_factor * <r_n>");
        throw InfeasibleError("optimize: no feasible point; the g2 constraint binds "
                              "everywhere on the grid");
    }
    return operating_point(best);
}

} // namespace rydblock
