#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rydblock/emit.hpp"
#include "rydblock/emitter.hpp"
#include "rydblock/errors.hpp"
#include "rydblock/sweep.hpp"

namespace {

using namespace rydblock;

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string output_path;
    std::string format;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-c,--config", opts.config_path,
                    "Config file, flat 'section.key = value' lines");
    cmd->add_option("--set", opts.overrides,
                    "Override any config key, e.g. --set drive.purcell=1");
    cmd->add_option("-o,--output", opts.output_path, "Output path ('-' writes to stdout)");
    cmd->add_option("--format", opts.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

Params load_params(const CommonOpts& opts) {
    std::string text;
    if (!opts.config_path.empty()) {
        std::ifstream file(opts.config_path, std::ios::binary);
        if (!file) throw ConfigError("cannot open config file '" + opts.config_path + "'");
        std::ostringstream buffer;
        buffer << file.rdbuf();
        text = buffer.str();
    }
    Params params = parse_config(text, opts.overrides);
    if (!opts.output_path.empty()) params.output.path = opts.output_path;
    if (opts.format == "csv") params.output.format = OutputOptions::Format::csv;
    if (opts.format == "json") params.output.format = OutputOptions::Format::json;
    return params;
}

bool json_selected(const Params& params) {
    return params.output.format == OutputOptions::Format::json;
}

EmitterParams emitter_from(const Params& params) {
    const int n_sites = site_lattice(params.geometry, params.level, params.material).size();
    const double gamma =
        radiative_linewidth_ghz(params.level.n, params.material, params.drive.purcell);
    return {collective_rabi_ghz(params.drive.rabi_single, n_sites), gamma,
            params.drive.detuning};
}

std::string key_value_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::string out = "quantity,value\n";
    for (const auto& [key, value] : rows)
        out += csv_escape(key) + "," + csv_escape(value) + "\n";
    return out;
}

int run_props(const CommonOpts& opts) {
    const Params p = load_params(opts);
    const SiteLattice lattice = site_lattice(p.geometry, p.level, p.material);
    const double gamma_natural = radiative_linewidth_ghz(p.level.n, p.material);
    const double gamma_eff = radiative_linewidth_ghz(p.level.n, p.material, p.drive.purcell);
    const double omega_c = collective_rabi_ghz(p.drive.rabi_single, lattice.size());
    const double c3 = resolve_c3(p.model, p.level.n, p.material);

    std::vector<std::pair<std::string, std::string>> rows = {
        {"mean_radius_um", format_double(mean_radius_um(p.level, p.material))},
        {"energy_eV", format_double(rydberg_energy_ev(p.level, p.material))},
        {"linewidth_natural_GHz", format_double(gamma_natural)},
        {"linewidth_effective_GHz", format_double(gamma_eff)},
        {"blockade_volume_um3", format_double(blockade_volume_um3(p.level.n, p.material))},
        {"c3_GHz_um3", format_double(c3)},
        {"c3_formula_GHz_um3", format_double(c3_coefficient(p.level.n, p.material))},
        {"c3_observed_GHz_um3",
         format_double(c3_from_volume(p.model.observed_volume_um3, p.level.n, p.material))},
        {"lattice_pitch_um", format_double(lattice.pitch)},
        {"sites_per_axis", std::to_string(lattice.sites_per_axis)},
        {"N", std::to_string(lattice.size())},
        {"omega_collective_GHz", format_double(omega_c)},
        {"ratio", format_double(omega_c / gamma_eff)},
        {"blockade_radius_um",
         omega_c > 0 ? format_double(blockade_radius_um(omega_c, c3)) : "undefined"},
    };

    if (json_selected(p)) {
        Json out;
        for (const auto& [key, value] : rows) out[key] = value;
        write_output(out.dump(2) + "\n", p.output.path);
    } else {
        write_output(key_value_csv(rows), p.output.path);
    }
    return 0;
}

int run_steady(const CommonOpts& opts) {
    const Params p = load_params(opts);
    const EmitterParams emitter = emitter_from(p);
    std::vector<std::pair<std::string, std::string>> rows = {
        {"omega_collective_GHz", format_double(emitter.omega_c)},
        {"gamma_GHz", format_double(emitter.gamma)},
        {"detuning_GHz", format_double(emitter.detuning)},
        {"ratio", format_double(emitter.omega_c / emitter.gamma)},
        {"rho_ee", format_double(steady_population(emitter))},
        {"fwhm_GHz", format_double(fwhm_ghz(emitter))},
        {"rate_GHz", format_double(photon_rate_ghz(emitter))},
    };
    if (json_selected(p)) {
        Json out;
        for (const auto& [key, value] : rows) out[key] = value;
        write_output(out.dump(2) + "\n", p.output.path);
    } else {
        write_output(key_value_csv(rows), p.output.path);
    }
    return 0;
}

int run_g2(const CommonOpts& opts, double tau_max, int points, bool with_numeric) {
    const Params p = load_params(opts);
    EmitterParams emitter = emitter_from(p);
    emitter.detuning = 0.0; // closed form is resonant; CLI curve follows it
    if (tau_max <= 0) tau_max = 10.0 / emitter.gamma;
    std::vector<double> tau(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        tau[static_cast<std::size_t>(i)] = tau_max * i / static_cast<double>(points - 1);

    const G2Curve closed = g2_closed_form(emitter, tau);
    G2Curve numeric;
    if (with_numeric) numeric = g2_numeric(emitter, tau);

    if (json_selected(p)) {
        Json out;
        out["tau_ns"] = closed.tau;
        out["g2"] = closed.value;
        if (with_numeric) out["g2_numeric"] = numeric.value;
        write_output(out.dump(2) + "\n", p.output.path);
    } else {
        std::string out = with_numeric ? "tau_ns,g2,g2_numeric\n" : "tau_ns,g2\n";
        for (std::size_t i = 0; i < closed.tau.size(); ++i) {
            out += format_double(closed.tau[i]) + "," + format_double(closed.value[i]);
            if (with_numeric) out += "," + format_double(numeric.value[i]);
            out += "\n";
        }
        write_output(out, p.output.path);
    }
    return 0;
}

int run_spectrum(const CommonOpts& opts, double half_span, int points) {
    const Params p = load_params(opts);
    EmitterParams emitter = emitter_from(p);
    emitter.detuning = 0.0;
    if (half_span <= 0) half_span = 1.5 * emitter.omega_c + 10.0 * emitter.gamma;
    std::vector<double> freq(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        freq[static_cast<std::size_t>(i)] =
            -half_span + 2.0 * half_span * i / static_cast<double>(points - 1);

    const SpectrumResult spec = emission_spectrum(emitter, freq);

    if (json_selected(p)) {
        Json peaks = Json::array();
        for (const auto& peak : spec.peaks) {
            Json item;
            item["center_GHz"] = peak.center;
            item["fwhm_GHz"] = peak.fwhm;
            item["height"] = peak.height;
            peaks.push_back(std::move(item));
        }
        Json out;
        out["coherent_weight"] = spec.coherent_weight;
        out["peaks"] = std::move(peaks);
        out["freq_GHz"] = spec.freq;
        out["incoherent_density"] = spec.incoherent;
        write_output(out.dump(2) + "\n", p.output.path);
    } else {
        std::string out = "freq_GHz,incoherent_density\n";
        for (std::size_t i = 0; i < spec.freq.size(); ++i)
            out += format_double(spec.freq[i]) + "," + format_double(spec.incoherent[i]) + "\n";
        write_output(out, p.output.path);
        std::cerr << "coherent_weight " << format_double(spec.coherent_weight) << "; peaks:";
        for (const auto& peak : spec.peaks)
            std::cerr << " (center " << format_double(peak.center) << " GHz, fwhm "
                      << format_double(peak.fwhm) << " GHz)";
        std::cerr << "\n";
    }
    return 0;
}

int run_blockade(const CommonOpts& opts) {
    const Params p = load_params(opts);
    const BlockadeResult result =
        blockade_report(p.geometry, p.level, p.drive, p.material, p.model);

    if (json_selected(p)) {
        Json pairs = Json::array();
        for (const auto& term : result.pair_terms) {
            Json item;
            item["site_i"] = term.site_i;
            item["site_j"] = term.site_j;
            item["distance_um"] = term.distance;
            item["v_ij_GHz"] = term.v_ij;
            item["rho2"] = term.rho2;
            pairs.push_back(std::move(item));
        }
        Json out;
        out["N"] = result.n_sites;
        out["omega_collective_GHz"] = result.collective_rabi;
        out["rho_ee"] = result.rho_ee;
        out["P_rr"] = result.p_rr;
        out["g2_zero"] = std::isnan(result.g2_zero) ? Json(nullptr) : Json(result.g2_zero);
        out["rate_GHz"] = result.rate;
        out["pairs"] = std::move(pairs);
        write_output(out.dump(2) + "\n", p.output.path);
    } else {
        std::string out = "site_i,site_j,distance_um,v_ij_GHz,rho2\n";
        for (const auto& term : result.pair_terms) {
            out += std::to_string(term.site_i) + "," + std::to_string(term.site_j) + "," +
                   format_double(term.distance) + "," + format_double(term.v_ij) + "," +
                   format_double(term.rho2) + "\n";
        }
        write_output(out, p.output.path);
        std::cerr << "N " << result.n_sites << "; P_rr " << format_double(result.p_rr)
                  << "; g2(0) " << format_double(result.g2_zero) << "; rate "
                  << format_double(result.rate) << " GHz\n";
    }
    return 0;
}

int run_sweep_cmd(const CommonOpts& opts) {
    const Params p = load_params(opts);
    const auto rows = run_sweep(p);
    if (json_selected(p))
        write_output(to_json(rows).dump(2) + "\n", p.output.path);
    else
        write_output(to_csv(rows), p.output.path);
    return 0;
}

int run_report(const CommonOpts& opts) {
    const Params p = load_params(opts);
    const OperatingPoint point = operating_point(p);
    const auto sensitivity = g2_sensitivity(p);
    if (json_selected(p))
        write_output(report_json(p, point, sensitivity).dump(2) + "\n", p.output.path);
    else
        write_output(report_text(p, point, sensitivity), p.output.path);
    return 0;
}

int run_optimize(const CommonOpts& opts, const OptimizeOptions& optimize) {
    const Params p = load_params(opts);
    const OperatingPoint best = optimize_point(p, optimize);

    Params at_best = p;
    at_best.drive.rabi_single = best.omega_single;
    at_best.geometry.side = best.side;
    const auto sensitivity = g2_sensitivity(at_best);
    if (json_selected(p))
        write_output(report_json(at_best, best, sensitivity).dump(2) + "\n", p.output.path);
    else
        write_output(report_text(at_best, best, sensitivity), p.output.path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rydberg-exciton blockade single-photon source simulator"};
    app.require_subcommand(1);

    CommonOpts props_opts;
    add_common(app.add_subcommand("props", "Exciton properties and calibration quantities"),
               props_opts);

    CommonOpts steady_opts;
    add_common(app.add_subcommand("steady", "Driven two-level steady state"), steady_opts);

    CommonOpts g2_opts;
    double g2_tau_max = 0.0;
    int g2_points = 201;
    bool g2_with_numeric = false;
    auto* g2_cmd = app.add_subcommand("g2", "Second-order correlation g2(tau)");
    add_common(g2_cmd, g2_opts);
    g2_cmd->add_option("--tau-max", g2_tau_max, "Largest delay in ns (default 10/gamma)");
    g2_cmd->add_option("--points", g2_points, "Number of delay samples")
        ->check(CLI::Range(2, 1000000));
    g2_cmd->add_flag("--numeric", g2_with_numeric,
                     "Add the master-equation column next to the closed form");

    CommonOpts spectrum_opts;
    double spectrum_half_span = 0.0;
    int spectrum_points = 801;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Emission spectrum and peak fits");
    add_common(spectrum_cmd, spectrum_opts);
    spectrum_cmd->add_option("--half-span", spectrum_half_span,
                             "Half-width of the frequency window in GHz (default auto)");
    spectrum_cmd->add_option("--points", spectrum_points, "Number of frequency samples")
        ->check(CLI::Range(3, 1000000));

    CommonOpts blockade_opts;
    add_common(app.add_subcommand("blockade", "Pairwise double-excitation table and totals"),
               blockade_opts);

    CommonOpts sweep_opts;
    add_common(app.add_subcommand("sweep", "Parameter sweep table"), sweep_opts);

    CommonOpts report_opts;
    add_common(app.add_subcommand("report", "Operating-point report with reference targets"),
               report_opts);

    CommonOpts optimize_opts;
    OptimizeOptions optimize;
    auto* optimize_cmd =
        app.add_subcommand("optimize", "Grid search maximizing rate subject to g2(0) <= bound");
    add_common(optimize_cmd, optimize_opts);
    optimize_cmd->add_option("--g2-max", optimize.g2_max, "Feasibility bound on g2(0)");
    optimize_cmd->add_option("--omega-min", optimize.omega_min, "Lower Rabi bound, GHz");
    optimize_cmd->add_option("--omega-max", optimize.omega_max, "Upper Rabi bound, GHz");
    optimize_cmd->add_option("--side-min", optimize.side_min, "Lower crystal side, um");
    optimize_cmd->add_option("--side-max", optimize.side_max, "Upper crystal side, um");
    optimize_cmd->add_option("--omega-points", optimize.omega_points, "Rabi grid size")
        ->check(CLI::Range(1, 100000));
    optimize_cmd->add_option("--side-points", optimize.side_points, "Side grid size")
        ->check(CLI::Range(1, 100000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand("props")) return run_props(props_opts);
        if (app.got_subcommand("steady")) return run_steady(steady_opts);
        if (app.got_subcommand("g2"))
            return run_g2(g2_opts, g2_tau_max, g2_points, g2_with_numeric);
        if (app.got_subcommand("spectrum"))
            return run_spectrum(spectrum_opts, spectrum_half_span, spectrum_points);
        if (app.got_subcommand("blockade")) return run_blockade(blockade_opts);
        if (app.got_subcommand("sweep")) return run_sweep_cmd(sweep_opts);
        if (app.got_subcommand("report")) return run_report(report_opts);
        if (app.got_subcommand("optimize")) return run_optimize(optimize_opts, optimize);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
