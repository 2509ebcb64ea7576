#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rydblock/emit.hpp"
#include "rydblock/emitter.hpp"
#include "rydblock/errors.hpp"
#include "rydblock/sweep.hpp"

namespace py = pybind11;
using namespace rydblock;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rydberg-exciton blockade single-photon source simulator";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<NumericError>(m, "NumericError");
    py::register_exception<InfeasibleError>(m, "InfeasibleError");

    py::class_<MaterialConstants>(m, "MaterialConstants")
        .def(py::init<>())
        .def_readwrite("bohr_radius_nm", &MaterialConstants::bohr_radius_nm)
        .def_readwrite("rydberg_mev", &MaterialConstants::rydberg_mev)
        .def_readwrite("bandgap_ev", &MaterialConstants::bandgap_ev)
        .def_readwrite("defect_p", &MaterialConstants::defect_p)
        .def_readwrite("linewidth_thz", &MaterialConstants::linewidth_thz)
        .def_readwrite("blockade_coeff_um3", &MaterialConstants::blockade_coeff_um3)
        .def_readwrite("dielectric", &MaterialConstants::dielectric);

    py::class_<ExcitonLevel>(m, "ExcitonLevel")
        .def(py::init<>())
        .def(py::init([](int n, int l, double delta_l) {
                 return ExcitonLevel{n, l, delta_l};
             }),
             py::arg("n"), py::arg("l") = 1, py::arg("delta_l") = 0.23)
        .def_readwrite("n", &ExcitonLevel::n)
        .def_readwrite("l", &ExcitonLevel::l)
        .def_readwrite("delta_l", &ExcitonLevel::delta_l);

    py::class_<CrystalGeometry>(m, "CrystalGeometry")
        .def(py::init<>())
        .def(py::init([](double side, double spacing_factor) {
                 return CrystalGeometry{side, spacing_factor};
             }),
             py::arg("side"), py::arg("spacing_factor") = 2.0)
        .def_readwrite("side", &CrystalGeometry::side)
        .def_readwrite("spacing_factor", &CrystalGeometry::spacing_factor);

    py::class_<DriveConfig>(m, "DriveConfig")
        .def(py::init<>())
        .def(py::init([](double rabi_single, double detuning, double purcell) {
                 return DriveConfig{rabi_single, detuning, purcell};
             }),
             py::arg("rabi_single"), py::arg("detuning") = 0.0, py::arg("purcell") = 1.0)
        .def_readwrite("rabi_single", &DriveConfig::rabi_single)
        .def_readwrite("detuning", &DriveConfig::detuning)
        .def_readwrite("purcell", &DriveConfig::purcell);

    py::class_<SiteLattice>(m, "SiteLattice")
        .def_readonly("positions", &SiteLattice::positions)
        .def_readonly("pitch", &SiteLattice::pitch)
        .def_readonly("sites_per_axis", &SiteLattice::sites_per_axis)
        .def("__len__", &SiteLattice::size);

    py::enum_<PairVariant>(m, "PairVariant")
        .value("eq8", PairVariant::eq8)
        .value("eq7", PairVariant::eq7);

    py::enum_<C3Source>(m, "C3Source")
        .value("formula", C3Source::formula)
        .value("observed", C3Source::observed);

    py::class_<ModelOptions>(m, "ModelOptions")
        .def(py::init<>())
        .def_readwrite("variant", &ModelOptions::variant)
        .def_readwrite("c3_source", &ModelOptions::c3_source)
        .def_readwrite("observed_volume_um3", &ModelOptions::observed_volume_um3);

    py::class_<EmitterParams>(m, "EmitterParams")
        .def(py::init<>())
        .def(py::init([](double omega_c, double gamma, double detuning) {
                 return EmitterParams{omega_c, gamma, detuning};
             }),
             py::arg("omega_c"), py::arg("gamma"), py::arg("detuning") = 0.0)
        .def_readwrite("omega_c", &EmitterParams::omega_c)
        .def_readwrite("gamma", &EmitterParams::gamma)
        .def_readwrite("detuning", &EmitterParams::detuning);

    py::class_<G2Curve>(m, "G2Curve")
        .def_readonly("tau", &G2Curve::tau)
        .def_readonly("value", &G2Curve::value);

    py::class_<SpectrumPeak>(m, "SpectrumPeak")
        .def_readonly("center", &SpectrumPeak::center)
        .def_readonly("fwhm", &SpectrumPeak::fwhm)
        .def_readonly("height", &SpectrumPeak::height);

    py::class_<SpectrumResult>(m, "SpectrumResult")
        .def_readonly("freq", &SpectrumResult::freq)
        .def_readonly("incoherent", &SpectrumResult::incoherent)
        .def_readonly("coherent_weight", &SpectrumResult::coherent_weight)
        .def_readonly("peaks", &SpectrumResult::peaks);

    py::class_<PairTerm>(m, "PairTerm")
        .def_readonly("site_i", &PairTerm::site_i)
        .def_readonly("site_j", &PairTerm::site_j)
        .def_readonly("distance", &PairTerm::distance)
        .def_readonly("v_ij", &PairTerm::v_ij)
        .def_readonly("rho2", &PairTerm::rho2);

    py::class_<BlockadeResult>(m, "BlockadeResult")
        .def_readonly("n_sites", &BlockadeResult::n_sites)
        .def_readonly("collective_rabi", &BlockadeResult::collective_rabi)
        .def_readonly("rho_ee", &BlockadeResult::rho_ee)
        .def_readonly("pair_terms", &BlockadeResult::pair_terms)
        .def_readonly("p_rr", &BlockadeResult::p_rr)
        .def_readonly("g2_zero", &BlockadeResult::g2_zero)
        .def_readonly("rate", &BlockadeResult::rate);

    py::enum_<SweepSpec::Variable>(m, "SweepVariable")
        .value("drive_ratio", SweepSpec::Variable::drive_ratio)
        .value("side", SweepSpec::Variable::side)
        .value("n", SweepSpec::Variable::n);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("variable", &SweepSpec::variable)
        .def_readwrite("values", &SweepSpec::values);

    py::class_<Params>(m, "Params")
        .def(py::init<>())
        .def_readwrite("material", &Params::material)
        .def_readwrite("level", &Params::level)
        .def_readwrite("geometry", &Params::geometry)
        .def_readwrite("drive", &Params::drive)
        .def_readwrite("model", &Params::model)
        .def_readwrite("sweep", &Params::sweep);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("sweep_value", &SweepRow::sweep_value)
        .def_readonly("n_sites", &SweepRow::n_sites)
        .def_readonly("omega_collective", &SweepRow::omega_collective)
        .def_readonly("ratio", &SweepRow::ratio)
        .def_readonly("rho_ee", &SweepRow::rho_ee)
        .def_readonly("rate", &SweepRow::rate)
        .def_readonly("p_rr", &SweepRow::p_rr)
        .def_readonly("g2_zero", &SweepRow::g2_zero)
        .def_readonly("error", &SweepRow::error);

    py::class_<DerivedPoint>(m, "DerivedPoint")
        .def_readonly("n_sites", &DerivedPoint::n_sites)
        .def_readonly("omega_collective", &DerivedPoint::omega_collective)
        .def_readonly("gamma", &DerivedPoint::gamma)
        .def_readonly("ratio", &DerivedPoint::ratio)
        .def_readonly("rho_ee", &DerivedPoint::rho_ee)
        .def_readonly("rate", &DerivedPoint::rate)
        .def_readonly("p_rr", &DerivedPoint::p_rr)
        .def_readonly("g2_zero", &DerivedPoint::g2_zero)
        .def_readonly("c3", &DerivedPoint::c3)
        .def_readonly("pitch", &DerivedPoint::pitch);

    py::class_<OperatingPoint>(m, "OperatingPoint")
        .def_readonly("omega_single", &OperatingPoint::omega_single)
        .def_readonly("side", &OperatingPoint::side)
        .def_readonly("n", &OperatingPoint::n)
        .def_readonly("purcell", &OperatingPoint::purcell)
        .def_readonly("derived", &OperatingPoint::derived);

    py::class_<SensitivityRow>(m, "SensitivityRow")
        .def_readonly("variant", &SensitivityRow::variant)
        .def_readonly("c3_source", &SensitivityRow::c3_source)
        .def_readonly("c3", &SensitivityRow::c3)
        .def_readonly("p_rr", &SensitivityRow::p_rr)
        .def_readonly("g2_zero", &SensitivityRow::g2_zero);

    py::class_<OptimizeOptions>(m, "OptimizeOptions")
        .def(py::init<>())
        .def_readwrite("g2_max", &OptimizeOptions::g2_max)
        .def_readwrite("omega_min", &OptimizeOptions::omega_min)
        .def_readwrite("omega_max", &OptimizeOptions::omega_max)
        .def_readwrite("side_min", &OptimizeOptions::side_min)
        .def_readwrite("side_max", &OptimizeOptions::side_max)
        .def_readwrite("omega_points", &OptimizeOptions::omega_points)
        .def_readwrite("side_points", &OptimizeOptions::side_points);

    // exciton properties
    m.def("mean_radius_um", &mean_radius_um, py::arg("level"), py::arg("mat"));
    m.def("rydberg_energy_ev", &rydberg_energy_ev, py::arg("level"), py::arg("mat"));
    m.def("radiative_linewidth_ghz", &radiative_linewidth_ghz, py::arg("n"), py::arg("mat"),
          py::arg("purcell") = 1.0);
    m.def("blockade_volume_um3", &blockade_volume_um3, py::arg("n"), py::arg("mat"));
    m.def("c3_coefficient", &c3_coefficient, py::arg("n"), py::arg("mat"));
    m.def("c3_from_volume", &c3_from_volume, py::arg("volume_um3"), py::arg("n"),
          py::arg("mat"));
    m.def("collective_rabi_ghz", &collective_rabi_ghz, py::arg("rabi_single_ghz"),
          py::arg("n_sites"));
    m.def("blockade_radius_um", &blockade_radius_um, py::arg("collective_rabi_ghz"),
          py::arg("c3_ghz_um3"));
    m.def("rabi_from_intensity_ghz", &rabi_from_intensity_ghz, py::arg("intensity_uw_mm2"),
          py::arg("n"));
    m.def("site_lattice", &site_lattice, py::arg("geom"), py::arg("level"), py::arg("mat"));

    // emitter dynamics
    m.def("steady_population", &steady_population, py::arg("params"));
    m.def("fwhm_ghz", &fwhm_ghz, py::arg("params"));
    m.def("photon_rate_ghz", &photon_rate_ghz, py::arg("params"));
    m.def(
        "g2_closed_form",
        [](const EmitterParams& p, const std::vector<double>& tau) {
            return g2_closed_form(p, tau);
        },
        py::arg("params"), py::arg("tau_grid"));
    m.def(
        "g2_numeric",
        [](const EmitterParams& p, const std::vector<double>& tau) {
            return g2_numeric(p, tau);
        },
        py::arg("params"), py::arg("tau_grid"));
    m.def(
        "emission_spectrum",
        [](const EmitterParams& p, const std::vector<double>& freq) {
            return emission_spectrum(p, freq);
        },
        py::arg("params"), py::arg("freq_grid"));

    // blockade
    m.def("pair_interaction_ghz", &pair_interaction_ghz, py::arg("distance_um"),
          py::arg("c3_ghz_um3"));
    m.def("pair_double_excitation_eq8", &pair_double_excitation_eq8, py::arg("omega_single"),
          py::arg("n_sites"), py::arg("gamma"), py::arg("v_ij"));
    m.def("pair_double_excitation_eq7", &pair_double_excitation_eq7, py::arg("omega_single"),
          py::arg("n_sites"), py::arg("gamma"), py::arg("v_ij"));
    m.def("ladder_oracle", &ladder_oracle, py::arg("omega_single"), py::arg("n_sites"),
          py::arg("gamma"), py::arg("v_ij"));
    m.def("resolve_c3", &resolve_c3, py::arg("model"), py::arg("n"), py::arg("mat"));
    m.def("blockade_report", &blockade_report, py::arg("geom"), py::arg("level"),
          py::arg("drive"), py::arg("mat"), py::arg("model"));
    m.def(
        "blockade_report_for",
        [](const Params& p) {
            return blockade_report(p.geometry, p.level, p.drive, p.material, p.model);
        },
        py::arg("params"));

    // config, sweeps, optimization
    m.def("default_params", &default_params);
    m.def(
        "parse_config",
        [](const std::string& text, const std::vector<std::string>& overrides) {
            return parse_config(text, overrides);
        },
        py::arg("text"), py::arg("overrides") = std::vector<std::string>{});
    m.def("run_sweep", &run_sweep, py::arg("params"));
    m.def("operating_point", &operating_point, py::arg("params"));
    m.def("g2_sensitivity", &g2_sensitivity, py::arg("params"));
    m.def("optimize_point", &optimize_point, py::arg("params"), py::arg("opts"));
    m.def(
        "sweep_csv",
        [](const std::vector<SweepRow>& rows) { return to_csv(rows); },
        py::arg("rows"));
    m.def("format_double", &format_double, py::arg("value"));
}
