#include "rydblock/emit.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rydblock {

namespace {

// Design targets for the n = 24 reference operating point.
constexpr double kTargetRateGhz = 2.0;
constexpr double kTargetG2 = 0.007;

Json number_or_null(double value) {
    if (std::isnan(value)) return nullptr;
    return value;
}

void append_row(std::string& out, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& cell : cells) {
        if (!first) out += ',';
        out += csv_escape(cell);
        first = false;
    }
    out += '\n';
}

std::string deviation_note(double achieved, double target) {
    if (std::isnan(achieved)) return "undefined";
    std::ostringstream os;
    const double rel = (achieved - target) / target * 100.0;
    os.setf(std::ios::showpos);
    os.precision(2);
    os << std::fixed << rel << "%";
    return os.str();
}

} // namespace

std::string format_double(double value) {
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string to_csv(std::span<const SweepRow> rows) {
    std::string out = "sweep_value,N,omega_collective_GHz,ratio,rho_ee,rate_GHz,P_rr,g2_zero,error\n";
    for (const auto& row : rows) {
        append_row(out, {format_double(row.sweep_value), std::to_string(row.n_sites),
                         format_double(row.omega_collective), format_double(row.ratio),
                         format_double(row.rho_ee), format_double(row.rate),
                         format_double(row.p_rr), format_double(row.g2_zero), row.error});
    }
    return out;
}

Json to_json(std::span<const SweepRow> rows) {
    Json out = Json::array();
    for (const auto& row : rows) {
        Json item;
        item["sweep_value"] = row.sweep_value;
        item["N"] = row.n_sites;
        item["omega_collective_GHz"] = number_or_null(row.omega_collective);
        item["ratio"] = number_or_null(row.ratio);
        item["rho_ee"] = number_or_null(row.rho_ee);
        item["rate_GHz"] = number_or_null(row.rate);
        item["P_rr"] = number_or_null(row.p_rr);
        item["g2_zero"] = number_or_null(row.g2_zero);
        item["error"] = row.error;
        out.push_back(std::move(item));
    }
    return out;
}

std::string to_csv(std::span<const SensitivityRow> rows) {
    std::string out = "variant,c3_source,C3_GHz_um3,P_rr,g2_zero\n";
    for (const auto& row : rows) {
        append_row(out, {to_string(row.variant), to_string(row.c3_source),
                         format_double(row.c3), format_double(row.p_rr),
                         format_double(row.g2_zero)});
    }
    return out;
}

Json report_json(const Params& params, const OperatingPoint& point,
                 std::span<const SensitivityRow> sensitivity) {
    Json inputs;
    inputs["n"] = point.n;
    inputs["l"] = params.level.l;
    inputs["delta_l"] = params.level.delta_l;
    inputs["side_um"] = point.side;
    inputs["spacing_factor"] = params.geometry.spacing_factor;
    inputs["omega_single_GHz"] = point.omega_single;
    inputs["detuning_GHz"] = params.drive.detuning;
    inputs["purcell"] = point.purcell;
    inputs["variant"] = to_string(params.model.variant);
    inputs["c3_source"] = to_string(params.model.c3_source);
    inputs["observed_volume_um3"] = params.model.observed_volume_um3;

    Json derived;
    derived["N"] = point.derived.n_sites;
    derived["pitch_um"] = point.derived.pitch;
    derived["c3_GHz_um3"] = point.derived.c3;
    derived["omega_collective_GHz"] = point.derived.omega_collective;
    derived["gamma_GHz"] = point.derived.gamma;
    derived["ratio"] = point.derived.ratio;
    derived["rho_ee"] = point.derived.rho_ee;
    derived["rate_GHz"] = number_or_null(point.derived.rate);
    derived["P_rr"] = point.derived.p_rr;
    derived["g2_zero"] = number_or_null(point.derived.g2_zero);

    Json targets;
    targets["rate_GHz"] = kTargetRateGhz;
    targets["rate_achieved_GHz"] = number_or_null(point.derived.rate);
    targets["rate_rel_dev"] =
        number_or_null((point.derived.rate - kTargetRateGhz) / kTargetRateGhz);
    targets["g2_zero"] = kTargetG2;
    targets["g2_achieved"] = number_or_null(point.derived.g2_zero);
    targets["g2_rel_dev"] = number_or_null((point.derived.g2_zero - kTargetG2) / kTargetG2);

    Json table = Json::array();
    for (const auto& row : sensitivity) {
        Json item;
        item["variant"] = to_string(row.variant);
        item["c3_source"] = to_string(row.c3_source);
        item["C3_GHz_um3"] = row.c3;
        item["P_rr"] = row.p_rr;
        item["g2_zero"] = number_or_null(row.g2_zero);
        table.push_back(std::move(item));
    }

    Json out;
    out["inputs"] = std::move(inputs);
    out["derived"] = std::move(derived);
    out["targets"] = std::move(targets);
    out["sensitivity"] = std::move(table);
    return out;
}

std::string report_text(const Params& params, const OperatingPoint& point,
                        std::span<const SensitivityRow> sensitivity) {
    std::ostringstream os;
    os << "operating point\n";
    os << "  inputs:\n";
    os << "    n                        " << point.n << "\n";
    os << "    l                        " << params.level.l << "\n";
    os << "    delta_l                  " << format_double(params.level.delta_l) << "\n";
    os << "    side (um)                " << format_double(point.side) << "\n";
    os << "    spacing_factor           " << format_double(params.geometry.spacing_factor)
       << "\n";
    os << "    omega_single (GHz)       " << format_double(point.omega_single) << "\n";
    os << "    purcell                  " << format_double(point.purcell) << "\n";
    os << "    variant                  " << to_string(params.model.variant) << "\n";
    os << "    c3_source                " << to_string(params.model.c3_source) << "\n";
    os << "  derived:\n";
    os << "    sites N                  " << point.derived.n_sites << "\n";
    os << "    pitch (um)               " << format_double(point.derived.pitch) << "\n";
    os << "    C3 (GHz um^3)            " << format_double(point.derived.c3) << "\n";
    os << "    omega_collective (GHz)   " << format_double(point.derived.omega_collective)
       << "\n";
    os << "    gamma (GHz)              " << format_double(point.derived.gamma) << "\n";
    os << "    omega'/gamma             " << format_double(point.derived.ratio)
       << "   [reference: 6]\n";
    os << "    rho_ee                   " << format_double(point.derived.rho_ee) << "\n";
    os << "    rate (GHz)               " << format_double(point.derived.rate)
       << "   [reference: " << format_double(kTargetRateGhz) << " GHz, deviation "
       << deviation_note(point.derived.rate, kTargetRateGhz) << "]\n";
    os << "    P_rr                     " << format_double(point.derived.p_rr) << "\n";
    if (std::isnan(point.derived.g2_zero)) {
        os << "    g2(0)                    undefined (no excited population)\n";
    } else {
        os << "    g2(0)                    " << format_double(point.derived.g2_zero)
           << "   [reference: " << format_double(kTargetG2) << ", deviation "
           << deviation_note(point.derived.g2_zero, kTargetG2) << "]\n";
    }
    os << "  g2(0) sensitivity (variant x C3 calibration):\n";
    os << "    variant  c3_source  C3_GHz_um3          P_rr                 g2_zero\n";
    for (const auto& row : sensitivity) {
        char line[160];
        std::snprintf(line, sizeof(line), "    %-8s %-10s %-19s %-20s %s\n",
                      to_string(row.variant), to_string(row.c3_source),
                      format_double(row.c3).c_str(), format_double(row.p_rr).c_str(),
                      format_double(row.g2_zero).c_str());
        os << line;
    }
    return os.str();
}

void write_output(const std::string& content, const std::string& path) {
    if (path == "-" || path.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << content;
    if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace rydblock
