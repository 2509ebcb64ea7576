#include "rydblock/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "rydblock/errors.hpp"

namespace rydblock {

namespace {

struct RawEntry {
    std::string value;
    int line = 0; // 0 marks a command-line override
};

std::string location(const RawEntry& entry) {
    if (entry.line == 0) return "override";
    return "line " + std::to_string(entry.line);
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t' || text.front() == '\r'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    return text;
}

class Extractor {
public:
    explicit Extractor(std::map<std::string, RawEntry> entries)
        : entries_(std::move(entries)) {}

    std::optional<RawEntry> take(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        RawEntry entry = std::move(it->second);
        entries_.erase(it);
        return entry;
    }

    double take_double(const std::string& key, double fallback) {
        auto entry = take(key);
        if (!entry) return fallback;
        lines_[key] = entry->line;
        return parse_double(key, *entry);
    }

    int take_int(const std::string& key, int fallback) {
        auto entry = take(key);
        if (!entry) return fallback;
        lines_[key] = entry->line;
        const auto text = std::string(trim(entry->value));
        int out = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw ConfigError(location(*entry) + ": invalid integer for '" + key + "': '" +
                              entry->value + "'");
        return out;
    }

    std::optional<double> take_optional_double(const std::string& key) {
        auto entry = take(key);
        if (!entry) return std::nullopt;
        lines_[key] = entry->line;
        return parse_double(key, *entry);
    }

    std::optional<std::string> take_string(const std::string& key) {
        auto entry = take(key);
        if (!entry) return std::nullopt;
        lines_[key] = entry->line;
        return std::string(trim(entry->value));
    }

    std::vector<double> take_list(const std::string& key, std::vector<double> fallback) {
        auto entry = take(key);
        if (!entry) return fallback;
        lines_[key] = entry->line;
        std::vector<double> out;
        std::string_view rest = entry->value;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto token = trim(rest.substr(0, comma));
            if (token.empty())
                throw ConfigError(location(*entry) + ": empty element in '" + key + "'");
            double value = 0.0;
            const auto [ptr, ec] =
                std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc() || ptr != token.data() + token.size())
                throw ConfigError(location(*entry) + ": invalid number for '" + key + "': '" +
                                  std::string(token) + "'");
            out.push_back(value);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        return out;
    }

    // location of the line that set `key`, as error-message prefix
    std::string where(const std::string& key) const {
        auto it = lines_.find(key);
        if (it == lines_.end()) return "config";
        if (it->second == 0) return "override";
        return "line " + std::to_string(it->second);
    }

    void finish() const {
        if (entries_.empty()) return;
        // report the earliest unknown key
        const RawEntry* first = nullptr;
        const std::string* name = nullptr;
        for (const auto& [key, entry] : entries_) {
            if (!first || entry.line < first->line) {
                first = &entry;
                name = &key;
            }
        }
        throw ConfigError(location(*first) + ": unknown key '" + *name + "'");
    }

private:
    double parse_double(const std::string& key, const RawEntry& entry) const {
        const auto text = std::string(trim(entry.value));
        double out = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw ConfigError(location(entry) + ": invalid number for '" + key + "': '" +
                              entry.value + "'");
        return out;
    }

    std::map<std::string, RawEntry> entries_;
    std::map<std::string, int> lines_;
};

void check(bool ok, const std::string& where, const std::string& what) {
    if (!ok) throw ConfigError(where + ": " + what);
}

void insert_pair(std::map<std::string, RawEntry>& entries, std::string_view chunk, int line,
                 const char* what) {
    const auto eq = chunk.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError((line == 0 ? std::string("override") : "line " + std::to_string(line)) +
                          ": expected " + what);
    const auto key = std::string(trim(chunk.substr(0, eq)));
    const auto value = std::string(trim(chunk.substr(eq + 1)));
    if (key.empty() || value.empty())
        throw ConfigError((line == 0 ? std::string("override") : "line " + std::to_string(line)) +
                          ": expected " + what);
    entries[key] = RawEntry{value, line}; // later assignments win
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        out.push_back(lo);
        return out;
    }
    for (int i = 0; i < count; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    return out;
}

} // namespace

const char* to_string(PairVariant v) {
    return v == PairVariant::eq8 ? "eq8" : "eq7";
}

const char* to_string(C3Source s) {
    return s == C3Source::formula ? "formula" : "observed";
}

const char* to_string(SweepSpec::Variable v) {
    switch (v) {
        case SweepSpec::Variable::drive_ratio: return "drive_ratio";
        case SweepSpec::Variable::side: return "side";
        case SweepSpec::Variable::n: return "n";
    }
    return "?";
}

Params default_params() {
    Params p;
    p.level = {24, 1, p.material.defect_p};
    p.geometry = {4.0, 2.0};
    p.drive = {9.0, 0.0, 2.0};
    p.model = {PairVariant::eq8, C3Source::formula, 2000.0};
    p.sweep = {SweepSpec::Variable::drive_ratio, linspace(0.5, 10.0, 20)};
    p.output = {OutputOptions::Format::csv, "-"};
    return p;
}

Params parse_config(std::string_view text, std::span<const std::string> overrides) {
    std::map<std::string, RawEntry> entries;

    int line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
        ++line;
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;

        const auto hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        raw = trim(raw);
        if (raw.empty()) continue;
        insert_pair(entries, raw, line, "'section.key = value'");
    }
    for (const auto& override_pair : overrides)
        insert_pair(entries, override_pair, 0, "'section.key=value'");

    Extractor ex(std::move(entries));
    Params p = default_params();

    // material
    p.material.bohr_radius_nm = ex.take_double("material.bohr_radius", p.material.bohr_radius_nm);
    p.material.rydberg_mev = ex.take_double("material.rydberg_energy", p.material.rydberg_mev);
    p.material.bandgap_ev = ex.take_double("material.bandgap", p.material.bandgap_ev);
    p.material.defect_p = ex.take_double("material.defect_p", p.material.defect_p);
    p.material.linewidth_thz = ex.take_double("material.linewidth_coeff", p.material.linewidth_thz);
    p.material.blockade_coeff_um3 =
        ex.take_double("material.blockade_coeff", p.material.blockade_coeff_um3);
    p.material.dielectric = ex.take_double("material.dielectric", p.material.dielectric);
    check(p.material.bohr_radius_nm > 0, ex.where("material.bohr_radius"),
          "material.bohr_radius must be positive");
    check(p.material.rydberg_mev > 0, ex.where("material.rydberg_energy"),
          "material.rydberg_energy must be positive");
    check(p.material.bandgap_ev > 0, ex.where("material.bandgap"),
          "material.bandgap must be positive");
    check(p.material.defect_p > 0, ex.where("material.defect_p"),
          "material.defect_p must be positive");
    check(p.material.linewidth_thz > 0, ex.where("material.linewidth_coeff"),
          "material.linewidth_coeff must be positive");
    check(p.material.blockade_coeff_um3 > 0, ex.where("material.blockade_coeff"),
          "material.blockade_coeff must be positive");
    check(p.material.dielectric > 0, ex.where("material.dielectric"),
          "material.dielectric must be positive");

    // level
    p.level.n = ex.take_int("level.n", p.level.n);
    check(p.level.n >= 1, ex.where("level.n"), "level.n must be >= 1");
    p.level.l = ex.take_int("level.l", p.level.l);
    check(p.level.l >= 0, ex.where("level.l"), "level.l must be >= 0");
    check(p.level.l <= p.level.n - 1, ex.where("level.l"),
          "level.l must satisfy l <= n-1");
    const auto delta = ex.take_optional_double("level.delta_l");
    if (delta) {
        p.level.delta_l = *delta;
    } else if (p.level.l == 1) {
        p.level.delta_l = p.material.defect_p; // tabulated P-band defect
    } else {
        throw ConfigError(ex.where("level.l") +
                          ": level.delta_l must be given explicitly for l != 1");
    }
    check(static_cast<double>(p.level.n) - p.level.delta_l > 0, ex.where("level.delta_l"),
          "n - delta_l must be positive");

    // geometry
    p.geometry.side = ex.take_double("geometry.side", p.geometry.side);
    check(p.geometry.side > 0, ex.where("geometry.side"), "geometry.side must be positive");
    p.geometry.spacing_factor =
        ex.take_double("geometry.spacing_factor", p.geometry.spacing_factor);
    check(p.geometry.spacing_factor > 0, ex.where("geometry.spacing_factor"),
          "geometry.spacing_factor must be positive");

    // drive
    const auto rabi = ex.take_optional_double("drive.rabi_single");
    const auto intensity = ex.take_optional_double("drive.intensity");
    if (rabi && intensity)
        throw ConfigError(ex.where("drive.intensity") +
                          ": drive.rabi_single and drive.intensity are mutually exclusive");
    if (intensity) {
        check(*intensity >= 0, ex.where("drive.intensity"), "drive.intensity must be >= 0");
        p.drive.rabi_single = rabi_from_intensity_ghz(*intensity, p.level.n);
    } else if (rabi) {
        p.drive.rabi_single = *rabi;
    }
    check(p.drive.rabi_single >= 0, ex.where("drive.rabi_single"),
          "drive.rabi_single must be >= 0");
    p.drive.detuning = ex.take_double("drive.detuning", p.drive.detuning);
    p.drive.purcell = ex.take_double("drive.purcell", p.drive.purcell);
    check(p.drive.purcell > 0, ex.where("drive.purcell"), "drive.purcell must be positive");

    // model
    if (const auto variant = ex.take_string("model.variant")) {
        if (*variant == "eq8") p.model.variant = PairVariant::eq8;
        else if (*variant == "eq7") p.model.variant = PairVariant::eq7;
        else
            throw ConfigError(ex.where("model.variant") +
                              ": model.variant must be 'eq8' or 'eq7', got '" + *variant + "'");
    }
    if (const auto source = ex.take_string("model.c3_source")) {
        if (*source == "formula") p.model.c3_source = C3Source::formula;
        else if (*source == "observed") p.model.c3_source = C3Source::observed;
        else
            throw ConfigError(ex.where("model.c3_source") +
                              ": model.c3_source must be 'formula' or 'observed', got '" +
                              *source + "'");
    }
    p.model.observed_volume_um3 =
        ex.take_double("model.observed_volume", p.model.observed_volume_um3);
    check(p.model.observed_volume_um3 > 0, ex.where("model.observed_volume"),
          "model.observed_volume must be positive");

    // sweep
    if (const auto variable = ex.take_string("sweep.variable")) {
        if (*variable == "drive_ratio") p.sweep.variable = SweepSpec::Variable::drive_ratio;
        else if (*variable == "side") p.sweep.variable = SweepSpec::Variable::side;
        else if (*variable == "n") p.sweep.variable = SweepSpec::Variable::n;
        else
            throw ConfigError(ex.where("sweep.variable") +
                              ": sweep.variable must be 'drive_ratio', 'side' or 'n', got '" +
                              *variable + "'");
    }
    const auto explicit_values = ex.take_list("sweep.values", {});
    const auto from = ex.take_optional_double("sweep.from");
    const auto to = ex.take_optional_double("sweep.to");
    const int count = ex.take_int("sweep.count", 20);
    check(count >= 1, ex.where("sweep.count"), "sweep.count must be >= 1");
    if (!explicit_values.empty()) {
        p.sweep.values = explicit_values;
    } else if (from || to) {
        check(from.has_value() && to.has_value(), ex.where(from ? "sweep.from" : "sweep.to"),
              "sweep.from and sweep.to must be given together");
        check(*from < *to || count == 1, ex.where("sweep.from"),
              "sweep.from must be below sweep.to");
        p.sweep.values = linspace(*from, *to, count);
    }
    check(!p.sweep.values.empty(), ex.where("sweep.values"), "sweep.values must be non-empty");
    for (std::size_t i = 1; i < p.sweep.values.size(); ++i)
        check(p.sweep.values[i] > p.sweep.values[i - 1], ex.where("sweep.values"),
              "sweep.values must be strictly ascending");

    // output
    if (const auto format = ex.take_string("output.format")) {
        if (*format == "csv") p.output.format = OutputOptions::Format::csv;
        else if (*format == "json") p.output.format = OutputOptions::Format::json;
        else
            throw ConfigError(ex.where("output.format") +
                              ": output.format must be 'csv' or 'json', got '" + *format + "'");
    }
    if (const auto path = ex.take_string("output.path")) p.output.path = *path;

    ex.finish();

    try {
        validate(p.level);
        validate(p.geometry);
        validate(p.drive);
        validate(p.model);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return p;
}

} // namespace rydblock
