#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rydblock/blockade.hpp"
#include "rydblock/exciton.hpp"

namespace rydblock {

// Flat `section.key = value` configuration with `#` comments. Sections:
// material, level, geometry, drive, model, sweep, output. Unknown keys,
// malformed numbers and violated invariants raise ConfigError with the
// offending line number. Missing keys fall back to the reference operating
// point (n = 24, side = 4 um, Omega = 9 GHz, Purcell 2, spacing factor 2,
// variant eq8).

struct SweepSpec {
    enum class Variable { drive_ratio, side, n };
    Variable variable = Variable::drive_ratio;
    std::vector<double> values; // non-empty, strictly ascending
};

struct OutputOptions {
    enum class Format { csv, json };
    Format format = Format::csv;
    std::string path = "-"; // "-" writes to stdout
};

struct Params {
    MaterialConstants material;
    ExcitonLevel level;
    CrystalGeometry geometry;
    DriveConfig drive;
    ModelOptions model;
    SweepSpec sweep;
    OutputOptions output;
};

Params default_params();

// `overrides` holds extra `section.key=value` pairs (CLI --set flags); they
// are applied after the file text and reported without line numbers.
Params parse_config(std::string_view text, std::span<const std::string> overrides = {});

const char* to_string(PairVariant v);
const char* to_string(C3Source s);
const char* to_string(SweepSpec::Variable v);

} // namespace rydblock
