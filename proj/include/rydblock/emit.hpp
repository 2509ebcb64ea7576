#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "rydblock/sweep.hpp"

namespace rydblock {

using Json = nlohmann::ordered_json;

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

// RFC-4180 field quoting.
std::string csv_escape(const std::string& field);

// Sweep table as CSV (header + one line per row) and JSON (array of objects,
// keys in column order). NaN serializes as "nan" / null.
std::string to_csv(std::span<const SweepRow> rows);
Json to_json(std::span<const SweepRow> rows);

std::string to_csv(std::span<const SensitivityRow> rows);

// Operating-point report with `inputs` and `derived` sub-objects, the
// reference-target comparison and the sensitivity table.
Json report_json(const Params& params, const OperatingPoint& point,
                 std::span<const SensitivityRow> sensitivity);
std::string report_text(const Params& params, const OperatingPoint& point,
                        std::span<const SensitivityRow> sensitivity);

// Writes to a file, or to stdout when path is "-".
void write_output(const std::string& content, const std::string& path);

} // namespace rydblock
