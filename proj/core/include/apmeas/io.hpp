#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "apmeas/measure.hpp"

namespace apmeas {

/// %.17g, with nan/inf spelled as JSON null by the emitters.
std::string format_double(double x);

/// Measure schema:
///   {"pp": [[pos, re, im], ...],
///    "ac": {"origin": o, "step": h, "samples": [[re, im], ...], "clip": [lo, hi]},
///    "sc": {"ifs": [[ratio, offset, weight], ...], "depth": d, "mass": [re, im]}
///          or {"cloud": [[pos, re, im], ...]} or an array of either,
///    "truncation": [lo, hi]}
/// Every key is optional. Real weights may be given as plain numbers.
/// Throws ParseError.
Measure measure_from_json(std::string_view text);
std::string measure_to_json(const Measure& mu);

Measure read_measure(const std::filesystem::path& path);
void write_measure(const std::filesystem::path& path, const Measure& mu);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace apmeas
