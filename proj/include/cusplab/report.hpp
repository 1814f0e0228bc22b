#pragma once

#include <string>
#include <vector>

#include "cusplab/dio_search.hpp"
#include "cusplab/trajectory.hpp"

namespace cusplab {

enum class Format { csv, json };

Format parse_format(const std::string& text);

/// %.17g rendering used by every CSV column.
std::string format_number(double x);

/// Space-joined integers.
std::string join_ints(const IntVector& v);

/// Trace table: t, h1, hTop, w1, wTop, slack_low, slack_high, where
/// slack_low = (-h1) - ((s-1)(-hTop) - C) and
/// slack_high = (-hTop)/(s-1) + C - (-h1).
std::string render_trace(const std::vector<HeightSample>& samples, int s, double C, Format format);
std::vector<HeightSample> parse_trace_json(const std::string& text);

std::string render_excursions(const std::vector<ExcursionRecord>& records, Format format);
std::vector<ExcursionRecord> parse_excursions_json(const std::string& text);

std::string render_solutions(const std::vector<PrimitiveSolution>& solutions, Format format);

/// Writes to `path`, or to stdout when the path is empty or "-".
/// Throws IoError when the file cannot be written.
void write_output(const std::string& path, const std::string& text);

}  // namespace cusplab
