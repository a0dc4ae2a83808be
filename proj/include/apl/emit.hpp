#pragma once

// Serialization of results. Reals are written with 17 significant digits so
// that identical results give identical bytes and parse back exactly.

#include <string>
#include <string_view>
#include <vector>

#include "apl/harness.hpp"

namespace apl::emit {

enum class Format { csv, json };

inline constexpr std::string_view sweep_header =
    "N,beta,x,offset,trials,successes,p_hat,ci_low,ci_high,seed,wall_time";

std::string format_real(double value);

/// Rows are sorted by (N, x, offset) before writing.
std::string to_csv(const harness::SweepResult& result);
std::string to_json(const harness::SweepResult& result);
std::string render(const harness::SweepResult& result, Format format);

/// Inverse of to_csv (crossings are recomputed from the rows) and to_json.
/// Throw std::invalid_argument on malformed input.
harness::SweepResult parse_csv(std::string_view text);
harness::SweepResult parse_json(std::string_view text);

/// A header plus preformatted cells, for the smaller tabular outputs.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string render(const Table& table, Format format);

Table seqmodel_table(const std::vector<harness::SeqRow>& rows);
Table nk_table(const std::vector<harness::NkRow>& rows);

/// Writes to `path`, or to stdout when path is empty or "-". Throws
/// std::runtime_error naming the path on I/O failure.
void write_output(const std::string& path, std::string_view content);

}  // namespace apl::emit
