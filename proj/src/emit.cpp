#include "apl/emit.hpp"

#include "json.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

namespace apl::emit {

using harness::SweepResult;
using harness::SweepRow;

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::vector<SweepRow> sorted_rows(const SweepResult& result) {
  std::vector<SweepRow> rows = result.rows;
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.N, a.x, a.offset) < std::tie(b.N, b.x, b.offset);
  });
  return rows;
}

std::vector<std::string> row_cells(const SweepRow& r) {
  return {std::to_string(r.N),         format_real(r.beta),   format_real(r.x),
          format_real(r.offset),       std::to_string(r.trials), std::to_string(r.successes),
          format_real(r.p_hat),        format_real(r.ci_low),  format_real(r.ci_high),
          std::to_string(r.seed),      format_real(r.wall_time)};
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <typename T>
T parse_number(const std::string& cell) {
  T value{};
  if constexpr (std::is_floating_point_v<T>) {
    char* end = nullptr;
    errno = 0;
    value = std::strtod(cell.c_str(), &end);
    if (cell.empty() || *end != '\0' || errno == ERANGE)
      throw std::invalid_argument("malformed number '" + cell + "'");
  } else {
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
      throw std::invalid_argument("malformed integer '" + cell + "'");
  }
  return value;
}

std::string json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

}  // namespace

std::string to_csv(const SweepResult& result) {
  std::string out(sweep_header);
  out += '\n';
  for (const SweepRow& r : sorted_rows(result)) {
    const auto cells = row_cells(r);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += ',';
      out += cells[c];
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const SweepResult& result) {
  // Written by hand so reals keep the 17-digit rendering.
  const auto columns = split(sweep_header, ',');
  std::string out = "{\n  \"rows\": [";
  const auto rows = sorted_rows(result);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += i ? ",\n    {" : "\n    {";
    const auto cells = row_cells(rows[i]);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += ", ";
      out += json_string(columns[c]) + ": " + cells[c];
    }
    out += '}';
  }
  out += rows.empty() ? "],\n  \"crossings\": [" : "\n  ],\n  \"crossings\": [";
  for (std::size_t i = 0; i < result.crossings.size(); ++i) {
    const auto& c = result.crossings[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"N\": " + std::to_string(c.N) +
           ", \"x_star\": " + (c.x_star ? format_real(*c.x_star) : std::string("null")) + "}";
  }
  out += result.crossings.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::string render(const SweepResult& result, Format format) {
  return format == Format::csv ? to_csv(result) : to_json(result);
}

SweepResult parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != sweep_header)
    throw std::invalid_argument("sweep CSV must start with the fixed header");
  SweepResult result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split(line, ',');
    if (c.size() != 11) throw std::invalid_argument("sweep CSV row needs 11 cells: " + line);
    result.rows.push_back(SweepRow{
        parse_number<int>(c[0]), parse_number<double>(c[1]), parse_number<double>(c[2]),
        parse_number<double>(c[3]), parse_number<std::uint64_t>(c[4]),
        parse_number<std::uint64_t>(c[5]), parse_number<double>(c[6]),
        parse_number<double>(c[7]), parse_number<double>(c[8]),
        parse_number<std::uint64_t>(c[9]), parse_number<double>(c[10])});
  }
  result.rows = sorted_rows(result);
  for (std::size_t i = 0; i < result.rows.size();) {
    std::size_t j = i;
    while (j < result.rows.size() && result.rows[j].N == result.rows[i].N) ++j;
    result.crossings.push_back(harness::Crossing{
        result.rows[i].N,
        harness::crossing_point({result.rows.begin() + i, result.rows.begin() + j})});
    i = j;
  }
  return result;
}

SweepResult parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed sweep JSON: ") + e.what());
  }
  SweepResult result;
  try {
    for (const auto& r : doc.at("rows"))
      result.rows.push_back(SweepRow{
          r.at("N").get<int>(), r.at("beta").get<double>(), r.at("x").get<double>(),
          r.at("offset").get<double>(), r.at("trials").get<std::uint64_t>(),
          r.at("successes").get<std::uint64_t>(), r.at("p_hat").get<double>(),
          r.at("ci_low").get<double>(), r.at("ci_high").get<double>(),
          r.at("seed").get<std::uint64_t>(), r.at("wall_time").get<double>()});
    for (const auto& c : doc.at("crossings")) {
      harness::Crossing crossing{c.at("N").get<int>(), std::nullopt};
      if (!c.at("x_star").is_null()) crossing.x_star = c.at("x_star").get<double>();
      result.crossings.push_back(crossing);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("sweep JSON has the wrong shape: ") + e.what());
  }
  return result;
}

std::string render(const Table& table, Format format) {
  std::string out;
  if (format == Format::csv) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      out += (c ? "," : "") + table.columns[c];
    out += '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + row[c];
      out += '\n';
    }
    return out;
  }
  out = "[";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    out += i ? ",\n  {" : "\n  {";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out += ", ";
      const std::string& cell = table.rows[i][c];
      // Cells that do not parse as JSON numbers are emitted as strings.
      const bool numeric = nlohmann::json::accept(cell) && !cell.empty() &&
                           cell.find_first_not_of("0123456789+-.eE") == std::string::npos;
      out += json_string(table.columns[c]) + ": " + (numeric ? cell : json_string(cell));
    }
    out += '}';
  }
  out += table.rows.empty() ? "]\n" : "\n]\n";
  return out;
}

Table seqmodel_table(const std::vector<harness::SeqRow>& rows) {
  Table t{{"trial", "L", "good", "first_violated_clause", "T_half", "O_half"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.trial), std::to_string(r.L), r.good ? "1" : "0",
                      std::string(sequence::clause_name(r.first_violated)),
                      std::to_string(r.T_half), std::to_string(r.O_half)});
  return t;
}

Table nk_table(const std::vector<harness::NkRow>& rows) {
  Table t{{"seed", "N", "K", "value", "normalized_value", "steps"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.seed), std::to_string(r.N), std::to_string(r.K),
                      format_real(r.value), format_real(r.normalized_value),
                      std::to_string(r.steps)});
  return t;
}

void write_output(const std::string& path, std::string_view content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    if (!std::cout) throw std::runtime_error("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "': " + std::strerror(errno));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace apl::emit
