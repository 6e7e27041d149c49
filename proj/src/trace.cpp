#include "sstl/trace.hpp"

#include "sstl/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sstl {

Trace::Trace(std::vector<std::string> variables, std::size_t locations, std::size_t samples,
             Time step)
    : variables_(std::move(variables)), locations_(locations), samples_(samples), step_(step) {
  if (variables_.empty()) throw std::invalid_argument("trace needs at least one variable");
  if (samples_ == 0) throw std::invalid_argument("trace needs at least one sample");
  if (step_ <= Time(0)) throw std::invalid_argument("trace step must be positive");
  data_.assign(locations_ * samples_ * variables_.size(), 0.0);
}

std::size_t Trace::variable_index(const std::string& name) const {
  const auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) throw std::out_of_range("trace has no variable '" + name + "'");
  return static_cast<std::size_t>(it - variables_.begin());
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto a = field.find_first_not_of(" \t\r");
    const auto b = field.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? std::string() : field.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("malformed number '" + s + "'", line);
  }
  return v;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

} // namespace

Trace read_trace(std::istream& in, const SpaceModel& space) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header = split_csv(line);
    break;
  }
  if (header.size() < 3 || header[0] != "location" || header[1] != "time") {
    throw FormatError("header must be 'location,time,<var>,...'", line_no);
  }
  std::vector<std::string> vars(header.begin() + 2, header.end());
  for (const auto& v : vars) {
    if (v.empty()) throw FormatError("empty variable name in header", line_no);
    if (std::count(vars.begin(), vars.end(), v) > 1) {
      throw FormatError("variable '" + v + "' appears twice in header", line_no);
    }
  }

  struct Row {
    Time time;
    std::vector<double> values;
    std::size_t line;
  };
  std::vector<std::vector<Row>> rows(space.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw FormatError("expected " + std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()),
                        line_no);
    }
    const auto loc = space.find(fields[0]);
    if (!loc) throw FormatError("unknown location '" + fields[0] + "'", line_no);
    Row row;
    row.line = line_no;
    try {
      row.time = parse_time(fields[1]);
    } catch (const std::invalid_argument&) {
      throw FormatError("malformed time '" + fields[1] + "'", line_no);
    }
    for (std::size_t i = 2; i < fields.size(); ++i) {
      row.values.push_back(parse_double(fields[i], line_no));
    }
    rows[*loc].push_back(std::move(row));
  }

  for (std::size_t l = 0; l < rows.size(); ++l) {
    if (rows[l].empty()) throw FormatError("no rows for location '" + space.id(l) + "'");
    std::sort(rows[l].begin(), rows[l].end(),
              [](const Row& a, const Row& b) { return a.time < b.time; });
  }

  const auto& ref = rows[0];
  const std::size_t samples = ref.size();
  if (ref[0].time != Time(0)) throw FormatError("time grid must start at 0", ref[0].line);
  Time step(1);
  if (samples > 1) {
    step = ref[1].time - ref[0].time;
    if (step <= Time(0)) throw FormatError("duplicate time " + to_string(ref[1].time), ref[1].line);
  }

  Trace trace(vars, space.size(), samples, step);
  for (std::size_t l = 0; l < rows.size(); ++l) {
    if (rows[l].size() != samples) {
      throw FormatError("location '" + space.id(l) + "' has " + std::to_string(rows[l].size()) +
                        " rows, expected " + std::to_string(samples));
    }
    for (std::size_t k = 0; k < samples; ++k) {
      const auto& row = rows[l][k];
      if (row.time != step * Time(static_cast<std::int64_t>(k))) {
        throw FormatError("time " + to_string(row.time) + " at location '" + space.id(l) +
                              "' is off the uniform grid (step " + to_string(step) + ")",
                          row.line);
      }
      for (std::size_t v = 0; v < vars.size(); ++v) trace.at(l, k, v) = row.values[v];
    }
  }
  return trace;
}

Trace read_trace(const std::filesystem::path& path, const SpaceModel& space) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open trace file " + path.string());
  return read_trace(in, space);
}

void write_trace(const Trace& trace, const SpaceModel& space, std::ostream& out) {
  if (trace.locations() != space.size()) {
    throw FormatError("trace has " + std::to_string(trace.locations()) + " locations, space has " +
                      std::to_string(space.size()));
  }
  out << "location,time";
  for (const auto& v : trace.variables()) out << ',' << v;
  out << '\n';
  for (std::size_t l = 0; l < trace.locations(); ++l) {
    for (std::size_t k = 0; k < trace.samples(); ++k) {
      out << space.id(l) << ',' << to_string(trace.step() * Time(static_cast<std::int64_t>(k)));
      for (const double v : trace.sample(l, k)) out << ',' << format_double(v);
      out << '\n';
    }
  }
}

void write_trace(const Trace& trace, const SpaceModel& space, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write trace file " + path.string());
  write_trace(trace, space, out);
}

} // namespace sstl
