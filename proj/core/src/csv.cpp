#include "nusq/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

namespace nusq {

namespace {

std::string format_complex(const std::complex<double>& v) {
  return format_double(v.real()) + ":" + format_double(v.imag());
}

double parse_double(const std::string& field, std::size_t line) {
  double out = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) {
    throw CsvError("malformed number '" + field + "'", line);
  }
  return out;
}

std::vector<std::string> split_fields(const std::string& row) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : row) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) {
    throw CsvError("cannot open '" + path.string() + "' for writing", 0);
  }
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CsvError("cannot open '" + path.string() + "'", 0);
  }
  return in;
}

SampleRows read_two_column(const std::filesystem::path& path,
                           const std::string& header) {
  auto in = open_in(path);
  std::string row;
  std::size_t line = 0;
  SampleRows rows;
  while (std::getline(in, row)) {
    ++line;
    if (line == 1) {
      if (split_fields(row) != split_fields(header)) {
        throw CsvError("expected header '" + header + "'", line);
      }
      continue;
    }
    if (row.empty()) continue;
    const auto fields = split_fields(row);
    if (fields.size() != 2) {
      throw CsvError("expected 2 fields, found " +
                         std::to_string(fields.size()),
                     line);
    }
    const double t = parse_double(fields[0], line);
    if (!rows.times.empty() && !(t > rows.times.back())) {
      throw CsvError("times must be strictly increasing", line);
    }
    rows.times.push_back(t);
    rows.values.push_back(parse_double(fields[1], line));
  }
  return rows;
}

void write_two_column(const std::filesystem::path& path,
                      const std::string& header,
                      const std::vector<double>& times,
                      const std::vector<double>& values) {
  auto out = open_out(path);
  out << header << "\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << format_double(times[i]) << "," << format_double(values[i]) << "\n";
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

SampleRows read_samples_csv(const std::filesystem::path& path) {
  return read_two_column(path, "t,value");
}

void write_samples_csv(const std::filesystem::path& path,
                       const std::vector<double>& times,
                       const std::vector<double>& values) {
  write_two_column(path, "t,value", times, values);
}

SampleRows read_rpeaks_csv(const std::filesystem::path& path) {
  return read_two_column(path, "t,amplitude");
}

void write_rpeaks_csv(const std::filesystem::path& path,
                      const std::vector<double>& times,
                      const std::vector<double>& values) {
  write_two_column(path, "t,amplitude", times, values);
}

void write_ifset_csv(const std::filesystem::path& path, const IFSet& set) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < set.times.size(); ++i) {
    out << format_double(set.times[i]);
    for (double xi : set.members[i]) out << "," << format_double(xi);
    out << "\n";
  }
}

IFSet read_ifset_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  IFSet set;
  std::string row;
  std::size_t line = 0;
  while (std::getline(in, row)) {
    ++line;
    if (row.empty()) continue;
    const auto fields = split_fields(row);
    const double t = parse_double(fields[0], line);
    if (!set.times.empty() && !(t > set.times.back())) {
      throw CsvError("times must be strictly increasing", line);
    }
    set.times.push_back(t);
    std::vector<double> members;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i].empty()) continue;
      members.push_back(parse_double(fields[i], line));
    }
    set.members.push_back(std::move(members));
  }
  return set;
}

void write_curves_csv(const std::filesystem::path& path, const IFSet& set,
                      const std::vector<IFCurve>& curves) {
  auto out = open_out(path);
  out << "curve_id,t,xi\n";
  for (std::size_t id = 0; id < curves.size(); ++id) {
    const auto& curve = curves[id];
    for (std::size_t i = 0; i < curve.xi.size(); ++i) {
      out << id << "," << format_double(set.times[curve.start + i]) << ","
          << format_double(curve.xi[i]) << "\n";
    }
  }
}

void write_trace_csv(const std::filesystem::path& path,
                     const AnalyticTrace& trace) {
  auto out = open_out(path);
  out << "t,re_analytic,im_analytic,if_h\n";
  for (std::size_t i = 0; i < trace.time_grid.size(); ++i) {
    out << format_double(trace.time_grid[i]) << ","
        << format_double(trace.analytic[i].real()) << ","
        << format_double(trace.analytic[i].imag()) << ",";
    if (!std::isnan(trace.if_h[i])) out << format_double(trace.if_h[i]);
    out << "\n";
  }
}

AnalyticTrace read_trace_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  AnalyticTrace trace;
  std::string row;
  std::size_t line = 0;
  while (std::getline(in, row)) {
    ++line;
    if (line == 1) {
      if (split_fields(row) != split_fields("t,re_analytic,im_analytic,if_h")) {
        throw CsvError("expected header 't,re_analytic,im_analytic,if_h'",
                       line);
      }
      continue;
    }
    if (row.empty()) continue;
    const auto fields = split_fields(row);
    if (fields.size() != 4) {
      throw CsvError("expected 4 fields", line);
    }
    trace.time_grid.push_back(parse_double(fields[0], line));
    trace.analytic.emplace_back(parse_double(fields[1], line),
                                parse_double(fields[2], line));
    trace.derivative.emplace_back(0.0, 0.0);  // not stored in the file
    trace.if_h.push_back(fields[3].empty()
                             ? std::numeric_limits<double>::quiet_NaN()
                             : parse_double(fields[3], line));
  }
  return trace;
}

void write_tfmap_csv(const std::filesystem::path& path,
                     const TimeFreqMap& map) {
  auto out = open_out(path);
  out << "t\\eta";
  for (Eigen::Index j = 0; j < map.freq_grid.count; ++j) {
    out << "," << format_double(map.freq_grid.value(j));
  }
  out << "\n";
  for (Eigen::Index m = 0; m < map.values.rows(); ++m) {
    out << format_double(map.time_grid[static_cast<std::size_t>(m)]);
    for (Eigen::Index j = 0; j < map.values.cols(); ++j) {
      out << "," << format_complex(map.values(m, j));
    }
    out << "\n";
  }
}

void write_squeeze_csv(const std::filesystem::path& path,
                       const SqueezeMap& map) {
  auto out = open_out(path);
  out << "t\\xi";
  for (Eigen::Index i = 0; i < map.xi_count; ++i) {
    out << "," << format_double(map.xi_value(i));
  }
  out << "\n";
  for (Eigen::Index m = 0; m < map.mass.rows(); ++m) {
    out << format_double(map.time_grid[static_cast<std::size_t>(m)]);
    for (Eigen::Index i = 0; i < map.mass.cols(); ++i) {
      out << "," << format_double(map.mass(m, i));
    }
    out << "\n";
  }
}

}  // namespace nusq
