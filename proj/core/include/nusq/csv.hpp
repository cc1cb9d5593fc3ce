#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "nusq/bandlimited.hpp"
#include "nusq/stft.hpp"
#include "nusq/synchrosqueeze.hpp"

namespace nusq {

// Malformed input file; line is 1-based, 0 when not line-specific.
class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// All files are UTF-8, LF line endings, '.' decimal separator, numbers
// written shortest-round-trip. Readers reject malformed rows with CsvError
// and validate strictly increasing times.

// Header "t,value".
struct SampleRows {
  std::vector<double> times;
  std::vector<double> values;
};
SampleRows read_samples_csv(const std::filesystem::path& path);
void write_samples_csv(const std::filesystem::path& path,
                       const std::vector<double>& times,
                       const std::vector<double>& values);

// Header "t,amplitude".
SampleRows read_rpeaks_csv(const std::filesystem::path& path);
void write_rpeaks_csv(const std::filesystem::path& path,
                      const std::vector<double>& times,
                      const std::vector<double>& values);

// Ragged rows "t,xi_1,xi_2,...".
void write_ifset_csv(const std::filesystem::path& path, const IFSet& set);
IFSet read_ifset_csv(const std::filesystem::path& path);

// Rows "curve_id,t,xi", one row per curve point.
void write_curves_csv(const std::filesystem::path& path, const IFSet& set,
                      const std::vector<IFCurve>& curves);

// Header "t,re_analytic,im_analytic,if_h"; if_h empty where undefined.
void write_trace_csv(const std::filesystem::path& path,
                     const AnalyticTrace& trace);
AnalyticTrace read_trace_csv(const std::filesystem::path& path);

// First row "t\eta" followed by the frequency values; each later row is the
// column time then re:im pairs.
void write_tfmap_csv(const std::filesystem::path& path, const TimeFreqMap& map);

// Same layout with real mass entries and a "t\xi" corner.
void write_squeeze_csv(const std::filesystem::path& path,
                       const SqueezeMap& map);

std::string format_double(double v);

}  // namespace nusq
