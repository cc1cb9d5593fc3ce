#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace nusq::cli {

// Process exit codes. Each failure class gets its own code so scripted
// callers can tell a bad invocation from bad data.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,       // unknown command, bad flag, unknown figure or truth id
  kParse = 3,       // malformed input file (reported with a line number)
  kValidation = 4,  // well-formed input that violates a precondition
  kNumerical = 5,   // solver or transform failure
};

// Flag set shared by every command; zero or negative sentinels mean
// "derive from the data" and the derived values are echoed in the manifest.
struct RunConfig {
  std::string method = "ss";    // ss | bl | both (used by analyze)
  double window_scale = 0.1;    // gaussian exponent scale
  double alpha = 0.1;           // squeeze bin width (Hz)
  double gamma = 1e-8;          // transform magnitude threshold
  double grid_dt = 0.0;         // impulse grid step; 0 derives T / 5
  double eta_max = 0.0;         // analysis band top; 0 derives 1 / (2 T)
  double support_floor = 0.0;   // minimum squeezed mass kept in the IF set
  int order_N = -1;             // reconstruction half-order; -1 sizes to record
  std::string basis = "sinc";   // sinc | dft
  std::uint64_t seed = 0;
  double tprime = -1.0;         // schedule jitter; negative keeps the preset
  std::string out_dir = ".";
  bool dump_squeeze = false;    // also write the squeezed map
  double edge_exclude = 2.0;    // seconds dropped at each end by compare
};

// Signal generation for the built-in experiments 1..7.
int cmd_gen(int figure_id, const RunConfig& config);

// Synthetic event-train fixture (spikes near 1 Hz with a slow amplitude
// modulation) plus its dense reference channel.
int cmd_gen_edr(double t0, double t1, const RunConfig& config);

// Squeezed-transform IF extraction for a sample file.
int cmd_ss(const std::filesystem::path& samples_csv, const RunConfig& config);

// Bandlimited reconstruction and analytic-extension IF for a sample file.
int cmd_bl(const std::filesystem::path& samples_csv, const RunConfig& config);

// Error metrics of an extracted IF file against a named ground truth
// ("1".."7" for the experiment presets, "6avg" for the two-component mean).
int cmd_compare(const std::filesystem::path& if_csv, const std::string& truth,
                const RunConfig& config);

// Event-train IF extraction (backward-gap weights); when the reference
// channel is given, also computes its squeezed and analytic-signal IFs and
// an aligned comparison table.
int cmd_edr(const std::filesystem::path& rpeaks_csv,
            const std::optional<std::filesystem::path>& respiration_csv,
            const RunConfig& config);

// gen + ss/bl + compare for one experiment, honoring config.method.
int cmd_analyze(int figure_id, const RunConfig& config);

// Re-executes the run recorded in a manifest; deterministic pipelines make
// the rerun byte-identical.
int cmd_rerun(const std::filesystem::path& manifest_json);

// FNV-1a 64-bit digest of a file's bytes, formatted "fnv1a:<16 hex>".
std::string file_digest(const std::filesystem::path& path);

// Version string recorded in every manifest.
extern const char* const kVersion;

}  // namespace nusq::cli
