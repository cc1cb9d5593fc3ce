#include "commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <nusq/bandlimited.hpp>
#include <nusq/csv.hpp>
#include <nusq/figures.hpp>
#include <nusq/hilbert.hpp>
#include <nusq/signals.hpp>
#include <nusq/stft.hpp>
#include <nusq/synchrosqueeze.hpp>

namespace nusq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

const char* const kVersion = "nusq 0.1.0";

std::string file_digest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for digest: " + path.string());
  }
  // FNV-1a, 64 bit. Not cryptographic; it only has to make accidental
  // output drift visible across reruns.
  std::uint64_t h = 14695981039346656037ULL;
  char buffer[4096];
  while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buffer[i]);
      h *= 1099511628211ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a:") + hex;
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// The manifest echoes the configuration exactly as given (sentinels and
// all); derived quantities are reported separately so a rerun resolves them
// the same way the original run did.
json config_json(const RunConfig& c) {
  return json{{"alpha", c.alpha},
              {"basis", c.basis},
              {"dump_squeeze", c.dump_squeeze},
              {"edge_exclude", c.edge_exclude},
              {"eta_max", c.eta_max},
              {"gamma", c.gamma},
              {"grid_dt", c.grid_dt},
              {"method", c.method},
              {"order_N", c.order_N},
              {"out_dir", c.out_dir},
              {"seed", c.seed},
              {"support_floor", c.support_floor},
              {"tprime", c.tprime},
              {"window_scale", c.window_scale}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.alpha = j.at("alpha").get<double>();
  c.basis = j.at("basis").get<std::string>();
  c.dump_squeeze = j.at("dump_squeeze").get<bool>();
  c.edge_exclude = j.at("edge_exclude").get<double>();
  c.eta_max = j.at("eta_max").get<double>();
  c.gamma = j.at("gamma").get<double>();
  c.grid_dt = j.at("grid_dt").get<double>();
  c.method = j.at("method").get<std::string>();
  c.order_N = j.at("order_N").get<int>();
  c.out_dir = j.at("out_dir").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.support_floor = j.at("support_floor").get<double>();
  c.tprime = j.at("tprime").get<double>();
  c.window_scale = j.at("window_scale").get<double>();
  return c;
}

// Manifest file name: "<command>_manifest.json" with '-' mapped to '_'.
void write_manifest(const fs::path& out_dir, const std::string& command,
                    json manifest) {
  manifest["command"] = command;
  manifest["version"] = kVersion;
  std::string name = command;
  std::replace(name.begin(), name.end(), '-', '_');
  std::ofstream out(out_dir / (name + "_manifest.json"), std::ios::binary);
  out << manifest.dump(2) << "\n";
}

// Maps the failure classes onto the exit-code contract and keeps the
// command bodies free of try blocks.
template <typename Fn>
int run_guarded(const char* command, Fn&& body) {
  try {
    return body();
  } catch (const CsvError& e) {
    std::cerr << command << ": parse error";
    if (e.line() > 0) {
      std::cerr << " at line " << e.line();
    }
    std::cerr << ": " << e.what() << "\n";
    return kParse;
  } catch (const json::exception& e) {
    std::cerr << command << ": manifest error: " << e.what() << "\n";
    return kParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return kNumerical;
  }
}

std::vector<std::complex<double>> to_complex(const std::vector<double>& v) {
  return {v.begin(), v.end()};
}

const char* figure_formula(int id) {
  switch (id) {
    case 1: return "(2 + cos t) cos(2 pi (3 t + cos t))";
    case 2: return "cos(2 pi (t + 0.05 t^2))";
    case 3: return "J0(6 pi (t - 10))";
    case 4: return "cos(8 pi t) + N(0, 0.4)";
    case 5: return "cos(10 pi t)";
    case 6: return "cos(2 pi (2 t + 0.2 cos t)) + cos(2 pi (3 t + 0.02 t^2))";
    case 7: return "cos(5 pi t) + cos(2 pi (t + 0.05 t^2))";
    default: return "";
  }
}

// One pass of the squeezed-transform pipeline. grid_dt_default and
// column_dt let callers tune the fine grid and the output column spacing to
// the data class (sample trains vs dense channels); explicit --grid-dt
// always wins.
struct SqueezeChain {
  double T = 0.0;
  double grid_dt = 0.0;
  double eta_max = 0.0;
  SqueezeMap map;
  IFSet set;
  std::vector<IFCurve> curves;
  json derived;
};

SqueezeChain run_squeeze_chain(const SampledSignal& signal,
                               const RunConfig& config, double grid_dt_default,
                               double column_dt, bool backward) {
  SqueezeChain out;
  out.T = signal.schedule.T;
  out.grid_dt = config.grid_dt > 0.0 ? config.grid_dt : grid_dt_default;
  out.eta_max =
      config.eta_max > 0.0 ? config.eta_max : 1.0 / (2.0 * signal.schedule.T);

  const ImpulseTrain train =
      backward ? to_impulse_train_backward(signal, out.grid_dt)
               : to_impulse_train(signal, out.grid_dt);
  const Window window = gaussian_window(config.window_scale);
  const auto stride = static_cast<std::size_t>(
      std::max<long long>(1, std::llround(column_dt / out.grid_dt)));
  const std::vector<double> time_grid = make_time_grid(train, stride);
  // Bin target alpha / 5 keeps several frequency rows inside each squeeze
  // catchment so the reassigned mass is a stable support indicator.
  const FrequencyGrid freq =
      make_frequency_grid(out.grid_dt, out.eta_max, config.alpha / 5.0);

  const StftPair pair =
      stft_with_derivative(train, window, time_grid, freq, StftPolicy::Auto);
  const OmegaMap omega =
      if_information(pair.value, pair.derivative, config.gamma);
  out.map = squeeze(omega, pair.value, config.alpha, config.gamma, out.eta_max);
  out.set = extract_if_set(out.map, config.support_floor);
  out.curves = link_curves(out.set, config.alpha);

  out.derived = json{{"T", out.T},
                     {"columns", time_grid.size()},
                     {"delta_eta", freq.spacing},
                     {"eta_max", out.eta_max},
                     {"grid_dt", out.grid_dt},
                     {"n_fft", freq.n_fft},
                     {"stride", stride}};
  return out;
}

BlBasis parse_basis(const std::string& name) {
  if (name == "sinc") return BlBasis::Sinc;
  if (name == "dft") return BlBasis::Dft;
  throw std::invalid_argument("basis must be sinc or dft, got " + name);
}

// Extracted IF data in a uniform shape regardless of which pipeline wrote
// the file: a trace contributes its single if_h value per row (none where
// undefined), an IF-set file contributes its member list.
struct IfData {
  std::vector<double> times;
  std::vector<std::vector<double>> members;
};

IfData load_if_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CsvError("cannot open " + path.string(), 0);
  }
  std::string first;
  std::getline(in, first);
  if (!first.empty() && first.back() == '\r') {
    first.pop_back();
  }
  in.close();

  IfData data;
  if (first.rfind("t,re_analytic", 0) == 0) {
    const AnalyticTrace trace = read_trace_csv(path);
    data.times = trace.time_grid;
    data.members.resize(trace.time_grid.size());
    for (std::size_t i = 0; i < trace.if_h.size(); ++i) {
      if (std::isfinite(trace.if_h[i])) {
        data.members[i].push_back(trace.if_h[i]);
      }
    }
  } else {
    const IFSet set = read_ifset_csv(path);
    data.times = set.times;
    data.members = set.members;
  }
  return data;
}

std::vector<std::function<double(double)>> truth_components(
    const std::string& truth) {
  if (truth == "6avg") {
    // Mean of the two-component experiment's frequencies, the curve an
    // analytic-signal IF tracks when the components are not separated out.
    return {[](double t) { return 2.5 + 0.02 * t - 0.1 * std::sin(t); }};
  }
  const int id = std::stoi(truth);
  return figure_preset(id).true_if;
}

// Nearest-rank percentile; deterministic and robust to infinities from
// rows with no extracted member.
double percentile(std::vector<double> values, double q) {
  if (values.empty()) return kNan;
  std::sort(values.begin(), values.end());
  const double rank = q * static_cast<double>(values.size());
  const auto idx = static_cast<std::size_t>(
      std::max(0.0, std::ceil(rank) - 1.0));
  return values[std::min(idx, values.size() - 1)];
}

json compare_metrics(const IfData& data,
                     const std::vector<std::function<double(double)>>& truths,
                     double alpha, double edge, const fs::path& metrics_csv) {
  if (data.times.empty()) {
    throw std::invalid_argument("no rows to compare");
  }
  const double t_lo = data.times.front() + edge;
  const double t_hi = data.times.back() - edge;
  if (!(t_hi > t_lo)) {
    throw std::invalid_argument("record shorter than twice the edge margin");
  }

  json metrics = json::array();
  std::ofstream out(metrics_csv, std::ios::binary);
  out << "component,median_err,p95_err,coverage\n";
  for (std::size_t k = 0; k < truths.size(); ++k) {
    std::vector<double> errs;
    std::size_t covered = 0;
    for (std::size_t i = 0; i < data.times.size(); ++i) {
      const double t = data.times[i];
      if (t < t_lo || t > t_hi) continue;
      double best = std::numeric_limits<double>::infinity();
      for (double xi : data.members[i]) {
        best = std::min(best, std::abs(xi - truths[k](t)));
      }
      errs.push_back(best);
      if (best <= 2.0 * alpha) ++covered;
    }
    if (errs.empty()) {
      throw std::invalid_argument("edge margin leaves no interior rows");
    }
    const double median = percentile(errs, 0.5);
    const double p95 = percentile(errs, 0.95);
    const double coverage =
        static_cast<double>(covered) / static_cast<double>(errs.size());
    out << k << ',' << format_double(median) << ',' << format_double(p95)
        << ',' << format_double(coverage) << '\n';
    metrics.push_back(json{{"component", k},
                           {"coverage", coverage},
                           {"interior_rows", errs.size()},
                           {"median_err", median},
                           {"p95_err", p95}});
  }
  return metrics;
}

int compare_impl(const fs::path& if_csv, const std::string& truth,
                 const RunConfig& config, const std::string& metrics_name,
                 bool own_manifest) {
  const auto truths = truth_components(truth);
  const IfData data = load_if_file(if_csv);
  const fs::path dir = config.out_dir;
  fs::create_directories(dir);
  const json metrics = compare_metrics(data, truths, config.alpha,
                                       config.edge_exclude, dir / metrics_name);
  if (own_manifest) {
    json manifest;
    manifest["args"] = json{{"input", if_csv.string()}, {"truth", truth}};
    manifest["config"] = config_json(config);
    manifest["derived"] = json{{"metrics", metrics}};
    manifest["inputs"] = json{{if_csv.string(), file_digest(if_csv)}};
    manifest["outputs"] =
        json{{metrics_name, file_digest(dir / metrics_name)}};
    write_manifest(dir, "compare", std::move(manifest));
  }
  return kOk;
}

// Linear interpolation on a uniform series; NaN outside the span and NaN
// entries propagate.
double interp_uniform(const UniformSeries& series,
                      const std::vector<double>& values, double t) {
  const double x = (t - series.t0) / series.dt;
  if (!(x >= 0.0) || !(x <= static_cast<double>(values.size() - 1))) {
    return kNan;
  }
  const auto i0 =
      std::min(static_cast<std::size_t>(x), values.size() - 2);
  const double w = x - static_cast<double>(i0);
  return (1.0 - w) * values[i0] + w * values[i0 + 1];
}

bool nearest_member(const std::vector<double>& members, double target,
                    double* out) {
  if (members.empty() || !std::isfinite(target)) return false;
  double best = kNan;
  double dist = std::numeric_limits<double>::infinity();
  for (double xi : members) {
    const double d = std::abs(xi - target);
    if (d < dist) {
      dist = d;
      best = xi;
    }
  }
  *out = best;
  return true;
}

}  // namespace

int cmd_gen(int figure_id, const RunConfig& config) {
  return run_guarded("gen", [&] {
    const FigurePreset preset = figure_preset(figure_id);
    const double tprime =
        config.tprime >= 0.0 ? config.tprime : preset.Tprime_default;
    const SamplingSchedule schedule =
        tprime == 0.0
            ? make_uniform_schedule(preset.T, preset.spec.t0, preset.spec.t1)
            : make_perturbed_schedule(preset.T, tprime, preset.spec.t0,
                                      preset.spec.t1, config.seed);
    SampledSignal signal = sample(preset.spec, schedule);

    json derived{{"T", preset.T},
                 {"Tprime", tprime},
                 {"count", schedule.times.size()},
                 {"formula", figure_formula(figure_id)},
                 {"name", preset.name},
                 {"t0", preset.spec.t0},
                 {"t1", preset.spec.t1}};
    if (preset.noise_sigma > 0.0) {
      // The schedule consumed config.seed; the noise stream gets its own.
      add_noise(signal, preset.noise_sigma, config.seed + 1);
      derived["noise_seed"] = config.seed + 1;
      derived["noise_sigma"] = preset.noise_sigma;
    }

    std::vector<double> values(signal.values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = signal.values[i].real();
    }

    const fs::path dir = config.out_dir;
    fs::create_directories(dir);
    const std::string name =
        "fig" + std::to_string(figure_id) + "_samples.csv";
    write_samples_csv(dir / name, schedule.times, values);

    json manifest;
    manifest["args"] = json{{"figure", figure_id}};
    manifest["config"] = config_json(config);
    manifest["derived"] = derived;
    manifest["inputs"] = json::object();
    manifest["outputs"] = json{{name, file_digest(dir / name)}};
    write_manifest(dir, "gen", std::move(manifest));
    return kOk;
  });
}

int cmd_gen_edr(double t0, double t1, const RunConfig& config) {
  return run_guarded("gen-edr", [&] {
    const EdrFixture fx = make_edr_fixture(t0, t1, config.seed);
    std::vector<double> amplitudes(fx.rpeaks.values.size());
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
      amplitudes[i] = fx.rpeaks.values[i].real();
    }

    const fs::path dir = config.out_dir;
    fs::create_directories(dir);
    write_rpeaks_csv(dir / "edr_rpeaks.csv", fx.rpeaks.schedule.times,
                     amplitudes);
    write_samples_csv(dir / "edr_resp.csv", fx.resp_times, fx.resp_values);

    const auto& times = fx.rpeaks.schedule.times;
    const double rate = times.size() > 1
                            ? static_cast<double>(times.size() - 1) /
                                  (times.back() - times.front())
                            : 0.0;
    json manifest;
    manifest["args"] = json{{"t0", t0}, {"t1", t1}};
    manifest["config"] = config_json(config);
    manifest["derived"] = json{{"beat_count", times.size()},
                               {"mean_event_rate_hz", rate},
                               {"modulation_hz", fx.modulation_hz},
                               {"resp_count", fx.resp_times.size()},
                               {"resp_dt", fx.resp_dt}};
    manifest["inputs"] = json::object();
    manifest["outputs"] =
        json{{"edr_rpeaks.csv", file_digest(dir / "edr_rpeaks.csv")},
             {"edr_resp.csv", file_digest(dir / "edr_resp.csv")}};
    write_manifest(dir, "gen-edr", std::move(manifest));
    return kOk;
  });
}

int cmd_ss(const fs::path& samples_csv, const RunConfig& config) {
  return run_guarded("ss", [&] {
    const SampleRows rows = read_samples_csv(samples_csv);
    const fs::path dir = config.out_dir;
    fs::create_directories(dir);

    json manifest;
    manifest["args"] = json{{"samples", samples_csv.string()}};
    manifest["config"] = config_json(config);
    manifest["inputs"] = json{{samples_csv.string(), file_digest(samples_csv)}};

    if (rows.times.size() < 2) {
      // Too little data to infer a schedule: the contract is empty outputs
      // plus a validation exit, so downstream tooling sees files either way.
      write_ifset_csv(dir / "ifset.csv", IFSet{});
      write_curves_csv(dir / "curves.csv", IFSet{}, {});
      manifest["derived"] = json{{"rows", rows.times.size()}};
      manifest["outputs"] =
          json{{"ifset.csv", file_digest(dir / "ifset.csv")},
               {"curves.csv", file_digest(dir / "curves.csv")}};
      write_manifest(dir, "ss", std::move(manifest));
      std::cerr << "ss: need at least two samples, wrote empty outputs\n";
      return kValidation;
    }

    SampledSignal signal;
    signal.schedule = infer_schedule(rows.times);
    signal.values = to_complex(rows.values);
    const SqueezeChain chain = run_squeeze_chain(
        signal, config, signal.schedule.T / 5.0, signal.schedule.T, false);

    write_ifset_csv(dir / "ifset.csv", chain.set);
    write_curves_csv(dir / "curves.csv", chain.set, chain.curves);
    json outputs{{"ifset.csv", file_digest(dir / "ifset.csv")},
                 {"curves.csv", file_digest(dir / "curves.csv")}};
    if (config.dump_squeeze) {
      write_squeeze_csv(dir / "squeeze.csv", chain.map);
      outputs["squeeze.csv"] = file_digest(dir / "squeeze.csv");
    }
    manifest["derived"] = chain.derived;
    manifest["outputs"] = std::move(outputs);
    write_manifest(dir, "ss", std::move(manifest));
    return kOk;
  });
}

int cmd_bl(const fs::path& samples_csv, const RunConfig& config) {
  return run_guarded("bl", [&] {
    const SampleRows rows = read_samples_csv(samples_csv);
    const fs::path dir = config.out_dir;
    fs::create_directories(dir);

    json manifest;
    manifest["args"] = json{{"samples", samples_csv.string()}};
    manifest["config"] = config_json(config);
    manifest["inputs"] = json{{samples_csv.string(), file_digest(samples_csv)}};

    if (rows.times.size() < 2) {
      write_trace_csv(dir / "trace.csv", AnalyticTrace{});
      manifest["derived"] = json{{"rows", rows.times.size()}};
      manifest["outputs"] =
          json{{"trace.csv", file_digest(dir / "trace.csv")}};
      write_manifest(dir, "bl", std::move(manifest));
      std::cerr << "bl: need at least two samples, wrote empty outputs\n";
      return kValidation;
    }

    SampledSignal signal;
    signal.schedule = infer_schedule(rows.times);
    signal.values = to_complex(rows.values);
    const ReconstructionResult rec =
        reconstruct(signal, config.order_N, parse_basis(config.basis));

    const double grid_dt =
        config.grid_dt > 0.0 ? config.grid_dt : signal.schedule.T / 5.0;
    const double J1 = rows.times.front();
    const double J2 = rows.times.back();
    std::vector<double> grid;
    const auto count =
        static_cast<std::size_t>(std::floor((J2 - J1) / grid_dt)) + 1;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      grid.push_back(J1 + static_cast<double>(i) * grid_dt);
    }
    const AnalyticTrace trace = analytic_extension(rec, grid);
    write_trace_csv(dir / "trace.csv", trace);

    manifest["derived"] = json{{"M", rec.M},
                               {"N", rec.N},
                               {"T", rec.T},
                               {"basis", config.basis},
                               {"grid_dt", grid_dt},
                               {"rank_deficient", rec.rank_deficient},
                               {"residual", rec.residual},
                               {"rows", rows.times.size()}};
    manifest["outputs"] = json{{"trace.csv", file_digest(dir / "trace.csv")}};
    write_manifest(dir, "bl", std::move(manifest));
    return kOk;
  });
}

int cmd_compare(const fs::path& if_csv, const std::string& truth,
                const RunConfig& config) {
  if (truth != "6avg") {
    bool numeric = !truth.empty() &&
                   std::all_of(truth.begin(), truth.end(),
                               [](unsigned char c) { return std::isdigit(c); });
    if (!numeric || truth.size() > 1 || truth < "1" || truth > "7") {
      std::cerr << "compare: truth must be 1..7 or 6avg, got " << truth
                << "\n";
      return kUsage;
    }
  }
  return run_guarded("compare", [&] {
    return compare_impl(if_csv, truth, config, "metrics.csv", true);
  });
}

int cmd_edr(const fs::path& rpeaks_csv,
            const std::optional<fs::path>& respiration_csv,
            const RunConfig& config) {
  return run_guarded("edr", [&] {
    const SampleRows peaks = read_rpeaks_csv(rpeaks_csv);
    if (peaks.times.size() < 2) {
      throw std::invalid_argument("need at least two events");
    }
    const fs::path dir = config.out_dir;
    fs::create_directories(dir);

    SampledSignal events;
    events.schedule = infer_schedule(peaks.times);
    events.values = to_complex(peaks.values);
    // Event trains weight each spike by its backward gap: the spike at t_k
    // stands for the interval since the previous event.
    const SqueezeChain chain = run_squeeze_chain(
        events, config, events.schedule.T / 5.0, events.schedule.T, true);

    write_ifset_csv(dir / "edr_ifset.csv", chain.set);
    write_curves_csv(dir / "edr_curves.csv", chain.set, chain.curves);
    json outputs{{"edr_ifset.csv", file_digest(dir / "edr_ifset.csv")},
                 {"edr_curves.csv", file_digest(dir / "edr_curves.csv")}};
    if (config.dump_squeeze) {
      write_squeeze_csv(dir / "edr_squeeze.csv", chain.map);
      outputs["edr_squeeze.csv"] = file_digest(dir / "edr_squeeze.csv");
    }

    const double rate = static_cast<double>(peaks.times.size() - 1) /
                        (peaks.times.back() - peaks.times.front());
    json derived{{"event", chain.derived},
                 {"mean_event_rate_hz", rate}};
    json inputs{{rpeaks_csv.string(), file_digest(rpeaks_csv)}};
    json args{{"rpeaks", rpeaks_csv.string()}};

    if (respiration_csv) {
      const SampleRows resp = read_samples_csv(*respiration_csv);
      const UniformSeries series = uniform_series(resp.times, resp.values);
      inputs[respiration_csv->string()] = file_digest(*respiration_csv);
      args["respiration"] = respiration_csv->string();

      // Squeezed IF of the dense reference channel. Its impulse grid is the
      // channel's own sample step, and columns every 0.25 s are plenty for
      // respiratory rates.
      SampledSignal rsig;
      rsig.schedule = infer_schedule(resp.times);
      rsig.values = to_complex(resp.values);
      const SqueezeChain rchain =
          run_squeeze_chain(rsig, config, series.dt, 0.25, false);
      write_ifset_csv(dir / "resp_ifset.csv", rchain.set);

      // Analytic-signal IF of the same channel.
      const std::vector<double> ifh = hilbert_if(series);
      write_samples_csv(dir / "resp_ifh.csv", resp.times, ifh);

      // Aligned table on the event-train columns. Members are matched to
      // the analytic-signal IF so all three estimates describe the same
      // underlying modulation row by row; empty fields mean no candidate.
      std::ofstream cmp(dir / "edr_vs_resp.csv", std::ios::binary);
      cmp << "t,edr_xi,resp_xi,resp_ifh\n";
      for (std::size_t i = 0; i < chain.set.times.size(); ++i) {
        const double t = chain.set.times[i];
        const double ref = interp_uniform(series, ifh, t);
        cmp << format_double(t) << ',';
        double xi;
        if (nearest_member(chain.set.members[i], ref, &xi)) {
          cmp << format_double(xi);
        }
        cmp << ',';
        if (!rchain.set.times.empty()) {
          const auto it = std::lower_bound(rchain.set.times.begin(),
                                           rchain.set.times.end(), t);
          auto j = static_cast<std::size_t>(
              std::distance(rchain.set.times.begin(), it));
          if (j == rchain.set.times.size() ||
              (j > 0 && t - rchain.set.times[j - 1] < rchain.set.times[j] - t)) {
            --j;
          }
          if (nearest_member(rchain.set.members[j], ref, &xi)) {
            cmp << format_double(xi);
          }
        }
        cmp << ',';
        if (std::isfinite(ref)) {
          cmp << format_double(ref);
        }
        cmp << '\n';
      }
      cmp.close();

      outputs["resp_ifset.csv"] = file_digest(dir / "resp_ifset.csv");
      outputs["resp_ifh.csv"] = file_digest(dir / "resp_ifh.csv");
      outputs["edr_vs_resp.csv"] = file_digest(dir / "edr_vs_resp.csv");
      derived["resp"] = rchain.derived;
      derived["resp_count"] = resp.times.size();
    }

    json manifest;
    manifest["args"] = std::move(args);
    manifest["config"] = config_json(config);
    manifest["derived"] = std::move(derived);
    manifest["inputs"] = std::move(inputs);
    manifest["outputs"] = std::move(outputs);
    write_manifest(dir, "edr", std::move(manifest));
    return kOk;
  });
}

int cmd_analyze(int figure_id, const RunConfig& config) {
  if (config.method != "ss" && config.method != "bl" &&
      config.method != "both") {
    std::cerr << "analyze: method must be ss, bl, or both\n";
    return kUsage;
  }
  int rc = cmd_gen(figure_id, config);
  if (rc != kOk) return rc;
  const fs::path dir = config.out_dir;
  const fs::path samples =
      dir / ("fig" + std::to_string(figure_id) + "_samples.csv");
  const std::string truth = std::to_string(figure_id);

  json metrics;
  if (config.method == "ss" || config.method == "both") {
    rc = cmd_ss(samples, config);
    if (rc != kOk) return rc;
    rc = run_guarded("analyze", [&] {
      return compare_impl(dir / "ifset.csv", truth, config, "metrics_ss.csv",
                          false);
    });
    if (rc != kOk) return rc;
    metrics["ss"] = "metrics_ss.csv";
  }
  if (config.method == "bl" || config.method == "both") {
    rc = cmd_bl(samples, config);
    if (rc != kOk) return rc;
    rc = run_guarded("analyze", [&] {
      return compare_impl(dir / "trace.csv", truth, config, "metrics_bl.csv",
                          false);
    });
    if (rc != kOk) return rc;
    metrics["bl"] = "metrics_bl.csv";
  }

  return run_guarded("analyze", [&] {
    json outputs = json::object();
    for (const auto& [method, name] : metrics.items()) {
      outputs[name.get<std::string>()] =
          file_digest(dir / name.get<std::string>());
    }
    json manifest;
    manifest["args"] = json{{"figure", figure_id}};
    manifest["config"] = config_json(config);
    manifest["derived"] = json{{"metrics_files", metrics}};
    manifest["inputs"] = json::object();
    manifest["outputs"] = std::move(outputs);
    write_manifest(dir, "analyze", std::move(manifest));
    return kOk;
  });
}

int cmd_rerun(const fs::path& manifest_json) {
  int parsed = run_guarded("rerun", [&] {
    std::ifstream in(manifest_json, std::ios::binary);
    if (!in) {
      throw CsvError("cannot open " + manifest_json.string(), 0);
    }
    const json j = json::parse(in);
    const auto command = j.at("command").get<std::string>();
    const RunConfig config = config_from_json(j.at("config"));
    const json& args = j.at("args");

    if (command == "gen") {
      return cmd_gen(args.at("figure").get<int>(), config);
    }
    if (command == "gen-edr") {
      return cmd_gen_edr(args.at("t0").get<double>(),
                         args.at("t1").get<double>(), config);
    }
    if (command == "ss") {
      return cmd_ss(args.at("samples").get<std::string>(), config);
    }
    if (command == "bl") {
      return cmd_bl(args.at("samples").get<std::string>(), config);
    }
    if (command == "compare") {
      return cmd_compare(args.at("input").get<std::string>(),
                         args.at("truth").get<std::string>(), config);
    }
    if (command == "edr") {
      std::optional<fs::path> resp;
      if (args.contains("respiration")) {
        resp = args.at("respiration").get<std::string>();
      }
      return cmd_edr(args.at("rpeaks").get<std::string>(), resp, config);
    }
    if (command == "analyze") {
      return cmd_analyze(args.at("figure").get<int>(), config);
    }
    std::cerr << "rerun: unknown command " << command << "\n";
    return static_cast<int>(kUsage);
  });
  return parsed;
}

}  // namespace nusq::cli
