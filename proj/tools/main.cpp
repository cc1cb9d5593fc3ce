#include <CLI11.hpp>

#include <optional>
#include <string>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace nusq::cli;

  CLI::App app{
      "nusq: instantaneous-frequency recovery from nonuniformly sampled "
      "multicomponent signals"};
  app.require_subcommand(1);
  // Options live on the root so they may appear before or after the
  // subcommand name; fallthrough routes them up from the subcommand scope.
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  RunConfig config;
  app.add_option("--method", config.method,
                 "Pipeline for analyze: ss, bl, or both")
      ->check(CLI::IsMember({"ss", "bl", "both"}));
  app.add_option("--window-scale", config.window_scale,
                 "Gaussian window exponent scale")
      ->check(CLI::PositiveNumber);
  app.add_option("--alpha", config.alpha, "Squeeze bin width in Hz")
      ->check(CLI::PositiveNumber);
  app.add_option("--gamma", config.gamma,
                 "Transform magnitude threshold")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--grid-dt", config.grid_dt,
                 "Impulse grid step; 0 derives T/5");
  app.add_option("--eta-max", config.eta_max,
                 "Top of the analysis band; 0 derives 1/(2T)");
  app.add_option("--support-floor", config.support_floor,
                 "Minimum squeezed mass kept in the IF set");
  app.add_option("--order-N", config.order_N,
                 "Reconstruction half-order; -1 sizes to the record");
  app.add_option("--basis", config.basis, "Reconstruction basis: sinc or dft")
      ->check(CLI::IsMember({"sinc", "dft"}));
  app.add_option("--seed", config.seed, "Random seed for generators");
  app.add_option("--tprime", config.tprime,
                 "Sampling jitter bound; negative keeps the preset value");
  app.add_option("--out-dir", config.out_dir, "Output directory");
  app.add_flag("--dump-squeeze", config.dump_squeeze,
               "Also write the squeezed time-frequency map");
  app.add_option("--edge-exclude", config.edge_exclude,
                 "Seconds dropped at each record end by compare")
      ->check(CLI::NonNegativeNumber);

  int figure = 0;
  std::string samples, if_csv, truth, rpeaks, resp, manifest;
  double t0 = 0.0, t1 = 480.0;

  auto* gen = app.add_subcommand("gen", "Generate a built-in experiment");
  gen->add_option("figure", figure, "Experiment id 1..7")
      ->required()
      ->check(CLI::Range(1, 7));

  auto* gen_edr =
      app.add_subcommand("gen-edr", "Generate the synthetic event-train fixture");
  gen_edr->add_option("--t0", t0, "Record start in seconds");
  gen_edr->add_option("--t1", t1, "Record end in seconds");

  auto* ss = app.add_subcommand(
      "ss", "Squeezed-transform IF extraction from a sample file");
  ss->add_option("samples", samples, "Input t,value CSV")->required();

  auto* bl = app.add_subcommand(
      "bl", "Bandlimited reconstruction and analytic-extension IF");
  bl->add_option("samples", samples, "Input t,value CSV")->required();

  auto* compare =
      app.add_subcommand("compare", "Error metrics against a ground truth");
  compare->add_option("input", if_csv, "IF-set or trace CSV")->required();
  compare->add_option("truth", truth, "Truth id: 1..7 or 6avg")->required();

  auto* edr =
      app.add_subcommand("edr", "Event-train IF extraction (e.g. R peaks)");
  edr->add_option("rpeaks", rpeaks, "Input t,amplitude CSV")->required();
  edr->add_option("respiration", resp, "Optional dense reference t,value CSV");

  auto* analyze = app.add_subcommand(
      "analyze", "gen + ss/bl + compare for one experiment");
  analyze->add_option("figure", figure, "Experiment id 1..7")
      ->required()
      ->check(CLI::Range(1, 7));

  auto* rerun =
      app.add_subcommand("rerun", "Re-execute the run recorded in a manifest");
  rerun->add_option("manifest", manifest, "Manifest JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (gen->parsed()) return cmd_gen(figure, config);
  if (gen_edr->parsed()) return cmd_gen_edr(t0, t1, config);
  if (ss->parsed()) return cmd_ss(samples, config);
  if (bl->parsed()) return cmd_bl(samples, config);
  if (compare->parsed()) return cmd_compare(if_csv, truth, config);
  if (edr->parsed()) {
    std::optional<std::filesystem::path> resp_path;
    if (!resp.empty()) resp_path = resp;
    return cmd_edr(rpeaks, resp_path, config);
  }
  if (analyze->parsed()) return cmd_analyze(figure, config);
  if (rerun->parsed()) return cmd_rerun(manifest);
  return kUsage;
}
