// Monte-Carlo simulator for the polar SCFlip decoder family: FER campaigns,
// oracle lower bounds, loss-of-order-1 studies, alpha sweeps, and complexity
// measurements over a BI-AWGN channel.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polar/channel.hpp"
#include "polar/encode.hpp"
#include "polar/sim.hpp"

using namespace polar;

namespace {

const std::map<std::string, DecoderKind> kDecoderMap{
    {"sc", DecoderKind::kSc},           {"scflip1", DecoderKind::kScflip1},
    {"scflip2", DecoderKind::kScflip2}, {"oracle1", DecoderKind::kOracle1},
    {"oracle2", DecoderKind::kOracle2}, {"oracle3", DecoderKind::kOracle3}};

const std::map<std::string, MetricKind> kMetricMap{
    {"llr", MetricKind::kLlrAbs}, {"malpha", MetricKind::kMAlpha}};

struct CliConfig {
  SimConfig sim;
  std::string crc_hex = "0x8005";

  void finalize() {
    sim.crc.r = sim.r;
    sim.crc.poly = std::stoull(crc_hex, nullptr, 16);
  }
};

void add_code_options(CLI::App* cmd, CliConfig& cli) {
  cmd->add_option("--n", cli.sim.n, "log2 blocklength")->capture_default_str();
  cmd->add_option("--k", cli.sim.K, "information bits")->capture_default_str();
  cmd->add_option("--r", cli.sim.r, "CRC width in bits")->capture_default_str();
  cmd->add_option("--crc", cli.crc_hex,
                  "CRC generator, hex word below the leading x^r term")
      ->capture_default_str();
  cmd->add_option("--seed", cli.sim.seed, "master seed")->capture_default_str();
  cmd->add_option("--workers", cli.sim.workers, "worker threads (0 = all cores)")
      ->capture_default_str();
  cmd->set_config("--config", "",
                  "flat key=value config file; command-line flags override it");
}

void add_snr_option(CLI::App* cmd, CliConfig& cli, bool single) {
  auto* opt = cmd->add_option("--snr", cli.sim.snr_db, "Eb/N0 points in dB")
                  ->delimiter(',')
                  ->required();
  if (single) opt->expected(1);
}

void add_flip_options(CLI::App* cmd, CliConfig& cli) {
  cmd->add_option("--t1", cli.sim.flip.t1, "max single-flip attempts")
      ->capture_default_str();
  cmd->add_option("--t21", cli.sim.flip.t21, "first-flip branches for order 2")
      ->capture_default_str();
  cmd->add_option("--t22", cli.sim.flip.t22, "second flips per branch")
      ->capture_default_str();
  cmd->add_option("--alpha1", cli.sim.flip.alpha1, "metric alpha, first flips")
      ->capture_default_str();
  cmd->add_option("--alpha2", cli.sim.flip.alpha2, "metric alpha, second flips")
      ->capture_default_str();
  cmd->add_option("--metric", cli.sim.flip.metric, "flip metric")
      ->transform(CLI::CheckedTransformer(kMetricMap, CLI::ignore_case))
      ->default_str("malpha");
}

void add_stop_options(CLI::App* cmd, CliConfig& cli) {
  cmd->add_option("--min-errors", cli.sim.min_errors,
                  "stop a point after this many frame errors")
      ->capture_default_str();
  cmd->add_option("--max-frames", cli.sim.max_frames, "frame cap per point")
      ->capture_default_str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

int cmd_simulate(CliConfig& cli) {
  cli.finalize();
  SimReport report = run_fer(cli.sim);
  std::cout << sim_csv_header() << '\n';
  for (const auto& p : report.points)
    std::cout << sim_csv_row(report.config, p) << '\n';
  return 0;
}

int cmd_loss1(CliConfig& cli, const std::vector<int>& t1_grid,
              std::uint64_t order1_frames) {
  cli.finalize();
  LossReport rep = run_loss_of_order1(cli.sim, t1_grid, order1_frames);
  const auto& s = rep.samples;
  std::printf("# snr=%g metric=%s alpha=%g order1_frames=%zu total_frames=%llu "
              "D(1)=%.6g\n",
              s.snr_db, metric_name(rep.metric), rep.alpha, s.order1.size(),
              static_cast<unsigned long long>(s.total_frames), s.d1());
  std::string header =
      "snr_db,metric,alpha,t1,order1_frames,total_frames,d1,cond_loss,"
      "uncond_loss,seed";
  std::cout << header << '\n';
  std::ofstream csv;
  if (!cli.sim.out_path.empty()) {
    csv = open_out(cli.sim.out_path);
    csv << header << '\n';
  }
  for (const auto& p : rep.points) {
    char row[256];
    std::snprintf(row, sizeof(row), "%g,%s,%g,%d,%zu,%llu,%.9g,%.9g,%.9g,%llu",
                  s.snr_db, metric_name(rep.metric), rep.alpha, p.t1,
                  s.order1.size(),
                  static_cast<unsigned long long>(s.total_frames), s.d1(),
                  p.conditional, p.unconditional,
                  static_cast<unsigned long long>(cli.sim.seed));
    std::cout << row << '\n';
    if (csv.is_open()) csv << row << '\n';
  }
  return 0;
}

int cmd_sweep_alpha(CliConfig& cli, const std::vector<double>& alpha_grid,
                    int order, std::uint64_t target_frames) {
  cli.finalize();
  AlphaReport rep = sweep_alpha(cli.sim, alpha_grid, order, target_frames);
  std::printf("# snr=%g order=%d top_t=%d samples=%llu total_frames=%llu\n",
              cli.sim.snr_db[0], rep.order, rep.top_t,
              static_cast<unsigned long long>(rep.sample_count),
              static_cast<unsigned long long>(rep.total_frames));
  std::string header =
      "snr_db,order,alpha,top_t,samples,total_frames,hit_rate,uncond_loss,seed";
  std::cout << header << '\n';
  std::ofstream csv;
  if (!cli.sim.out_path.empty()) {
    csv = open_out(cli.sim.out_path);
    csv << header << '\n';
  }
  for (const auto& p : rep.points) {
    char row[256];
    std::snprintf(row, sizeof(row), "%g,%d,%g,%d,%llu,%llu,%.9g,%.9g,%llu",
                  cli.sim.snr_db[0], rep.order, p.alpha, rep.top_t,
                  static_cast<unsigned long long>(rep.sample_count),
                  static_cast<unsigned long long>(rep.total_frames), p.hit_rate,
                  p.unconditional_loss,
                  static_cast<unsigned long long>(cli.sim.seed));
    std::cout << row << '\n';
    if (csv.is_open()) csv << row << '\n';
  }
  std::printf("best_alpha=%g\n", rep.best);
  return 0;
}

int cmd_complexity(CliConfig& cli) {
  cli.finalize();
  std::vector<ComplexityRow> rows = measure_complexity(cli.sim);
  std::string header =
      "snr_db,decoder,metric,t1,t21,t22,alpha1,alpha2,frames,fer_sc,t_ave,"
      "nc_ave,mean_attempts,seed";
  std::cout << header << '\n';
  std::ofstream csv;
  if (!cli.sim.out_path.empty()) {
    csv = open_out(cli.sim.out_path);
    csv << header << '\n';
  }
  for (const auto& r : rows) {
    char row[384];
    std::snprintf(row, sizeof(row),
                  "%g,%s,%s,%d,%d,%d,%g,%g,%llu,%.9g,%.9g,%.9g,%.9g,%llu",
                  r.snr_db, decoder_name(cli.sim.decoder),
                  metric_name(cli.sim.flip.metric), cli.sim.flip.t1,
                  cli.sim.flip.t21, cli.sim.flip.t22, cli.sim.flip.alpha1,
                  cli.sim.flip.alpha2,
                  static_cast<unsigned long long>(r.frames), r.fer_sc, r.t_ave,
                  r.nc_ave, r.mean_attempts,
                  static_cast<unsigned long long>(cli.sim.seed));
    std::cout << row << '\n';
    if (csv.is_open()) csv << row << '\n';
  }
  return 0;
}

int cmd_info_set(CliConfig& cli) {
  cli.finalize();
  cli.sim.validate();
  CodeSpec spec =
      make_code_spec(cli.sim.n, cli.sim.K, cli.sim.r, cli.sim.snr_db[0]);
  save_info_set(spec, cli.sim.snr_db[0], cli.sim.out_path);
  std::printf("wrote %s (N=%d K=%d r=%d design_snr=%g)\n",
              cli.sim.out_path.c_str(), spec.N, spec.K, spec.r,
              cli.sim.snr_db[0]);
  return 0;
}

int cmd_trace(CliConfig& cli, std::uint64_t frame, std::vector<int> flips) {
  cli.finalize();
  cli.sim.validate();
  CodeSpec spec =
      make_code_spec(cli.sim.n, cli.sim.K, cli.sim.r, cli.sim.snr_db[0]);
  ChannelParams params =
      ChannelParams::from_ebn0(cli.sim.snr_db[0], cli.sim.rate());

  FrameRng rng(cli.sim.seed, frame);
  BitVec msg(cli.sim.K);
  for (auto& bit : msg) bit = static_cast<std::uint8_t>(rng.next_bit());
  BitVec payload = crc_append(cli.sim.crc, msg);
  BitVec u = insert_payload(spec, payload);
  BitVec x = encode(spec, u);
  RealVec y = transmit(x, params, rng);
  LlrVec llrs = channel_llr(y, params);

  ScDecoder dec(spec);
  FrameRng dec_rng = rng.fork(1);
  DecodeOutcome out = dec.decode(llrs, flips, dec_rng);
  out.crc_pass = payload_crc_ok(spec, cli.sim.crc, out.u_hat);

  if (cli.sim.out_path.empty()) {
    dump_trace(dec, out, std::cout);
  } else {
    auto os = open_out(cli.sim.out_path);
    dump_trace(dec, out, os);
  }
  std::fprintf(stderr, "frame=%llu crc=%s exact=%s\n",
               static_cast<unsigned long long>(frame),
               out.crc_pass ? "pass" : "fail",
               extract_payload(spec, out.u_hat) == payload ? "yes" : "no");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polar SCFlip decoder simulator"};
  app.require_subcommand(1);

  CliConfig cli;
  std::vector<int> t1_grid{1, 2, 3, 4, 5, 6, 8, 10, 13, 16, 20, 25, 32, 40, 50};
  std::vector<double> alpha_grid;
  for (int i = 1; i <= 20; ++i) alpha_grid.push_back(0.05 * i);
  int sweep_order = 1;
  std::uint64_t order1_frames = 10000;
  std::uint64_t target_frames = 10000;
  std::uint64_t trace_frame = 0;
  std::vector<int> trace_flips;

  auto* simulate = app.add_subcommand("simulate", "FER campaign over SNR points");
  add_code_options(simulate, cli);
  add_snr_option(simulate, cli, false);
  add_flip_options(simulate, cli);
  add_stop_options(simulate, cli);
  simulate->add_option("--decoder", cli.sim.decoder, "decoder under test")
      ->transform(CLI::CheckedTransformer(kDecoderMap, CLI::ignore_case))
      ->default_str("scflip1");
  simulate->add_option("--info-set", cli.sim.info_set_file,
                       "import an info set file instead of GA construction");
  simulate->add_option("--out", cli.sim.out_path, "CSV output path (appended)");

  auto* loss1 = app.add_subcommand(
      "loss1", "loss of order 1 as a function of the list size T1");
  add_code_options(loss1, cli);
  add_snr_option(loss1, cli, true);
  add_flip_options(loss1, cli);
  add_stop_options(loss1, cli);
  loss1->add_option("--t1-grid", t1_grid, "list sizes to evaluate")
      ->delimiter(',')
      ->capture_default_str();
  loss1->add_option("--order1-frames", order1_frames,
                    "order-1 realizations to collect")
      ->capture_default_str();
  loss1->add_option("--out", cli.sim.out_path, "CSV output path");

  auto* sweep = app.add_subcommand("sweep-alpha",
                                   "optimize the metric parameter alpha");
  add_code_options(sweep, cli);
  add_snr_option(sweep, cli, true);
  add_flip_options(sweep, cli);
  add_stop_options(sweep, cli);
  sweep->add_option("--alpha-grid", alpha_grid, "alpha values to evaluate")
      ->delimiter(',');
  sweep->add_option("--order", sweep_order, "flip order to optimize (1 or 2)")
      ->capture_default_str();
  sweep->add_option("--target-frames", target_frames,
                    "order-conditioned realizations to collect")
      ->capture_default_str();
  sweep->add_option("--out", cli.sim.out_path, "CSV output path");

  auto* complexity =
      app.add_subcommand("complexity", "average attempt counts and N_c");
  add_code_options(complexity, cli);
  add_snr_option(complexity, cli, false);
  add_flip_options(complexity, cli);
  add_stop_options(complexity, cli);
  complexity->add_option("--decoder", cli.sim.decoder, "scflip1 or scflip2")
      ->transform(CLI::CheckedTransformer(kDecoderMap, CLI::ignore_case))
      ->default_str("scflip1");
  complexity->add_option("--out", cli.sim.out_path, "CSV output path");

  auto* info_set =
      app.add_subcommand("info-set", "export a GA-constructed info set");
  add_code_options(info_set, cli);
  add_snr_option(info_set, cli, true);
  info_set->add_option("--out", cli.sim.out_path, "output path")->required();

  auto* trace = app.add_subcommand("trace", "dump one frame's decode trace");
  add_code_options(trace, cli);
  add_snr_option(trace, cli, true);
  trace->add_option("--frame", trace_frame, "frame index")
      ->capture_default_str();
  trace->add_option("--flips", trace_flips, "positions to flip")->delimiter(',');
  trace->add_option("--out", cli.sim.out_path, "trace CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(cli);
    if (loss1->parsed()) return cmd_loss1(cli, t1_grid, order1_frames);
    if (sweep->parsed())
      return cmd_sweep_alpha(cli, alpha_grid, sweep_order, target_frames);
    if (complexity->parsed()) return cmd_complexity(cli);
    if (info_set->parsed()) return cmd_info_set(cli);
    if (trace->parsed()) return cmd_trace(cli, trace_frame, trace_flips);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
