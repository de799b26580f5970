#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polar/channel.hpp"
#include "polar/code_spec.hpp"
#include "polar/crc.hpp"
#include "polar/flip.hpp"

namespace polar {

enum class DecoderKind { kSc, kScflip1, kScflip2, kOracle1, kOracle2, kOracle3 };

const char* decoder_name(DecoderKind kind);
const char* metric_name(MetricKind kind);

// Monte-Carlo campaign configuration. Every statistic produced from a config
// is a pure function of (config, seed): frame i always draws from
// FrameRng(seed, i) and aggregation is counter-based, so results are
// bit-identical for any worker count.
struct SimConfig {
  int n = 10;
  int K = 512;
  int r = 16;
  CrcSpec crc{};
  std::vector<double> snr_db;
  DecoderKind decoder = DecoderKind::kScflip1;
  FlipConfig flip{};
  std::uint64_t min_errors = 200;
  std::uint64_t max_frames = 10'000'000;
  std::uint64_t seed = 0x5EED;
  int workers = 0;              // 0 = hardware concurrency
  std::string out_path;         // empty = no CSV output
  std::string info_set_file;    // optional import instead of GA construction

  double rate() const;          // K / 2^n
  void validate() const;
};

struct SnrPointReport {
  double snr_db = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  double fer = 0.0;
  double fer_ci_lo = 0.0;
  double fer_ci_hi = 1.0;
  OrderHistogram order_hist;              // D(omega), buckets 0..4 and 5+
  std::uint64_t initial_failures = 0;     // initial SC attempt failed CRC
  std::uint64_t extra_attempts = 0;       // sum of (attempts_used - 1)
  std::vector<std::uint64_t> attempts_hist;  // index = attempts_used
  double t_ave = 0.0;   // mean extra attempts given initial failure
  double nc_ave = 1.0;  // 1 + fer_sc * t_ave
  double throughput_fps = 0.0;

  double fer_sc() const;  // initial-attempt failure fraction
};

struct SimReport {
  SimConfig config;
  std::vector<SnrPointReport> points;
};

// FER campaign over all SNR points; the info set is rebuilt per point at
// that SNR. A frame error is a payload mismatch (CRC collisions count as
// errors). Rows are appended to config.out_path incrementally.
SimReport run_fer(const SimConfig& config);

// ---- order-conditioned studies ------------------------------------------

// Noise realizations of order 1 and 2 recorded for offline metric studies.
// abs_llrs holds |L| of the relevant SC trajectory, aligned with info_set:
// the initial (unflipped) attempt for order 1, the first-flip-corrected
// attempt for order 2.
struct Order1Sample {
  std::vector<double> abs_llrs;
  int cge = -1;
};

struct Order2Sample {
  std::vector<double> abs_llrs;
  int first_cge = -1;
  int second_cge = -1;
};

struct OrderSamples {
  CodeSpec spec;
  double snr_db = 0.0;
  std::uint64_t total_frames = 0;
  std::uint64_t order1_seen = 0;  // counted even when not recorded
  std::uint64_t order2_seen = 0;
  OrderHistogram hist;            // D(omega) over all scanned frames
  std::vector<Order1Sample> order1;
  std::vector<Order2Sample> order2;

  double d1() const;  // order-1 fraction of scanned frames
  double d2() const;
};

// Scans frames at the single configured SNR point until at least
// order1_target / order2_target samples of each requested kind are collected
// (a zero target disables that kind) or max_frames is reached.
OrderSamples collect_order_samples(const SimConfig& config,
                                   std::uint64_t order1_target,
                                   std::uint64_t order2_target);

struct LossPoint {
  int t1 = 0;
  double conditional = 0.0;    // P(cge not in first t1 candidates | order 1)
  double unconditional = 0.0;  // above times D(1)
};

std::vector<LossPoint> evaluate_loss(const OrderSamples& samples,
                                     MetricKind metric, double alpha,
                                     const std::vector<int>& t1_grid);

struct LossReport {
  OrderSamples samples;  // note: trajectories retained for reuse
  MetricKind metric;
  double alpha;
  std::vector<LossPoint> points;
};

// Fig.-2-style study: loss of order 1 as a function of the list size.
LossReport run_loss_of_order1(const SimConfig& config,
                              const std::vector<int>& t1_grid,
                              std::uint64_t order1_target = 10000);

struct AlphaPoint {
  double alpha = 0.0;
  double hit_rate = 0.0;  // P(cge within the top top_t candidates)
  double unconditional_loss = 0.0;
};

// order 1: ranks each sample's cge on the initial trajectory (k1 = -1);
// order 2: ranks the second cge on the branch trajectory (k1 = first cge).
std::vector<AlphaPoint> evaluate_alpha(const OrderSamples& samples, int order,
                                       const std::vector<double>& alpha_grid,
                                       int top_t);

double best_alpha(const std::vector<AlphaPoint>& points);

struct AlphaReport {
  int order = 1;
  int top_t = 0;
  std::uint64_t sample_count = 0;
  std::uint64_t total_frames = 0;
  std::vector<AlphaPoint> points;
  double best = 0.0;
};

AlphaReport sweep_alpha(const SimConfig& config,
                        const std::vector<double>& alpha_grid, int order,
                        std::uint64_t target_samples = 10000);

// ---- complexity ----------------------------------------------------------

struct ComplexityRow {
  double snr_db = 0.0;
  std::uint64_t frames = 0;
  double fer_sc = 0.0;
  double t_ave = 0.0;
  double nc_ave = 0.0;
  double mean_attempts = 0.0;  // must equal nc_ave up to rounding
};

std::vector<ComplexityRow> measure_complexity(const SimConfig& config);

// ---- CSV ------------------------------------------------------------------

// simulate schema:
// snr_db,decoder,metric,t1,t21,t22,alpha1,alpha2,frames,frame_errors,fer,
// fer_ci_lo,fer_ci_hi,d0,d1,d2,d3,d4,d5plus,t_ave,nc_ave,seed
std::string sim_csv_header();
std::string sim_csv_row(const SimConfig& config, const SnrPointReport& point);

}  // namespace polar
