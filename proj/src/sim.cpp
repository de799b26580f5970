#include "polar/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <thread>

#include "polar/encode.hpp"
#include "polar/stats.hpp"

namespace polar {

namespace {

// Frames are simulated in fixed batches; the stop rule is evaluated only at
// batch boundaries, so the set of simulated frames is independent of the
// worker count.
constexpr std::uint64_t kBatchFrames = 4096;

int effective_workers(const SimConfig& cfg) {
  if (cfg.workers > 0) return cfg.workers;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

struct PointContext {
  const SimConfig* cfg = nullptr;
  CodeSpec spec;
  ChannelParams params;
};

PointContext make_point_context(const SimConfig& cfg, double snr_db) {
  PointContext ctx;
  ctx.cfg = &cfg;
  if (!cfg.info_set_file.empty()) {
    ctx.spec = load_info_set(cfg.info_set_file);
    if (ctx.spec.N != (1 << cfg.n) || ctx.spec.K != cfg.K ||
        ctx.spec.r != cfg.r)
      throw std::invalid_argument("sim: info set file does not match n/K/r");
  } else {
    ctx.spec = make_code_spec(cfg.n, cfg.K, cfg.r, snr_db);
  }
  ctx.params = ChannelParams::from_ebn0(snr_db, cfg.rate());
  return ctx;
}

struct Frame {
  BitVec payload;  // K+r
  BitVec u;        // N
  LlrVec llrs;     // N
};

Frame make_frame(const PointContext& ctx, FrameRng& rng) {
  const SimConfig& cfg = *ctx.cfg;
  BitVec msg(cfg.K);
  for (auto& bit : msg) bit = static_cast<std::uint8_t>(rng.next_bit());
  Frame f;
  f.payload = crc_append(cfg.crc, msg);
  f.u = insert_payload(ctx.spec, f.payload);
  BitVec x = encode(ctx.spec, f.u);
  RealVec y = transmit(x, ctx.params, rng);
  f.llrs = channel_llr(y, ctx.params);
  return f;
}

bool payload_mismatch(const PointContext& ctx, const Frame& f,
                      const BitVec& u_hat) {
  return extract_payload(ctx.spec, u_hat) != f.payload;
}

int oracle_bound(DecoderKind kind) {
  switch (kind) {
    case DecoderKind::kOracle1: return 1;
    case DecoderKind::kOracle2: return 2;
    case DecoderKind::kOracle3: return 3;
    default: return -1;
  }
}

struct PointAccum {
  std::uint64_t frames = 0;
  std::uint64_t errors = 0;
  std::uint64_t initial_failures = 0;
  std::uint64_t extra_attempts = 0;
  OrderHistogram hist;
  std::vector<std::uint64_t> attempts_hist;

  explicit PointAccum(int max_attempts)
      : attempts_hist(max_attempts + 1, 0) {}

  void merge_and_clear(PointAccum& o) {
    frames += o.frames;
    errors += o.errors;
    initial_failures += o.initial_failures;
    extra_attempts += o.extra_attempts;
    for (size_t i = 0; i < hist.buckets.size(); ++i)
      hist.buckets[i] += o.hist.buckets[i];
    for (size_t i = 0; i < attempts_hist.size(); ++i)
      attempts_hist[i] += o.attempts_hist[i];
    o = PointAccum(static_cast<int>(attempts_hist.size()) - 1);
  }
};

void simulate_fer_frame(const PointContext& ctx, std::uint64_t frame_index,
                        ScDecoder& dec, bool with_hist, PointAccum& acc) {
  const SimConfig& cfg = *ctx.cfg;
  FrameRng rng(cfg.seed, frame_index);
  Frame f = make_frame(ctx, rng);
  FrameRng dec_rng = rng.fork(1);
  FrameRng genie_rng = rng.fork(2);

  bool error = false;
  bool initial_fail = false;
  int attempts = 1;
  int order = -1;

  const int bound = oracle_bound(cfg.decoder);
  if (bound > 0) {
    OracleResult res = dec.oracle(f.llrs, f.u, genie_rng);
    order = res.order;
    error = order > bound;
    initial_fail = order >= 1;
  } else if (cfg.decoder == DecoderKind::kSc) {
    DecodeOutcome out = dec.decode(f.llrs, {}, dec_rng);
    out.crc_pass = payload_crc_ok(ctx.spec, cfg.crc, out.u_hat);
    initial_fail = !out.crc_pass;
    error = payload_mismatch(ctx, f, out.u_hat);
  } else {
    FlipOutcome out = (cfg.decoder == DecoderKind::kScflip1)
                          ? scflip1(dec, cfg.crc, cfg.flip, f.llrs, dec_rng)
                          : scflip2(dec, cfg.crc, cfg.flip, f.llrs, dec_rng);
    attempts = out.attempts_used;
    initial_fail = !(attempts == 1 && out.outcome.crc_pass);
    error = payload_mismatch(ctx, f, out.outcome.u_hat);
  }

  if (with_hist) {
    if (order < 0) order = dec.oracle(f.llrs, f.u, genie_rng).order;
    acc.hist.add(order);
  }
  acc.frames += 1;
  acc.errors += error ? 1 : 0;
  acc.initial_failures += initial_fail ? 1 : 0;
  acc.extra_attempts += attempts - 1;
  acc.attempts_hist[attempts] += 1;
}

SnrPointReport run_point(const SimConfig& cfg, double snr_db, bool with_hist) {
  PointContext ctx = make_point_context(cfg, snr_db);
  const int workers = effective_workers(cfg);
  const int max_attempts =
      (cfg.decoder == DecoderKind::kScflip1 ||
       cfg.decoder == DecoderKind::kScflip2)
          ? cfg.flip.max_attempts()
          : 1;

  std::vector<std::unique_ptr<ScDecoder>> decoders;
  decoders.reserve(workers);
  for (int w = 0; w < workers; ++w)
    decoders.push_back(std::make_unique<ScDecoder>(ctx.spec));

  PointAccum total(max_attempts);
  std::vector<PointAccum> local(workers, PointAccum(max_attempts));

  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t next = 0;
  while (next < cfg.max_frames) {
    const std::uint64_t batch_end = std::min(next + kBatchFrames, cfg.max_frames);
    if (workers == 1) {
      for (std::uint64_t fi = next; fi < batch_end; ++fi)
        simulate_fer_frame(ctx, fi, *decoders[0], with_hist, local[0]);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(workers);
      for (int w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
          for (std::uint64_t fi = next + w; fi < batch_end;
               fi += static_cast<std::uint64_t>(workers))
            simulate_fer_frame(ctx, fi, *decoders[w], with_hist, local[w]);
        });
      for (auto& t : threads) t.join();
    }
    for (int w = 0; w < workers; ++w) total.merge_and_clear(local[w]);
    next = batch_end;
    if (total.errors >= cfg.min_errors) break;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  SnrPointReport rep;
  rep.snr_db = snr_db;
  rep.frames = total.frames;
  rep.frame_errors = total.errors;
  rep.fer = total.frames ? static_cast<double>(total.errors) / total.frames : 0.0;
  BinomialCi ci = clopper_pearson(total.errors, total.frames);
  rep.fer_ci_lo = ci.lo;
  rep.fer_ci_hi = ci.hi;
  rep.order_hist = total.hist;
  rep.initial_failures = total.initial_failures;
  rep.extra_attempts = total.extra_attempts;
  rep.attempts_hist = total.attempts_hist;
  rep.t_ave = total.initial_failures
                  ? static_cast<double>(total.extra_attempts) /
                        total.initial_failures
                  : 0.0;
  rep.nc_ave = 1.0 + rep.fer_sc() * rep.t_ave;
  rep.throughput_fps = elapsed > 0.0 ? total.frames / elapsed : 0.0;
  return rep;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

const char* decoder_name(DecoderKind kind) {
  switch (kind) {
    case DecoderKind::kSc: return "sc";
    case DecoderKind::kScflip1: return "scflip1";
    case DecoderKind::kScflip2: return "scflip2";
    case DecoderKind::kOracle1: return "oracle1";
    case DecoderKind::kOracle2: return "oracle2";
    case DecoderKind::kOracle3: return "oracle3";
  }
  return "?";
}

const char* metric_name(MetricKind kind) {
  return kind == MetricKind::kLlrAbs ? "llr" : "malpha";
}

double SimConfig::rate() const { return static_cast<double>(K) / (1 << n); }

void SimConfig::validate() const {
  if (n < 1 || n > 30) throw std::invalid_argument("SimConfig: n out of range");
  if (K < 1 || r < 0 || K + r > (1 << n))
    throw std::invalid_argument("SimConfig: need 1 <= K, 0 <= r, K+r <= 2^n");
  crc.validate();
  if (crc.r != r)
    throw std::invalid_argument("SimConfig: crc.r must equal r");
  if (snr_db.empty())
    throw std::invalid_argument("SimConfig: need at least one SNR point");
  for (double s : snr_db)
    if (!std::isfinite(s))
      throw std::invalid_argument("SimConfig: SNR points must be finite");
  if (min_errors < 1)
    throw std::invalid_argument("SimConfig: min_errors must be >= 1");
  if (max_frames < min_errors)
    throw std::invalid_argument("SimConfig: max_frames must be >= min_errors");
  flip.validate();
  if (!info_set_file.empty() && snr_db.size() != 1)
    throw std::invalid_argument(
        "SimConfig: an imported info set applies to a single SNR point");
}

double SnrPointReport::fer_sc() const {
  return frames ? static_cast<double>(initial_failures) / frames : 0.0;
}

std::string sim_csv_header() {
  return "snr_db,decoder,metric,t1,t21,t22,alpha1,alpha2,frames,frame_errors,"
         "fer,fer_ci_lo,fer_ci_hi,d0,d1,d2,d3,d4,d5plus,t_ave,nc_ave,seed";
}

std::string sim_csv_row(const SimConfig& cfg, const SnrPointReport& p) {
  std::string row;
  row += format_double(p.snr_db);
  row += ',';
  row += decoder_name(cfg.decoder);
  row += ',';
  row += metric_name(cfg.flip.metric);
  row += ',' + std::to_string(cfg.flip.t1);
  row += ',' + std::to_string(cfg.flip.t21);
  row += ',' + std::to_string(cfg.flip.t22);
  row += ',' + format_double(cfg.flip.alpha1);
  row += ',' + format_double(cfg.flip.alpha2);
  row += ',' + std::to_string(p.frames);
  row += ',' + std::to_string(p.frame_errors);
  row += ',' + format_double(p.fer);
  row += ',' + format_double(p.fer_ci_lo);
  row += ',' + format_double(p.fer_ci_hi);
  for (auto bucket : p.order_hist.buckets) row += ',' + std::to_string(bucket);
  row += ',' + format_double(p.t_ave);
  row += ',' + format_double(p.nc_ave);
  row += ',' + std::to_string(cfg.seed);
  return row;
}

namespace {

// Appends one row per call so partial campaigns survive a crash.
class CsvAppender {
 public:
  explicit CsvAppender(const std::string& path) : path_(path) {
    if (path_.empty()) return;
    std::ifstream probe(path_);
    bool need_header = !probe || probe.peek() == std::ifstream::traits_type::eof();
    probe.close();
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("sim: cannot write " + path_);
    if (need_header) out << sim_csv_header() << '\n';
  }

  void append(const std::string& row) {
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("sim: cannot write " + path_);
    out << row << '\n';
    out.flush();
  }

 private:
  std::string path_;
};

}  // namespace

SimReport run_fer(const SimConfig& cfg) {
  cfg.validate();
  CsvAppender csv(cfg.out_path);
  SimReport report;
  report.config = cfg;
  for (double snr : cfg.snr_db) {
    SnrPointReport p = run_point(cfg, snr, /*with_hist=*/true);
    csv.append(sim_csv_row(cfg, p));
    report.points.push_back(std::move(p));
  }
  return report;
}

double OrderSamples::d1() const {
  return total_frames ? static_cast<double>(order1_seen) / total_frames : 0.0;
}

double OrderSamples::d2() const {
  return total_frames ? static_cast<double>(order2_seen) / total_frames : 0.0;
}

namespace {

struct CollectAccum {
  std::uint64_t frames = 0;
  std::uint64_t order1_seen = 0;
  std::uint64_t order2_seen = 0;
  OrderHistogram hist;
  std::vector<Order1Sample> order1;
  std::vector<Order2Sample> order2;
};

std::vector<double> abs_decision_llrs(const DecodeOutcome& out) {
  std::vector<double> abs(out.decision_llrs.size());
  for (size_t j = 0; j < abs.size(); ++j)
    abs[j] = std::fabs(out.decision_llrs[j]);
  return abs;
}

void simulate_collect_frame(const PointContext& ctx, std::uint64_t frame_index,
                            ScDecoder& dec, bool record1, bool record2,
                            CollectAccum& acc) {
  const SimConfig& cfg = *ctx.cfg;
  FrameRng rng(cfg.seed, frame_index);
  Frame f = make_frame(ctx, rng);
  FrameRng dec_rng = rng.fork(1);
  FrameRng genie_rng = rng.fork(2);
  OracleResult genie = dec.oracle(f.llrs, f.u, genie_rng);

  acc.frames += 1;
  acc.hist.add(genie.order);
  if (genie.order == 1) {
    acc.order1_seen += 1;
    if (record1) {
      DecodeOutcome out = dec.decode(f.llrs, {}, dec_rng);
      acc.order1.push_back({abs_decision_llrs(out), genie.cge_positions[0]});
    }
  } else if (genie.order == 2) {
    acc.order2_seen += 1;
    if (record2) {
      int first = genie.cge_positions[0];
      DecodeOutcome out = dec.decode(f.llrs, {&first, 1}, dec_rng);
      acc.order2.push_back(
          {abs_decision_llrs(out), first, genie.cge_positions[1]});
    }
  }
}

}  // namespace

OrderSamples collect_order_samples(const SimConfig& cfg,
                                   std::uint64_t order1_target,
                                   std::uint64_t order2_target) {
  cfg.validate();
  if (cfg.snr_db.size() != 1)
    throw std::invalid_argument(
        "collect_order_samples: needs a single SNR point");
  const bool record1 = order1_target > 0;
  const bool record2 = order2_target > 0;

  PointContext ctx = make_point_context(cfg, cfg.snr_db[0]);
  const int workers = effective_workers(cfg);
  std::vector<std::unique_ptr<ScDecoder>> decoders;
  for (int w = 0; w < workers; ++w)
    decoders.push_back(std::make_unique<ScDecoder>(ctx.spec));

  OrderSamples samples;
  samples.spec = ctx.spec;
  samples.snr_db = cfg.snr_db[0];

  std::vector<CollectAccum> local(workers);
  std::uint64_t next = 0;
  while (next < cfg.max_frames) {
    const std::uint64_t batch_end = std::min(next + kBatchFrames, cfg.max_frames);
    if (workers == 1) {
      for (std::uint64_t fi = next; fi < batch_end; ++fi)
        simulate_collect_frame(ctx, fi, *decoders[0], record1, record2,
                               local[0]);
    } else {
      std::vector<std::thread> threads;
      for (int w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
          for (std::uint64_t fi = next + w; fi < batch_end;
               fi += static_cast<std::uint64_t>(workers))
            simulate_collect_frame(ctx, fi, *decoders[w], record1, record2,
                                   local[w]);
        });
      for (auto& t : threads) t.join();
    }
    for (auto& acc : local) {
      samples.total_frames += acc.frames;
      samples.order1_seen += acc.order1_seen;
      samples.order2_seen += acc.order2_seen;
      for (size_t i = 0; i < acc.hist.buckets.size(); ++i)
        samples.hist.buckets[i] += acc.hist.buckets[i];
      std::move(acc.order1.begin(), acc.order1.end(),
                std::back_inserter(samples.order1));
      std::move(acc.order2.begin(), acc.order2.end(),
                std::back_inserter(samples.order2));
      acc = CollectAccum{};
    }
    next = batch_end;
    const bool done1 = !record1 || samples.order1.size() >= order1_target;
    const bool done2 = !record2 || samples.order2.size() >= order2_target;
    if (done1 && done2) break;
  }
  return samples;
}

std::vector<LossPoint> evaluate_loss(const OrderSamples& samples,
                                     MetricKind metric, double alpha,
                                     const std::vector<int>& t1_grid) {
  if (samples.order1.empty())
    throw std::invalid_argument("evaluate_loss: no order-1 samples");
  std::vector<int> ranks;
  ranks.reserve(samples.order1.size());
  for (const auto& s : samples.order1) {
    MetricContext ctx{samples.spec.info_set, s.abs_llrs, -1, alpha, metric};
    ranks.push_back(candidate_rank(ctx, s.cge));
  }
  const double d1 = samples.d1();
  std::vector<LossPoint> out;
  out.reserve(t1_grid.size());
  for (int t1 : t1_grid) {
    std::uint64_t missed = 0;
    for (int rank : ranks)
      if (rank >= t1) ++missed;
    LossPoint p;
    p.t1 = t1;
    p.conditional = static_cast<double>(missed) / ranks.size();
    p.unconditional = p.conditional * d1;
    out.push_back(p);
  }
  return out;
}

LossReport run_loss_of_order1(const SimConfig& cfg,
                              const std::vector<int>& t1_grid,
                              std::uint64_t order1_target) {
  cfg.validate();
  if (t1_grid.empty())
    throw std::invalid_argument("run_loss_of_order1: empty t1 grid");
  if (order1_target < 1)
    throw std::invalid_argument("run_loss_of_order1: need a positive target");
  LossReport rep;
  rep.samples = collect_order_samples(cfg, order1_target, 0);
  rep.metric = cfg.flip.metric;
  rep.alpha = cfg.flip.alpha1;
  rep.points = evaluate_loss(rep.samples, rep.metric, rep.alpha, t1_grid);
  return rep;
}

std::vector<AlphaPoint> evaluate_alpha(const OrderSamples& samples, int order,
                                       const std::vector<double>& alpha_grid,
                                       int top_t) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("evaluate_alpha: order must be 1 or 2");
  if (top_t < 1)
    throw std::invalid_argument("evaluate_alpha: need top_t >= 1");
  if (alpha_grid.empty())
    throw std::invalid_argument("evaluate_alpha: empty alpha grid");
  const std::uint64_t count =
      order == 1 ? samples.order1.size() : samples.order2.size();
  if (count == 0)
    throw std::invalid_argument("evaluate_alpha: no samples of that order");

  std::vector<AlphaPoint> out;
  out.reserve(alpha_grid.size());
  const double d = order == 1 ? samples.d1() : samples.d2();
  for (double alpha : alpha_grid) {
    std::uint64_t hits = 0;
    if (order == 1) {
      for (const auto& s : samples.order1) {
        MetricContext ctx{samples.spec.info_set, s.abs_llrs, -1, alpha,
                          MetricKind::kMAlpha};
        if (candidate_rank(ctx, s.cge) < top_t) ++hits;
      }
    } else {
      for (const auto& s : samples.order2) {
        MetricContext ctx{samples.spec.info_set, s.abs_llrs, s.first_cge,
                          alpha, MetricKind::kMAlpha};
        if (candidate_rank(ctx, s.second_cge) < top_t) ++hits;
      }
    }
    AlphaPoint p;
    p.alpha = alpha;
    p.hit_rate = static_cast<double>(hits) / count;
    p.unconditional_loss = (1.0 - p.hit_rate) * d;
    out.push_back(p);
  }
  return out;
}

double best_alpha(const std::vector<AlphaPoint>& points) {
  if (points.empty())
    throw std::invalid_argument("best_alpha: empty table");
  std::vector<AlphaPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(),
            [](const AlphaPoint& a, const AlphaPoint& b) {
              return a.alpha < b.alpha;
            });
  const AlphaPoint* best = &sorted[0];
  for (const auto& p : sorted)
    if (p.hit_rate > best->hit_rate) best = &p;  // ties keep the smaller alpha
  return best->alpha;
}

AlphaReport sweep_alpha(const SimConfig& cfg,
                        const std::vector<double>& alpha_grid, int order,
                        std::uint64_t target_samples) {
  cfg.validate();
  if (alpha_grid.empty())
    throw std::invalid_argument("sweep_alpha: empty alpha grid");
  if (order != 1 && order != 2)
    throw std::invalid_argument("sweep_alpha: order must be 1 or 2");
  const int top_t = order == 1 ? cfg.flip.t1 : cfg.flip.t22;
  if (top_t < 1)
    throw std::invalid_argument(
        "sweep_alpha: the matching attempt budget (t1 or t22) must be >= 1");

  OrderSamples samples = collect_order_samples(
      cfg, order == 1 ? target_samples : 0, order == 2 ? target_samples : 0);

  AlphaReport rep;
  rep.order = order;
  rep.top_t = top_t;
  rep.sample_count = order == 1 ? samples.order1.size() : samples.order2.size();
  rep.total_frames = samples.total_frames;
  rep.points = evaluate_alpha(samples, order, alpha_grid, top_t);
  rep.best = best_alpha(rep.points);
  return rep;
}

std::vector<ComplexityRow> measure_complexity(const SimConfig& cfg) {
  cfg.validate();
  if (cfg.decoder != DecoderKind::kScflip1 &&
      cfg.decoder != DecoderKind::kScflip2)
    throw std::invalid_argument("measure_complexity: decoder must be scflip1/2");
  std::vector<ComplexityRow> rows;
  for (double snr : cfg.snr_db) {
    SnrPointReport p = run_point(cfg, snr, /*with_hist=*/false);
    ComplexityRow row;
    row.snr_db = snr;
    row.frames = p.frames;
    row.fer_sc = p.fer_sc();
    row.t_ave = p.t_ave;
    row.nc_ave = p.nc_ave;
    row.mean_attempts =
        1.0 + (p.frames ? static_cast<double>(p.extra_attempts) / p.frames : 0.0);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace polar
