#include "polar/flip.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "polar/encode.hpp"

namespace polar {

namespace {

// (1/a) log(1 + e^{a x}) with x >= 0, the exact log-domain image of the
// candidate's own error-probability factor.
inline double self_term(double alpha, double abs_llr) {
  double ax = alpha * abs_llr;
  return (ax + std::log1p(std::exp(-ax))) / alpha;
}

// log(1 + e^{-a x}): one predecessor's correctness penalty (pre 1/a scale).
inline double penalty_term(double alpha, double abs_llr) {
  return std::log1p(std::exp(-alpha * abs_llr));
}

// Dense position of the first candidate, i.e. first info index > k1.
size_t window_begin(const MetricContext& ctx) {
  return std::upper_bound(ctx.info_set.begin(), ctx.info_set.end(), ctx.k1) -
         ctx.info_set.begin();
}

void check_context(const MetricContext& ctx) {
  if (ctx.info_set.size() != ctx.decision_llrs.size())
    throw std::invalid_argument("metric: decision LLRs must align with info set");
  if (ctx.kind == MetricKind::kMAlpha && !(ctx.alpha > 0.0))
    throw std::invalid_argument("metric: alpha must be positive");
}

}  // namespace

void FlipConfig::validate() const {
  if (t1 < 0 || t21 < 0 || t22 < 0)
    throw std::invalid_argument("FlipConfig: attempt budgets must be >= 0");
  if (t21 > t1)
    throw std::invalid_argument("FlipConfig: need t1 >= t21");
  if (metric == MetricKind::kMAlpha && (!(alpha1 > 0.0) || !(alpha2 > 0.0)))
    throw std::invalid_argument("FlipConfig: alphas must be positive");
}

double metric_score(const MetricContext& ctx, int k) {
  check_context(ctx);
  if (k <= ctx.k1)
    throw std::invalid_argument("metric_score: k must exceed k1");
  auto it = std::lower_bound(ctx.info_set.begin(), ctx.info_set.end(), k);
  if (it == ctx.info_set.end() || *it != k)
    throw std::invalid_argument("metric_score: k must be in the info set");
  size_t pos = it - ctx.info_set.begin();

  if (ctx.kind == MetricKind::kLlrAbs)
    return std::fabs(ctx.decision_llrs[pos]);

  double pen = 0.0;
  for (size_t j = window_begin(ctx); j < pos; ++j)
    pen += penalty_term(ctx.alpha, std::fabs(ctx.decision_llrs[j]));
  return self_term(ctx.alpha, std::fabs(ctx.decision_llrs[pos])) +
         pen / ctx.alpha;
}

FlipList flip_determine(const MetricContext& ctx, int T) {
  check_context(ctx);
  if (T < 1) throw std::invalid_argument("flip_determine: need T >= 1");

  const size_t begin = window_begin(ctx);
  const size_t count = ctx.info_set.size() - begin;
  std::vector<double> score(count);
  if (ctx.kind == MetricKind::kLlrAbs) {
    for (size_t j = 0; j < count; ++j)
      score[j] = std::fabs(ctx.decision_llrs[begin + j]);
  } else {
    double pen = 0.0;
    for (size_t j = 0; j < count; ++j) {
      double abs_llr = std::fabs(ctx.decision_llrs[begin + j]);
      score[j] = self_term(ctx.alpha, abs_llr) + pen / ctx.alpha;
      pen += penalty_term(ctx.alpha, abs_llr);
    }
  }

  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  size_t take = std::min<size_t>(T, count);
  std::partial_sort(order.begin(), order.begin() + take, order.end(),
                    [&](int a, int b) {
                      if (score[a] != score[b]) return score[a] < score[b];
                      return a < b;  // ties to the smaller index
                    });

  FlipList out;
  out.indices.reserve(take);
  out.scores.reserve(take);
  for (size_t j = 0; j < take; ++j) {
    out.indices.push_back(ctx.info_set[begin + order[j]]);
    out.scores.push_back(score[order[j]]);
  }
  return out;
}

int candidate_rank(const MetricContext& ctx, int k) {
  check_context(ctx);
  const size_t begin = window_begin(ctx);
  const size_t count = ctx.info_set.size() - begin;
  double target = metric_score(ctx, k);
  int rank = 0;
  if (ctx.kind == MetricKind::kLlrAbs) {
    for (size_t j = 0; j < count; ++j) {
      int idx = ctx.info_set[begin + j];
      double s = std::fabs(ctx.decision_llrs[begin + j]);
      if (s < target || (s == target && idx < k)) ++rank;
    }
    return rank;
  }
  double pen = 0.0;
  for (size_t j = 0; j < count; ++j) {
    double abs_llr = std::fabs(ctx.decision_llrs[begin + j]);
    double s = self_term(ctx.alpha, abs_llr) + pen / ctx.alpha;
    pen += penalty_term(ctx.alpha, abs_llr);
    int idx = ctx.info_set[begin + j];
    if (s < target || (s == target && idx < k)) ++rank;
  }
  return rank;
}

bool payload_crc_ok(const CodeSpec& spec, const CrcSpec& crc,
                    const BitVec& u_hat) {
  return crc_check(crc, extract_payload(spec, u_hat));
}

namespace {

MetricContext make_context(const CodeSpec& spec, const DecodeOutcome& attempt,
                           int k1, double alpha, MetricKind kind) {
  return MetricContext{spec.info_set, attempt.decision_llrs, k1, alpha, kind};
}

}  // namespace

FlipOutcome scflip1(ScDecoder& dec, const CrcSpec& crc, const FlipConfig& cfg,
                    const LlrVec& channel_llrs, FrameRng& rng) {
  cfg.validate();
  const CodeSpec& spec = dec.spec();

  int attempts = 1;
  DecodeOutcome attempt = dec.decode(channel_llrs, {}, rng);
  attempt.crc_pass = payload_crc_ok(spec, crc, attempt.u_hat);
  attempt.attempts_used = attempts;
  if (attempt.crc_pass)
    return {std::move(attempt), ResolvedOrder::kOrder0, attempts};

  FlipList candidates;
  if (cfg.t1 > 0)
    candidates = flip_determine(
        make_context(spec, attempt, -1, cfg.alpha1, cfg.metric), cfg.t1);

  for (int flip : candidates.indices) {
    attempt = dec.decode(channel_llrs, {&flip, 1}, rng);
    ++attempts;
    attempt.crc_pass = payload_crc_ok(spec, crc, attempt.u_hat);
    attempt.attempts_used = attempts;
    if (attempt.crc_pass)
      return {std::move(attempt), ResolvedOrder::kOrder1, attempts};
  }
  return {std::move(attempt), ResolvedOrder::kFail, attempts};
}

FlipOutcome scflip2(ScDecoder& dec, const CrcSpec& crc, const FlipConfig& cfg,
                    const LlrVec& channel_llrs, FrameRng& rng) {
  cfg.validate();
  const CodeSpec& spec = dec.spec();

  int attempts = 1;
  DecodeOutcome attempt = dec.decode(channel_llrs, {}, rng);
  attempt.crc_pass = payload_crc_ok(spec, crc, attempt.u_hat);
  attempt.attempts_used = attempts;
  if (attempt.crc_pass)
    return {std::move(attempt), ResolvedOrder::kOrder0, attempts};

  FlipList first;
  if (cfg.t1 > 0)
    first = flip_determine(
        make_context(spec, attempt, -1, cfg.alpha1, cfg.metric), cfg.t1);

  // Phase 1: single flips; the first t21 failed retries each contribute t22
  // second-flip candidates drawn from that retry's own trajectory, with the
  // candidate window opening just above the flipped position.
  struct Branch {
    int first = -1;
    std::vector<int> second;
  };
  std::vector<Branch> branches;
  branches.reserve(std::min(cfg.t21, static_cast<int>(first.indices.size())));

  for (size_t j = 0; j < first.indices.size(); ++j) {
    int flip = first.indices[j];
    attempt = dec.decode(channel_llrs, {&flip, 1}, rng);
    ++attempts;
    attempt.crc_pass = payload_crc_ok(spec, crc, attempt.u_hat);
    attempt.attempts_used = attempts;
    if (attempt.crc_pass)
      return {std::move(attempt), ResolvedOrder::kOrder1, attempts};
    if (static_cast<int>(j) < cfg.t21 && cfg.t22 > 0) {
      FlipList second = flip_determine(
          make_context(spec, attempt, flip, cfg.alpha2, cfg.metric), cfg.t22);
      branches.push_back({flip, std::move(second.indices)});
    }
  }

  // Phase 2: nested double flips, first-flip branches outermost.
  for (const Branch& branch : branches) {
    for (int second : branch.second) {
      std::array<int, 2> flips{branch.first, second};
      attempt = dec.decode(channel_llrs, flips, rng);
      ++attempts;
      attempt.crc_pass = payload_crc_ok(spec, crc, attempt.u_hat);
      attempt.attempts_used = attempts;
      if (attempt.crc_pass)
        return {std::move(attempt), ResolvedOrder::kOrder2, attempts};
    }
  }
  return {std::move(attempt), ResolvedOrder::kFail, attempts};
}

void OrderHistogram::add(int order) {
  buckets[std::min(order, 5)] += 1;
}

std::uint64_t OrderHistogram::total() const {
  std::uint64_t sum = 0;
  for (auto b : buckets) sum += b;
  return sum;
}

}  // namespace polar
