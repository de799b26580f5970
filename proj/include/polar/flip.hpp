#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "polar/crc.hpp"
#include "polar/sc_decoder.hpp"

namespace polar {

enum class MetricKind { kLlrAbs, kMAlpha };

// Flip-search budget and metric parameters. t1 bounds the single-flip
// attempts; t21 first-flip branches, each explored with t22 second flips,
// bound the double-flip attempts (t21 * t22 in total).
struct FlipConfig {
  int t1 = 20;
  int t21 = 0;
  int t22 = 0;
  double alpha1 = 0.3;
  double alpha2 = 0.5;
  MetricKind metric = MetricKind::kMAlpha;

  int max_attempts() const { return 1 + t1 + t21 * t22; }
  void validate() const;
};

// One SC trajectory's decision LLRs plus the candidate window: flip
// candidates are the info-set indices strictly greater than k1 (k1 = -1
// opens the whole info set).
struct MetricContext {
  std::span<const int> info_set;
  std::span<const double> decision_llrs;  // aligned with info_set
  int k1 = -1;
  double alpha = 0.3;
  MetricKind kind = MetricKind::kMAlpha;
};

// First-error likelihood score of flipping position k (a code index in the
// info set). Smaller = more promising.
//
// For kMAlpha this is the log-domain metric -(1/alpha) log M_alpha(u_k),
// where M_alpha multiplies the error probability proxy of u_k by the
// correctness probabilities of the preceding in-window decisions:
//   (1/a) log(1 + e^{a|L_k|}) + (1/a) sum_{k1 < i < k} log(1 + e^{-a|L_i|})
// For kLlrAbs it is simply |L(u_k)|.
double metric_score(const MetricContext& ctx, int k);

// 0-based position k would take in the full candidate ordering (ascending
// score, ties to the smaller index).
int candidate_rank(const MetricContext& ctx, int k);

struct FlipList {
  std::vector<int> indices;    // candidate flip positions, best first
  std::vector<double> scores;  // non-decreasing
};

// The (at most) T most promising candidates above k1, best first.
FlipList flip_determine(const MetricContext& ctx, int T);

enum class ResolvedOrder { kOrder0, kOrder1, kOrder2, kFail };

struct FlipOutcome {
  DecodeOutcome outcome;
  ResolvedOrder resolved_order = ResolvedOrder::kFail;
  int attempts_used = 1;  // SC passes including the initial one
};

// CRC verdict on the payload carried in the info-set positions of u_hat.
bool payload_crc_ok(const CodeSpec& spec, const CrcSpec& crc,
                    const BitVec& u_hat);

// Single-flip decoder: initial SC pass, then up to t1 retries flipping one
// candidate at a time in metric order, stopping at the first CRC pass.
FlipOutcome scflip1(ScDecoder& dec, const CrcSpec& crc, const FlipConfig& cfg,
                    const LlrVec& channel_llrs, FrameRng& rng);

// Two-flip decoder: the single-flip phase additionally harvests second-flip
// candidates from the first t21 retried trajectories (window opening at that
// retry's flip position), then explores the t21 x t22 nested flip pairs.
FlipOutcome scflip2(ScDecoder& dec, const CrcSpec& crc, const FlipConfig& cfg,
                    const LlrVec& channel_llrs, FrameRng& rng);

// D(omega) histogram; bucket 5 collects orders >= 5.
struct OrderHistogram {
  std::array<std::uint64_t, 6> buckets{};

  void add(int order);
  std::uint64_t total() const;
};

}  // namespace polar
