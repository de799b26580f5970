#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "polar/bits.hpp"
#include "polar/code_spec.hpp"
#include "polar/rng.hpp"

namespace polar {

// Stage LLRs are clamped to +-kLlrClamp before reuse; beyond this neither
// hard decisions nor flip metrics change at double precision.
inline constexpr double kLlrClamp = 40.0;

// Exact check-node combine 2 atanh(tanh(a/2) tanh(b/2)), evaluated in the
// numerically stable form min-sum plus correction.
double f_llr(double a, double b);

// Partial-sum combine b + (1 - 2u) a.
double g_llr(double a, double b, std::uint8_t u);

struct DecodeOutcome {
  BitVec u_hat;                       // length N, frozen positions zero
  std::vector<double> decision_llrs;  // decision_llrs[j] = L(u_{info_set[j]}),
                                      // pre-decision even at flipped positions
  bool crc_pass = false;
  int attempts_used = 1;
};

struct OracleResult {
  int order = 0;                  // number of channel-generated errors
  std::vector<int> cge_positions;  // their ascending code indices
};

// Successive cancellation decoder over the natural-order LLR butterfly.
// One instance per worker thread: decode()/oracle() mutate only the
// internal workspace, never shared state.
class ScDecoder {
 public:
  explicit ScDecoder(CodeSpec spec);

  // One SC pass, hard decisions complemented at `flips` (a small subset of
  // the info set). sign(0) ties are resolved by a coin from rng.
  DecodeOutcome decode(const LlrVec& channel_llrs, std::span<const int> flips,
                       FrameRng& rng);

  // Genie-assisted pass: every decision is forced to true_u, and positions
  // where the unassisted decision would have differed are recorded. The
  // number of such positions is the order of the noise realization.
  OracleResult oracle(const LlrVec& channel_llrs, const BitVec& true_u,
                      FrameRng& rng);

  const CodeSpec& spec() const { return spec_; }

  // f/g evaluation counter, one unit per f or g application.
  std::uint64_t fg_evals() const { return fg_evals_; }
  void reset_fg_evals() { fg_evals_ = 0; }

  // Per-position decision LLRs of the most recent pass (all N positions).
  const std::vector<double>& last_llrs() const { return all_llrs_; }

 private:
  enum class Mode { kDecode, kOracle };

  void run_pass(const LlrVec& channel_llrs);
  void decode_node(int depth, int base);
  std::uint8_t decide_leaf(int index, double llr);
  std::uint8_t hard_decision(double llr);

  CodeSpec spec_;
  std::vector<std::uint8_t> frozen_;  // length N, 1 = frozen
  std::vector<int> info_pos_;         // code index -> position in info_set, -1 if frozen

  std::vector<std::vector<double>> llr_;         // per-depth LLR buffers
  std::vector<std::vector<std::uint8_t>> bits_;  // per-depth partial sums
  std::vector<std::vector<std::uint8_t>> left_;  // saved left-child sums
  std::vector<double> all_llrs_;

  Mode mode_ = Mode::kDecode;
  std::span<const int> flips_;
  const BitVec* true_u_ = nullptr;
  BitVec* u_hat_ = nullptr;
  std::vector<double>* decision_llrs_ = nullptr;
  std::vector<int>* cge_out_ = nullptr;
  FrameRng* rng_ = nullptr;
  std::uint64_t fg_evals_ = 0;
};

// One-shot wrappers constructing a fresh workspace per call.
DecodeOutcome sc_decode(const LlrVec& channel_llrs, const CodeSpec& spec,
                        std::span<const int> flips, FrameRng& rng);
OracleResult oracle_sc(const LlrVec& channel_llrs, const CodeSpec& spec,
                       const BitVec& true_u, FrameRng& rng);

// Debug trace of the last pass: one CSV line per position
// (index, frozen, llr, decision).
void dump_trace(const ScDecoder& dec, const DecodeOutcome& out,
                std::ostream& os);

}  // namespace polar
