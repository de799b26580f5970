#include "polar/sc_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "sc_kernels.hpp"

namespace polar {

namespace {

inline double clamp_llr(double v) {
  if (v > kLlrClamp) return kLlrClamp;
  if (v < -kLlrClamp) return -kLlrClamp;
  return v;
}

}  // namespace

double f_llr(double a, double b) {
  // f is odd in each argument, so evaluate the magnitude on |a|,|b| and
  // restore the sign product:
  //   f(|a|,|b|) = min + log1p(e^{-(hi+lo)}) - log1p(e^{-(hi-lo)})
  // Correction terms below exp(-36) sit under double-precision noise and
  // are skipped.
  double aa = std::fabs(a);
  double ab = std::fabs(b);
  double lo = std::min(aa, ab);
  double hi = std::max(aa, ab);
  double mag = lo;
  if (hi - lo < 36.0) mag -= std::log1p(std::exp(lo - hi));
  if (hi + lo < 36.0) mag += std::log1p(std::exp(-(hi + lo)));
  return ((a < 0.0) != (b < 0.0)) ? -mag : mag;
}

double g_llr(double a, double b, std::uint8_t u) {
  return u ? b - a : b + a;
}

ScDecoder::ScDecoder(CodeSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  frozen_ = spec_.frozen_mask();
  info_pos_.assign(spec_.N, -1);
  for (size_t j = 0; j < spec_.info_set.size(); ++j)
    info_pos_[spec_.info_set[j]] = static_cast<int>(j);

  llr_.resize(spec_.n + 1);
  bits_.resize(spec_.n + 1);
  left_.resize(spec_.n);
  for (int d = 0; d <= spec_.n; ++d) {
    llr_[d].assign(spec_.N >> d, 0.0);
    bits_[d].assign(spec_.N >> d, 0);
  }
  for (int d = 0; d < spec_.n; ++d) left_[d].assign(spec_.N >> (d + 1), 0);
  all_llrs_.assign(spec_.N, 0.0);
}

std::uint8_t ScDecoder::hard_decision(double llr) {
  if (llr > 0.0) return 0;
  if (llr < 0.0) return 1;
  // sign(0) = +-1 with equal probability.
  return static_cast<std::uint8_t>(rng_->next_bit());
}

std::uint8_t ScDecoder::decide_leaf(int index, double llr) {
  all_llrs_[index] = llr;
  if (mode_ == Mode::kOracle) {
    std::uint8_t truth = (*true_u_)[index];
    if (!frozen_[index] && hard_decision(llr) != truth)
      cge_out_->push_back(index);
    return truth;
  }
  if (frozen_[index]) {
    (*u_hat_)[index] = spec_.frozen_value;
    return spec_.frozen_value;
  }
  (*decision_llrs_)[info_pos_[index]] = llr;
  std::uint8_t d = hard_decision(llr);
  for (int flip : flips_)
    if (flip == index) {
      d ^= 1;
      break;
    }
  (*u_hat_)[index] = d;
  return d;
}

void ScDecoder::decode_node(int depth, int base) {
  const int m = spec_.N >> depth;
  if (m == 1) {
    bits_[depth][0] = decide_leaf(base, llr_[depth][0]);
    return;
  }
  if (m == 2) {
    const double a = llr_[depth][0];
    const double b = llr_[depth][1];
    std::uint8_t left = decide_leaf(base, clamp_llr(f_llr(a, b)));
    std::uint8_t right = decide_leaf(base + 1, clamp_llr(g_llr(a, b, left)));
    bits_[depth][0] = left ^ right;
    bits_[depth][1] = right;
    fg_evals_ += 2;
    return;
  }
  const int half = m / 2;
  const auto& cur = llr_[depth];
  auto& nxt = llr_[depth + 1];

  detail::f_stage(cur.data(), cur.data() + half, nxt.data(), half);
  fg_evals_ += half;
  decode_node(depth + 1, base);

  auto& saved = left_[depth];
  std::copy_n(bits_[depth + 1].begin(), half, saved.begin());

  detail::g_stage(cur.data(), cur.data() + half, saved.data(), nxt.data(),
                  half);
  fg_evals_ += half;
  decode_node(depth + 1, base + half);

  auto& out = bits_[depth];
  const auto& right = bits_[depth + 1];
  for (int i = 0; i < half; ++i) {
    out[i] = saved[i] ^ right[i];
    out[i + half] = right[i];
  }
}

void ScDecoder::run_pass(const LlrVec& channel_llrs) {
  if (static_cast<int>(channel_llrs.size()) != spec_.N)
    throw std::invalid_argument("sc_decode: channel LLRs must have length N");
  for (int i = 0; i < spec_.N; ++i) llr_[0][i] = clamp_llr(channel_llrs[i]);
  decode_node(0, 0);
}

DecodeOutcome ScDecoder::decode(const LlrVec& channel_llrs,
                                std::span<const int> flips, FrameRng& rng) {
  for (int flip : flips)
    if (flip < 0 || flip >= spec_.N || frozen_[flip])
      throw std::invalid_argument("sc_decode: flips must lie in the info set");

  DecodeOutcome out;
  out.u_hat.assign(spec_.N, 0);
  out.decision_llrs.assign(spec_.info_set.size(), 0.0);

  mode_ = Mode::kDecode;
  flips_ = flips;
  u_hat_ = &out.u_hat;
  decision_llrs_ = &out.decision_llrs;
  rng_ = &rng;
  run_pass(channel_llrs);
  u_hat_ = nullptr;
  decision_llrs_ = nullptr;
  rng_ = nullptr;
  return out;
}

OracleResult ScDecoder::oracle(const LlrVec& channel_llrs,
                               const BitVec& true_u, FrameRng& rng) {
  if (static_cast<int>(true_u.size()) != spec_.N)
    throw std::invalid_argument("oracle_sc: true_u must have length N");

  OracleResult res;
  mode_ = Mode::kOracle;
  true_u_ = &true_u;
  cge_out_ = &res.cge_positions;
  rng_ = &rng;
  run_pass(channel_llrs);
  true_u_ = nullptr;
  cge_out_ = nullptr;
  rng_ = nullptr;
  res.order = static_cast<int>(res.cge_positions.size());
  return res;
}

DecodeOutcome sc_decode(const LlrVec& channel_llrs, const CodeSpec& spec,
                        std::span<const int> flips, FrameRng& rng) {
  ScDecoder dec(spec);
  return dec.decode(channel_llrs, flips, rng);
}

OracleResult oracle_sc(const LlrVec& channel_llrs, const CodeSpec& spec,
                       const BitVec& true_u, FrameRng& rng) {
  ScDecoder dec(spec);
  return dec.oracle(channel_llrs, true_u, rng);
}

void dump_trace(const ScDecoder& dec, const DecodeOutcome& out,
                std::ostream& os) {
  const auto& spec = dec.spec();
  auto frozen = spec.frozen_mask();
  os << "index,frozen,llr,decision\n";
  for (int i = 0; i < spec.N; ++i)
    os << i << ',' << int(frozen[i]) << ',' << dec.last_llrs()[i] << ','
       << int(out.u_hat[i]) << '\n';
}

}  // namespace polar
