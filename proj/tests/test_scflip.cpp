#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "polar/flip.hpp"
#include "test_helpers.hpp"

using namespace polar;

namespace {

struct Bench {
  CodeSpec spec;
  CrcSpec crc;
  ChannelParams params;

  static Bench make(double snr_db, int r = 8) {
    Bench b;
    b.spec = make_code_spec(8, 128 - r, r, snr_db);
    b.crc = r == 8 ? CrcSpec{8, 0x07} : CrcSpec{16, 0x8005};
    b.params = ChannelParams::from_ebn0(snr_db, b.spec.K / 256.0);
    return b;
  }
};

bool exact(const Bench& b, const testutil::TestFrame& f, const BitVec& u_hat) {
  return extract_payload(b.spec, u_hat) == f.payload;
}

}  // namespace

TEST_CASE("scflip: noiseless frame resolves on the first attempt") {
  Bench b = Bench::make(2.0);
  b.params.sigma = 1e-12;
  ScDecoder dec(b.spec);
  FrameRng rng(1, 0);
  auto frame = testutil::make_test_frame(b.spec, b.crc, b.params, rng);

  FlipConfig cfg{16, 4, 4, 0.3, 0.5, MetricKind::kMAlpha};
  FrameRng r1 = rng.fork(1);
  FlipOutcome o1 = scflip1(dec, b.crc, cfg, frame.llrs, r1);
  CHECK(o1.attempts_used == 1);
  CHECK(o1.resolved_order == ResolvedOrder::kOrder0);
  CHECK(o1.outcome.crc_pass);
  CHECK(exact(b, frame, o1.outcome.u_hat));

  FrameRng r2 = rng.fork(1);
  FlipOutcome o2 = scflip2(dec, b.crc, cfg, frame.llrs, r2);
  CHECK(o2.attempts_used == 1);
  CHECK(o2.resolved_order == ResolvedOrder::kOrder0);
}

TEST_CASE("scflip2 with t21 = t22 = 0 behaves exactly like scflip1") {
  Bench b = Bench::make(1.5);
  ScDecoder dec(b.spec);
  FlipConfig cfg{12, 0, 0, 0.3, 0.5, MetricKind::kMAlpha};
  for (std::uint64_t fi = 0; fi < 200; ++fi) {
    FrameRng rng(0xAA, fi);
    auto frame = testutil::make_test_frame(b.spec, b.crc, b.params, rng);
    FrameRng r1 = rng.fork(1);
    FrameRng r2 = rng.fork(1);
    FlipOutcome o1 = scflip1(dec, b.crc, cfg, frame.llrs, r1);
    FlipOutcome o2 = scflip2(dec, b.crc, cfg, frame.llrs, r2);
    CHECK(o1.attempts_used == o2.attempts_used);
    CHECK(o1.resolved_order == o2.resolved_order);
    CHECK(o1.outcome.u_hat == o2.outcome.u_hat);
    CHECK(o1.outcome.crc_pass == o2.outcome.crc_pass);
  }
}

TEST_CASE("scflip1: order-1 frames whose CGE is listed decode at 1 + rank") {
  Bench b = Bench::make(2.0);
  ScDecoder dec(b.spec);
  FlipConfig cfg{16, 0, 0, 0.3, 0.5, MetricKind::kMAlpha};

  int order1_frames = 0;
  int collisions = 0;
  for (std::uint64_t fi = 0; fi < 3000 && order1_frames < 60; ++fi) {
    FrameRng rng(0xBB, fi);
    auto frame = testutil::make_test_frame(b.spec, b.crc, b.params, rng);
    FrameRng orng = rng.fork(2);
    OracleResult genie = dec.oracle(frame.llrs, frame.u, orng);
    if (genie.order != 1) continue;
    ++order1_frames;

    FrameRng prng = rng.fork(1);
    DecodeOutcome initial = dec.decode(frame.llrs, {}, prng);
    MetricContext ctx{b.spec.info_set, initial.decision_llrs, -1, cfg.alpha1,
                      cfg.metric};
    int rank = candidate_rank(ctx, genie.cge_positions[0]);

    FrameRng frng = rng.fork(1);
    FlipOutcome out = scflip1(dec, b.crc, cfg, frame.llrs, frng);
    if (out.outcome.crc_pass && !exact(b, frame, out.outcome.u_hat)) {
      ++collisions;  // an earlier candidate matched the 8-bit CRC by chance
      continue;
    }
    if (rank < cfg.t1) {
      CHECK(exact(b, frame, out.outcome.u_hat));
      CHECK(out.resolved_order == ResolvedOrder::kOrder1);
      CHECK(out.attempts_used == 1 + rank + 1);
    } else {
      CHECK(out.resolved_order == ResolvedOrder::kFail);
      CHECK(out.attempts_used == 1 + cfg.t1);
    }
  }
  CHECK(order1_frames >= 60);
  CHECK(collisions <= 6);  // 8-bit CRC, a few collisions are expected
}

TEST_CASE("scflip1: frames of order >= 2 fail after 1 + t1 attempts") {
  Bench b = Bench::make(1.5);
  ScDecoder dec(b.spec);
  FlipConfig cfg{10, 0, 0, 0.3, 0.5, MetricKind::kMAlpha};

  int seen = 0;
  for (std::uint64_t fi = 0; fi < 2000 && seen < 40; ++fi) {
    FrameRng rng(0xCC, fi);
    auto frame = testutil::make_test_frame(b.spec, b.crc, b.params, rng);
    FrameRng orng = rng.fork(2);
    if (dec.oracle(frame.llrs, frame.u, orng).order < 2) continue;
    ++seen;
    FrameRng frng = rng.fork(1);
    FlipOutcome out = scflip1(dec, b.crc, cfg, frame.llrs, frng);
    if (out.outcome.crc_pass) {
      CHECK_FALSE(exact(b, frame, out.outcome.u_hat));  // must be a collision
    } else {
      CHECK(out.resolved_order == ResolvedOrder::kFail);
      CHECK(out.attempts_used == 1 + cfg.t1);
    }
  }
  CHECK(seen >= 40);
}

TEST_CASE("scflip2: recovers order-2 frames whose flip pair is reachable") {
  Bench b = Bench::make(1.75, 16);  // 16-bit CRC keeps collisions out
  ScDecoder dec(b.spec);
  FlipConfig cfg{12, 6, 6, 0.3, 0.5, MetricKind::kMAlpha};

  int reachable = 0;
  int collisions = 0;
  for (std::uint64_t fi = 0; fi < 6000 && reachable < 25; ++fi) {
    FrameRng rng(0xDD, fi);
    auto frame = testutil::make_test_frame(b.spec, b.crc, b.params, rng);
    FrameRng orng = rng.fork(2);
    OracleResult genie = dec.oracle(frame.llrs, frame.u, orng);
    if (genie.order != 2) continue;
    const int k1 = genie.cge_positions[0];
    const int k2 = genie.cge_positions[1];

    FrameRng prng = rng.fork(1);
    DecodeOutcome initial = dec.decode(frame.llrs, {}, prng);
    MetricContext c1{b.spec.info_set, initial.decision_llrs, -1, cfg.alpha1,
                     cfg.metric};
    int rank1 = candidate_rank(c1, k1);
    if (rank1 >= cfg.t21) continue;

    FrameRng brng = rng.fork(1);
    DecodeOutcome branch = dec.decode(frame.llrs, {&k1, 1}, brng);
    MetricContext c2{b.spec.info_set, branch.decision_llrs, k1, cfg.alpha2,
                     cfg.metric};
    int rank2 = candidate_rank(c2, k2);
    if (rank2 >= cfg.t22) continue;
    ++reachable;

    FrameRng frng = rng.fork(1);
    FlipOutcome out = scflip2(dec, b.crc, cfg, frame.llrs, frng);
    if (out.outcome.crc_pass && !exact(b, frame, out.outcome.u_hat)) {
      ++collisions;
      continue;
    }
    CHECK(exact(b, frame, out.outcome.u_hat));
    CHECK(out.resolved_order == ResolvedOrder::kOrder2);
    // phase 1 burns 1 + t1 passes, then branches of t22 each, Algorithm-2 order
    CHECK(out.attempts_used == 1 + cfg.t1 + rank1 * cfg.t22 + rank2 + 1);
  }
  CHECK(reachable >= 25);
  CHECK(collisions <= 1);
}

TEST_CASE("scflip: success only improves with flip order, frame by frame") {
  Bench b = Bench::make(1.5);
  ScDecoder dec(b.spec);
  FlipConfig cfg{8, 3, 3, 0.3, 0.5, MetricKind::kMAlpha};
  FlipConfig cfg1{8, 0, 0, 0.3, 0.5, MetricKind::kMAlpha};

  for (std::uint64_t fi = 0; fi < 400; ++fi) {
    FrameRng rng(0xEE, fi);
    auto frame = testutil::make_test_frame(b.spec, b.crc, b.params, rng);
    FrameRng r0 = rng.fork(1);
    FrameRng r1 = rng.fork(1);
    FrameRng r2 = rng.fork(1);
    DecodeOutcome sc = dec.decode(frame.llrs, {}, r0);
    FlipOutcome o1 = scflip1(dec, b.crc, cfg1, frame.llrs, r1);
    FlipOutcome o2 = scflip2(dec, b.crc, cfg, frame.llrs, r2);

    bool sc_exact = frame.u == sc.u_hat;
    bool f1_exact = exact(b, frame, o1.outcome.u_hat);
    bool f2_exact = exact(b, frame, o2.outcome.u_hat);
    if (sc_exact) CHECK(f1_exact);
    if (f1_exact) CHECK(f2_exact);
    CHECK(o2.attempts_used <= cfg.max_attempts());
    CHECK(o1.attempts_used <= cfg1.max_attempts());
  }
}

TEST_CASE("order histogram buckets, and SC fails iff order >= 1") {
  Bench b = Bench::make(0.5);
  ScDecoder dec(b.spec);
  OrderHistogram hist;
  const std::uint64_t frames = 600;
  for (std::uint64_t fi = 0; fi < frames; ++fi) {
    FrameRng rng(0xF0, fi);
    auto frame = testutil::make_test_frame(b.spec, b.crc, b.params, rng);
    FrameRng orng = rng.fork(2);
    FrameRng drng = rng.fork(1);
    OracleResult genie = dec.oracle(frame.llrs, frame.u, orng);
    DecodeOutcome plain = dec.decode(frame.llrs, {}, drng);
    hist.add(genie.order);
    CHECK((genie.order >= 1) == !exact(b, frame, plain.u_hat));
  }
  CHECK(hist.total() == frames);
  CHECK(hist.buckets[5] > 0);  // 0.5 dB produces realizations of order >= 5
}

TEST_CASE("FlipConfig validation") {
  FlipConfig ok{20, 5, 5, 0.3, 0.5, MetricKind::kMAlpha};
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.max_attempts() == 46);

  FlipConfig neg{-1, 0, 0, 0.3, 0.5, MetricKind::kMAlpha};
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
  FlipConfig swapped{4, 5, 5, 0.3, 0.5, MetricKind::kMAlpha};
  CHECK_THROWS_AS(swapped.validate(), std::invalid_argument);
  FlipConfig bad_alpha{20, 5, 5, 0.0, 0.5, MetricKind::kMAlpha};
  CHECK_THROWS_AS(bad_alpha.validate(), std::invalid_argument);
  FlipConfig llr_zero_alpha{20, 5, 5, 0.0, 0.0, MetricKind::kLlrAbs};
  CHECK_NOTHROW(llr_zero_alpha.validate());
}
