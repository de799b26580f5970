#pragma once

#include <string>
#include <vector>

#include "polar/bits.hpp"

namespace polar {

// CRC-polar concatenation C(N, K+r, I): blocklength N = 2^n, K information
// bits, r CRC bits. info_set lists the K+r unfrozen positions in ascending
// order; all other positions are frozen to frozen_value (zero).
struct CodeSpec {
  int n = 0;
  int N = 0;
  int K = 0;
  int r = 0;
  std::vector<int> info_set;
  std::uint8_t frozen_value = 0;

  int payload_len() const { return K + r; }
  std::vector<std::uint8_t> frozen_mask() const;  // 1 = frozen, length N

  void validate() const;  // throws std::invalid_argument on broken invariants
};

// Gaussian-approximation reliability construction: returns the `count`
// indices with the lowest estimated bit-channel error probability at the
// given design point, sorted ascending. Ties prefer the smaller index.
//
// `rate` sets the Eb/N0 -> sigma conversion for the design point; if
// negative it defaults to count / 2^n. The simulation harness passes K/N.
std::vector<int> construct_info_set(int n, int count, double design_snr_db,
                                    double rate = -1.0);

// Builds the full spec with info set constructed at design_snr_db (rate K/N).
CodeSpec make_code_spec(int n, int K, int r, double design_snr_db);

// Text format: header line "N K r design_snr_db", then one decimal index per
// line, ascending.
void save_info_set(const CodeSpec& spec, double design_snr_db,
                   const std::string& path);
CodeSpec load_info_set(const std::string& path,
                       double* design_snr_db = nullptr);

// Gaussian-approximation primitives. phi tracks E[tanh(L/2)]-style reliability
// of an LLR with mean x; phi_inv inverts it by bisection (relative 1e-9).
double ga_phi(double x);
double ga_phi_inv(double y);

// Mean decision LLR of each synthetic channel, index order matching the
// natural-order SC schedule (index N-1 is the all-plus channel).
std::vector<double> ga_channel_means(int n, double sigma);

}  // namespace polar
