// SPDX-License-Identifier: Apache-2.0
#include "cogrelay/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace cogrelay::mc {

namespace {

constexpr long long kBlockSize = 1 << 16;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

std::uint64_t block_stream_seed(std::uint64_t seed, long long block) {
  std::uint64_t s = seed;
  (void)splitmix64(s);
  s ^= static_cast<std::uint64_t>(block) + 0x9E3779B97F4A7C15ull;
  return splitmix64(s);
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
  std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::next_uniform() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double sample_exponential(Rng& rng, double mean) {
  return -mean * std::log(rng.next_uniform());
}

double sample_interference_gain(int t_p, double mean, Rng& rng) {
  double total = 0.0;
  for (int l = 0; l < t_p; ++l) total += sample_exponential(rng, mean);
  return total;
}

double sample_hop_gain(int m, int n, double mean_gain, DiversityScheme scheme,
                       Rng& rng) {
  double best = 0.0;
  for (int j = 0; j < m; ++j) {
    if (scheme == DiversityScheme::TAS_MRC) {
      double branch = 0.0;
      for (int l = 0; l < n; ++l) branch += sample_exponential(rng, mean_gain);
      best = std::max(best, branch);
    } else {
      for (int l = 0; l < n; ++l)
        best = std::max(best, sample_exponential(rng, mean_gain));
    }
  }
  return best;
}

double sndr_from_gains(double x_gain, double h_gain, const HopConfig& hop,
                       double p_max) {
  double p = std::min(p_max, hop.interference_threshold / h_gain);
  double n_eff = effective_noise(hop);
  double signal = p * x_gain;
  return signal / (signal * hop.kappa_t * hop.kappa_t + n_eff);
}

double hop_sndr_sample(const HopConfig& hop, int t_p, double p_max,
                       DiversityScheme scheme, Rng& rng) {
  double x = sample_hop_gain(hop.m_tx, hop.n_rx, hop.mean_gain, scheme, rng);
  double h = sample_interference_gain(t_p, hop.interference_mean_gain, rng);
  return sndr_from_gains(x, h, hop, p_max);
}

OutageEstimate estimate_outage(const SystemConfig& cfg, long long trials,
                               std::uint64_t seed, int workers) {
  if (trials < 1) throw std::domain_error("trials must be >= 1");
  if (workers < 1) workers = 1;
  const long long n_blocks = (trials + kBlockSize - 1) / kBlockSize;
  std::vector<long long> block_counts(static_cast<size_t>(n_blocks), 0);

  auto run_block = [&](long long b) {
    Rng rng(block_stream_seed(seed, b));
    long long first = b * kBlockSize;
    long long count = std::min<long long>(kBlockSize, trials - first);
    long long outages = 0;
    for (long long t = 0; t < count; ++t) {
      double sndr1 = hop_sndr_sample(cfg.hop1, cfg.primary_antennas, cfg.p_max,
                                     cfg.scheme, rng);
      double sndr2 = hop_sndr_sample(cfg.hop2, cfg.primary_antennas, cfg.p_max,
                                     cfg.scheme, rng);
      if (std::min(sndr1, sndr2) <= cfg.gamma_th) ++outages;
    }
    block_counts[static_cast<size_t>(b)] = outages;
  };

  if (workers == 1 || n_blocks == 1) {
    for (long long b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<long long> next{0};
    auto worker = [&]() {
      for (;;) {
        long long b = next.fetch_add(1);
        if (b >= n_blocks) break;
        run_block(b);
      }
    };
    std::vector<std::thread> pool;
    int n_threads = static_cast<int>(
        std::min<long long>(workers, n_blocks));
    pool.reserve(static_cast<size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  long long total = 0;
  for (long long c : block_counts) total += c;
  OutageEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.outage_count = total;
  est.estimate = static_cast<double>(total) / static_cast<double>(trials);
  est.stderr_ = std::sqrt(est.estimate * (1.0 - est.estimate) /
                          static_cast<double>(trials));
  return est;
}

}  // namespace cogrelay::mc
