#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace poissonlab {

/// Identifies one replication stream: (run seed, replication index).
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// xoshiro256** seeded from a mix of (seed, stream). Distinct streams are
/// derived by hashing, not by sequential jumping, so any replication can be
/// regenerated in isolation. Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(RngSpec spec) noexcept;
  Rng(std::uint64_t seed, std::uint64_t stream) noexcept : Rng(RngSpec{seed, stream}) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Unbiased integer in [0, bound) for 0 < bound < 2^32 (Lemire's method).
  std::uint32_t below(std::uint32_t bound) noexcept {
    std::uint64_t m = static_cast<std::uint64_t>(static_cast<std::uint32_t>((*this)() >> 32)) * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const std::uint32_t threshold = static_cast<std::uint32_t>(-bound) % bound;
      while (low < threshold) {
        m = static_cast<std::uint64_t>(static_cast<std::uint32_t>((*this)() >> 32)) * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

/// Monte Carlo estimate of a scalar expectation.
struct McResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;

  double ci95_low() const noexcept { return mean - 1.96 * std_error; }
  double ci95_high() const noexcept { return mean + 1.96 * std_error; }
  friend bool operator==(const McResult&, const McResult&) = default;
};

/// Order-sensitive Welford accumulator; feed values in replication order.
class RunningMoments {
 public:
  void add(double x) noexcept;
  std::int64_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  double sample_variance() const noexcept;
  McResult result(std::uint64_t seed) const;

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// A replication threw; carries the lowest failing replication index.
class McTaskError : public std::runtime_error {
 public:
  McTaskError(std::int64_t index, const std::string& what)
      : std::runtime_error("replication " + std::to_string(index) + " failed: " + what), index_(index) {}
  std::int64_t index() const noexcept { return index_; }

 private:
  std::int64_t index_;
};

struct McOptions {
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
};

using ReplicationTask = std::function<double(Rng&, std::int64_t index)>;
/// A task writing `width` values per replication into `out`.
using VectorReplicationTask = std::function<void(Rng&, std::int64_t index, std::span<double> out)>;

/// Replication i runs with Rng{seed, i}. Values are merged in index order,
/// so results are bit-identical for any number of workers. If a replication
/// throws, the lowest failing index is reported via McTaskError.
McResult run_mc(const ReplicationTask& task, std::int64_t reps, std::uint64_t seed,
                McOptions options = {});

std::vector<McResult> run_mc(const VectorReplicationTask& task, std::size_t width,
                             std::int64_t reps, std::uint64_t seed, McOptions options = {});

/// Raw per-replication values (row-major, reps x width) for callers that
/// need joint statistics such as paired differences.
std::vector<double> run_replications(const VectorReplicationTask& task, std::size_t width,
                                     std::int64_t reps, std::uint64_t seed, McOptions options = {});

}  // namespace poissonlab
