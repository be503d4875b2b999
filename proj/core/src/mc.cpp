#include "poissonlab/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace poissonlab {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(RngSpec spec) noexcept {
  std::uint64_t state = splitmix64(spec.seed) ^ splitmix64(spec.stream ^ 0x5851f42d4c957f2dULL);
  for (auto& word : s_) {
    state += 0x9e3779b97f4a7c15ULL;
    word = splitmix64(state);
  }
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

void RunningMoments::add(double x) noexcept {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

double RunningMoments::sample_variance() const noexcept {
  return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

McResult RunningMoments::result(std::uint64_t seed) const {
  McResult r;
  r.mean = mean_;
  r.reps = n_;
  r.seed = seed;
  r.std_error = n_ > 0 ? std::sqrt(sample_variance() / static_cast<double>(n_)) : 0.0;
  return r;
}

std::vector<double> run_replications(const VectorReplicationTask& task, std::size_t width,
                                     std::int64_t reps, std::uint64_t seed, McOptions options) {
  if (reps < 1) throw std::invalid_argument("run_mc: reps must be >= 1");
  if (width < 1) throw std::invalid_argument("run_mc: width must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(reps) * width);

  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, reps));

  std::atomic<std::int64_t> next{0};
  std::atomic<std::int64_t> first_failure{std::numeric_limits<std::int64_t>::max()};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= reps || i > first_failure.load()) return;
      try {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        task(rng, i, std::span<double>(values).subspan(static_cast<std::size_t>(i) * width, width));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (i < first_failure.load()) {
          first_failure.store(i);
          failure = std::current_exception();
        }
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  if (failure) {
    const std::int64_t index = first_failure.load();
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw McTaskError(index, e.what());
    } catch (...) {
      throw McTaskError(index, "unknown exception");
    }
  }
  return values;
}

std::vector<McResult> run_mc(const VectorReplicationTask& task, std::size_t width, std::int64_t reps,
                             std::uint64_t seed, McOptions options) {
  const auto values = run_replications(task, width, reps, seed, options);
  std::vector<RunningMoments> moments(width);
  for (std::int64_t i = 0; i < reps; ++i) {
    for (std::size_t c = 0; c < width; ++c) {
      moments[c].add(values[static_cast<std::size_t>(i) * width + c]);
    }
  }
  std::vector<McResult> out;
  out.reserve(width);
  for (const auto& m : moments) out.push_back(m.result(seed));
  return out;
}

McResult run_mc(const ReplicationTask& task, std::int64_t reps, std::uint64_t seed, McOptions options) {
  return run_mc(
      [&task](Rng& rng, std::int64_t i, std::span<double> out) { out[0] = task(rng, i); }, 1, reps, seed,
      options)[0];
}

}  // namespace poissonlab
