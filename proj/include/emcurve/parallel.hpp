#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace emcurve {

/// Worker count: `requested` if positive, else $EMCURVE_THREADS, else the
/// hardware concurrency (at least 1).
int resolve_threads(int requested = 0);

/// Runs body(i) for i in [0, n) on `threads` workers. Indices are handed out
/// dynamically; callers write results into per-index slots so the outcome
/// does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

class TimeoutError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Cooperative time budget for long computations.
class Deadline {
public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;  // never expires
  explicit Deadline(std::chrono::milliseconds budget) : end_(Clock::now() + budget), active_(true) {}

  bool expired() const { return active_ && Clock::now() >= end_; }
  void check() const {
    if (expired()) throw TimeoutError("computation exceeded its time budget");
  }

private:
  Clock::time_point end_{};
  bool active_ = false;
};

}  // namespace emcurve
