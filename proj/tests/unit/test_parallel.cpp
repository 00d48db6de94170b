#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "emcurve/parallel.hpp"

using namespace emcurve;

TEST_SUITE("parallel") {

TEST_CASE("thread count resolution") {
  CHECK(resolve_threads(3) == 3);
  ::setenv("EMCURVE_THREADS", "5", 1);
  CHECK(resolve_threads(0) == 5);
  CHECK(resolve_threads(2) == 2);
  ::setenv("EMCURVE_THREADS", "junk", 1);
  CHECK(resolve_threads(0) >= 1);
  ::unsetenv("EMCURVE_THREADS");
  CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("every index runs exactly once") {
  for (int threads : {1, 2, 7}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
  parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("exceptions propagate") {
  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::size_t i) {
                                 if (i == 37) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("deadlines") {
  const Deadline never;
  CHECK_FALSE(never.expired());
  CHECK_NOTHROW(never.check());
  const Deadline now(std::chrono::milliseconds(0));
  CHECK(now.expired());
  CHECK_THROWS_AS(now.check(), TimeoutError);
  const Deadline later(std::chrono::milliseconds(60000));
  CHECK_FALSE(later.expired());
}

}  // TEST_SUITE
