#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace brw {

struct ReplicaFailure {
  std::uint64_t replica = 0;
  std::string message;
};

// Runs fn(replica) for replica = 0..count-1 on a worker pool. Results must be
// written into pre-sized per-replica slots so the outcome is identical for
// any worker count; failures are collected per replica.
inline std::vector<ReplicaFailure> parallel_replicas(std::uint64_t count, std::uint32_t workers,
                                                     const std::function<void(std::uint64_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::uint64_t> next{0};
  std::vector<std::vector<ReplicaFailure>> failures(workers);
  auto body = [&](std::uint32_t w) {
    for (;;) {
      std::uint64_t r = next.fetch_add(1);
      if (r >= count) return;
      try {
        fn(r);
      } catch (const std::exception& e) {
        failures[w].push_back({r, e.what()});
      }
    }
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  std::vector<ReplicaFailure> all;
  for (auto& f : failures) all.insert(all.end(), f.begin(), f.end());
  std::sort(all.begin(), all.end(),
            [](const ReplicaFailure& a, const ReplicaFailure& b) { return a.replica < b.replica; });
  return all;
}

}  // namespace brw
