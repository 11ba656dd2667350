#pragma once

#include <chrono>
#include <fstream>
#include <thread>

#include "tact/lemma_checks.hpp"

namespace tact {

/// Deterministic chunked parallel map: worker w handles indices in contiguous
/// blocks, results land in caller-owned slots, so output is independent of
/// scheduling.
template <class Fn>
inline void parallel_for(std::int64_t n, int workers, Fn&& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || n < 2 * workers) {
    fn(std::int64_t(0), n);
    return;
  }
  std::vector<std::thread> threads;
  std::int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::int64_t begin = w * chunk;
    std::int64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&fn, begin, end]() { fn(begin, end); });
  }
  for (auto& t : threads) t.join();
}

inline json environment_fingerprint() {
  return json{{"compiler", __VERSION__},
              {"pointer_bits", int(sizeof(void*) * 8)},
              {"word_letter_bytes", int(sizeof(Letter))}};
}

/// Aggregated result of one CLI command: per-check verdicts with witnesses.
/// The overall verdict fails iff any check fails; skips never fail a suite.
/// Timing is the only field outside the determinism contract.
struct SuiteResult {
  std::string command;
  json config = json::object();
  std::vector<CheckReport> checks;
  double timing_ms = 0;

  bool any_failed() const {
    for (const auto& c : checks)
      if (c.failed()) return true;
    return false;
  }
  std::string overall() const { return any_failed() ? "fail" : "pass"; }
};

inline void to_json(json& j, const SuiteResult& s) {
  j = json{{"schema_version", 1},
           {"command", s.command},
           {"config", s.config},
           {"environment", environment_fingerprint()},
           {"checks", s.checks},
           {"overall_verdict", s.overall()},
           {"timing_ms", s.timing_ms}};
}

/// JSON text with the timing field cleared; byte-identical across runs with
/// the same configuration and seed.
inline std::string deterministic_dump(const SuiteResult& s) {
  json j = s;
  j["timing_ms"] = 0;
  return j.dump(2);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace tact
