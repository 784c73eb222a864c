#include "hypwarp/common.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace hypwarp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSpd: return "NotSpd";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotBounded: return "NotBounded";
    case ErrorCode::EvaluationFailure: return "EvaluationFailure";
    case ErrorCode::CenterOutOfRange: return "CenterOutOfRange";
    case ErrorCode::ChartConstructionFailure: return "ChartConstructionFailure";
    case ErrorCode::DomainEscape: return "DomainEscape";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::ThresholdNotMet: return "ThresholdNotMet";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::InputOutOfRange: return "InputOutOfRange";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ConfigParse: return "ConfigParse";
  }
  return "UnknownError";
}

double Rng::normal() {
  // Box-Muller; one value per call keeps the stream position easy to reason about.
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

std::vector<double> Rng::unit_vector(int n) {
  std::vector<double> v(n);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      v[i] = normal();
      norm2 += v[i] * v[i];
    }
  } while (norm2 < 1e-12);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& x : v) x *= inv;
  return v;
}

int worker_count() {
  static int cached = [] {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("HYPWARP_THREADS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v >= 1) n = static_cast<int>(v);
    }
    if (n > 64) n = 64;
    return n;
  }();
  return cached;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const int workers = worker_count();
  if (workers <= 1 || count < 32) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        cursor.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int spawn = static_cast<int>(std::min<std::size_t>(workers, count));
  pool.reserve(spawn - 1);
  for (int w = 1; w < spawn; ++w) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hypwarp
