#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypwarp {

// Failure taxonomy shared by all modules. Numeric failures map to CLI exit
// code 3, verification failures to 1, usage problems to 2.
enum class ErrorCode {
  NotSpd,
  NotPositiveDefinite,
  HypothesisViolated,
  ZeroVector,
  NotBounded,
  EvaluationFailure,
  CenterOutOfRange,
  ChartConstructionFailure,
  DomainEscape,
  RadiusTooSmall,
  ThresholdNotMet,
  DegeneratePlane,
  InputOutOfRange,
  Overflow,
  ConfigParse,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double t) const { return t > lo && t < hi; }
};

// Deterministic RNG: splitmix64 core with hand-rolled distributions so that
// streams are identical across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal();

  // uniform on the unit sphere of R^n
  std::vector<double> unit_vector(int n);

  // substream derivation, so that parallel consumers stay decoupled
  Rng fork(std::uint64_t salt) const { return Rng(state_ ^ (0x6a09e667f3bcc909ull + salt * 0x100000001b3ull)); }

 private:
  std::uint64_t state_;
};

// Runs fn(i) for i in [0, count). Results must be written to per-index slots
// by the caller; the schedule never affects the values, so output is
// independent of the thread count. HYPWARP_THREADS caps the pool.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

int worker_count();

}  // namespace hypwarp
