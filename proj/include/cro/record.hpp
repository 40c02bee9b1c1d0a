#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cro {

// Values below this are reported as exactly zero.
inline constexpr double kReportThreshold = 1e-8;

inline double truncate_result(double raw) noexcept { return raw < kReportThreshold ? 0.0 : raw; }

struct TracePoint {
  std::uint64_t fe;
  double best;
};

inline constexpr std::size_t kTraceCheckpoints = 100;

// Evaluation counts at which the best value is sampled: ceil(k * max_fes / 100)
// for k = 1..100.
inline std::vector<std::uint64_t> trace_checkpoints(std::uint64_t max_fes) {
  std::vector<std::uint64_t> out;
  out.reserve(kTraceCheckpoints);
  for (std::uint64_t k = 1; k <= kTraceCheckpoints; ++k)
    out.push_back((k * max_fes + kTraceCheckpoints - 1) / kTraceCheckpoints);
  return out;
}

struct RunRecord {
  std::string algorithm;
  std::string benchmark;
  std::size_t dimension = 0;
  std::uint64_t seed = 0;
  double final_raw = 0.0;
  double final_reported = 0.0;
  std::vector<TracePoint> trace;
  double wall_time = 0.0;
  std::uint64_t fe_count = 0;
  std::size_t final_population = 0;
  double final_step_size = 0.0;
};

}  // namespace cro
