#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cro/core.hpp"

namespace cro::bench {

inline constexpr int kFunctionCount = 24;
inline constexpr double kLower = -100.0;
inline constexpr double kUpper = 100.0;
// Generated shift vectors are drawn from [-kShiftEnvelope, kShiftEnvelope].
inline constexpr double kShiftEnvelope = 80.0;

enum class BaseFunction {
  Sphere,
  Schwefel1_2,
  Schwefel2_21,
  Schwefel2_22,
  Rosenbrock,
  Discus,
  Ackley,
  Schwefel2_26,
  Rastrigin,
  Griewank,
  Levy,
  Penalized1,
  Penalized2,
};

struct FunctionInfo {
  int id;
  BaseFunction base;
  bool shifted;
  bool rotated;
  double scale;
  std::string_view name;
};

// Throws std::out_of_range for ids outside 1..24.
const FunctionInfo& function_info(int id);
std::string function_tag(int id);  // "f7"
// Accepts "f7", "F7" or "7"; returns 0 if unrecognized.
int parse_function_tag(std::string_view tag);

// Penalty term: k(x-a)^m above a, k(-x-a)^m below -a, zero in between.
double penalty_u(double x, double a, double k, double m);

// Base function evaluated on the already transformed vector z.
double evaluate_base(BaseFunction base, std::span<const double> z);

// Coordinate of the base function's global minimizer (the same value in
// every coordinate for all thirteen bases).
double base_optimum_coordinate(BaseFunction base);

struct TransformData {
  int id = 0;
  std::vector<double> shift;
  // Row-major D x D; identity for unrotated functions.
  std::vector<double> rotation;
  double scale = 1.0;
  std::uint64_t seed = 0;

  std::size_t dimension() const noexcept { return shift.size(); }
  bool operator==(const TransformData&) const = default;
};

// Deterministic in (base_seed, id, dimension).
TransformData generate_transform(std::uint64_t base_seed, int id, std::size_t dimension);

// Text format:
//   line 1       "f<id> <D> <seed>"
//   line 2       D shift values
//   D lines      D rotation entries each
//   final line   decimal CRC32 of the canonical rendering of lines 2..D+2
void save_transform(const std::filesystem::path& path, const TransformData& data);
TransformData load_transform(const std::filesystem::path& path);
// CRC32 over the canonical numeric payload (shift then rotation rows).
std::uint32_t payload_checksum(const TransformData& data);

// Raw whitespace-separated numbers as shipped with the CEC suites. Reads the
// first `count` values; throws FormatError if fewer are present.
std::vector<double> read_cec_values(const std::filesystem::path& path, std::size_t count);

// Transform for `id` built from files in `dir`:
//   f<id>_shift.txt      at least D values (ignored for f13/f14)
//   f<id>_M_D<D>.txt     at least D*D values, row-major (rotated functions)
// A missing file falls back to the generated data for that piece.
TransformData import_cec_transform(const std::filesystem::path& dir, int id,
                                   std::size_t dimension, std::uint64_t fallback_seed);

class BenchmarkInstance {
 public:
  explicit BenchmarkInstance(TransformData data);

  int id() const noexcept { return data_.id; }
  const FunctionInfo& info() const { return function_info(data_.id); }
  std::size_t dimension() const noexcept { return data_.dimension(); }
  const TransformData& transform() const noexcept { return data_; }

  // Throws DimensionMismatch when x has the wrong length.
  double evaluate(std::span<const double> x) const;
  double operator()(std::span<const double> x) const { return evaluate(x); }

  // z for a given x, per the function's transformation row.
  std::vector<double> transform_point(std::span<const double> x) const;
  // x whose transformed image is the base function's minimizer.
  Solution constructed_optimum() const;

  Bounds bounds() const { return Bounds::uniform(dimension(), kLower, kUpper); }
  // ObjectiveSpec sharing this instance (copied into the closure).
  ObjectiveSpec objective() const;

 private:
  TransformData data_;
  const FunctionInfo* info_;
};

}  // namespace cro::bench
