#pragma once

#include <span>
#include <string_view>
#include <utility>

#include "cro/core.hpp"
#include "cro/random.hpp"

namespace cro {

// How an out-of-box coordinate is repaired.
//   BP: uniform re-sample inside [lower, upper].
//   HP: with probability 1/2 clamp to the violated bound, otherwise re-sample.
enum class BoundaryRule { BP, HP };

// How synthesis merges two parents.
//   ProbabilisticSelect: each coordinate copied from either parent, p = 1/2.
//   BLX05: BLX-alpha blend with alpha = 0.5, then boundary repair.
enum class SynthesisRule { ProbabilisticSelect, BLX05 };

std::string_view to_string(BoundaryRule rule);
std::string_view to_string(SynthesisRule rule);

double apply_boundary(double value, double lower, double upper, BoundaryRule rule, Rng& rng);

// Perturbs one uniformly chosen coordinate i by N(0, step_size[i]).
Solution neighborhood_search(std::span<const double> s, std::span<const double> step_size,
                             const Bounds& bounds, BoundaryRule rule, Rng& rng);

// Two children, each coordinate perturbed with probability 1/2 by
// N(0, step_size[i]).
std::pair<Solution, Solution> decompose_structure(std::span<const double> s,
                                                  std::span<const double> step_size,
                                                  const Bounds& bounds, BoundaryRule rule,
                                                  Rng& rng);

// Throws DimensionMismatch if the parents differ in length. BLX05 repairs
// out-of-box coordinates with `boundary`.
Solution synthesize_structure(std::span<const double> a, std::span<const double> b,
                              SynthesisRule rule, const Bounds& bounds, BoundaryRule boundary,
                              Rng& rng);

}  // namespace cro
