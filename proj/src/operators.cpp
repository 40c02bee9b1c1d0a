#include "cro/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cro {

std::string_view to_string(BoundaryRule rule) {
  return rule == BoundaryRule::BP ? "BP" : "HP";
}

std::string_view to_string(SynthesisRule rule) {
  return rule == SynthesisRule::ProbabilisticSelect ? "ProbabilisticSelect" : "BLX05";
}

double apply_boundary(double value, double lower, double upper, BoundaryRule rule, Rng& rng) {
  if (value >= lower && value <= upper) return value;
  if (rule == BoundaryRule::HP && rng.coin(0.5)) return value < lower ? lower : upper;
  return rng.uniform(lower, upper);
}

Solution neighborhood_search(std::span<const double> s, std::span<const double> step_size,
                             const Bounds& bounds, BoundaryRule rule, Rng& rng) {
  Solution out(s.begin(), s.end());
  const std::size_t i = rng.index(out.size());
  out[i] = apply_boundary(out[i] + rng.normal(0.0, step_size[i]), bounds.lower[i],
                          bounds.upper[i], rule, rng);
  return out;
}

namespace {

Solution perturb_half(std::span<const double> s, std::span<const double> step_size,
                      const Bounds& bounds, BoundaryRule rule, Rng& rng) {
  Solution out(s.begin(), s.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!rng.coin(0.5)) continue;
    out[i] = apply_boundary(out[i] + rng.normal(0.0, step_size[i]), bounds.lower[i],
                            bounds.upper[i], rule, rng);
  }
  return out;
}

}  // namespace

std::pair<Solution, Solution> decompose_structure(std::span<const double> s,
                                                  std::span<const double> step_size,
                                                  const Bounds& bounds, BoundaryRule rule,
                                                  Rng& rng) {
  Solution first = perturb_half(s, step_size, bounds, rule, rng);
  Solution second = perturb_half(s, step_size, bounds, rule, rng);
  return {std::move(first), std::move(second)};
}

Solution synthesize_structure(std::span<const double> a, std::span<const double> b,
                              SynthesisRule rule, const Bounds& bounds, BoundaryRule boundary,
                              Rng& rng) {
  if (a.size() != b.size())
    throw DimensionMismatch("synthesis parents have lengths " + std::to_string(a.size()) +
                            " and " + std::to_string(b.size()));
  Solution out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (rule == SynthesisRule::ProbabilisticSelect) {
      out[i] = rng.coin(0.5) ? b[i] : a[i];
      continue;
    }
    const double lo = std::min(a[i], b[i]);
    const double hi = std::max(a[i], b[i]);
    const double d = hi - lo;
    out[i] = apply_boundary(rng.uniform(lo - 0.5 * d, hi + 0.5 * d), bounds.lower[i],
                            bounds.upper[i], boundary, rng);
  }
  return out;
}

}  // namespace cro
