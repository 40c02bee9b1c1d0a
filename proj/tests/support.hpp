#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <memory>
#include <numeric>
#include <vector>

#include "cro/core.hpp"
#include "cro/random.hpp"

namespace testing_support {

// Objective that replays a fixed list of values, one per evaluation.
struct Script {
  std::deque<double> values;
};

inline cro::ObjectiveSpec scripted_objective(std::shared_ptr<Script> script, std::size_t dim,
                                             double lo = -100.0, double hi = 100.0) {
  cro::ObjectiveSpec spec;
  spec.dimension = dim;
  spec.bounds = cro::Bounds::uniform(dim, lo, hi);
  spec.evaluate = [script](std::span<const double>) {
    const double v = script->values.front();
    script->values.pop_front();
    return v;
  };
  return spec;
}

inline cro::ObjectiveSpec sphere_objective(std::size_t dim, double lo = -100.0, double hi = 100.0) {
  cro::ObjectiveSpec spec;
  spec.dimension = dim;
  spec.bounds = cro::Bounds::uniform(dim, lo, hi);
  spec.evaluate = [](std::span<const double> x) {
    return std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
  };
  return spec;
}

inline cro::Solution random_point(cro::Rng& rng, std::size_t dim, double lo, double hi) {
  cro::Solution x(dim);
  for (auto& v : x) v = rng.uniform(lo, hi);
  return x;
}

// Randomized reactor with `pop` molecules on the sphere; energies drawn so
// that successes and failures both occur.
inline cro::ReactorState random_reactor(cro::Rng& rng, const cro::ObjectiveSpec& spec,
                                        std::size_t pop, double step) {
  cro::ReactorState state;
  for (std::size_t k = 0; k < pop; ++k) {
    auto x = random_point(rng, spec.dimension, spec.bounds.lower[0], spec.bounds.upper[0]);
    const double pe = spec.evaluate(x);
    state.population.push_back(
        cro::Molecule::fresh(std::move(x), pe, rng.uniform(0.0, 2.0 * pe + 1.0), rng.uniform01()));
  }
  state.buffer = rng.uniform(0.0, 1e4);
  state.step_size.assign(spec.dimension, step);
  return state;
}

inline double sample_mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
  const double m = sample_mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace testing_support
