#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "cro/errors.hpp"

namespace cro {

// Decision vector carried by a molecule.
using Solution = std::vector<double>;

// Box constraints, one interval per decision variable.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  static Bounds uniform(std::size_t dimension, double lo, double hi) {
    return {std::vector<double>(dimension, lo), std::vector<double>(dimension, hi)};
  }

  std::size_t size() const noexcept { return lower.size(); }
  bool contains(std::span<const double> x) const;
  // Throws InvalidConfig unless lower/upper agree in length and lower < upper.
  void validate() const;
};

// The problem being minimized: a dimension, its box, and a pure objective.
struct ObjectiveSpec {
  std::size_t dimension = 0;
  Bounds bounds;
  std::function<double(std::span<const double>)> evaluate;

  void validate() const;
};

struct Molecule {
  Solution structure;
  double pe = 0.0;
  double ke = 0.0;
  std::uint64_t num_hit = 0;
  std::uint64_t min_hit = 0;
  double min_pe = std::numeric_limits<double>::infinity();
  double loss_rate = 0.0;

  // A newly created molecule: counters zeroed, its own minimum at `pe`.
  static Molecule fresh(Solution structure, double pe, double ke, double loss_rate);

  // Replaces the structure and updates the molecule's own-minimum record.
  void move_to(Solution next, double next_pe);

  std::uint64_t inactive_degree() const noexcept { return num_hit - min_hit; }
};

// Sliding record of the last 10n update outcomes.
class SuccessWindow {
 public:
  explicit SuccessWindow(std::size_t n = 1);

  void record(bool success);

  std::size_t n() const noexcept { return n_; }
  std::size_t capacity() const noexcept { return ring_.size(); }
  std::size_t size() const noexcept { return size_; }
  bool full() const noexcept { return size_ == ring_.size(); }
  std::size_t successes() const noexcept { return successes_; }
  std::uint64_t updates_seen() const noexcept { return seen_; }

 private:
  std::size_t n_;
  std::vector<unsigned char> ring_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
  std::size_t successes_ = 0;
  std::uint64_t seen_ = 0;
};

struct ReactorState {
  std::vector<Molecule> population;
  double buffer = 0.0;
  std::uint64_t fe_count = 0;
  std::uint64_t max_fes = std::numeric_limits<std::uint64_t>::max();
  double best_pe = std::numeric_limits<double>::infinity();
  Solution best_solution;
  std::vector<double> step_size;
  SuccessWindow update_window;
  std::uint64_t update_count = 0;
  // KE handed to molecules at initialization; kept for inspection.
  double ini_ke = 0.0;

  std::uint64_t remaining_evaluations() const noexcept {
    return fe_count >= max_fes ? 0 : max_fes - fe_count;
  }
};

// f(s), counted against the budget. Throws NonFiniteObjective on NaN/inf.
double evaluate_and_count(ReactorState& state, const ObjectiveSpec& spec,
                          std::span<const double> s);

// buffer + sum(pe + ke).
double total_energy(const ReactorState& state);

// Strict-improvement best tracking. Every call records its outcome in the
// update window and advances update_count.
bool update_best(ReactorState& state, std::span<const double> candidate, double pe);

// |after - before| <= rel_tol * |before|
bool energy_conserved(double before, double after, double rel_tol = 1e-9);

}  // namespace cro
