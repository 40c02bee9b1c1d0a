#include "cro/core.hpp"

#include <cmath>
#include <string>

namespace cro {

bool Bounds::contains(std::span<const double> x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

void Bounds::validate() const {
  if (lower.size() != upper.size())
    throw InvalidConfig("bounds: lower and upper lengths differ");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i]))
      throw InvalidConfig("bounds: lower >= upper at index " + std::to_string(i));
  }
}

void ObjectiveSpec::validate() const {
  if (dimension == 0) throw InvalidConfig("objective: dimension must be positive");
  if (bounds.size() != dimension)
    throw InvalidConfig("objective: bounds length does not match dimension");
  bounds.validate();
  if (!evaluate) throw InvalidConfig("objective: no evaluation function");
}

Molecule Molecule::fresh(Solution structure, double pe, double ke, double loss_rate) {
  Molecule m;
  m.structure = std::move(structure);
  m.pe = pe;
  m.ke = ke;
  m.min_pe = pe;
  m.loss_rate = loss_rate;
  return m;
}

void Molecule::move_to(Solution next, double next_pe) {
  structure = std::move(next);
  pe = next_pe;
  if (pe < min_pe) {
    min_pe = pe;
    min_hit = num_hit;
  }
}

SuccessWindow::SuccessWindow(std::size_t n) : n_(n == 0 ? 1 : n), ring_(10 * n_, 0) {}

void SuccessWindow::record(bool success) {
  if (full()) successes_ -= ring_[head_];
  else ++size_;
  ring_[head_] = success ? 1 : 0;
  successes_ += ring_[head_];
  head_ = (head_ + 1) % ring_.size();
  ++seen_;
}

double evaluate_and_count(ReactorState& state, const ObjectiveSpec& spec,
                          std::span<const double> s) {
  const double value = spec.evaluate(s);
  ++state.fe_count;
  if (!std::isfinite(value))
    throw NonFiniteObjective("objective returned a non-finite value at evaluation " +
                             std::to_string(state.fe_count));
  return value;
}

double total_energy(const ReactorState& state) {
  double total = state.buffer;
  for (const auto& m : state.population) total += m.pe + m.ke;
  return total;
}

bool update_best(ReactorState& state, std::span<const double> candidate, double pe) {
  const bool success = pe < state.best_pe;
  if (success) {
    state.best_pe = pe;
    state.best_solution.assign(candidate.begin(), candidate.end());
  }
  state.update_window.record(success);
  ++state.update_count;
  return success;
}

bool energy_conserved(double before, double after, double rel_tol) {
  return std::abs(after - before) <= rel_tol * std::abs(before);
}

}  // namespace cro
