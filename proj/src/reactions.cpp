#include "cro/reactions.hpp"

#include <string>

namespace cro {

std::string_view to_string(ReactionKind kind) {
  switch (kind) {
    case ReactionKind::OnWall: return "OnWall";
    case ReactionKind::Decomposition: return "Decomposition";
    case ReactionKind::InterMolecular: return "InterMolecular";
    case ReactionKind::Synthesis: return "Synthesis";
  }
  return "?";
}

WallEnergySplit split_wall_energy(double excess, double q) {
  const double kept = excess * q;
  return {kept, excess - kept};
}

DecompositionBudget decomposition_budget(double surplus, double buffer, double d1, double d2) {
  if (surplus >= 0.0) return {true, surplus, 0.0};
  const double draw = d1 * d2 * buffer;
  const double available = surplus + draw;
  if (available >= 0.0) return {true, available, draw};
  return {false, 0.0, 0.0};
}

namespace {

void require_budget(const ReactorState& state, ReactionKind kind) {
  if (state.remaining_evaluations() < evaluations_required(kind))
    throw BudgetExhausted(std::string(to_string(kind)) + " needs " +
                          std::to_string(evaluations_required(kind)) +
                          " evaluations, " + std::to_string(state.remaining_evaluations()) +
                          " remain");
}

void require_index(const ReactorState& state, std::size_t index) {
  if (index >= state.population.size())
    throw std::out_of_range("molecule index " + std::to_string(index) +
                            " out of range for population of " +
                            std::to_string(state.population.size()));
}

void require_pair(const ReactorState& state, std::size_t i, std::size_t j) {
  require_index(state, i);
  require_index(state, j);
  if (i == j) throw SameMolecule("reaction needs two distinct molecules, got " + std::to_string(i) + " twice");
}

// Erases two population slots, higher index first so the lower stays valid.
void erase_pair(std::vector<Molecule>& population, std::size_t i, std::size_t j) {
  const auto hi = i > j ? i : j;
  const auto lo = i > j ? j : i;
  population.erase(population.begin() + static_cast<std::ptrdiff_t>(hi));
  population.erase(population.begin() + static_cast<std::ptrdiff_t>(lo));
}

}  // namespace

ReactionOutcome on_wall_collision(ReactorState& state, const ObjectiveSpec& spec,
                                  std::size_t index, const ReactionSettings& settings, Rng& rng) {
  require_index(state, index);
  require_budget(state, ReactionKind::OnWall);
  ReactionOutcome out;
  out.kind = ReactionKind::OnWall;

  Molecule& m = state.population[index];
  Solution trial =
      neighborhood_search(m.structure, state.step_size, spec.bounds, settings.boundary, rng);
  const double trial_pe = evaluate_and_count(state, spec, trial);
  out.explored.push_back({trial, trial_pe});
  ++m.num_hit;
  if (m.pe + m.ke < trial_pe) return out;

  const double excess = m.pe + m.ke - trial_pe;
  const auto split = split_wall_energy(excess, rng.uniform(m.loss_rate, 1.0));
  state.buffer += split.to_buffer;
  m.ke = split.kept;
  out.new_structures.push_back({trial, trial_pe});
  m.move_to(std::move(trial), trial_pe);
  out.success = true;
  return out;
}

ReactionOutcome decomposition(ReactorState& state, const ObjectiveSpec& spec, std::size_t index,
                              const ReactionSettings& settings, Rng& rng) {
  require_index(state, index);
  require_budget(state, ReactionKind::Decomposition);
  ReactionOutcome out;
  out.kind = ReactionKind::Decomposition;

  Molecule& parent = state.population[index];
  auto [first, second] =
      decompose_structure(parent.structure, state.step_size, spec.bounds, settings.boundary, rng);
  const double pe1 = evaluate_and_count(state, spec, first);
  const double pe2 = evaluate_and_count(state, spec, second);
  out.explored.push_back({first, pe1});
  out.explored.push_back({second, pe2});

  const double surplus = parent.pe + parent.ke - pe1 - pe2;
  DecompositionBudget budget{true, surplus, 0.0};
  if (surplus < 0.0) {
    const double d1 = rng.uniform01();
    const double d2 = rng.uniform01();
    budget = decomposition_budget(surplus, state.buffer, d1, d2);
  }
  if (!budget.success) {
    ++parent.num_hit;
    return out;
  }

  state.buffer -= budget.buffer_draw;
  const double d3 = rng.uniform01();
  const double ke1 = budget.available * d3;
  const double ke2 = budget.available - ke1;
  const double lr1 = settings.new_loss_rate(rng);
  const double lr2 = settings.new_loss_rate(rng);

  out.new_structures.push_back({first, pe1});
  out.new_structures.push_back({second, pe2});
  state.population.erase(state.population.begin() + static_cast<std::ptrdiff_t>(index));
  state.population.push_back(Molecule::fresh(std::move(first), pe1, ke1, lr1));
  state.population.push_back(Molecule::fresh(std::move(second), pe2, ke2, lr2));
  out.success = true;
  out.population_delta = +1;
  return out;
}

ReactionOutcome intermolecular_collision(ReactorState& state, const ObjectiveSpec& spec,
                                         std::size_t i, std::size_t j,
                                         const ReactionSettings& settings, Rng& rng) {
  require_pair(state, i, j);
  require_budget(state, ReactionKind::InterMolecular);
  ReactionOutcome out;
  out.kind = ReactionKind::InterMolecular;

  Molecule& a = state.population[i];
  Molecule& b = state.population[j];
  Solution trial_a =
      neighborhood_search(a.structure, state.step_size, spec.bounds, settings.boundary, rng);
  Solution trial_b =
      neighborhood_search(b.structure, state.step_size, spec.bounds, settings.boundary, rng);
  const double pe_a = evaluate_and_count(state, spec, trial_a);
  const double pe_b = evaluate_and_count(state, spec, trial_b);
  out.explored.push_back({trial_a, pe_a});
  out.explored.push_back({trial_b, pe_b});
  ++a.num_hit;
  ++b.num_hit;

  const double surplus = a.pe + a.ke + b.pe + b.ke - pe_a - pe_b;
  if (surplus < 0.0) return out;

  const double k = rng.uniform01();
  a.ke = surplus * k;
  b.ke = surplus - a.ke;
  out.new_structures.push_back({trial_a, pe_a});
  out.new_structures.push_back({trial_b, pe_b});
  a.move_to(std::move(trial_a), pe_a);
  b.move_to(std::move(trial_b), pe_b);
  out.success = true;
  return out;
}

ReactionOutcome synthesis(ReactorState& state, const ObjectiveSpec& spec, std::size_t i,
                          std::size_t j, const ReactionSettings& settings, Rng& rng) {
  if (state.population.size() < 2)
    throw PopulationTooSmall("synthesis needs at least two molecules");
  require_pair(state, i, j);
  require_budget(state, ReactionKind::Synthesis);
  ReactionOutcome out;
  out.kind = ReactionKind::Synthesis;

  Molecule& a = state.population[i];
  Molecule& b = state.population[j];
  Solution child = synthesize_structure(a.structure, b.structure, settings.synthesis,
                                        spec.bounds, settings.boundary, rng);
  const double child_pe = evaluate_and_count(state, spec, child);
  out.explored.push_back({child, child_pe});

  const double surplus = a.pe + a.ke + b.pe + b.ke - child_pe;
  if (surplus < 0.0) {
    ++a.num_hit;
    ++b.num_hit;
    return out;
  }

  const double lr = settings.new_loss_rate(rng);
  out.new_structures.push_back({child, child_pe});
  erase_pair(state.population, i, j);
  state.population.push_back(Molecule::fresh(std::move(child), child_pe, surplus, lr));
  out.success = true;
  out.population_delta = -1;
  return out;
}

}  // namespace cro
