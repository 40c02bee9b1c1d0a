#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "cro/core.hpp"
#include "cro/operators.hpp"
#include "cro/random.hpp"

namespace cro {

enum class ReactionKind { OnWall, Decomposition, InterMolecular, Synthesis };

std::string_view to_string(ReactionKind kind);

// Objective evaluations a reaction consumes, successful or not.
constexpr std::size_t evaluations_required(ReactionKind kind) noexcept {
  return kind == ReactionKind::OnWall || kind == ReactionKind::Synthesis ? 1 : 2;
}

struct Candidate {
  Solution x;
  double pe;
};

struct ReactionOutcome {
  ReactionKind kind = ReactionKind::OnWall;
  bool success = false;
  // Structures accepted into the population by this reaction.
  std::vector<Candidate> new_structures;
  // Every trial structure evaluated by this reaction, accepted or not.
  std::vector<Candidate> explored;
  int population_delta = 0;
};

// Operator choices and the loss-rate source for molecules created by
// decomposition and synthesis.
struct ReactionSettings {
  BoundaryRule boundary = BoundaryRule::BP;
  SynthesisRule synthesis = SynthesisRule::ProbabilisticSelect;
  std::function<double(Rng&)> new_loss_rate = [](Rng&) { return 0.1; };
};

// Energy split of a successful on-wall collision: kept = excess * q stays as
// KE, the remainder goes to the buffer.
struct WallEnergySplit {
  double kept;
  double to_buffer;
};
WallEnergySplit split_wall_energy(double excess, double q);

// Energy available to the children of a decomposition.
//   surplus >= 0: no buffer draw, available = surplus.
//   otherwise: draw = d1 * d2 * buffer; succeeds iff surplus + draw >= 0.
struct DecompositionBudget {
  bool success;
  double available;
  double buffer_draw;
};
DecompositionBudget decomposition_budget(double surplus, double buffer, double d1, double d2);

ReactionOutcome on_wall_collision(ReactorState& state, const ObjectiveSpec& spec,
                                  std::size_t index, const ReactionSettings& settings, Rng& rng);

ReactionOutcome decomposition(ReactorState& state, const ObjectiveSpec& spec, std::size_t index,
                              const ReactionSettings& settings, Rng& rng);

ReactionOutcome intermolecular_collision(ReactorState& state, const ObjectiveSpec& spec,
                                         std::size_t i, std::size_t j,
                                         const ReactionSettings& settings, Rng& rng);

ReactionOutcome synthesis(ReactorState& state, const ObjectiveSpec& spec, std::size_t i,
                          std::size_t j, const ReactionSettings& settings, Rng& rng);

}  // namespace cro
