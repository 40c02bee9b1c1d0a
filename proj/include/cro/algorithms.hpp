#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "cro/core.hpp"
#include "cro/operators.hpp"
#include "cro/random.hpp"
#include "cro/reactions.hpp"
#include "cro/record.hpp"

namespace cro {

enum class Variant { CRO_BP, CRO_HP, CRO_BB, CRO_D, ACRO_BP, ACRO_HP, ACRO_BB };

// "CRO/BP", "ACRO/BB", ...
std::string_view to_string(Variant v);
// Accepts the slash form ("ACRO/BP") or the underscore form ("ACRO_BP"),
// case-insensitive.
std::optional<Variant> parse_variant(std::string_view name);
std::span<const Variant> all_variants();

bool is_adaptive(Variant v) noexcept;
BoundaryRule boundary_rule(Variant v) noexcept;
SynthesisRule synthesis_rule(Variant v) noexcept;

// Canonical CRO tunables. adapt_interval/adapt_rate only matter for CRO/D.
struct CanonicalParams {
  double ini_ke = 1e7;
  double ini_buffer = 1e5;
  double loss_rate = 0.1;
  double dec_thres = 1.5e5;
  double syn_thres = 10.0;
  double step_size = 1.0;
  std::uint64_t adapt_interval = 100;
  double adapt_rate = 0.99;
};

// The only ACRO-specific tunable; everything else is derived at run time.
struct AdaptiveParams {
  double change_rate = 1e-4;
};

struct AlgorithmConfig {
  Variant variant = Variant::ACRO_BP;
  std::size_t ini_pop_size = 20;
  double coll_rate = 0.2;
  std::uint64_t max_fes = 300000;
  std::variant<CanonicalParams, AdaptiveParams> params = AdaptiveParams{};

  static AlgorithmConfig defaults(Variant v, std::uint64_t max_fes = 300000);

  // Throws InvalidConfig for out-of-range fields or a parameter set that does
  // not belong to the variant.
  void validate() const;

  const CanonicalParams& canonical() const;
  const AdaptiveParams& adaptive() const;
};

// min(|raw|, 1): the folding applied to a N(0, 0.3^2) draw.
double fold_loss_rate(double raw) noexcept;
double draw_loss_rate(Rng& rng);

struct PopulationFeedback {
  double f_pop;
  double f_dec;
  double f_syn;
};
PopulationFeedback population_feedback(std::size_t cur_pop_size, std::size_t ini_pop_size);

ReactionKind select_reaction_acro(std::size_t cur_pop_size, std::size_t ini_pop_size,
                                  double change_rate, double coll_rate, Rng& rng);
ReactionKind select_reaction_acro(const ReactorState& state, const AlgorithmConfig& cfg,
                                  Rng& rng);

inline constexpr double kStepAdaptFactor = 0.85;

// n of the 1/5 success rule: one hundredth of the evaluation budget.
std::size_t success_window_n(std::uint64_t max_fes) noexcept;

// 1/5 success rule. Call after every update_best. Returns true when the step
// size was rescaled.
bool step_size_rule(ReactorState& state);

ReactorState acro_init(const ObjectiveSpec& spec, const AlgorithmConfig& cfg, Rng& rng);
ReactorState cro_init(const ObjectiveSpec& spec, const AlgorithmConfig& cfg, Rng& rng);

#ifdef NDEBUG
inline constexpr std::uint64_t kDefaultEnergyCheckInterval = 1000;
#else
inline constexpr std::uint64_t kDefaultEnergyCheckInterval = 1;
#endif

struct RunHooks {
  // Called after every reaction with the post-reaction state.
  std::function<void(const ReactorState&, const ReactionOutcome&)> on_reaction;
  // Energy ledger checked every this many reactions; 0 disables.
  std::uint64_t energy_check_interval = kDefaultEnergyCheckInterval;
};

RunRecord run_acro(const ObjectiveSpec& spec, const AlgorithmConfig& cfg, Rng& rng,
                   const RunHooks& hooks = {});
RunRecord run_cro(const ObjectiveSpec& spec, const AlgorithmConfig& cfg, Rng& rng,
                  const RunHooks& hooks = {});
// Dispatches on cfg.variant.
RunRecord run_algorithm(const ObjectiveSpec& spec, const AlgorithmConfig& cfg, Rng& rng,
                        const RunHooks& hooks = {});

}  // namespace cro
