#include "cro/algorithms.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <string>

namespace cro {

namespace {

constexpr std::array<Variant, 7> kVariants = {Variant::ACRO_BP, Variant::ACRO_HP, Variant::ACRO_BB,
                                              Variant::CRO_BP,  Variant::CRO_HP,  Variant::CRO_BB,
                                              Variant::CRO_D};

constexpr double kLossRateSigma = 0.3;

std::string upper_slash(std::string_view name) {
  std::string out(name);
  for (auto& c : out) {
    if (c == '_') c = '/';
    else c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::CRO_BP: return "CRO/BP";
    case Variant::CRO_HP: return "CRO/HP";
    case Variant::CRO_BB: return "CRO/BB";
    case Variant::CRO_D: return "CRO/D";
    case Variant::ACRO_BP: return "ACRO/BP";
    case Variant::ACRO_HP: return "ACRO/HP";
    case Variant::ACRO_BB: return "ACRO/BB";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view name) {
  const std::string key = upper_slash(name);
  for (Variant v : kVariants) {
    if (to_string(v) == key) return v;
  }
  return std::nullopt;
}

std::span<const Variant> all_variants() { return kVariants; }

bool is_adaptive(Variant v) noexcept {
  return v == Variant::ACRO_BP || v == Variant::ACRO_HP || v == Variant::ACRO_BB;
}

BoundaryRule boundary_rule(Variant v) noexcept {
  return v == Variant::CRO_HP || v == Variant::ACRO_HP ? BoundaryRule::HP : BoundaryRule::BP;
}

SynthesisRule synthesis_rule(Variant v) noexcept {
  return v == Variant::CRO_BB || v == Variant::ACRO_BB ? SynthesisRule::BLX05
                                                        : SynthesisRule::ProbabilisticSelect;
}

AlgorithmConfig AlgorithmConfig::defaults(Variant v, std::uint64_t max_fes) {
  AlgorithmConfig cfg;
  cfg.variant = v;
  cfg.max_fes = max_fes;
  if (is_adaptive(v)) cfg.params = AdaptiveParams{};
  else cfg.params = CanonicalParams{};
  return cfg;
}

const CanonicalParams& AlgorithmConfig::canonical() const {
  if (const auto* p = std::get_if<CanonicalParams>(&params)) return *p;
  throw InvalidConfig(std::string(to_string(variant)) + " carries no canonical parameters");
}

const AdaptiveParams& AlgorithmConfig::adaptive() const {
  if (const auto* p = std::get_if<AdaptiveParams>(&params)) return *p;
  throw InvalidConfig(std::string(to_string(variant)) + " carries no adaptive parameters");
}

void AlgorithmConfig::validate() const {
  const std::string name(to_string(variant));
  auto fail = [&](const std::string& what) { throw InvalidConfig(name + ": " + what); };
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };

  if (ini_pop_size == 0) fail("ini_pop_size must be positive");
  if (!unit(coll_rate)) fail("coll_rate must lie in [0, 1]");
  if (max_fes == 0) fail("max_fes must be positive");
  if (max_fes < ini_pop_size) fail("max_fes must cover the initial population");

  if (is_adaptive(variant)) {
    const auto* p = std::get_if<AdaptiveParams>(&params);
    if (!p) fail("adaptive variant needs adaptive parameters");
    if (!unit(p->change_rate)) fail("change_rate must lie in [0, 1]");
    return;
  }
  const auto* p = std::get_if<CanonicalParams>(&params);
  if (!p) fail("canonical variant needs canonical parameters");
  if (!(p->ini_ke >= 0.0) || !std::isfinite(p->ini_ke)) fail("ini_ke must be finite and >= 0");
  if (!(p->ini_buffer >= 0.0) || !std::isfinite(p->ini_buffer))
    fail("ini_buffer must be finite and >= 0");
  if (!unit(p->loss_rate)) fail("loss_rate must lie in [0, 1]");
  if (!(p->dec_thres >= 0.0)) fail("dec_thres must be >= 0");
  if (!(p->syn_thres >= 0.0)) fail("syn_thres must be >= 0");
  if (!(p->step_size > 0.0) || !std::isfinite(p->step_size)) fail("step_size must be positive");
  if (variant == Variant::CRO_D) {
    if (p->adapt_interval == 0) fail("adapt_interval must be positive");
    if (!(p->adapt_rate > 0.0 && p->adapt_rate < 1.0)) fail("adapt_rate must lie in (0, 1)");
  }
}

double fold_loss_rate(double raw) noexcept { return std::min(std::abs(raw), 1.0); }

double draw_loss_rate(Rng& rng) { return fold_loss_rate(rng.normal(0.0, kLossRateSigma)); }

PopulationFeedback population_feedback(std::size_t cur_pop_size, std::size_t ini_pop_size) {
  const double cur = static_cast<double>(cur_pop_size);
  const double ini = static_cast<double>(ini_pop_size);
  const double f_pop = (cur - ini) / ini;
  const double f_dec = 0.5 * (1.0 - f_pop);
  return {f_pop, f_dec, 1.0 - f_dec};
}

ReactionKind select_reaction_acro(std::size_t cur_pop_size, std::size_t ini_pop_size,
                                  double change_rate, double coll_rate, Rng& rng) {
  if (rng.uniform01() < change_rate) {
    // A lone molecule cannot take part in synthesis.
    if (cur_pop_size < 2) return ReactionKind::Decomposition;
    const auto fb = population_feedback(cur_pop_size, ini_pop_size);
    return rng.uniform01() < fb.f_dec ? ReactionKind::Decomposition : ReactionKind::Synthesis;
  }
  if (rng.uniform01() < coll_rate && cur_pop_size >= 2) return ReactionKind::InterMolecular;
  return ReactionKind::OnWall;
}

ReactionKind select_reaction_acro(const ReactorState& state, const AlgorithmConfig& cfg,
                                  Rng& rng) {
  return select_reaction_acro(state.population.size(), cfg.ini_pop_size,
                              cfg.adaptive().change_rate, cfg.coll_rate, rng);
}

std::size_t success_window_n(std::uint64_t max_fes) noexcept {
  return static_cast<std::size_t>(std::max<std::uint64_t>(1, max_fes / 100));
}

bool step_size_rule(ReactorState& state) {
  const auto& window = state.update_window;
  if (state.update_count == 0 || state.update_count % window.n() != 0 || !window.full())
    return false;
  const bool grow = window.successes() > 2 * window.n();
  for (auto& s : state.step_size) {
    if (grow) s /= kStepAdaptFactor;
    else s *= kStepAdaptFactor;
  }
  return true;
}

namespace {

// Uniform random population, evaluated; KE and loss rates are left to the caller.
ReactorState seed_population(const ObjectiveSpec& spec, const AlgorithmConfig& cfg, Rng& rng) {
  spec.validate();
  cfg.validate();
  ReactorState state;
  state.max_fes = cfg.max_fes;
  state.update_window = SuccessWindow(success_window_n(cfg.max_fes));
  state.population.reserve(cfg.ini_pop_size);
  for (std::size_t k = 0; k < cfg.ini_pop_size; ++k) {
    Solution x(spec.dimension);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = rng.uniform(spec.bounds.lower[i], spec.bounds.upper[i]);
    const double pe = evaluate_and_count(state, spec, x);
    if (pe < state.best_pe) {
      state.best_pe = pe;
      state.best_solution = x;
    }
    state.population.push_back(Molecule::fresh(std::move(x), pe, 0.0, 0.0));
  }
  return state;
}

ReactionSettings settings_for(const AlgorithmConfig& cfg) {
  ReactionSettings settings;
  settings.boundary = boundary_rule(cfg.variant);
  settings.synthesis = synthesis_rule(cfg.variant);
  if (is_adaptive(cfg.variant)) {
    settings.new_loss_rate = [](Rng& rng) { return draw_loss_rate(rng); };
  } else {
    const double lr = cfg.canonical().loss_rate;
    settings.new_loss_rate = [lr](Rng&) { return lr; };
  }
  return settings;
}

std::pair<std::size_t, std::size_t> pick_two(std::size_t n, Rng& rng) {
  const std::size_t i = rng.index(n);
  std::size_t j = rng.index(n - 1);
  if (j >= i) ++j;
  return {i, j};
}

// Samples the best-so-far value at the fixed trace checkpoints.
class TraceRecorder {
 public:
  explicit TraceRecorder(std::uint64_t max_fes) : checkpoints_(trace_checkpoints(max_fes)) {
    trace_.reserve(checkpoints_.size());
  }

  void observe(const ReactorState& state) {
    while (next_ < checkpoints_.size() && checkpoints_[next_] <= state.fe_count) {
      trace_.push_back({checkpoints_[next_], state.best_pe});
      ++next_;
    }
  }

  std::vector<TracePoint> take() { return std::move(trace_); }

 private:
  std::vector<std::uint64_t> checkpoints_;
  std::vector<TracePoint> trace_;
  std::size_t next_ = 0;
};

class EnergyLedger {
 public:
  EnergyLedger(const ReactorState& state, std::uint64_t interval)
      : reference_(total_energy(state)), interval_(interval) {}

  void after_reaction(const ReactorState& state) {
    if (interval_ == 0 || ++reactions_ % interval_ != 0) return;
    const double now = total_energy(state);
    if (!energy_conserved(reference_, now))
      throw EnergyLedgerViolation("total energy drifted from " + std::to_string(reference_) +
                                  " to " + std::to_string(now) + " after " +
                                  std::to_string(reactions_) + " reactions");
  }

 private:
  double reference_;
  std::uint64_t interval_;
  std::uint64_t reactions_ = 0;
};

// With a single evaluation left, two-evaluation reactions fall back to an
// on-wall collision so the budget is spent exactly.
ReactionKind fit_to_budget(ReactionKind kind, const ReactorState& state) {
  if (evaluations_required(kind) > state.remaining_evaluations()) return ReactionKind::OnWall;
  return kind;
}

ReactionOutcome dispatch(ReactionKind kind, ReactorState& state, const ObjectiveSpec& spec,
                         const ReactionSettings& settings, Rng& rng) {
  const std::size_t n = state.population.size();
  switch (kind) {
    case ReactionKind::OnWall:
      return on_wall_collision(state, spec, rng.index(n), settings, rng);
    case ReactionKind::Decomposition:
      return decomposition(state, spec, rng.index(n), settings, rng);
    case ReactionKind::InterMolecular: {
      const auto [i, j] = pick_two(n, rng);
      return intermolecular_collision(state, spec, i, j, settings, rng);
    }
    case ReactionKind::Synthesis: {
      const auto [i, j] = pick_two(n, rng);
      return synthesis(state, spec, i, j, settings, rng);
    }
  }
  throw std::logic_error("unknown reaction kind");
}

RunRecord finish(const AlgorithmConfig& cfg, const ObjectiveSpec& spec, ReactorState& state,
                 TraceRecorder& recorder, std::chrono::steady_clock::time_point started) {
  recorder.observe(state);
  RunRecord rec;
  rec.algorithm = std::string(to_string(cfg.variant));
  rec.dimension = spec.dimension;
  rec.final_raw = state.best_pe;
  rec.final_reported = truncate_result(state.best_pe);
  rec.trace = recorder.take();
  rec.fe_count = state.fe_count;
  rec.final_population = state.population.size();
  rec.final_step_size = state.step_size.empty() ? 0.0 : state.step_size.front();
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return rec;
}

}  // namespace

ReactorState acro_init(const ObjectiveSpec& spec, const AlgorithmConfig& cfg, Rng& rng) {
  if (!is_adaptive(cfg.variant))
    throw InvalidConfig(std::string(to_string(cfg.variant)) + " is not an ACRO variant");
  ReactorState state = seed_population(spec, cfg, rng);

  const auto [lo, hi] = std::minmax_element(
      state.population.begin(), state.population.end(),
      [](const Molecule& a, const Molecule& b) { return a.pe < b.pe; });
  state.ini_ke = (hi->pe - lo->pe) * static_cast<double>(cfg.ini_pop_size);
  for (auto& m : state.population) {
    m.ke = state.ini_ke;
    m.loss_rate = draw_loss_rate(rng);
  }
  state.buffer = 0.0;

  state.step_size.resize(spec.dimension);
  for (std::size_t i = 0; i < spec.dimension; ++i)
    state.step_size[i] = (spec.bounds.upper[i] - spec.bounds.lower[i]) / 2.0;
  return state;
}

ReactorState cro_init(const ObjectiveSpec& spec, const AlgorithmConfig& cfg, Rng& rng) {
  if (is_adaptive(cfg.variant))
    throw InvalidConfig(std::string(to_string(cfg.variant)) + " is not a canonical CRO variant");
  ReactorState state = seed_population(spec, cfg, rng);
  const auto& p = cfg.canonical();
  state.ini_ke = p.ini_ke;
  for (auto& m : state.population) {
    m.ke = p.ini_ke;
    m.loss_rate = p.loss_rate;
  }
  state.buffer = p.ini_buffer;
  state.step_size.assign(spec.dimension, p.step_size);
  return state;
}

RunRecord run_acro(const ObjectiveSpec& spec, const AlgorithmConfig& cfg, Rng& rng,
                   const RunHooks& hooks) {
  const auto started = std::chrono::steady_clock::now();
  ReactorState state = acro_init(spec, cfg, rng);
  const ReactionSettings settings = settings_for(cfg);
  TraceRecorder recorder(cfg.max_fes);
  EnergyLedger ledger(state, hooks.energy_check_interval);
  recorder.observe(state);

  while (state.fe_count < cfg.max_fes) {
    const ReactionKind kind = fit_to_budget(select_reaction_acro(state, cfg, rng), state);
    const ReactionOutcome outcome = dispatch(kind, state, spec, settings, rng);
    // every evaluated trial counts as one update, accepted or not
    for (const auto& c : outcome.explored) {
      update_best(state, c.x, c.pe);
      step_size_rule(state);
    }
    ledger.after_reaction(state);
    if (hooks.on_reaction) hooks.on_reaction(state, outcome);
    recorder.observe(state);
  }
  return finish(cfg, spec, state, recorder, started);
}

RunRecord run_cro(const ObjectiveSpec& spec, const AlgorithmConfig& cfg, Rng& rng,
                  const RunHooks& hooks) {
  const auto started = std::chrono::steady_clock::now();
  ReactorState state = cro_init(spec, cfg, rng);
  const auto& p = cfg.canonical();
  const ReactionSettings settings = settings_for(cfg);
  TraceRecorder recorder(cfg.max_fes);
  EnergyLedger ledger(state, hooks.energy_check_interval);
  recorder.observe(state);
  const bool decays = cfg.variant == Variant::CRO_D;
  std::uint64_t next_decay = p.adapt_interval;

  while (state.fe_count < cfg.max_fes) {
    const std::size_t n = state.population.size();
    ReactionOutcome outcome;
    if (rng.uniform01() < cfg.coll_rate && n >= 2) {
      const auto [i, j] = pick_two(n, rng);
      const bool cold = state.population[i].ke < p.syn_thres && state.population[j].ke < p.syn_thres;
      if (cold) outcome = synthesis(state, spec, i, j, settings, rng);
      else if (state.remaining_evaluations() >= 2)
        outcome = intermolecular_collision(state, spec, i, j, settings, rng);
      else outcome = on_wall_collision(state, spec, i, settings, rng);
    } else {
      const std::size_t i = rng.index(n);
      const bool inactive = static_cast<double>(state.population[i].inactive_degree()) > p.dec_thres;
      if (inactive && state.remaining_evaluations() >= 2)
        outcome = decomposition(state, spec, i, settings, rng);
      else outcome = on_wall_collision(state, spec, i, settings, rng);
    }
    for (const auto& c : outcome.new_structures) update_best(state, c.x, c.pe);
    if (decays) {
      while (state.fe_count >= next_decay) {
        for (auto& s : state.step_size) s *= p.adapt_rate;
        next_decay += p.adapt_interval;
      }
    }
    ledger.after_reaction(state);
    if (hooks.on_reaction) hooks.on_reaction(state, outcome);
    recorder.observe(state);
  }
  return finish(cfg, spec, state, recorder, started);
}

RunRecord run_algorithm(const ObjectiveSpec& spec, const AlgorithmConfig& cfg, Rng& rng,
                        const RunHooks& hooks) {
  return is_adaptive(cfg.variant) ? run_acro(spec, cfg, rng, hooks)
                                  : run_cro(spec, cfg, rng, hooks);
}

}  // namespace cro
