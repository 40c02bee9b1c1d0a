#include "cro/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "cro/benchmarks.hpp"

namespace cro {

namespace {

CellStats cell_stats(std::vector<double> values) {
  CellStats c;
  c.runs = values.size();
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(values.size());
  c.mean = sum / n;
  const std::size_t mid = values.size() / 2;
  c.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  double ss = 0.0;
  for (double v : values) ss += (v - c.mean) * (v - c.mean);
  c.std = std::sqrt(ss / n);
  c.min = values.front();
  c.max = values.back();
  return c;
}

std::string shortest(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string records_jsonl(std::span<const RunRecord> records) {
  std::string out;
  for (const auto& r : records) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& p : r.trace) trace.push_back({p.fe, p.best});
    const nlohmann::json j = {
        {"algorithm", r.algorithm},
        {"benchmark", r.benchmark},
        {"dimension", r.dimension},
        {"seed", r.seed},
        {"final_raw", r.final_raw},
        {"final_reported", r.final_reported},
        {"fe_count", r.fe_count},
        {"final_population", r.final_population},
        {"final_step_size", r.final_step_size},
        {"wall_time", r.wall_time},
        {"trace", trace},
    };
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace

const CellStats& ExperimentSummary::at(const std::string& algorithm,
                                       const std::string& benchmark) const {
  for (const auto& c : cells) {
    if (c.algorithm == algorithm && c.benchmark == benchmark) return c;
  }
  throw EmptyCell("no runs for " + algorithm + " on " + benchmark);
}

ExperimentSummary summarize(std::span<const RunRecord> records) {
  if (records.empty()) throw EmptyCell("no run records to summarize");
  ExperimentSummary s;
  std::map<std::pair<std::string, std::string>, std::vector<double>> values;
  for (const auto& r : records) {
    if (std::find(s.algorithms.begin(), s.algorithms.end(), r.algorithm) == s.algorithms.end())
      s.algorithms.push_back(r.algorithm);
    if (std::find(s.benchmarks.begin(), s.benchmarks.end(), r.benchmark) == s.benchmarks.end())
      s.benchmarks.push_back(r.benchmark);
    values[{r.algorithm, r.benchmark}].push_back(truncate_result(r.final_reported));
  }
  for (const auto& b : s.benchmarks) {
    for (const auto& a : s.algorithms) {
      auto it = values.find({a, b});
      if (it == values.end()) continue;
      CellStats c = cell_stats(it->second);
      c.algorithm = a;
      c.benchmark = b;
      s.cells.push_back(std::move(c));
    }
  }
  return s;
}

std::string format_mean(double value) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.4e", value);
  return buf.data();
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
  if (plan.runs == 0) throw InvalidConfig("runs must be at least 1");
  if (plan.algorithms.empty()) throw InvalidConfig("no algorithms selected");
  if (plan.functions.empty()) throw InvalidConfig("no benchmark functions selected");
  if (plan.dimension == 0) throw InvalidConfig("dimension must be positive");
  for (Variant v : plan.algorithms) AlgorithmConfig::defaults(v, plan.max_fes).validate();

  std::vector<ObjectiveSpec> objectives;
  for (int id : plan.functions) {
    bench::TransformData data =
        plan.cec_data ? bench::import_cec_transform(*plan.cec_data, id, plan.dimension,
                                                    plan.transform_seed)
                      : bench::generate_transform(plan.transform_seed, id, plan.dimension);
    objectives.push_back(bench::BenchmarkInstance(std::move(data)).objective());
  }

  const std::size_t per_algo = plan.functions.size() * plan.runs;
  const std::size_t total = plan.algorithms.size() * per_algo;
  std::vector<RunRecord> records(total);
  std::vector<char> done(total, 0);
  std::vector<std::exception_ptr> failures(total);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};

  auto worker = [&] {
    for (;;) {
      if (abort.load()) return;
      const std::size_t t = next.fetch_add(1);
      if (t >= total) return;
      const std::size_t a = t / per_algo;
      const std::size_t f = (t % per_algo) / plan.runs;
      const std::size_t r = t % plan.runs;
      const std::uint64_t seed = plan.base_seed + r;
      try {
        Rng rng(seed);
        const auto cfg = AlgorithmConfig::defaults(plan.algorithms[a], plan.max_fes);
        RunRecord rec = run_algorithm(objectives[f], cfg, rng);
        rec.benchmark = bench::function_tag(plan.functions[f]);
        rec.seed = seed;
        records[t] = std::move(rec);
        done[t] = 1;
      } catch (...) {
        failures[t] = std::current_exception();
        abort.store(true);
      }
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, plan.parallelism), total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }

  for (std::size_t t = 0; t < total; ++t) {
    if (!failures[t]) continue;
    std::vector<RunRecord> completed;
    for (std::size_t k = 0; k < total; ++k)
      if (done[k]) completed.push_back(std::move(records[k]));
    const std::size_t a = t / per_algo;
    const std::size_t f = (t % per_algo) / plan.runs;
    const std::string context = std::string(to_string(plan.algorithms[a])) + " on " +
                                bench::function_tag(plan.functions[f]) + " seed " +
                                std::to_string(plan.base_seed + t % plan.runs);
    std::string cause_code = "Unknown";
    std::string message;
    try {
      std::rethrow_exception(failures[t]);
    } catch (const Error& e) {
      cause_code = std::string(e.code());
      message = e.what();
    } catch (const std::exception& e) {
      message = e.what();
    }
    throw ExperimentError(context + ": " + message, cause_code, std::move(completed));
  }

  ExperimentResult result;
  result.summary = summarize(records);
  result.records = std::move(records);
  return result;
}

void emit_records(std::span<const RunRecord> records, const std::filesystem::path& out_dir) {
  ensure_dir(out_dir);
  write_text(out_dir / "records.jsonl", records_jsonl(records));
}

void emit_results(const ExperimentSummary& summary, std::span<const RunRecord> records,
                  const std::filesystem::path& out_dir) {
  if (records.empty() || summary.cells.empty()) throw EmptyCell("no results to emit");

  std::string csv = "function";
  for (const auto& a : summary.algorithms) csv += "," + a;
  csv += "\n";
  for (const auto& b : summary.benchmarks) {
    csv += b;
    for (const auto& a : summary.algorithms) {
      csv += ",";
      for (const auto& c : summary.cells)
        if (c.algorithm == a && c.benchmark == b) csv += format_mean(c.mean);
    }
    csv += "\n";
  }

  std::string traces = "algorithm,benchmark,dimension,seed,checkpoint,fe,best\n";
  for (const auto& r : records) {
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      traces += r.algorithm + "," + r.benchmark + "," + std::to_string(r.dimension) + "," +
                std::to_string(r.seed) + "," + std::to_string(k + 1) + "," +
                std::to_string(r.trace[k].fe) + "," + shortest(r.trace[k].best) + "\n";
    }
  }

  const std::string jsonl = records_jsonl(records);
  ensure_dir(out_dir);
  write_text(out_dir / "summary.csv", csv);
  write_text(out_dir / "records.jsonl", jsonl);
  write_text(out_dir / "traces.csv", traces);
}

}  // namespace cro
