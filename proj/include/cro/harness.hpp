#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cro/algorithms.hpp"
#include "cro/errors.hpp"
#include "cro/record.hpp"

namespace cro {

struct ExperimentPlan {
  std::vector<Variant> algorithms;
  std::vector<int> functions;  // 1..24
  std::size_t dimension = 30;
  std::size_t runs = 51;
  std::uint64_t max_fes = 300000;
  std::uint64_t base_seed = 1;
  std::uint64_t transform_seed = 2015;
  unsigned parallelism = 1;
  std::optional<std::filesystem::path> cec_data;
};

struct CellStats {
  std::string algorithm;
  std::string benchmark;
  double mean = 0.0;
  double median = 0.0;
  double std = 0.0;  // population standard deviation
  double min = 0.0;
  double max = 0.0;
  std::size_t runs = 0;
};

struct ExperimentSummary {
  std::vector<std::string> algorithms;  // column order
  std::vector<std::string> benchmarks;  // row order
  std::vector<CellStats> cells;

  // Throws EmptyCell if the pair has no runs.
  const CellStats& at(const std::string& algorithm, const std::string& benchmark) const;
};

struct ExperimentResult {
  ExperimentSummary summary;
  std::vector<RunRecord> records;
};

// A failed run, with the records of every run that completed before the
// abort.
class ExperimentError : public Error {
 public:
  ExperimentError(const std::string& what, std::string_view cause_code,
                  std::vector<RunRecord> completed)
      : Error("ExperimentError", what), cause_code_(cause_code), completed_(std::move(completed)) {}
  std::string_view cause_code() const noexcept { return cause_code_; }
  const std::vector<RunRecord>& completed() const noexcept { return completed_; }

 private:
  std::string cause_code_;
  std::vector<RunRecord> completed_;
};

// Order-independent statistics over final_reported values. Cells keep the
// first-seen order of algorithms and benchmarks.
ExperimentSummary summarize(std::span<const RunRecord> records);

// runs x algorithms x functions independent runs, seed = base_seed + run
// index. Output is identical for any parallelism.
ExperimentResult run_experiment(const ExperimentPlan& plan);

// Table-style mean rendering: 4 digits after the point, e.g. "2.7374e-06".
std::string format_mean(double value);

// Writes summary.csv, records.jsonl and traces.csv into out_dir (created if
// needed). Throws EmptyCell for an empty record set and IoError on write
// failures; nothing is written in either case.
void emit_results(const ExperimentSummary& summary, std::span<const RunRecord> records,
                  const std::filesystem::path& out_dir);

// Only records.jsonl; used to persist partial results after an abort.
void emit_records(std::span<const RunRecord> records, const std::filesystem::path& out_dir);

}  // namespace cro
