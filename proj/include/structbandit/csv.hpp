#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "structbandit/experiment.hpp"

namespace structbandit {

// Nine significant digits, as in every CSV this library writes.
std::string format_number(double x);

struct SummaryRow {
  std::string algorithm;
  std::int64_t checkpoint;
  double mean_regret;
  double std_regret;
  bool operator==(const SummaryRow&) const = default;
};

struct TraceRow {
  std::int64_t checkpoint;
  double regret;
  bool operator==(const TraceRow&) const = default;
};

void write_summary(std::ostream& out, const ExperimentResult& result);
void write_trace(std::ostream& out, const std::vector<std::int64_t>& checkpoints,
                 const RegretTrace& trace);
void write_runs(std::ostream& out, const ExperimentResult& result);
void write_reference(std::ostream& out, const ReferenceCurves& curves);

std::vector<SummaryRow> read_summary(std::istream& in);
std::vector<TraceRow> read_trace(std::istream& in);

// summary.csv, runs.csv, trace_<algo>_<rep>.csv and, if given, reference.csv.
void write_results(const std::filesystem::path& dir, const ExperimentResult& result,
                   const std::optional<ReferenceCurves>& curves);

}  // namespace structbandit
