#include "structbandit/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "structbandit/errors.hpp"

namespace structbandit {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

void expect_header(std::istream& in, const std::string& header) {
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw std::runtime_error("csv: expected header '" + header + "'");
}

std::ofstream open(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  return out;
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void write_summary(std::ostream& out, const ExperimentResult& result) {
  out << "algorithm,checkpoint,mean_regret,std_regret\n";
  for (const AlgorithmSummary& s : result.summaries)
    for (std::size_t c = 0; c < result.checkpoints.size(); ++c)
      out << s.algorithm << ',' << result.checkpoints[c] << ',' << format_number(s.mean[c])
          << ',' << format_number(s.stddev[c]) << '\n';
}

void write_trace(std::ostream& out, const std::vector<std::int64_t>& checkpoints,
                 const RegretTrace& trace) {
  out << "checkpoint,regret\n";
  for (std::size_t c = 0; c < checkpoints.size(); ++c)
    out << checkpoints[c] << ',' << format_number(trace.regret[c]) << '\n';
}

void write_runs(std::ostream& out, const ExperimentResult& result) {
  std::size_t K = 0;
  for (const RegretTrace& t : result.traces) K = std::max(K, t.final_counts.size());
  out << "algorithm,rep,seed,explore_rounds,exploit_rounds";
  for (std::size_t k = 0; k < K; ++k) out << ",N" << k + 1;
  out << ",error\n";
  for (const RegretTrace& t : result.traces) {
    out << t.algorithm << ',' << t.rep << ',' << t.seed << ',' << t.explore_rounds << ','
        << t.exploit_rounds;
    for (std::size_t k = 0; k < K; ++k)
      out << ',' << (k < t.final_counts.size() ? std::to_string(t.final_counts[k]) : "");
    std::string err = t.error;
    for (char& c : err)
      if (c == ',' || c == '\n') c = ';';
    out << ',' << err << '\n';
  }
}

void write_reference(std::ostream& out, const ReferenceCurves& curves) {
  out << "checkpoint,unconstrained_bound,structured_bound\n";
  for (std::size_t c = 0; c < curves.checkpoints.size(); ++c)
    out << curves.checkpoints[c] << ',' << format_number(curves.unconstrained[c]) << ','
        << format_number(curves.structured[c]) << '\n';
}

std::vector<SummaryRow> read_summary(std::istream& in) {
  expect_header(in, "algorithm,checkpoint,mean_regret,std_regret");
  std::vector<SummaryRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split(line);
    if (f.size() != 4) throw std::runtime_error("csv: malformed summary row '" + line + "'");
    rows.push_back({f[0], std::stoll(f[1]), std::stod(f[2]), std::stod(f[3])});
  }
  return rows;
}

std::vector<TraceRow> read_trace(std::istream& in) {
  expect_header(in, "checkpoint,regret");
  std::vector<TraceRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split(line);
    if (f.size() != 2) throw std::runtime_error("csv: malformed trace row '" + line + "'");
    rows.push_back({std::stoll(f[0]), std::stod(f[1])});
  }
  return rows;
}

void write_results(const std::filesystem::path& dir, const ExperimentResult& result,
                   const std::optional<ReferenceCurves>& curves) {
  std::filesystem::create_directories(dir);
  {
    auto out = open(dir / "summary.csv");
    write_summary(out, result);
  }
  {
    auto out = open(dir / "runs.csv");
    write_runs(out, result);
  }
  for (const RegretTrace& t : result.traces) {
    auto out = open(dir / ("trace_" + t.algorithm + "_" + std::to_string(t.rep) + ".csv"));
    write_trace(out, result.checkpoints, t);
  }
  if (curves) {
    auto out = open(dir / "reference.csv");
    write_reference(out, *curves);
  }
}

}  // namespace structbandit
