#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "binclust/types.hpp"

namespace binclust {

struct InputFormat {
  bool edges_format = false;  // rows are left_edge,right_edge,frequency
  bool header = false;        // skip the first line
};

// Reads a frequency table. Default rows are center,frequency with strictly
// increasing centers (bin edges derived from the midpoints); edge-format rows
// must tile the line exactly (each left edge equal to the previous right).
// Parse failures carry the 1-based line number.
BinnedDataset parse_input(const std::string& path, const InputFormat& format = {});

// Writes a dataset parse_input can read back: center format when the layout
// has centers, edge format otherwise.
void write_dataset_csv(const BinnedDataset& dataset, const std::string& path);

// Everything needed to re-run a fit, echoed verbatim into the summary.
struct FitConfig {
  std::string input;
  InputFormat format;
  Hyperparams hyper;
  long iterations = 30000;
  long burn_in = 20000;
  long thin = 1;
  std::uint64_t seed = 0;
  int chains = 1;
  int grid = 512;
};

// Per-chain summary payload. Diagnostics are functions of the draw sequence
// only, so reruns with the same seed produce byte-identical files.
struct SummaryContent {
  Partition modal_partition;
  long modal_matches = 0;
  long recorded_draws = 0;
  std::vector<GroupEstimate> group_estimates;
  std::vector<double> weights;
  double alpha_mean = 0.0;
  MoveStats split_stats;
  MoveStats merge_stats;
  MoveStats shuffle_stats;
  std::uint64_t chain_seed = 0;
  FitConfig config;
};

// CSV with header iteration,k,sizes,alpha; sizes dash-joined (e.g. 150-92-117).
void write_trace_csv(const Trace& trace, const std::string& path);

// Flat JSON document; floating-point values carry 17 significant digits.
void write_summary_json(const SummaryContent& content, const std::string& path);

// Reads the "config" object back out of a summary written above.
FitConfig read_config_echo(const std::string& path);

// CSV with header value,density.
void write_density_csv(const Eigen::VectorXd& grid, const Eigen::VectorXd& density,
                       const std::string& path);

// 17-significant-digit representation used by every writer.
std::string format_double(double v);

}  // namespace binclust
