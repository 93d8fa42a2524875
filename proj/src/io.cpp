#include "binclust/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "binclust/binning.hpp"

namespace binclust {

namespace {

[[noreturn]] void parse_fail(long line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos
                         ? std::string()
                         : field.substr(first, last - first + 1));
  }
  return fields;
}

double parse_real(const std::string& field, long line) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') parse_fail(line, "expected a number: '" + field + "'");
  return v;
}

long parse_count(const std::string& field, long line) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    parse_fail(line, "expected an integer frequency: '" + field + "'");
  }
  return v;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += ch;
    }
  }
  return out;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  return out;
}

double acceptance_rate(const MoveStats& s) {
  return s.proposed == 0 ? 0.0
                         : static_cast<double>(s.accepted) /
                               static_cast<double>(s.proposed);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

BinnedDataset parse_input(const std::string& path, const InputFormat& format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);

  BinnedDataset ds;
  std::vector<double> centers;
  std::vector<double> edges;
  std::string line;
  long line_no = 0;
  bool skip_header = format.header;

  while (std::getline(in, line)) {
    ++line_no;
    if (skip_header) {
      skip_header = false;
      continue;
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> fields = split_fields(line);

    if (format.edges_format) {
      if (fields.size() != 3) parse_fail(line_no, "expected left,right,frequency");
      const double left = parse_real(fields[0], line_no);
      const double right = parse_real(fields[1], line_no);
      if (!(right > left)) parse_fail(line_no, "right edge must exceed left edge");
      if (edges.empty()) {
        edges.push_back(left);
      } else if (left != edges.back()) {
        throw Error(ErrorCode::NonContiguousEdges,
                    "line " + std::to_string(line_no) + ": left edge " +
                        format_double(left) + " does not continue " +
                        format_double(edges.back()));
      }
      edges.push_back(right);
      ds.freqs.push_back(parse_count(fields[2], line_no));
    } else {
      if (fields.size() != 2) parse_fail(line_no, "expected center,frequency");
      const double center = parse_real(fields[0], line_no);
      if (!centers.empty() && !(center > centers.back())) {
        parse_fail(line_no, "centers must increase");
      }
      centers.push_back(center);
      ds.freqs.push_back(parse_count(fields[1], line_no));
    }
  }

  if (format.edges_format) {
    if (edges.size() < 2) parse_fail(line_no, "no data rows");
    ds.layout.edges = Eigen::Map<const Eigen::VectorXd>(edges.data(),
                                                        static_cast<long>(edges.size()));
  } else {
    if (centers.size() < 2) parse_fail(line_no, "need at least two rows");
    ds.layout = edges_from_midpoints(Eigen::Map<const Eigen::VectorXd>(
        centers.data(), static_cast<long>(centers.size())));
  }
  validate_dataset(ds);
  return ds;
}

void write_dataset_csv(const BinnedDataset& dataset, const std::string& path) {
  std::ofstream out = open_for_write(path);
  const int m = dataset.layout.num_bins();
  for (int l = 0; l < m; ++l) {
    if (dataset.layout.has_centers()) {
      out << format_double(dataset.layout.centers(l)) << ','
          << dataset.freqs[static_cast<std::size_t>(l)] << '\n';
    } else {
      out << format_double(dataset.layout.edges(l)) << ','
          << format_double(dataset.layout.edges(l + 1)) << ','
          << dataset.freqs[static_cast<std::size_t>(l)] << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path);
}

void write_trace_csv(const Trace& trace, const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << "iteration,k,sizes,alpha\n";
  for (std::size_t t = 0; t < trace.size(); ++t) {
    out << trace.iterations[t] << ',' << trace.partitions[t].size() << ',';
    for (std::size_t j = 0; j < trace.partitions[t].size(); ++j) {
      if (j) out << '-';
      out << trace.partitions[t][j];
    }
    out << ',' << format_double(trace.alpha_draws[t]) << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path);
}

void write_summary_json(const SummaryContent& content, const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << "{\n";
  out << "  \"modal_partition\": [";
  for (std::size_t j = 0; j < content.modal_partition.size(); ++j) {
    if (j) out << ", ";
    out << content.modal_partition[j];
  }
  out << "],\n";
  out << "  \"modal_matches\": " << content.modal_matches << ",\n";
  out << "  \"recorded_draws\": " << content.recorded_draws << ",\n";
  out << "  \"groups\": [\n";
  for (std::size_t j = 0; j < content.group_estimates.size(); ++j) {
    out << "    {\"mean\": " << format_double(content.group_estimates[j].mean)
        << ", \"sd\": " << format_double(content.group_estimates[j].sd)
        << ", \"weight\": " << format_double(content.weights[j]) << "}"
        << (j + 1 < content.group_estimates.size() ? ",\n" : "\n");
  }
  out << "  ],\n";
  out << "  \"alpha_mean\": " << format_double(content.alpha_mean) << ",\n";
  out << "  \"runtime\": {\n";
  out << "    \"recorded_draws\": " << content.recorded_draws << ",\n";
  out << "    \"split_proposed\": " << content.split_stats.proposed << ",\n";
  out << "    \"split_acceptance\": " << format_double(acceptance_rate(content.split_stats))
      << ",\n";
  out << "    \"merge_proposed\": " << content.merge_stats.proposed << ",\n";
  out << "    \"merge_acceptance\": " << format_double(acceptance_rate(content.merge_stats))
      << ",\n";
  out << "    \"shuffle_proposed\": " << content.shuffle_stats.proposed << ",\n";
  out << "    \"shuffle_acceptance\": "
      << format_double(acceptance_rate(content.shuffle_stats)) << "\n";
  out << "  },\n";
  out << "  \"seed\": " << content.chain_seed << ",\n";
  out << "  \"config\": {\n";
  out << "    \"input\": \"" << json_escape(content.config.input) << "\",\n";
  out << "    \"edges_format\": " << (content.config.format.edges_format ? "true" : "false")
      << ",\n";
  out << "    \"header\": " << (content.config.format.header ? "true" : "false") << ",\n";
  out << "    \"omega\": " << format_double(content.config.hyper.omega) << ",\n";
  out << "    \"c\": " << format_double(content.config.hyper.c) << ",\n";
  out << "    \"a\": " << format_double(content.config.hyper.a) << ",\n";
  out << "    \"b\": " << format_double(content.config.hyper.b) << ",\n";
  out << "    \"alpha_shape\": " << format_double(content.config.hyper.alpha_shape)
      << ",\n";
  out << "    \"alpha_rate\": " << format_double(content.config.hyper.alpha_rate)
      << ",\n";
  out << "    \"iters\": " << content.config.iterations << ",\n";
  out << "    \"burnin\": " << content.config.burn_in << ",\n";
  out << "    \"thin\": " << content.config.thin << ",\n";
  out << "    \"seed\": " << content.config.seed << ",\n";
  out << "    \"chains\": " << content.config.chains << ",\n";
  out << "    \"grid\": " << content.config.grid << "\n";
  out << "  }\n";
  out << "}\n";
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path);
}

FitConfig read_config_echo(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad summary JSON: ") + e.what());
  }
  const nlohmann::json& cfg = doc.at("config");
  FitConfig out;
  out.input = cfg.at("input").get<std::string>();
  out.format.edges_format = cfg.at("edges_format").get<bool>();
  out.format.header = cfg.at("header").get<bool>();
  out.hyper.omega = cfg.at("omega").get<double>();
  out.hyper.c = cfg.at("c").get<double>();
  out.hyper.a = cfg.at("a").get<double>();
  out.hyper.b = cfg.at("b").get<double>();
  out.hyper.alpha_shape = cfg.at("alpha_shape").get<double>();
  out.hyper.alpha_rate = cfg.at("alpha_rate").get<double>();
  out.iterations = cfg.at("iters").get<long>();
  out.burn_in = cfg.at("burnin").get<long>();
  out.thin = cfg.at("thin").get<long>();
  out.seed = cfg.at("seed").get<std::uint64_t>();
  out.chains = cfg.at("chains").get<int>();
  out.grid = cfg.at("grid").get<int>();
  return out;
}

void write_density_csv(const Eigen::VectorXd& grid, const Eigen::VectorXd& density,
                       const std::string& path) {
  if (grid.size() != density.size()) {
    throw Error(ErrorCode::InvalidParams, "grid and density lengths differ");
  }
  std::ofstream out = open_for_write(path);
  out << "value,density\n";
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    out << format_double(grid(i)) << ',' << format_double(density(i)) << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path);
}

}  // namespace binclust
