#include "tdiff/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tdiff/errors.hpp"

namespace tdiff {

ProblemInstance::ProblemInstance(Graph graph, std::vector<Threshold> theta)
    : graph_(std::move(graph)), theta_(std::move(theta)) {
  const std::size_t n = graph_.node_count();
  if (theta_.size() != n) {
    throw InvariantViolation("threshold count " + std::to_string(theta_.size()) +
                             " does not match node count " + std::to_string(n));
  }
  for (NodeId u = 0; u < n; ++u) {
    if (theta_[u] < 2 || theta_[u] > n) {
      throw InvariantViolation("threshold of node " + std::to_string(u) + " is " +
                               std::to_string(theta_[u]) + ", outside [2, " +
                               std::to_string(n) + "]");
    }
  }
}

ThresholdProfile threshold_profile(const ProblemInstance& p) {
  std::vector<Threshold> values = p.thresholds();
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return {std::move(values)};
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_uint(std::string_view field, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line_no, "expected a non-negative integer, got '" + std::string(field) + "'");
  }
  return value;
}

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line_no = 0;

  // Next non-comment, non-blank line split into fields; empty at EOF.
  std::vector<std::string_view> next() {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty() && line.front() == '#') continue;
      auto fields = split_fields(line);
      if (!fields.empty()) return fields;
    }
    ++line_no;
    return {};
  }
};

std::uint64_t expect_keyed(LineReader& reader, std::string_view key) {
  auto fields = reader.next();
  if (fields.size() != 2 || fields[0] != key) {
    throw ParseError(reader.line_no, "expected '" + std::string(key) + " <value>'");
  }
  return parse_uint(fields[1], reader.line_no);
}

}  // namespace

ProblemInstance load_instance(std::string_view text) {
  LineReader reader{text};
  {
    auto header = reader.next();
    if (header.size() != 2 || header[0] != "tdiff" || header[1] != "1") {
      throw ParseError(reader.line_no, "expected header 'tdiff 1'");
    }
  }
  const std::uint64_t n = expect_keyed(reader, "n");
  const std::uint64_t m = expect_keyed(reader, "m");
  if (n > (1u << 24)) throw ParseError(reader.line_no, "node count too large");

  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t k = 0; k < m; ++k) {
    auto fields = reader.next();
    if (fields.size() != 3 || fields[0] != "e") {
      throw ParseError(reader.line_no, "expected 'e <u> <v>'");
    }
    auto u = parse_uint(fields[1], reader.line_no);
    auto v = parse_uint(fields[2], reader.line_no);
    if (u >= v || v >= n) {
      throw ParseError(reader.line_no, "edge must satisfy 0 <= u < v < n");
    }
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }

  std::vector<Threshold> theta(n);
  for (std::uint64_t u = 0; u < n; ++u) {
    auto fields = reader.next();
    if (fields.size() != 3 || fields[0] != "t") {
      throw ParseError(reader.line_no, "expected 't <u> <theta>'");
    }
    if (parse_uint(fields[1], reader.line_no) != u) {
      throw ParseError(reader.line_no, "thresholds must be listed in increasing node order");
    }
    auto value = parse_uint(fields[2], reader.line_no);
    if (value > n) value = n + 1;  // out of range either way; avoid narrowing
    theta[u] = static_cast<Threshold>(value);
  }
  if (!reader.next().empty()) {
    throw ParseError(reader.line_no - 1, "trailing content after thresholds");
  }
  return ProblemInstance(Graph(n, edges), std::move(theta));
}

std::string save_instance(const ProblemInstance& p) {
  std::ostringstream out;
  const auto edges = p.graph().edges();
  out << "tdiff 1\n";
  out << "n " << p.node_count() << "\n";
  out << "m " << edges.size() << "\n";
  for (const Edge& e : edges) out << "e " << e.u << " " << e.v << "\n";
  for (NodeId u = 0; u < p.node_count(); ++u) out << "t " << u << " " << p.theta(u) << "\n";
  return out.str();
}

ProblemInstance read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_instance(buffer.str());
}

void write_instance_file(const std::filesystem::path& path, const ProblemInstance& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << save_instance(p);
}

std::vector<Threshold> bucket_grid(std::size_t n, double eps) {
  if (!(eps > 0.0)) throw BadParameters("bucket eps must be positive");
  std::vector<Threshold> grid;
  double power = 1.0;
  for (;;) {
    power *= 1.0 + eps;
    const double value = std::floor(power);
    if (value >= 2.0) {
      auto v = static_cast<Threshold>(std::min<double>(value, static_cast<double>(n)));
      if (grid.empty() || grid.back() != v) grid.push_back(v);
    }
    if (value >= static_cast<double>(n)) break;
  }
  return grid;
}

ProblemInstance bucket_thresholds(const ProblemInstance& p, double eps) {
  const auto grid = bucket_grid(p.node_count(), eps);
  std::vector<Threshold> theta = p.thresholds();
  for (auto& t : theta) {
    auto it = std::lower_bound(grid.begin(), grid.end(), t);
    // The grid always ends at n, so `it` is valid for any in-range threshold.
    t = *it;
  }
  return ProblemInstance(p.graph(), std::move(theta));
}

}  // namespace tdiff
