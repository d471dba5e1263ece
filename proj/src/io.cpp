#include "wgcpd/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace wgcpd {

namespace {

constexpr double kDiagonalTolerance = 1e-12;
constexpr double kSymmetryTolerance = 1e-9;

[[noreturn]] void parse_error(const std::string& name, int line,
                              const std::string& what) {
  throw_error(ErrorCode::ParseError,
              name + ":" + std::to_string(line) + ": " + what);
}

bool parse_double(const std::string& token, double& out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  out = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0';
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

std::vector<std::string> split_whitespace(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

// Rows of a CSV of reals; skips one header row when the first cell does not
// parse as a number.
std::vector<std::vector<double>> read_csv_rows(std::istream& in,
                                               const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  bool first_content_row = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto cells = split(stripped, ',');
    double first_value = 0.0;
    if (first_content_row && !parse_double(cells.front(), first_value)) {
      first_content_row = false;  // header row
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      double value = 0.0;
      if (!parse_double(cell, value)) {
        parse_error(name, lineno, "cell '" + cell + "' is not a number");
      }
      row.push_back(value);
    }
    first_content_row = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      parse_error(name, lineno,
                  "row has " + std::to_string(row.size()) +
                      " cells, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Sequence sequence_from_rows(std::vector<std::vector<double>> rows,
                            ObservationKind kind) {
  Sequence seq;
  seq.items.reserve(rows.size());
  for (auto& row : rows) {
    Eigen::VectorXd v =
        Eigen::Map<Eigen::VectorXd>(row.data(), static_cast<Index>(row.size()));
    seq.items.push_back(kind == ObservationKind::Vector
                            ? Observation::vector(std::move(v))
                            : Observation::function_sample(std::move(v)));
  }
  validate_sequence(seq);
  return seq;
}

Sequence read_graph_stack(std::istream& in, const std::string& name) {
  Sequence seq;
  std::vector<std::vector<double>> block;
  std::string line;
  int lineno = 0;
  int block_start = 0;
  auto flush_block = [&]() {
    if (block.empty()) return;
    const Index m = static_cast<Index>(block.size());
    Eigen::MatrixXd a(m, m);
    for (Index i = 0; i < m; ++i) {
      if (static_cast<Index>(block[static_cast<std::size_t>(i)].size()) != m) {
        parse_error(name, block_start + static_cast<int>(i),
                    "adjacency row has " +
                        std::to_string(block[static_cast<std::size_t>(i)].size()) +
                        " entries, expected " + std::to_string(m));
      }
      for (Index j = 0; j < m; ++j)
        a(i, j) = block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    seq.items.push_back(Observation::graph(std::move(a)));
    block.clear();
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty()) {
      flush_block();
      continue;
    }
    if (block.empty()) block_start = lineno;
    const auto cells = split_whitespace(stripped);
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      double value = 0.0;
      if (!parse_double(cell, value) || (value != 0.0 && value != 1.0)) {
        parse_error(name, lineno, "adjacency entries must be 0 or 1");
      }
      row.push_back(value);
    }
    block.push_back(std::move(row));
  }
  flush_block();
  validate_sequence(seq);
  return seq;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

Sequence read_sequence(const std::string& path, SequenceFormat format) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorCode::IoError, "cannot open " + path);
  return read_sequence(in, format, path);
}

Sequence read_sequence(std::istream& in, SequenceFormat format,
                       const std::string& name) {
  switch (format) {
    case SequenceFormat::VectorCsv:
      return sequence_from_rows(read_csv_rows(in, name), ObservationKind::Vector);
    case SequenceFormat::FunctionCsv:
      return sequence_from_rows(read_csv_rows(in, name),
                                ObservationKind::FunctionSample);
    case SequenceFormat::GraphStack:
      return read_graph_stack(in, name);
  }
  throw_error(ErrorCode::ConfigError, "unknown sequence format");
}

void write_sequence(const Sequence& seq, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw_error(ErrorCode::IoError, "cannot write " + path);
  write_sequence(seq, out);
}

void write_sequence(const Sequence& seq, std::ostream& out) {
  const bool graphs = !seq.items.empty() && seq.kind() == ObservationKind::Graph;
  for (std::size_t idx = 0; idx < seq.items.size(); ++idx) {
    const Observation& obs = seq.items[idx];
    if (graphs) {
      if (idx > 0) out << "\n";
      for (Index i = 0; i < obs.adjacency.rows(); ++i) {
        for (Index j = 0; j < obs.adjacency.cols(); ++j) {
          if (j > 0) out << ' ';
          out << static_cast<int>(obs.adjacency(i, j));
        }
        out << "\n";
      }
    } else {
      for (Index j = 0; j < obs.values.size(); ++j) {
        if (j > 0) out << ',';
        out << format_double(obs.values(j));
      }
      out << "\n";
    }
  }
}

DistanceMatrix read_distance_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorCode::IoError, "cannot open " + path);
  return read_distance_matrix(in, path);
}

DistanceMatrix read_distance_matrix(std::istream& in, const std::string& name) {
  const auto rows = read_csv_rows(in, name);
  const Index n = static_cast<Index>(rows.size());
  if (n == 0) throw_error(ErrorCode::ParseError, name + ": empty matrix");
  if (static_cast<Index>(rows.front().size()) != n) {
    throw_error(ErrorCode::NotSquare,
                name + ": matrix is " + std::to_string(n) + "x" +
                    std::to_string(rows.front().size()));
  }
  Eigen::MatrixXd d(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      d(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (d(i, j) < 0.0) {
        throw_error(ErrorCode::NegativeEntry,
                    name + ": negative entry at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
      }
    }
    if (std::abs(d(i, i)) > kDiagonalTolerance) {
      throw_error(ErrorCode::NonzeroDiagonal,
                  name + ": diagonal entry " + std::to_string(i) +
                      " exceeds tolerance");
    }
    d(i, i) = 0.0;
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(d(i, j) - d(j, i)) > kSymmetryTolerance) {
        throw_error(ErrorCode::AsymmetryBeyondTolerance,
                    name + ": |d(" + std::to_string(i) + "," +
                        std::to_string(j) + ") - transpose| exceeds 1e-9");
      }
      const double avg = 0.5 * (d(i, j) + d(j, i));
      d(i, j) = avg;
      d(j, i) = avg;
    }
  }
  return DistanceMatrix::checked(std::move(d));
}

void write_distance_matrix(const DistanceMatrix& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw_error(ErrorCode::IoError, "cannot write " + path);
  write_distance_matrix(d, out);
}

void write_distance_matrix(const DistanceMatrix& d, std::ostream& out) {
  const Index n = d.n();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (j > 0) out << ',';
      out << format_double(d(i, j));
    }
    out << "\n";
  }
}

}  // namespace wgcpd
