#include "connsync/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <utility>

#include "connsync/error.hpp"

namespace connsync {

ConnectionGraph::ConnectionGraph(std::size_t vertex_count, std::size_t dim, std::vector<Edge> edges)
    : vertex_count_(vertex_count), dim_(dim), edges_(std::move(edges)), incident_(vertex_count) {
  if (vertex_count_ == 0) throw DimensionError("graph needs at least one vertex");
  if (dim_ == 0) throw DimensionError("transform dimension must be positive");
  const auto d = static_cast<Eigen::Index>(dim_);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    Edge& edge = edges_[e];
    if (edge.i >= vertex_count_ || edge.j >= vertex_count_) {
      throw DimensionError("edge " + std::to_string(e) + " has an endpoint outside [0, " +
                           std::to_string(vertex_count_) + ")");
    }
    if (edge.rho.rows() != d || edge.rho.cols() != d) {
      throw DimensionError("edge " + std::to_string(e) + " transform is not " +
                           std::to_string(dim_) + "x" + std::to_string(dim_));
    }
    if (edge.i > edge.j) {
      std::swap(edge.i, edge.j);
      edge.rho.transposeInPlace();
    }
    incident_[edge.i].push_back(e);
    if (edge.j != edge.i) incident_[edge.j].push_back(e);
  }
}

bool operator==(const ConnectionGraph& a, const ConnectionGraph& b) {
  if (a.vertex_count_ != b.vertex_count_ || a.dim_ != b.dim_ || a.edges_.size() != b.edges_.size())
    return false;
  for (std::size_t e = 0; e < a.edges_.size(); ++e) {
    const Edge& x = a.edges_[e];
    const Edge& y = b.edges_[e];
    if (x.i != y.i || x.j != y.j || x.weight != y.weight || x.rho != y.rho) return false;
  }
  return true;
}

Vector raw_degrees(const ConnectionGraph& g) {
  Vector deg = Vector::Zero(static_cast<Eigen::Index>(g.vertex_count()));
  for (const Edge& e : g.edges()) {
    deg[static_cast<Eigen::Index>(e.i)] += e.weight;
    deg[static_cast<Eigen::Index>(e.j)] += e.weight;
  }
  return deg;
}

std::vector<std::string> validate(const ConnectionGraph& g) {
  std::vector<std::string> out;
  const Matrix identity = Matrix::Identity(static_cast<Eigen::Index>(g.dim()),
                                           static_cast<Eigen::Index>(g.dim()));
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const Edge& e = g.edges()[k];
    const std::string name =
        "edge " + std::to_string(k) + " (" + std::to_string(e.i + 1) + "," + std::to_string(e.j + 1) + ")";
    if (e.i == e.j) out.push_back(name + ": self-loop");
    if (!seen.emplace(e.i, e.j).second) out.push_back(name + ": duplicate vertex pair");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) out.push_back(name + ": weight must be positive and finite");
    if (!e.rho.allFinite()) {
      out.push_back(name + ": transform has non-finite entries");
    } else {
      const double defect = (e.rho * e.rho.transpose() - identity).norm();
      if (!(defect <= kOrthogonalityTolerance)) {
        std::ostringstream msg;
        msg << name << ": transform is not orthogonal (||rho rho^T - I||_F = " << defect << ")";
        out.push_back(msg.str());
      }
    }
  }
  const Vector deg = raw_degrees(g);
  for (Eigen::Index v = 0; v < deg.size(); ++v) {
    if (!(deg[v] > 0.0)) out.push_back("vertex " + std::to_string(v + 1) + ": zero degree");
  }
  return out;
}

void require_valid(const ConnectionGraph& g) {
  auto violations = validate(g);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

DegreeSummary degrees(const ConnectionGraph& g) {
  require_valid(g);
  DegreeSummary summary;
  summary.degrees = raw_degrees(g);
  summary.volume = summary.degrees.sum();
  return summary;
}

std::vector<std::vector<std::size_t>> connected_components(const ConnectionGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> label(n, -1);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t start = 0; start < n; ++start) {
    if (label[start] >= 0) continue;
    const int id = static_cast<int>(comps.size());
    std::vector<std::size_t> members{start};
    label[start] = id;
    for (std::size_t head = 0; head < members.size(); ++head) {
      const std::size_t v = members[head];
      for (std::size_t e : g.incident(v)) {
        const Edge& edge = g.edges()[e];
        const std::size_t u = edge.i == v ? edge.j : edge.i;
        if (label[u] < 0) {
          label[u] = id;
          members.push_back(u);
        }
      }
    }
    std::sort(members.begin(), members.end());
    comps.push_back(std::move(members));
  }
  return comps;
}

bool is_connected(const ConnectionGraph& g) { return connected_components(g).size() == 1; }

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '\n') {
      ++line;
      ++pos;
    } else if (c == '#') {
      while (pos < text.size() && text[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      const std::size_t begin = pos;
      while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '#')
        ++pos;
      tokens.push_back({text.substr(begin, pos - begin), line});
    }
  }
  return tokens;
}

std::size_t parse_index(const Token& t, const char* what) {
  std::size_t value = 0;
  const auto* end = t.text.data() + t.text.size();
  const auto [ptr, ec] = std::from_chars(t.text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(t.line, std::string("expected a non-negative integer for ") + what + ", got '" +
                                 std::string(t.text) + "'");
  }
  return value;
}

double parse_real(const Token& t, const char* what) {
  // std::from_chars for double is not available in every libstdc++ we target.
  const std::string s(t.text);
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty() || (errno == ERANGE && std::isinf(value))) {
    throw ParseError(t.line, std::string("expected a number for ") + what + ", got '" + s + "'");
  }
  return value;
}

}  // namespace

ConnectionGraph read_graph(std::string_view text) {
  const std::vector<Token> tokens = tokenize(text);
  if (tokens.size() < 2) {
    throw ParseError(tokens.empty() ? 1 : tokens.front().line, "missing header 'n d'");
  }
  const std::size_t n = parse_index(tokens[0], "vertex count");
  const std::size_t d = parse_index(tokens[1], "dimension");
  if (tokens[0].line != tokens[1].line) throw ParseError(tokens[1].line, "header 'n d' must be on one line");
  if (tokens.size() > 2 && tokens[2].line == tokens[0].line)
    throw ParseError(tokens[0].line, "header must hold exactly 'n d'");
  if (n == 0) throw ParseError(tokens[0].line, "vertex count must be positive");
  if (d == 0) throw ParseError(tokens[1].line, "dimension must be positive");

  const std::size_t record = 3 + d * d;
  std::vector<Edge> edges;
  std::size_t pos = 2;
  while (pos < tokens.size()) {
    const std::size_t start_line = tokens[pos].line;
    if (tokens.size() - pos < record) {
      throw ParseError(start_line, "edge record needs " + std::to_string(record) + " values (i j w and " +
                                       std::to_string(d * d) + " matrix entries), found " +
                                       std::to_string(tokens.size() - pos));
    }
    // When the first line of a record carries matrix entries it must carry
    // whole rows; this pins a short matrix to the line it was written on.
    std::size_t same_line = 0;
    while (pos + same_line < tokens.size() && tokens[pos + same_line].line == start_line) ++same_line;
    if (same_line > 3 && same_line < record && (same_line - 3) % d != 0) {
      throw ParseError(start_line, "edge matrix has " + std::to_string(same_line - 3) +
                                       " entries on this line, not a whole number of rows of " +
                                       std::to_string(d));
    }
    const std::size_t i = parse_index(tokens[pos], "vertex index");
    const std::size_t j = parse_index(tokens[pos + 1], "vertex index");
    if (i < 1 || i > n) throw ParseError(tokens[pos].line, "vertex index " + std::to_string(i) + " outside [1, n]");
    if (j < 1 || j > n) throw ParseError(tokens[pos + 1].line, "vertex index " + std::to_string(j) + " outside [1, n]");
    Edge edge;
    edge.i = i - 1;
    edge.j = j - 1;
    edge.weight = parse_real(tokens[pos + 2], "weight");
    const auto dd = static_cast<Eigen::Index>(d);
    edge.rho.resize(dd, dd);
    for (Eigen::Index r = 0; r < dd; ++r)
      for (Eigen::Index c = 0; c < dd; ++c)
        edge.rho(r, c) = parse_real(tokens[pos + 3 + static_cast<std::size_t>(r * dd + c)], "matrix entry");
    edges.push_back(std::move(edge));
    pos += record;
  }
  return ConnectionGraph(n, d, std::move(edges));
}

std::string write_graph(const ConnectionGraph& g) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << g.vertex_count() << ' ' << g.dim() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.i + 1 << ' ' << e.j + 1 << ' ' << e.weight << '\n';
    for (Eigen::Index r = 0; r < e.rho.rows(); ++r) {
      for (Eigen::Index c = 0; c < e.rho.cols(); ++c) out << (c ? " " : "  ") << e.rho(r, c);
      out << '\n';
    }
  }
  return out.str();
}

ConnectionGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return read_graph(buffer.str());
}

void write_graph_file(const ConnectionGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << write_graph(g);
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace connsync
