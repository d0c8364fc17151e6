#include "bcnoise/network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_set>

#include "bcnoise/errors.hpp"

namespace bcnoise {

Graph::Graph(std::size_t node_count, std::span<const Edge> edges) {
  std::vector<std::size_t> degree(node_count, 0);
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw ParamError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") references a node outside [0, " + std::to_string(node_count) + ")");
    }
    if (u == v) throw ParamError("self-loop at node " + std::to_string(u));
    ++degree[u];
    ++degree[v];
  }

  offsets_.assign(node_count + 1, 0);
  for (std::size_t i = 0; i < node_count; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  neighbors_.resize(offsets_[node_count]);

  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    neighbors_[cursor[u]++] = v;
    neighbors_[cursor[v]++] = u;
  }
  for (std::size_t u = 0; u < node_count; ++u) {
    auto first = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]);
    auto last = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw ParamError("duplicate edge (" + std::to_string(u) + "," + std::to_string(*dup) + ")");
    }
  }
}

void Graph::check(Node u) const {
  if (u >= node_count()) {
    throw IndexError("node " + std::to_string(u) + " out of range [0, " +
                     std::to_string(node_count()) + ")");
  }
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Node u = 0; u < node_count(); ++u) {
    for (Node v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph generate_er(std::size_t n, double avg_degree, Rng& rng) {
  if (n < 2) throw ParamError("n must be >= 2");
  if (!(avg_degree >= 0.0) || avg_degree > static_cast<double>(n - 1)) {
    throw ParamError("degree must lie in [0, n-1] so that the edge probability is in [0,1]");
  }
  const double p = avg_degree / static_cast<double>(n - 1);
  std::vector<Edge> edges;
  if (p == 0.0) return Graph(n, edges);

  if (p == 1.0) {
    edges.reserve(n * (n - 1) / 2);
    for (Node v = 1; v < n; ++v)
      for (Node w = 0; w < v; ++w) edges.emplace_back(w, v);
    return Graph(n, edges);
  }

  // Walk the pairs (v, w), w < v, in row order, jumping ahead by geometric
  // gaps; each pair is hit independently with probability p.
  edges.reserve(static_cast<std::size_t>(static_cast<double>(n) * avg_degree * 0.55) + 16);
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  const double cap = static_cast<double>(nn) * static_cast<double>(nn);
  while (v < nn) {
    const double r = rng.uniform01();
    const double gap = std::floor(std::log1p(-r) / log_q);
    w += 1 + static_cast<std::int64_t>(std::min(gap, cap));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<Node>(w), static_cast<Node>(v));
  }
  return Graph(n, edges);
}

std::optional<Node> random_neighbor(const Graph& g, Node u, Rng& rng) {
  const auto nbrs = g.neighbors(u);
  if (nbrs.empty()) return std::nullopt;
  return nbrs[rng.below(nbrs.size())];
}

DegreeStats degree_stats(const Graph& g) {
  DegreeStats s;
  const std::size_t n = g.node_count();
  if (n == 0) return s;
  s.min = g.degree(0);
  std::size_t total = 0;
  for (Node u = 0; u < n; ++u) {
    const std::size_t k = g.degree(u);
    total += k;
    s.min = std::min(s.min, k);
    s.max = std::max(s.max, k);
    if (k == 0) ++s.isolated;
  }
  s.mean = static_cast<double>(total) / static_cast<double>(n);
  return s;
}

std::vector<Node> giant_component(const Graph& g) {
  const std::size_t n = g.node_count();
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, kUnseen);
  std::size_t best_label = 0;
  std::size_t best_size = 0;
  std::size_t next_label = 0;
  std::vector<Node> stack;
  for (Node root = 0; root < n; ++root) {
    if (label[root] != kUnseen) continue;
    std::size_t size = 0;
    label[root] = next_label;
    stack.push_back(root);
    while (!stack.empty()) {
      const Node u = stack.back();
      stack.pop_back();
      ++size;
      for (Node v : g.neighbors(u)) {
        if (label[v] == kUnseen) {
          label[v] = next_label;
          stack.push_back(v);
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best_label = next_label;
    }
    ++next_label;
  }
  std::vector<Node> out;
  out.reserve(best_size);
  for (Node u = 0; u < n; ++u)
    if (label[u] == best_label) out.push_back(u);
  return out;
}

void write_edge_list(const Graph& g, std::ostream& out, std::span<const std::string> comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "# nodes=" << g.node_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ',' << v << '\n';
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_uint(std::string_view s, std::uint64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> nodes;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      constexpr std::string_view key = "nodes=";
      if (body.starts_with(key)) {
        if (nodes) throw ParseError("repeated '# nodes=' header", line_no);
        if (!edges.empty()) throw ParseError("'# nodes=' header must precede edges", line_no);
        std::uint64_t value = 0;
        if (!parse_uint(body.substr(key.size()), value)) {
          throw ParseError("malformed node count", line_no);
        }
        nodes = static_cast<std::size_t>(value);
      }
      continue;
    }
    if (!nodes) throw ParseError("edge before '# nodes=<N>' header", line_no);
    const auto comma = line.find(',');
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (comma == std::string_view::npos || !parse_uint(line.substr(0, comma), u) ||
        !parse_uint(line.substr(comma + 1), v)) {
      throw ParseError("expected 'u,v', got '" + std::string(line) + "'", line_no);
    }
    if (u == v) throw ParseError("self-loop " + std::string(line), line_no);
    if (u > v) throw ParseError("pair must satisfy u < v: " + std::string(line), line_no);
    if (v >= *nodes) throw ParseError("node index out of range: " + std::string(line), line_no);
    if (!seen.insert(u * *nodes + v).second) {
      throw ParseError("duplicate edge " + std::string(line), line_no);
    }
    edges.emplace_back(static_cast<Node>(u), static_cast<Node>(v));
  }
  if (!nodes) throw ParseError("missing '# nodes=<N>' header", 0);
  return Graph(*nodes, edges);
}

}  // namespace bcnoise
