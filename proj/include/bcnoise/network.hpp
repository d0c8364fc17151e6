#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bcnoise/rng.hpp"

namespace bcnoise {

using Node = std::uint32_t;
using Edge = std::pair<Node, Node>;

/// Undirected simple graph in compressed adjacency form: the neighbors of `u`
/// are `neighbors_[offsets_[u] .. offsets_[u+1])`, sorted ascending. Every
/// edge appears in both endpoint lists. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Throws ParamError on self-loops, duplicate
  /// edges (in either orientation) or endpoints >= node_count.
  Graph(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const Node> neighbors(Node u) const {
    check(u);
    return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
  }
  std::size_t degree(Node u) const {
    check(u);
    return offsets_[u + 1] - offsets_[u];
  }

  /// Unchecked neighbor range for the event loop.
  const Node* neighbors_begin(Node u) const noexcept { return neighbors_.data() + offsets_[u]; }
  std::size_t degree_unchecked(Node u) const noexcept { return offsets_[u + 1] - offsets_[u]; }

  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check(Node u) const;

  std::vector<std::size_t> offsets_;
  std::vector<Node> neighbors_;
};

/// Binomial Erdos-Renyi G(n, p) with p = avg_degree / (n - 1): every unordered
/// pair is an edge independently with probability p. Sampled by geometric
/// skipping over the pair sequence, O(n + edges).
Graph generate_er(std::size_t n, double avg_degree, Rng& rng);

/// Uniform neighbor of u, or nullopt when u is isolated. IndexError if u is
/// out of range.
std::optional<Node> random_neighbor(const Graph& g, Node u, Rng& rng);

struct DegreeStats {
  double mean = 0.0;
  std::size_t min = 0;
  std::size_t max = 0;
  std::size_t isolated = 0;
};

DegreeStats degree_stats(const Graph& g);

/// Nodes of the largest connected component (smallest-index component wins
/// ties), ascending.
std::vector<Node> giant_component(const Graph& g);

// Edge-list text format:
//   # optional comment lines
//   # nodes=<N>
//   u,v        (one pair per line, u < v)
void write_edge_list(const Graph& g, std::ostream& out,
                     std::span<const std::string> comments = {});
/// Throws ParseError carrying the offending line number.
Graph read_edge_list(std::istream& in);

}  // namespace bcnoise
