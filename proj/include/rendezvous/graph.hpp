#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rendezvous {

/// Vertex labels are 1-based everywhere in the public interface.
using Vertex = int;

/// Index into a vertex's ascending neighbor list: 0 is the lowest label.
using Rank = int;

/// Labelled undirected graph of uniform degree with rank-ordered adjacency.
///
/// Instances are only produced through validating factories, so every Graph
/// in circulation is symmetric, loop-free, duplicate-free and regular.
/// Immutable after construction.
class Graph {
 public:
  /// Builds a graph from per-vertex neighbor lists (entry i lists the
  /// neighbors of label i+1). Lists are sorted on ingest; any violation of
  /// the graph invariants throws ErrorKind::Validation.
  static Graph from_adjacency(std::vector<std::vector<Vertex>> adjacency,
                              std::string name = {});

  int size() const noexcept { return static_cast<int>(adjacency_.size()); }
  int degree() const noexcept { return degree_; }
  const std::string& name() const noexcept { return name_; }

  bool contains(Vertex v) const noexcept { return v >= 1 && v <= size(); }
  std::span<const Vertex> neighbors(Vertex v) const;

  /// The rank-th smallest neighbor label of v. Throws ErrorKind::Arity when
  /// rank is outside [0, degree).
  Vertex ranked_neighbor(Vertex v, Rank rank) const;

  /// Rank of u within v's neighbor list, if adjacent.
  std::optional<Rank> rank_of(Vertex v, Vertex u) const;

  bool adjacent(Vertex u, Vertex v) const { return rank_of(u, v).has_value(); }

  /// Connected components, each sorted ascending, ordered by smallest label.
  std::vector<std::vector<Vertex>> components() const;

  const std::vector<std::vector<Vertex>>& adjacency() const noexcept {
    return adjacency_;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_ == b.adjacency_;
  }

 private:
  Graph() = default;
  void check_vertex(Vertex v) const;

  std::vector<std::vector<Vertex>> adjacency_;
  int degree_ = 0;
  std::string name_;
};

/// Throws ErrorKind::Validation describing the first broken invariant.
void validate(const std::vector<std::vector<Vertex>>& adjacency);

/// Cycle C_n; throws ErrorKind::InvalidSize for n < 3.
Graph cycle_graph(int n);

/// One of Y3, K4, 2K4, cubic6 (alias cubic-6), Q3. Unknown names throw
/// ErrorKind::Lookup.
Graph named_cubic_graph(std::string_view name);

std::vector<std::string> named_cubic_graph_names();

/// Resolves "C<n>" / "K3" to a cycle and anything else to a named cubic graph.
Graph graph_by_name(std::string_view name);

/// Plain-text adjacency list, one "label: n1 n2 n3" line per vertex. Blank
/// lines and '#' comments are ignored. Malformed lines throw ErrorKind::Parse.
Graph parse_adjacency(std::istream& in, std::string name = {});
Graph parse_adjacency(std::string_view text, std::string name = {});
std::string format_adjacency(const Graph& g);

/// A bijection between two components that maps the rank-r neighbor of every
/// vertex onto the rank-r neighbor of its image. Returned as image[i] for the
/// i-th vertex of `from` (in ascending order); empty when none exists.
std::vector<Vertex> rank_preserving_isomorphism(const Graph& g,
                                                std::span<const Vertex> from,
                                                std::span<const Vertex> to);

}  // namespace rendezvous
