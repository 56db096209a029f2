#include "rendezvous/graph.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <queue>
#include <sstream>

#include "rendezvous/error.hpp"

namespace rendezvous {

namespace {

std::string vertex_msg(Vertex v) { return "vertex " + std::to_string(v); }

// Adjacency lists as printed in the cubic-graph table.
const std::map<std::string, std::vector<std::vector<Vertex>>, std::less<>>&
cubic_catalog() {
  static const std::map<std::string, std::vector<std::vector<Vertex>>,
                        std::less<>>
      catalog = {
          {"Y3", {{2, 3, 4}, {1, 3, 5}, {1, 2, 6}, {1, 5, 6}, {2, 4, 6},
                  {3, 4, 5}}},
          {"K4", {{2, 3, 4}, {1, 3, 4}, {1, 2, 4}, {1, 2, 3}}},
          {"2K4", {{3, 5, 7}, {4, 6, 8}, {1, 5, 7}, {2, 6, 8}, {1, 3, 7},
                   {2, 4, 8}, {1, 3, 5}, {2, 4, 6}}},
          {"cubic6", {{2, 3, 4}, {1, 3, 6}, {1, 2, 8}, {1, 5, 7}, {4, 6, 8},
                      {2, 5, 7}, {4, 6, 8}, {3, 5, 7}}},
          {"Q3", {{2, 4, 5}, {1, 3, 6}, {2, 4, 7}, {1, 3, 8}, {1, 6, 8},
                  {2, 5, 7}, {3, 6, 8}, {4, 5, 7}}},
      };
  return catalog;
}

}  // namespace

void validate(const std::vector<std::vector<Vertex>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  if (n == 0) throw Error(ErrorKind::Validation, "graph has no vertices");
  const std::size_t degree = adjacency.front().size();
  for (int i = 0; i < n; ++i) {
    const auto& row = adjacency[i];
    const Vertex v = i + 1;
    if (row.size() != degree) {
      throw Error(ErrorKind::Validation,
                  vertex_msg(v) + " has degree " + std::to_string(row.size()) +
                      ", expected uniform degree " + std::to_string(degree));
    }
    for (std::size_t k = 0; k < row.size(); ++k) {
      const Vertex u = row[k];
      if (u < 1 || u > n) {
        throw Error(ErrorKind::Validation,
                    vertex_msg(v) + " lists unknown neighbor " +
                        std::to_string(u));
      }
      if (u == v) throw Error(ErrorKind::Validation, vertex_msg(v) + " has a self-loop");
      if (k > 0 && row[k - 1] >= u) {
        throw Error(ErrorKind::Validation,
                    vertex_msg(v) + " neighbor list is not strictly ascending");
      }
      const auto& back = adjacency[u - 1];
      if (std::find(back.begin(), back.end(), v) == back.end()) {
        throw Error(ErrorKind::Validation,
                    "edge " + std::to_string(v) + "-" + std::to_string(u) +
                        " is not symmetric");
      }
    }
  }
  if (degree == 0) throw Error(ErrorKind::Validation, "graph has no edges");
}

Graph Graph::from_adjacency(std::vector<std::vector<Vertex>> adjacency,
                            std::string name) {
  for (auto& row : adjacency) std::sort(row.begin(), row.end());
  validate(adjacency);
  Graph g;
  g.degree_ = static_cast<int>(adjacency.front().size());
  g.adjacency_ = std::move(adjacency);
  g.name_ = std::move(name);
  return g;
}

void Graph::check_vertex(Vertex v) const {
  if (!contains(v)) {
    throw Error(ErrorKind::Validation,
                vertex_msg(v) + " is not in graph of size " +
                    std::to_string(size()));
  }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[v - 1];
}

Vertex Graph::ranked_neighbor(Vertex v, Rank rank) const {
  check_vertex(v);
  if (rank < 0 || rank >= degree_) {
    throw Error(ErrorKind::Arity, "rank " + std::to_string(rank) +
                                      " outside [0, " +
                                      std::to_string(degree_) + ")");
  }
  return adjacency_[v - 1][rank];
}

std::optional<Rank> Graph::rank_of(Vertex v, Vertex u) const {
  check_vertex(v);
  const auto& row = adjacency_[v - 1];
  auto it = std::lower_bound(row.begin(), row.end(), u);
  if (it == row.end() || *it != u) return std::nullopt;
  return static_cast<Rank>(it - row.begin());
}

std::vector<std::vector<Vertex>> Graph::components() const {
  std::vector<int> label(size() + 1, -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 1; s <= size(); ++s) {
    if (label[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::queue<Vertex> frontier;
    frontier.push(s);
    label[s] = id;
    while (!frontier.empty()) {
      Vertex v = frontier.front();
      frontier.pop();
      out[id].push_back(v);
      for (Vertex u : adjacency_[v - 1]) {
        if (label[u] < 0) {
          label[u] = id;
          frontier.push(u);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

Graph cycle_graph(int n) {
  if (n < 3) {
    throw Error(ErrorKind::InvalidSize,
                "cycle graph needs n >= 3, got " + std::to_string(n));
  }
  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex v = 1; v <= n; ++v) {
    const Vertex prev = v == 1 ? n : v - 1;
    const Vertex next = v == n ? 1 : v + 1;
    adj[v - 1] = {prev, next};
  }
  return Graph::from_adjacency(std::move(adj), "C" + std::to_string(n));
}

Graph named_cubic_graph(std::string_view name) {
  std::string key(name);
  if (key == "cubic-6") key = "cubic6";
  const auto& catalog = cubic_catalog();
  auto it = catalog.find(key);
  if (it == catalog.end()) {
    throw Error(ErrorKind::Lookup, "unknown cubic graph '" + std::string(name) +
                                       "' (known: Y3, K4, 2K4, cubic6, Q3)");
  }
  return Graph::from_adjacency(it->second, it->first);
}

std::vector<std::string> named_cubic_graph_names() {
  return {"Y3", "K4", "2K4", "cubic6", "Q3"};
}

Graph graph_by_name(std::string_view name) {
  if (name == "K3") return cycle_graph(3);
  if (name.size() > 1 && (name[0] == 'C' || name[0] == 'c') &&
      std::all_of(name.begin() + 1, name.end(),
                  [](unsigned char c) { return std::isdigit(c); })) {
    return cycle_graph(std::stoi(std::string(name.substr(1))));
  }
  return named_cubic_graph(name);
}

Graph parse_adjacency(std::istream& in, std::string name) {
  std::map<Vertex, std::vector<Vertex>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    auto fail = [&](const std::string& why) {
      return Error(ErrorKind::Parse,
                   "line " + std::to_string(line_no) + ": " + why);
    };
    if (colon == std::string::npos) throw fail("expected 'label: neighbors'");
    std::istringstream head(line.substr(0, colon));
    Vertex v = 0;
    if (!(head >> v) || !(head >> std::ws).eof()) throw fail("bad vertex label");
    std::istringstream tail(line.substr(colon + 1));
    std::vector<Vertex> nbrs;
    Vertex u = 0;
    while (tail >> u) nbrs.push_back(u);
    if (!tail.eof()) throw fail("bad neighbor label");
    if (!rows.emplace(v, std::move(nbrs)).second) throw fail("duplicate vertex");
  }
  if (rows.empty()) throw Error(ErrorKind::Parse, "no adjacency lines found");
  std::vector<std::vector<Vertex>> adj;
  Vertex expect = 1;
  for (auto& [v, nbrs] : rows) {
    if (v != expect) {
      throw Error(ErrorKind::Validation,
                  "labels must be 1..N without gaps; missing " +
                      std::to_string(expect));
    }
    adj.push_back(std::move(nbrs));
    ++expect;
  }
  return Graph::from_adjacency(std::move(adj), std::move(name));
}

Graph parse_adjacency(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  return parse_adjacency(in, std::move(name));
}

std::string format_adjacency(const Graph& g) {
  std::ostringstream out;
  for (Vertex v = 1; v <= g.size(); ++v) {
    out << v << ':';
    for (Vertex u : g.neighbors(v)) out << ' ' << u;
    out << '\n';
  }
  return out.str();
}

std::vector<Vertex> rank_preserving_isomorphism(const Graph& g,
                                                std::span<const Vertex> from,
                                                std::span<const Vertex> to) {
  if (from.size() != to.size() || from.empty()) return {};
  // The map is fixed by the image of from[0]; propagate along ranked edges.
  for (Vertex seed : to) {
    std::map<Vertex, Vertex> image{{from[0], seed}};
    std::queue<Vertex> frontier;
    frontier.push(from[0]);
    bool ok = true;
    while (ok && !frontier.empty()) {
      Vertex v = frontier.front();
      frontier.pop();
      for (Rank r = 0; r < g.degree() && ok; ++r) {
        Vertex u = g.ranked_neighbor(v, r);
        Vertex want = g.ranked_neighbor(image[v], r);
        auto [it, inserted] = image.emplace(u, want);
        if (inserted) {
          frontier.push(u);
        } else if (it->second != want) {
          ok = false;
        }
      }
    }
    if (!ok || image.size() != from.size()) continue;
    std::vector<Vertex> result;
    for (Vertex v : from) {
      auto it = image.find(v);
      if (it == image.end()) {
        ok = false;
        break;
      }
      result.push_back(it->second);
    }
    std::vector<Vertex> seen = result;
    std::sort(seen.begin(), seen.end());
    std::vector<Vertex> target(to.begin(), to.end());
    std::sort(target.begin(), target.end());
    if (ok && seen == target) return result;
  }
  return {};
}

}  // namespace rendezvous
