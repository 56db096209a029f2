#include <doctest.h>

#include <algorithm>
#include <vector>

#include "rendezvous/error.hpp"
#include "rendezvous/graph.hpp"

using namespace rendezvous;

using Adj = std::vector<std::vector<Vertex>>;

TEST_CASE("cycle_graph builds rings with wrap-around") {
  CHECK(cycle_graph(3).adjacency() == Adj{{2, 3}, {1, 3}, {1, 2}});
  CHECK(cycle_graph(4).adjacency() == Adj{{2, 4}, {1, 3}, {2, 4}, {1, 3}});
  const Graph c5 = cycle_graph(5);
  CHECK_FALSE(c5.adjacent(2, 5));
  CHECK(c5.degree() == 2);
  CHECK(c5.name() == "C5");
}

TEST_CASE("cycle_graph rejects n < 3") {
  for (int n : {-1, 0, 1, 2}) {
    try {
      cycle_graph(n);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidSize);
    }
  }
}

TEST_CASE("cycle graphs validate up to 1000 vertices") {
  for (int n = 3; n <= 1000; ++n) CHECK_NOTHROW(validate(cycle_graph(n).adjacency()));
}

TEST_CASE("named cubic graphs match the catalog") {
  CHECK(named_cubic_graph("K4").adjacency() == Adj{{2, 3, 4}, {1, 3, 4}, {1, 2, 4}, {1, 2, 3}});
  CHECK(named_cubic_graph("2K4").adjacency() ==
        Adj{{3, 5, 7}, {4, 6, 8}, {1, 5, 7}, {2, 6, 8}, {1, 3, 7}, {2, 4, 8}, {1, 3, 5}, {2, 4, 6}});
  const auto q3 = named_cubic_graph("Q3");
  CHECK(std::vector<Vertex>(q3.neighbors(1).begin(), q3.neighbors(1).end()) ==
        std::vector<Vertex>{2, 4, 5});
  for (const auto& name : named_cubic_graph_names()) {
    const Graph g = named_cubic_graph(name);
    CHECK(g.degree() == 3);
  }
  CHECK(named_cubic_graph("cubic-6") == named_cubic_graph("cubic6"));
}

TEST_CASE("unknown cubic graph is a lookup error") {
  try {
    named_cubic_graph("Petersen");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Lookup);
  }
}

TEST_CASE("ranked_neighbor picks the rank-th smallest label") {
  CHECK(named_cubic_graph("K4").ranked_neighbor(4, 1) == 2);
  CHECK(cycle_graph(3).ranked_neighbor(3, 0) == 1);
  CHECK(cycle_graph(5).ranked_neighbor(1, 1) == 5);
  try {
    cycle_graph(5).ranked_neighbor(1, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Arity);
  }
}

TEST_CASE("ranked neighbors enumerate the sorted neighbor set") {
  std::vector<Graph> graphs;
  for (const auto& name : named_cubic_graph_names()) graphs.push_back(named_cubic_graph(name));
  for (int n = 3; n <= 12; ++n) graphs.push_back(cycle_graph(n));
  for (const auto& g : graphs) {
    for (Vertex v = 1; v <= g.size(); ++v) {
      std::vector<Vertex> ranked;
      for (Rank r = 0; r < g.degree(); ++r) ranked.push_back(g.ranked_neighbor(v, r));
      std::vector<Vertex> sorted(g.neighbors(v).begin(), g.neighbors(v).end());
      std::sort(sorted.begin(), sorted.end());
      CHECK(ranked == sorted);
    }
  }
}

TEST_CASE("2K4 splits into two tetrahedra") {
  const Graph g = named_cubic_graph("2K4");
  const auto comps = g.components();
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<Vertex>{1, 3, 5, 7});
  CHECK(comps[1] == std::vector<Vertex>{2, 4, 6, 8});
  for (const auto& comp : comps) {
    for (Vertex u : comp)
      for (Vertex v : comp)
        if (u != v) CHECK(g.adjacent(u, v));
  }
  const auto iso = rank_preserving_isomorphism(g, comps[0], comps[1]);
  CHECK(iso == std::vector<Vertex>{2, 4, 6, 8});
}

TEST_CASE("validate rejects malformed adjacency") {
  auto kind_of = [](const Adj& adj) {
    try {
      validate(adj);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Lookup;  // sentinel: no error
  };
  CHECK(kind_of({{2}, {1, 3}, {2}}) == ErrorKind::Validation);        // non-uniform
  CHECK(kind_of({{1, 2}, {1, 3}, {1, 2}}) == ErrorKind::Validation);  // self loop
  CHECK(kind_of({{3, 2}, {1, 3}, {1, 2}}) == ErrorKind::Validation);  // unsorted
  CHECK(kind_of({{2, 2}, {1, 3}, {1, 2}}) == ErrorKind::Validation);  // duplicate
  CHECK(kind_of({{2, 4}, {1, 3}, {2, 4}, {1, 2}}) == ErrorKind::Validation);  // asymmetric
  CHECK(kind_of({{2, 9}, {1, 3}, {2, 1}}) == ErrorKind::Validation);  // out of range
}

TEST_CASE("adjacency text round trip") {
  const Graph q3 = named_cubic_graph("Q3");
  const Graph back = parse_adjacency(format_adjacency(q3), "Q3");
  CHECK(back == q3);
  const Graph withComments = parse_adjacency("# triangle\n1: 2 3\n2: 1 3\n\n3: 1 2 # last\n");
  CHECK(withComments == cycle_graph(3));
}

TEST_CASE("adjacency parse errors carry line numbers") {
  try {
    parse_adjacency("1: 2 3\n2 1 3\n3: 1 2\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_adjacency(""), Error);
  try {
    parse_adjacency("1: 3 4\n3: 1 4\n4: 1 3\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
  }
}

TEST_CASE("graph_by_name resolves cycles and cubic graphs") {
  CHECK(graph_by_name("K3") == cycle_graph(3));
  CHECK(graph_by_name("C7") == cycle_graph(7));
  CHECK(graph_by_name("Y3").size() == 6);
}
