#pragma once

#include <string>
#include <string_view>

#include "rendezvous/graph.hpp"

namespace rendezvous {

/// How co-located starts are handled when same_start_allowed is set.
enum class SameStartVariant {
  CheckFirst,  // co-located players win before moving
  CheckLater,  // co-located players still move and must end together
};

/// Game variant flags. Waiting is never allowed, so there is no flag for it.
/// `variant` is ignored unless same_start_allowed is true.
struct GameConfig {
  bool meet_on_edges = false;
  bool same_start_allowed = true;
  SameStartVariant variant = SameStartVariant::CheckLater;

  bool check_first() const noexcept {
    return same_start_allowed && variant == SameStartVariant::CheckFirst;
  }

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

/// Flat key-value form: "e=0 s=1 variant=later". Keys may be separated by
/// spaces, commas or newlines; missing keys keep their defaults.
std::string to_record(const GameConfig& cfg);
GameConfig game_config_from_record(std::string_view record);

enum class RoundResult { Win, Loss };

struct RoundOutcome {
  RoundResult result = RoundResult::Loss;
  Vertex final_a = 0;
  Vertex final_b = 0;
  bool met_on_edge = false;

  bool won() const noexcept { return result == RoundResult::Win; }
};

/// Adjudicates one synchronous step. Under check-first a shared start wins
/// without moving. A transposition of adjacent players counts only when
/// meet_on_edges is set. Throws ErrorKind::InvalidStart for a shared start
/// when same_start_allowed is false.
RoundOutcome resolve_round(const Graph& g, const GameConfig& cfg, Vertex a,
                           Vertex b, Rank move_a, Rank move_b);

/// Allocation-free win test used by the enumeration and simulation loops.
/// Assumes a, b and the ranks have already been validated.
inline bool wins_after_moves(const Graph& g, bool meet_on_edges, Vertex a,
                             Vertex b, Rank move_a, Rank move_b) {
  const auto& adj = g.adjacency();
  const Vertex fa = adj[a - 1][move_a];
  const Vertex fb = adj[b - 1][move_b];
  return fa == fb || (meet_on_edges && fa == b && fb == a);
}

enum class ConversionDirection { S1ToS0, S0ToS1 };

/// Converts a win probability between the S=1 and S=0 versions of a game on
/// an n-vertex graph. Only meaningful for check-first games, where every
/// shared start is a guaranteed win; applying it to check-later numbers is
/// permitted but mixes conventions.
///
/// S1->S0 throws ErrorKind::OutOfRange when p < 1/n, which would imply a
/// negative number of off-diagonal wins.
double convert_win_probability(double p, int n, ConversionDirection direction);

}  // namespace rendezvous
