#include "rendezvous/game_rules.hpp"

#include <cctype>
#include <sstream>

#include "rendezvous/error.hpp"

namespace rendezvous {

std::string to_record(const GameConfig& cfg) {
  std::string out = "e=";
  out += cfg.meet_on_edges ? '1' : '0';
  out += " s=";
  out += cfg.same_start_allowed ? '1' : '0';
  out += " variant=";
  out += cfg.variant == SameStartVariant::CheckFirst ? "first" : "later";
  return out;
}

GameConfig game_config_from_record(std::string_view record) {
  std::string text(record);
  for (char& c : text) {
    if (c == ',' || c == ';') c = ' ';
  }
  std::istringstream in(text);
  GameConfig cfg;
  std::string token;
  auto parse_bit = [](const std::string& key, const std::string& value) {
    if (value == "0") return false;
    if (value == "1") return true;
    throw Error(ErrorKind::Parse, key + " must be 0 or 1, got '" + value + "'");
  };
  while (in >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Parse, "expected key=value, got '" + token + "'");
    }
    std::string key = token.substr(0, eq);
    std::string value = token.substr(eq + 1);
    for (char& c : key) c = static_cast<char>(std::tolower(c));
    if (key == "e") {
      cfg.meet_on_edges = parse_bit(key, value);
    } else if (key == "s") {
      cfg.same_start_allowed = parse_bit(key, value);
    } else if (key == "variant") {
      if (value == "first") {
        cfg.variant = SameStartVariant::CheckFirst;
      } else if (value == "later") {
        cfg.variant = SameStartVariant::CheckLater;
      } else {
        throw Error(ErrorKind::Parse,
                    "variant must be first or later, got '" + value + "'");
      }
    } else {
      throw Error(ErrorKind::Parse, "unknown game config key '" + key + "'");
    }
  }
  return cfg;
}

RoundOutcome resolve_round(const Graph& g, const GameConfig& cfg, Vertex a,
                           Vertex b, Rank move_a, Rank move_b) {
  if (!g.contains(a) || !g.contains(b)) {
    throw Error(ErrorKind::Validation, "start vertex outside graph");
  }
  if (a == b) {
    if (!cfg.same_start_allowed) {
      throw Error(ErrorKind::InvalidStart,
                  "players cannot share start " + std::to_string(a) +
                      " when s=0");
    }
    if (cfg.check_first()) return {RoundResult::Win, a, b, false};
  }
  RoundOutcome out;
  out.final_a = g.ranked_neighbor(a, move_a);
  out.final_b = g.ranked_neighbor(b, move_b);
  out.met_on_edge =
      cfg.meet_on_edges && out.final_a == b && out.final_b == a && a != b;
  out.result = (out.final_a == out.final_b || out.met_on_edge)
                   ? RoundResult::Win
                   : RoundResult::Loss;
  return out;
}

double convert_win_probability(double p, int n, ConversionDirection direction) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "probability outside [0, 1]");
  }
  if (n < 2) throw Error(ErrorKind::InvalidSize, "conversion needs n >= 2");
  const double nd = n;
  if (direction == ConversionDirection::S0ToS1) {
    return ((nd - 1.0) * p + 1.0) / nd;
  }
  const double out = (nd * p - 1.0) / (nd - 1.0);
  // Allow rounding noise right at the 1/n boundary.
  if (out < -1e-15) {
    throw Error(ErrorKind::OutOfRange,
                "S=1 probability below 1/n implies negative off-diagonal wins");
  }
  return out < 0.0 ? 0.0 : out;
}

}  // namespace rendezvous
