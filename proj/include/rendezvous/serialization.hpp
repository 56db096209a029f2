#pragma once

#include <json.hpp>

#include "rendezvous/game_rules.hpp"
#include "rendezvous/graph.hpp"
#include "rendezvous/montecarlo.hpp"
#include "rendezvous/optimizer.hpp"
#include "rendezvous/strategies.hpp"

namespace rendezvous {

using Json = nlohmann::ordered_json;

Json to_json(const GameConfig& cfg);
GameConfig game_config_from_json(const Json& j);

/// {"kind":"deterministic","moves":{"1":0,...}}
/// {"kind":"randomized","dist":{"1":[0.5,0.5],...}}
/// {"kind":"qubit","angles":[...]}
/// {"kind":"qutrit","angles":[[alpha,beta,gamma],...]} with an optional
/// "slots" array when sites share triples. Qutrit angles are written modulo
/// 2pi.
Json to_json(const Strategy& s);

/// Parses any of the forms above; `arity` sizes deterministic strategies.
/// Throws ErrorKind::Parse on malformed input.
Strategy strategy_from_json(const Json& j, int arity);

Json to_json(const OptimizationResult& r, const Graph& g, const GameConfig& cfg,
             const OptimizerConfig& oc);
Json to_json(const SimResult& r);
Json to_json(const NoiseParams& noise);

}  // namespace rendezvous
