#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rendezvous/classical.hpp"
#include "rendezvous/game_rules.hpp"
#include "rendezvous/graph.hpp"
#include "rendezvous/sampling.hpp"
#include "rendezvous/strategies.hpp"

namespace rendezvous {

using StartPair = std::pair<Vertex, Vertex>;
using OutcomePair = std::pair<int, int>;

/// Pre-generated shot outcomes per ordered start pair, consumed in order.
/// Qubit tables hold move ranks 0/1; four-qubit tables hold 2-bit readout
/// codes 0..3, where 3 (binary 11) lies outside the qutrit subspace.
class QuantumTable {
 public:
  enum class Format { Qubit, FourQubit };
  enum class Source { Ideal, Noisy, Imported };

  struct Provenance {
    Source source = Source::Ideal;
    NoiseParams noise;   // Noisy only
    std::string path;    // Imported only
  };

  QuantumTable() = default;
  QuantumTable(Format format, Provenance provenance);

  Format format() const noexcept { return format_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  int outcome_count() const noexcept { return format_ == Format::Qubit ? 2 : 4; }

  /// Throws ErrorKind::Validation for bad labels or outcome codes.
  void add(StartPair pair, OutcomePair outcome);

  bool covers(StartPair pair) const { return entries_.count(pair) != 0; }
  const std::vector<OutcomePair>& shots(StartPair pair) const;
  const std::map<StartPair, std::vector<OutcomePair>>& entries() const noexcept {
    return entries_;
  }
  std::size_t total_shots() const;

  /// Fraction of shots in which at least one player read 11.
  double invalid_rate() const;
  std::size_t invalid_shots() const;

  /// Next unconsumed shot for `pair`. When the list runs out this throws
  /// ErrorKind::Exhaustion, or wraps around if `recycle` is set.
  OutcomePair next(StartPair pair, bool recycle = false);
  std::size_t cursor(StartPair pair) const;
  void rewind();

  /// Throws ErrorKind::Validation when a label is not a vertex of g.
  void check_labels(const Graph& g) const;

 private:
  Format format_ = Format::Qubit;
  Provenance provenance_;
  std::map<StartPair, std::vector<OutcomePair>> entries_;
  std::map<StartPair, std::size_t> cursors_;
};

enum class TableSampler { Ideal, Noisy };

struct TableBuildOptions {
  int shots_per_pair = 20000;
  TableSampler sampler = TableSampler::Ideal;
  NoiseParams noise;
  std::uint64_t seed = 1;
};

/// All ordered pairs (a, b) with a != b.
std::vector<StartPair> off_diagonal_pairs(const Graph& g);

/// Samples shots for every listed pair from the strategy's outcome matrix:
/// qubit strategies give a qubit table, qutrit strategies a four-qubit table.
/// Each pair draws from its own stream so the table does not depend on the
/// order of `pairs`.
QuantumTable build_table(const Graph& g, const Strategy& strategy,
                         const std::vector<StartPair>& pairs,
                         const TableBuildOptions& options);

/// CSV with header "a,b,n,m"; qubit outcomes as 0/1, four-qubit outcomes as
/// 00/01/10/11. Malformed rows raise ErrorKind::Parse with the line number.
QuantumTable import_table(std::istream& in, const std::string& origin = "<stream>");
QuantumTable import_table(const std::filesystem::path& path);
void export_table(std::ostream& out, const QuantumTable& table);

enum class OutcomeSource { Analytic, Table };
enum class Probing { Sequential, RandomWithReplacement };

struct SimOptions {
  long long trials = 1 << 20;
  std::uint64_t seed = 1;
  OutcomeSource source = OutcomeSource::Analytic;
  QuantumTable* table = nullptr;       // required for OutcomeSource::Table
  Probing probing = Probing::Sequential;
  bool recycle = false;                // wrap exhausted table lists
  /// Four-qubit noise for qutrit strategies in analytic mode.
  std::optional<NoiseParams> noise;
  /// When set, a player who reads 11 moves as this strategy says instead.
  /// Without it such a round is lost.
  std::optional<ClassicalStrategy> fallback;
  int threads = 1;
};

struct Checkpoint {
  double log2_trials = 0.0;
  long long trials = 0;
  double win_fraction = 0.0;
};

struct SimResult {
  long long trials = 0;
  long long wins = 0;
  double win_fraction = 0.0;
  std::uint64_t seed = 0;
  std::vector<Checkpoint> convergence;  // powers of two, then the final count
  long long discarded_shots = 0;        // rounds where the fallback fired
  long long invalid_shots = 0;          // rounds with any 11 readout
};

/// Plays `trials` independent rounds with uniformly random starts. Analytic
/// mode splits trials into fixed chunks of 2^16, each with its own stream,
/// so results do not depend on the thread count. Table mode replays shots in
/// a single stream; shared check-later starts are sampled from the ideal
/// diagonal distribution since tables only hold off-diagonal circuits.
SimResult simulate(const Graph& g, const GameConfig& cfg, const Strategy& strategy,
                   const SimOptions& options);

/// "log2_trials,win_fraction" rows for the power-of-two checkpoints.
void write_convergence_csv(std::ostream& out, const SimResult& result);

}  // namespace rendezvous
