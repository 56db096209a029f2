#include "rendezvous/montecarlo.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "rendezvous/error.hpp"

namespace rendezvous {

namespace {

std::string pair_label(StartPair p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

bool has_invalid(const QuantumTable& t, OutcomePair o) {
  return t.format() == QuantumTable::Format::FourQubit &&
         (is_invalid_readout(o.first) || is_invalid_readout(o.second));
}

}  // namespace

QuantumTable::QuantumTable(Format format, Provenance provenance)
    : format_(format), provenance_(std::move(provenance)) {}

void QuantumTable::add(StartPair pair, OutcomePair outcome) {
  if (pair.first < 1 || pair.second < 1) {
    throw Error(ErrorKind::Validation, "start pair " + pair_label(pair) +
                                           " has a non-positive label");
  }
  const int k = outcome_count();
  if (outcome.first < 0 || outcome.first >= k || outcome.second < 0 ||
      outcome.second >= k) {
    throw Error(ErrorKind::Validation,
                "outcome out of range for " + pair_label(pair));
  }
  entries_[pair].push_back(outcome);
}

const std::vector<OutcomePair>& QuantumTable::shots(StartPair pair) const {
  auto it = entries_.find(pair);
  if (it == entries_.end()) {
    throw Error(ErrorKind::Lookup, "table has no shots for " + pair_label(pair));
  }
  return it->second;
}

std::size_t QuantumTable::total_shots() const {
  std::size_t n = 0;
  for (const auto& [pair, list] : entries_) n += list.size();
  return n;
}

std::size_t QuantumTable::invalid_shots() const {
  std::size_t n = 0;
  for (const auto& [pair, list] : entries_) {
    for (const auto& o : list) n += has_invalid(*this, o);
  }
  return n;
}

double QuantumTable::invalid_rate() const {
  const auto total = total_shots();
  return total == 0 ? 0.0 : double(invalid_shots()) / double(total);
}

OutcomePair QuantumTable::next(StartPair pair, bool recycle) {
  const auto& list = shots(pair);
  auto& cur = cursors_[pair];
  if (cur >= list.size()) {
    if (!recycle) {
      throw Error(ErrorKind::Exhaustion,
                  "table exhausted for start pair " + pair_label(pair) +
                      " after " + std::to_string(list.size()) + " shots");
    }
    cur = 0;
  }
  return list[cur++];
}

std::size_t QuantumTable::cursor(StartPair pair) const {
  auto it = cursors_.find(pair);
  return it == cursors_.end() ? 0 : it->second;
}

void QuantumTable::rewind() { cursors_.clear(); }

void QuantumTable::check_labels(const Graph& g) const {
  for (const auto& [pair, list] : entries_) {
    if (!g.contains(pair.first) || !g.contains(pair.second)) {
      throw Error(ErrorKind::Validation, "start pair " + pair_label(pair) +
                                             " is not in graph '" + g.name() + "'");
    }
  }
}

std::vector<StartPair> off_diagonal_pairs(const Graph& g) {
  std::vector<StartPair> out;
  for (Vertex a = 1; a <= g.size(); ++a) {
    for (Vertex b = 1; b <= g.size(); ++b) {
      if (a != b) out.emplace_back(a, b);
    }
  }
  return out;
}

QuantumTable build_table(const Graph& g, const Strategy& strategy,
                         const std::vector<StartPair>& pairs,
                         const TableBuildOptions& options) {
  if (options.shots_per_pair < 1) {
    throw Error(ErrorKind::Validation, "shots_per_pair must be >= 1");
  }
  check_fits(g, strategy);
  if (std::holds_alternative<ClassicalStrategy>(strategy)) {
    throw Error(ErrorKind::Validation, "tables hold quantum shots; got a classical strategy");
  }
  const bool qutrit = std::holds_alternative<QutritStrategy>(strategy);
  QuantumTable::Provenance prov;
  prov.source = options.sampler == TableSampler::Ideal ? QuantumTable::Source::Ideal
                                                       : QuantumTable::Source::Noisy;
  if (options.sampler == TableSampler::Noisy) prov.noise = options.noise;
  QuantumTable table(qutrit ? QuantumTable::Format::FourQubit : QuantumTable::Format::Qubit,
                     prov);
  const double p_circ = options.sampler == TableSampler::Noisy
                            ? circuit_failure_probability(options.noise)
                            : 0.0;
  for (const auto& pair : pairs) {
    if (!g.contains(pair.first) || !g.contains(pair.second)) {
      throw Error(ErrorKind::Validation,
                  "start pair " + pair_label(pair) + " is not in the graph");
    }
    Eigen::MatrixXd ideal;
    if (qutrit) {
      const auto& s = std::get<QutritStrategy>(strategy);
      ideal = outcome_matrix_fourqubit(s.at(pair.first), s.at(pair.second));
    } else {
      const auto& s = std::get<QubitStrategy>(strategy);
      ideal = outcome_matrix_qubit(s.at(pair.first), s.at(pair.second));
    }
    // Uniform corruption over every readout pair, as a mixture.
    const Eigen::MatrixXd dist =
        (1.0 - p_circ) * ideal +
        Eigen::MatrixXd::Constant(ideal.rows(), ideal.cols(),
                                  p_circ / double(ideal.size()));
    const OutcomeSampler sampler(dist);
    const auto stream =
        static_cast<std::uint64_t>(pair.first) * 1000003ULL + pair.second;
    Rng rng = make_rng(options.seed, stream);
    for (int k = 0; k < options.shots_per_pair; ++k) table.add(pair, sampler(rng));
  }
  return table;
}

QuantumTable import_table(std::istream& in, const std::string& origin) {
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::Parse,
                 origin + ": line " + std::to_string(line_no) + ": " + why);
  };
  // Header.
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) break;
  }
  if (line.empty()) {
    throw Error(ErrorKind::Parse, origin + ": empty table file");
  }
  if (line != "a,b,n,m") throw fail("expected header 'a,b,n,m'");

  struct Row {
    StartPair pair;
    std::string n, m;
    int line;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 4) throw fail("expected 4 fields");
    Row r;
    r.line = line_no;
    try {
      std::size_t used = 0;
      r.pair.first = std::stoi(fields[0], &used);
      if (used != fields[0].size()) throw fail("bad label '" + fields[0] + "'");
      r.pair.second = std::stoi(fields[1], &used);
      if (used != fields[1].size()) throw fail("bad label '" + fields[1] + "'");
    } catch (const std::logic_error&) {
      throw fail("bad start label");
    }
    r.n = fields[2];
    r.m = fields[3];
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw Error(ErrorKind::Parse, origin + ": table has no rows");

  const bool four = rows.front().n.size() == 2;
  QuantumTable::Provenance prov;
  prov.source = QuantumTable::Source::Imported;
  prov.path = origin;
  QuantumTable table(four ? QuantumTable::Format::FourQubit : QuantumTable::Format::Qubit,
                     prov);
  for (const auto& r : rows) {
    line_no = r.line;
    auto code = [&](const std::string& text) {
      if (four) {
        if (text.size() != 2) throw fail("mixed outcome encodings");
        try {
          return parse_two_bit_code(text);
        } catch (const Error&) {
          throw fail("bad 2-bit outcome '" + text + "'");
        }
      }
      if (text.size() != 1 || !std::isdigit(static_cast<unsigned char>(text[0]))) {
        throw fail("bad outcome '" + text + "'");
      }
      return text[0] - '0';
    };
    const OutcomePair o{code(r.n), code(r.m)};
    try {
      table.add(r.pair, o);
    } catch (const Error& e) {
      throw Error(ErrorKind::Validation,
                  origin + ": line " + std::to_string(r.line) + ": " + e.what());
    }
  }
  return table;
}

QuantumTable import_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  return import_table(in, path.string());
}

void export_table(std::ostream& out, const QuantumTable& table) {
  const bool four = table.format() == QuantumTable::Format::FourQubit;
  out << "a,b,n,m\n";
  for (const auto& [pair, list] : table.entries()) {
    for (const auto& o : list) {
      out << pair.first << ',' << pair.second << ',';
      if (four) {
        out << two_bit_code(o.first) << ',' << two_bit_code(o.second) << '\n';
      } else {
        out << o.first << ',' << o.second << '\n';
      }
    }
  }
}

namespace {

constexpr long long kChunk = 1LL << 16;

// Cumulative outcome table for one start pair; outcome code c is the pair
// (c / k, c % k).
struct PairDist {
  std::vector<double> cum;

  int draw(Rng& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng) * cum.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cum.begin(),
                                                     cum.size() - 1));
  }
};

PairDist make_pair_dist(const Eigen::MatrixXd& p) {
  if (!is_distribution(p, 1e-9)) {
    throw Error(ErrorKind::Validation, "outcome matrix is not a distribution");
  }
  PairDist d;
  double acc = 0.0;
  for (Eigen::Index n = 0; n < p.rows(); ++n) {
    for (Eigen::Index m = 0; m < p.cols(); ++m) {
      acc += std::max(0.0, p(n, m));
      d.cum.push_back(acc);
    }
  }
  return d;
}

struct RangeResult {
  long long wins = 0;
  long long discarded = 0;
  long long invalid = 0;
  std::vector<std::pair<long long, long long>> marks;  // (trials, wins so far)
};

bool is_power_of_two(long long x) { return x > 0 && (x & (x - 1)) == 0; }

class Simulator {
 public:
  Simulator(const Graph& g, const GameConfig& cfg, const Strategy& strategy,
            const SimOptions& opt)
      : g_(g), cfg_(cfg), opt_(opt), n_(g.size()) {
    check_fits(g, strategy);
    if (opt.fallback) opt.fallback->check_fits(g);
    if (!cfg.same_start_allowed && n_ < 2) {
      throw Error(ErrorKind::InvalidSize, "distinct starts need at least 2 vertices");
    }
    const bool qutrit = std::holds_alternative<QutritStrategy>(strategy);
    if (opt.noise && !qutrit) {
      throw Error(ErrorKind::Validation, "noise applies to qutrit strategies only");
    }
    const JointProvider joint = joint_provider(strategy);
    // Analytic (or diagonal) distributions, codes over k x k outcomes.
    four_ = qutrit && opt.noise.has_value() && opt.source == OutcomeSource::Analytic;
    k_ = four_ ? 4 : g.degree();
    const double p_circ = four_ ? circuit_failure_probability(*opt.noise) : 0.0;
    dists_.resize(static_cast<std::size_t>(n_) * n_);
    for (Vertex a = 1; a <= n_; ++a) {
      for (Vertex b = 1; b <= n_; ++b) {
        const bool needed = opt.source == OutcomeSource::Analytic || a == b;
        if (!needed || (a == b && !cfg.same_start_allowed)) continue;
        Eigen::MatrixXd p;
        if (four_) {
          const auto& s = std::get<QutritStrategy>(strategy);
          p = (1.0 - p_circ) * Eigen::MatrixXd(outcome_matrix_fourqubit(s.at(a), s.at(b))) +
              Eigen::MatrixXd::Constant(4, 4, p_circ / 16.0);
        } else {
          p = joint(a, b);
        }
        dists_[(a - 1) * n_ + (b - 1)] = make_pair_dist(p);
      }
    }
    if (opt.source == OutcomeSource::Table) {
      if (opt.table == nullptr) throw Error(ErrorKind::Validation, "table source needs a table");
      if (std::holds_alternative<ClassicalStrategy>(strategy)) {
        throw Error(ErrorKind::Validation, "table replay needs a quantum strategy");
      }
      const bool table_four = opt.table->format() == QuantumTable::Format::FourQubit;
      if (table_four != qutrit) {
        throw Error(ErrorKind::Validation,
                    "table format does not match the strategy's resource");
      }
      opt.table->check_labels(g);
    }
  }

  StartPair draw_start(Rng& rng) const {
    if (cfg_.same_start_allowed) {
      const long long idx = std::uniform_int_distribution<long long>(
          0, static_cast<long long>(n_) * n_ - 1)(rng);
      return {static_cast<Vertex>(idx / n_) + 1, static_cast<Vertex>(idx % n_) + 1};
    }
    const long long idx = std::uniform_int_distribution<long long>(
        0, static_cast<long long>(n_) * (n_ - 1) - 1)(rng);
    const Vertex a = static_cast<Vertex>(idx / (n_ - 1)) + 1;
    Vertex b = static_cast<Vertex>(idx % (n_ - 1)) + 1;
    if (b >= a) ++b;
    return {a, b};
  }

  Rank fallback_move(Vertex v, Rng& rng) const {
    const auto& fb = *opt_.fallback;
    if (fb.is_deterministic()) return fb.move(v);
    const Eigen::VectorXd& p = fb.move_distribution(v);
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng) * p.sum();
    for (Rank r = 0; r < p.size(); ++r) {
      u -= p(r);
      if (u < 0.0) return r;
    }
    return static_cast<Rank>(p.size() - 1);
  }

  // One round; `counters` collects invalid/discarded tallies.
  bool play(Rng& rng, RangeResult& counters) {
    const auto [a, b] = draw_start(rng);
    if (a == b && cfg_.check_first()) return true;
    int n = 0, m = 0;
    bool four = four_;
    if (opt_.source == OutcomeSource::Table && a != b) {
      QuantumTable& t = *opt_.table;
      OutcomePair o;
      if (opt_.probing == Probing::Sequential) {
        o = t.next({a, b}, opt_.recycle);
      } else {
        const auto& list = t.shots({a, b});
        o = list[std::uniform_int_distribution<std::size_t>(0, list.size() - 1)(rng)];
      }
      n = o.first;
      m = o.second;
      four = t.format() == QuantumTable::Format::FourQubit;
    } else {
      const int code = dists_[(a - 1) * n_ + (b - 1)].draw(rng);
      const int k = four ? 4 : k_;
      n = code / k;
      m = code % k;
    }
    if (four && (is_invalid_readout(n) || is_invalid_readout(m))) {
      ++counters.invalid;
      if (!opt_.fallback) return false;
      ++counters.discarded;
      if (is_invalid_readout(n)) n = fallback_move(a, rng);
      if (is_invalid_readout(m)) m = fallback_move(b, rng);
    }
    return wins_after_moves(g_, cfg_.meet_on_edges, a, b, n, m);
  }

  RangeResult run(long long begin, long long end, Rng& rng) {
    RangeResult r;
    for (long long t = begin; t < end; ++t) {
      r.wins += play(rng, r);
      if (is_power_of_two(t + 1)) r.marks.emplace_back(t + 1 - begin, r.wins);
    }
    return r;
  }

 private:
  const Graph& g_;
  GameConfig cfg_;
  SimOptions opt_;
  int n_;
  int k_ = 2;
  bool four_ = false;
  std::vector<PairDist> dists_;
};

}  // namespace

SimResult simulate(const Graph& g, const GameConfig& cfg, const Strategy& strategy,
                   const SimOptions& options) {
  if (options.trials < 1) throw Error(ErrorKind::Validation, "trials must be >= 1");
  Simulator sim(g, cfg, strategy, options);

  std::vector<RangeResult> parts;
  std::vector<long long> starts;
  if (options.source == OutcomeSource::Table) {
    Rng rng = make_rng(options.seed, 0);
    parts.push_back(sim.run(0, options.trials, rng));
    starts.push_back(0);
  } else {
    const long long chunks = (options.trials + kChunk - 1) / kChunk;
    parts.resize(chunks);
    for (long long c = 0; c < chunks; ++c) starts.push_back(c * kChunk);
    auto work = [&](long long c) {
      Rng rng = make_rng(options.seed, static_cast<std::uint64_t>(c) + 1);
      parts[c] = sim.run(c * kChunk, std::min(options.trials, (c + 1) * kChunk), rng);
    };
    const int threads =
        static_cast<int>(std::clamp<long long>(options.threads, 1, chunks));
    if (threads == 1) {
      for (long long c = 0; c < chunks; ++c) work(c);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          for (long long c = w; c < chunks; c += threads) work(c);
        });
      }
      for (auto& th : pool) th.join();
    }
  }

  SimResult out;
  out.trials = options.trials;
  out.seed = options.seed;
  long long wins_before = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const auto& [t, w] : parts[i].marks) {
      const long long total = starts[i] + t;
      out.convergence.push_back(
          {std::log2(double(total)), total, double(wins_before + w) / double(total)});
    }
    wins_before += parts[i].wins;
    out.discarded_shots += parts[i].discarded;
    out.invalid_shots += parts[i].invalid;
  }
  out.wins = wins_before;
  out.win_fraction = double(out.wins) / double(out.trials);
  if (!is_power_of_two(out.trials)) {
    out.convergence.push_back(
        {std::log2(double(out.trials)), out.trials, out.win_fraction});
  }
  return out;
}

void write_convergence_csv(std::ostream& out, const SimResult& result) {
  out << "log2_trials,win_fraction\n" << std::setprecision(17);
  for (const auto& c : result.convergence) {
    out << c.log2_trials << ',' << c.win_fraction << '\n';
  }
}

}  // namespace rendezvous
