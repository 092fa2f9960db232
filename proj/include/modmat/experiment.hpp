#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <chrono>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "modmat/circuits.hpp"
#include "modmat/flats.hpp"
#include "modmat/generators.hpp"
#include "modmat/io.hpp"
#include "modmat/lattice.hpp"
#include "modmat/oriented.hpp"

namespace modmat {

struct NamedMatroid {
  std::string name;
  CircuitFamily circuits;
};

/// uniform(r, m) for 0 <= r <= m <= max_uniform, then K4, K5 and the Fano plane.
inline std::vector<NamedMatroid> matroid_corpus(Element max_uniform = 7) {
  std::vector<NamedMatroid> out;
  for (Element m = 0; m <= max_uniform; ++m) {
    for (Element r = 0; r <= m; ++r) out.push_back({"U" + std::to_string(r) + "," + std::to_string(m), uniform(r, m)});
  }
  out.push_back({"K4", graphic(complete_graph(4))});
  out.push_back({"K5", graphic(complete_graph(5))});
  out.push_back({"Fano", fano()});
  return out;
}

struct NamedOriented {
  std::string name;
  SignedFamily circuits;
};

/// Fixed realizations: the all-ones row, a rank-2 uniform configuration, a
/// rank-2 configuration with a parallel pair, K4 by graph and by incidence
/// matrix, and a rank-3 configuration with a three-point line.
inline std::vector<NamedOriented> oriented_corpus() {
  return {
      {"[1 1 1]", signed_vector_circuits(IntMatrix::from_rows({{1, 1, 1}}))},
      {"U2,4 (1,0),(0,1),(1,1),(1,2)", signed_vector_circuits(IntMatrix::from_rows({{1, 0, 1, 1}, {0, 1, 1, 2}}))},
      {"rank 2 with parallel pair", signed_vector_circuits(IntMatrix::from_rows({{1, 0, -1, 1}, {0, 1, -1, 1}}))},
      {"K4 graph", signed_graphic(complete_graph(4))},
      {"K4 incidence", signed_vector_circuits(incidence_matrix(complete_graph(4)))},
      {"rank 3 with a line", signed_vector_circuits(IntMatrix::from_rows({{1, 0, 0, 1, 1}, {0, 1, 0, 1, 0}, {0, 0, 1, 0, 1}}))},
  };
}

/// Seeded random integer matrices with entries drawn uniformly from [lo, hi].
inline std::vector<IntMatrix> random_matrices(std::size_t count, std::uint64_t seed, std::size_t rows = 3,
                                              std::size_t cols = 6, std::int64_t lo = -3, std::int64_t hi = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> entry(lo, hi);
  std::vector<IntMatrix> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<std::int64_t> e(rows * cols);
    for (auto& v : e) v = entry(rng);
    out.emplace_back(rows, cols, std::move(e));
  }
  return out;
}

enum class ExperimentKind { theorem_main, newcrapo, oriented_equiv, cryptomorphism };

inline std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::theorem_main: return "theorem-main";
    case ExperimentKind::newcrapo: return "newcrapo";
    case ExperimentKind::oriented_equiv: return "oriented-equiv";
    case ExperimentKind::cryptomorphism: return "cryptomorphism";
  }
  return "unknown";
}

inline ExperimentKind parse_experiment_kind(const std::string& s) {
  for (auto k : {ExperimentKind::theorem_main, ExperimentKind::newcrapo, ExperimentKind::oriented_equiv,
                 ExperimentKind::cryptomorphism}) {
    if (to_string(k) == s) return k;
  }
  throw Error(Errc::bad_parameters, "unknown experiment '" + s + "'");
}

struct ExperimentOptions {
  std::uint64_t seed = 1;
  std::size_t random_count = 100;  // oriented-equiv: random matrices
  std::size_t shards = 1;
  std::optional<std::size_t> only_shard;  // run just this shard
  std::size_t threads = 0;                // 0: hardware concurrency
  bool allow_large = false;               // n = 6 antichains, n = 5 Moore families
};

struct ExperimentReport {
  std::string kind;
  std::size_t n = 0;
  std::size_t instances = 0;
  std::size_t counterexample_count = 0;
  std::vector<nlohmann::json> counterexamples;
  nlohmann::json details = nlohmann::json::object();
  double seconds = 0.0;

  bool operator==(const ExperimentReport&) const = default;
};

inline nlohmann::json to_json(const ExperimentReport& r) {
  return {{"kind", r.kind},
          {"n", r.n},
          {"instances", r.instances},
          {"counterexample_count", r.counterexample_count},
          {"counterexamples", r.counterexamples},
          {"details", r.details},
          {"seconds", r.seconds}};
}

inline ExperimentReport report_from_json(const nlohmann::json& doc) {
  try {
    ExperimentReport r;
    r.kind = doc.at("kind").get<std::string>();
    r.n = doc.at("n").get<std::size_t>();
    r.instances = doc.at("instances").get<std::size_t>();
    r.counterexample_count = doc.at("counterexample_count").get<std::size_t>();
    r.counterexamples = doc.at("counterexamples").get<std::vector<nlohmann::json>>();
    r.details = doc.at("details");
    r.seconds = doc.at("seconds").get<double>();
    if (r.counterexample_count != r.counterexamples.size()) {
      throw Error(Errc::malformed_input, "counterexample count does not match the witness list");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_input, std::string("bad experiment report: ") + e.what());
  }
}

namespace detail {

struct Partial {
  std::size_t instances = 0;
  std::vector<nlohmann::json> counterexamples;
  std::map<std::string, std::size_t> tallies;
};

/// Runs `work(shard)` for every shard this invocation owns, spread over
/// worker threads, and merges the results.
template <typename Work>
Partial run_shards(const ExperimentOptions& opt, Work&& work) {
  const std::size_t shards = std::max<std::size_t>(1, opt.shards);
  std::vector<std::size_t> mine;
  if (opt.only_shard) {
    mine.push_back(*opt.only_shard);
  } else {
    for (std::size_t i = 0; i < shards; ++i) mine.push_back(i);
  }
  std::vector<Partial> results(mine.size());
  std::size_t threads = opt.threads != 0 ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, mine.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < mine.size(); k = next++) results[k] = work(Shard{shards, mine[k]});
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Partial merged;
  for (auto& p : results) {
    merged.instances += p.instances;
    for (auto& c : p.counterexamples) merged.counterexamples.push_back(std::move(c));
    for (auto& [k, v] : p.tallies) merged.tallies[k] += v;
  }
  // Independent of how the enumeration was split.
  std::sort(merged.counterexamples.begin(), merged.counterexamples.end(),
            [](const nlohmann::json& a, const nlohmann::json& b) { return a.dump() < b.dump(); });
  return merged;
}

inline Partial theorem_main(Element n, Shard shard) {
  Partial p;
  p.instances = enumerate_antichains(
      n,
      [&](const CircuitFamily& f) {
        const bool full = check_circuits_full(f).accepted;
        const bool modular = check_circuits_modular(f).accepted;
        ++p.tallies[full ? "matroids" : "non_matroids"];
        if (full != modular) p.counterexamples.push_back({{"family", io::to_json(f)}, {"full", full}, {"modular", modular}});
      },
      shard);
  return p;
}

inline Partial newcrapo(Element n, Shard shard, bool allow_five) {
  Partial p;
  p.instances = enumerate_moore_families(
      n,
      [&](const FlatFamily& f) {
        const bool full = check_flats_full(f).accepted;
        const bool restricted = check_flats_restricted(f).accepted;
        ++p.tallies[full ? "flat_families" : "non_flat_families"];
        if (full != restricted) {
          p.counterexamples.push_back({{"family", io::to_json(f)}, {"full", full}, {"restricted", restricted}});
        }
      },
      shard, allow_five);
  return p;
}

/// Realizations must pass both validators; mutants must get the same verdict
/// from both, and an accepted mutant must be a reorientation of its source
/// (so it genuinely is an oriented matroid).
inline void oriented_instance(Partial& p, const std::string& name, const SignedFamily& fam) {
  ++p.instances;
  const bool modular = check_signed_modular(fam).accepted;
  const bool classic = check_signed_classic(fam).accepted;
  if (!modular || !classic) {
    p.counterexamples.push_back({{"name", name}, {"family", io::to_json(fam)}, {"modular", modular}, {"classic", classic}});
  }
  for (const auto& mutant : sign_flip_mutants(fam)) {
    ++p.instances;
    ++p.tallies["mutants"];
    const bool mm = check_signed_modular(mutant).accepted;
    const bool mc = check_signed_classic(mutant).accepted;
    bool ok = mm == mc;
    if (mm && mc) {
      ++p.tallies["mutants_accepted"];
      ok = is_reorientation_of(fam, mutant);
      if (ok) ++p.tallies["mutants_accepted_reorientations"];
    } else if (!mm && !mc) {
      ++p.tallies["mutants_rejected"];
    }
    if (!ok) {
      p.counterexamples.push_back(
          {{"name", name + " mutant"}, {"family", io::to_json(mutant)}, {"modular", mm}, {"classic", mc}});
    }
  }
}

inline Partial oriented_equiv(Element cols, const ExperimentOptions& opt) {
  Partial p;
  for (const auto& [name, fam] : oriented_corpus()) oriented_instance(p, name, fam);
  const auto mats = random_matrices(opt.random_count, opt.seed, 3, cols);
  for (std::size_t k = 0; k < mats.size(); ++k) {
    oriented_instance(p, "random #" + std::to_string(k), signed_vector_circuits(mats[k]));
  }
  return p;
}

inline Partial cryptomorphism(Element max_uniform) {
  Partial p;
  for (const auto& [name, c] : matroid_corpus(max_uniform)) {
    ++p.instances;
    const FlatFamily flats = flats_from_circuits(c);
    const CircuitFamily cocircuits = coatom_complement_circuits(flats);
    const CircuitFamily dual = dual_circuits(c);
    nlohmann::json failures = nlohmann::json::array();
    if (!check_flats_full(flats) || !check_flats_restricted(flats)) failures.push_back("flats rejected");
    if (!(cocircuits == dual)) failures.push_back("coatom complements differ from dual circuits");
    if (!check_circuits_modular(cocircuits)) failures.push_back("coatom complements rejected");
    if (!anti_isomorphic_by_complement(union_lattice(c), flats_from_circuits(dual))) {
      failures.push_back("U(C) is not anti-isomorphic to the dual flats");
    }
    if (!anti_isomorphic_by_complement(union_lattice(cocircuits), flats)) {
      failures.push_back("U(coatom complements) is not anti-isomorphic to the flats");
    }
    if (!failures.empty()) p.counterexamples.push_back({{"name", name}, {"family", io::to_json(c)}, {"failures", failures}});
  }
  return p;
}

}  // namespace detail

/// Runs one verification experiment. `n` is the ground-set size for
/// theorem-main (1..5, 6 with allow_large) and newcrapo (1..4, 5 with
/// allow_large), the column count of the random matrices for oriented-equiv
/// (2..10), and the largest uniform matroid size for cryptomorphism (0..8).
inline ExperimentReport run_experiment(ExperimentKind kind, Element n, const ExperimentOptions& opt = {}) {
  const std::size_t shards = std::max<std::size_t>(1, opt.shards);
  if (opt.only_shard && *opt.only_shard >= shards) throw Error(Errc::bad_parameters, "shard index must be below shard count");
  const auto start = std::chrono::steady_clock::now();
  detail::Partial p;
  switch (kind) {
    case ExperimentKind::theorem_main:
      if (n < 1 || n > (opt.allow_large ? 6U : 5U)) throw Error(Errc::bad_parameters, "theorem-main needs 1 <= n <= 5 (6 with --large)");
      p = detail::run_shards(opt, [&](Shard s) { return detail::theorem_main(n, s); });
      break;
    case ExperimentKind::newcrapo:
      if (n < 1 || n > (opt.allow_large ? 5U : 4U)) throw Error(Errc::bad_parameters, "newcrapo needs 1 <= n <= 4 (5 with --large)");
      p = detail::run_shards(opt, [&](Shard s) { return detail::newcrapo(n, s, opt.allow_large); });
      break;
    case ExperimentKind::oriented_equiv:
      if (n < 2 || n > 10) throw Error(Errc::bad_parameters, "oriented-equiv needs 2 <= n <= 10 columns");
      p = detail::oriented_equiv(n, opt);
      break;
    case ExperimentKind::cryptomorphism:
      if (n > 8) throw Error(Errc::bad_parameters, "cryptomorphism needs n <= 8");
      p = detail::cryptomorphism(n);
      break;
  }
  ExperimentReport r;
  r.kind = to_string(kind);
  r.n = n;
  r.instances = p.instances;
  r.counterexample_count = p.counterexamples.size();
  r.counterexamples = std::move(p.counterexamples);
  for (const auto& [k, v] : p.tallies) r.details[k] = v;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace modmat
