#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "modmat/core.hpp"
#include "modmat/flats.hpp"

namespace modmat {

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (cols_ > max_ground_size) throw Error(Errc::too_large, "matrices are limited to 64 columns");
    if (entries_.size() != rows_ * cols_) throw Error(Errc::malformed_input, "entry count does not match the shape");
  }

  /// From a list of rows, which must all have the same length.
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    std::vector<std::int64_t> entries;
    for (const auto& r : rows) {
      if (r.size() != cols) throw Error(Errc::malformed_input, "ragged matrix rows");
      entries.insert(entries.end(), r.begin(), r.end());
    }
    return IntMatrix(rows.size(), cols, std::move(entries));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> entries_;
};

/// Multigraph; each edge is oriented from its first endpoint to its second.
struct GraphSpec {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  void validate() const {
    if (edges.size() > max_ground_size) throw Error(Errc::too_large, "graphs are limited to 64 edges");
    for (auto [u, v] : edges) {
      if (u >= vertices || v >= vertices) throw Error(Errc::malformed_input, "edge endpoint out of range");
    }
  }
};

inline GraphSpec complete_graph(std::size_t k) {
  GraphSpec g{k, {}};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) g.edges.emplace_back(i, j);
  }
  return g;
}

/// Vertex-edge incidence matrix: column e is (head - tail); loops give zero columns.
inline IntMatrix incidence_matrix(const GraphSpec& g) {
  g.validate();
  std::vector<std::int64_t> entries(g.vertices * g.edges.size(), 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    if (u == v) continue;
    entries[u * g.edges.size() + e] = -1;
    entries[v * g.edges.size() + e] = 1;
  }
  return IntMatrix(g.vertices, g.edges.size(), std::move(entries));
}

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::overflow, "entry growth exceeds 64-bit arithmetic");
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(Errc::overflow, "entry growth exceeds 64-bit arithmetic");
  return r;
}

using Dense = std::vector<std::vector<std::int64_t>>;

/// Fraction-free (Bareiss) elimination in place; returns the rank. Every
/// intermediate entry is a minor of the input, so all divisions are exact.
inline std::size_t bareiss_rank(Dense& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  std::size_t r = 0;
  std::int64_t prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = checked_sub(checked_mul(a[i][j], a[r][c]), checked_mul(a[i][c], a[r][j])) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

inline std::int64_t bareiss_det(Dense a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = checked_sub(checked_mul(a[i][j], a[k][k]), checked_mul(a[i][k], a[k][j])) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline Dense columns_of(const IntMatrix& m, const std::vector<Element>& cols) {
  Dense out(m.rows(), std::vector<std::int64_t>(cols.size()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t k = 0; k < cols.size(); ++k) out[r][k] = m(r, cols[k]);
  }
  return out;
}

inline std::size_t column_rank(const IntMatrix& m, SubsetMask cols) {
  Dense a = columns_of(m, cols.elements());
  return bareiss_rank(a);
}

/// Signs of the (one-dimensional) kernel of a circuit's columns, computed as
/// alternating maximal minors of a row basis.
inline SignedVector kernel_signs(const IntMatrix& m, SubsetMask circuit) {
  const std::vector<Element> cols = circuit.elements();
  const Dense sub = columns_of(m, cols);
  Dense basis;
  for (const auto& row : sub) {
    Dense trial = basis;
    trial.push_back(row);
    Dense work = trial;
    if (bareiss_rank(work) == trial.size()) basis = std::move(trial);
    if (basis.size() + 1 == cols.size()) break;
  }
  SubsetMask pos;
  SubsetMask neg;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    Dense minor(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t k = 0; k < cols.size(); ++k) {
        if (k != j) minor[i].push_back(basis[i][k]);
      }
    }
    std::int64_t d = bareiss_det(minor);
    if (j % 2 == 1) d = -d;
    if (d > 0) pos = pos.with(cols[j]);
    if (d < 0) neg = neg.with(cols[j]);
  }
  return SignedVector(pos, neg);
}

/// Calls fn on every k-subset of {0..n-1} in increasing numeric order.
template <typename Fn>
void for_each_k_subset(Element n, Element k, Fn&& fn) {
  if (k > n) return;
  if (k == 0) {
    fn(SubsetMask{});
    return;
  }
  std::uint64_t s = (k == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = SubsetMask::full(n).bits();
  while (true) {
    fn(SubsetMask{s});
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t r = s + c;
    if (r == 0) return;  // wrapped past bit 63
    s = (((r ^ s) >> 2) / c) | r;
    if ((s & ~limit) != 0) return;
  }
}

inline std::vector<SubsetMask> matrix_circuits(const IntMatrix& m) {
  const Element n = static_cast<Element>(m.cols());
  const std::size_t full_rank = column_rank(m, SubsetMask::full(n));
  std::vector<SubsetMask> circuits;
  for (Element k = 1; k <= std::min<std::size_t>(n, full_rank + 1); ++k) {
    for_each_k_subset(n, k, [&](SubsetMask s) {
      for (SubsetMask c : circuits) {
        if (c.subset_of(s)) return;
      }
      if (column_rank(m, s) < k) circuits.push_back(s);
    });
  }
  return circuits;
}

}  // namespace detail

/// U(r, n): every (r+1)-subset of an n-set is a circuit.
inline CircuitFamily uniform(Element r, Element n) {
  if (r > n || n > max_oracle_ground) throw Error(Errc::bad_parameters, "uniform matroid needs 0 <= r <= n <= 20");
  std::vector<SubsetMask> out;
  if (r < n) detail::for_each_k_subset(n, r + 1, [&](SubsetMask s) { out.push_back(s); });
  return CircuitFamily::make(GroundSet(n), std::move(out));
}

/// Minimal linearly dependent column sets, in exact arithmetic.
inline CircuitFamily vector_circuits(const IntMatrix& m) {
  return CircuitFamily::make(GroundSet(static_cast<Element>(m.cols())), detail::matrix_circuits(m));
}

/// Signed circuits of the column configuration, both signs of each.
inline SignedFamily signed_vector_circuits(const IntMatrix& m) {
  std::vector<SignedVector> out;
  for (SubsetMask c : detail::matrix_circuits(m)) out.push_back(detail::kernel_signs(m, c));
  return SignedFamily::make(GroundSet(static_cast<Element>(m.cols())), std::move(out), true);
}

namespace detail {

/// Each simple cycle is found once, rooted at its smallest edge r = (u, v):
/// the cycle is r plus a path from v back to u over edges larger than r.
/// Signs record traversal along (+) or against (-) each edge's orientation.
inline std::vector<SignedVector> graph_cycles(const GraphSpec& g) {
  g.validate();
  std::vector<std::vector<std::pair<std::size_t, Element>>> adj(g.vertices);
  for (Element e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    if (u == v) continue;
    adj[u].emplace_back(v, e);
    adj[v].emplace_back(u, e);
  }
  std::vector<SignedVector> cycles;
  for (Element r = 0; r < g.edges.size(); ++r) {
    auto [u, v] = g.edges[r];
    if (u == v) {
      cycles.emplace_back(SubsetMask::singleton(r), SubsetMask{});
      continue;
    }
    std::vector<char> on_path(g.vertices, 0);
    on_path[v] = 1;
    std::function<void(std::size_t, SubsetMask, SubsetMask)> walk = [&](std::size_t at, SubsetMask pos, SubsetMask neg) {
      if (at == u) {
        cycles.emplace_back(pos, neg);
        return;
      }
      for (auto [to, e] : adj[at]) {
        if (e <= r || on_path[to]) continue;
        const bool forward = g.edges[e].first == at;
        on_path[to] = 1;
        walk(to, forward ? pos.with(e) : pos, forward ? neg : neg.with(e));
        on_path[to] = 0;
      }
    };
    walk(v, SubsetMask::singleton(r), SubsetMask{});
  }
  return cycles;
}

}  // namespace detail

/// Cycle matroid: edge sets of simple cycles, loops and parallel pairs included.
inline CircuitFamily graphic(const GraphSpec& g) {
  std::vector<SubsetMask> out;
  for (const auto& c : detail::graph_cycles(g)) out.push_back(c.support());
  return CircuitFamily::make(GroundSet(static_cast<Element>(g.edges.size())), std::move(out));
}

inline SignedFamily signed_graphic(const GraphSpec& g) {
  return SignedFamily::make(GroundSet(static_cast<Element>(g.edges.size())), detail::graph_cycles(g), true);
}

/// Lines of the Fano plane on points 0..6 (translates of {0,1,3} mod 7).
inline std::vector<SubsetMask> fano_lines() {
  std::vector<SubsetMask> lines;
  for (Element i = 0; i < 7; ++i) lines.push_back(SubsetMask::of({i, (i + 1) % 7, (i + 3) % 7}));
  return lines;
}

/// The seven lines and their seven complements.
inline CircuitFamily fano() {
  std::vector<SubsetMask> out = fano_lines();
  for (SubsetMask l : fano_lines()) out.push_back(SubsetMask::full(7) - l);
  return CircuitFamily::make(GroundSet(7), std::move(out));
}

/// Deterministic slice of an enumeration: shard `index` of `count`.
struct Shard {
  std::size_t count = 1;
  std::size_t index = 0;

  void validate() const {
    if (count == 0 || index >= count) throw Error(Errc::bad_parameters, "shard index must be below shard count");
  }
};

namespace detail {

/// Hands out subtrees round-robin once the search reaches `split_depth`;
/// shallower nodes are handed out one by one. Every shard walks the same
/// shallow prefix, so assignment is identical across shards.
class ShardGate {
 public:
  ShardGate(Shard s, std::size_t split_depth) : shard_(s), split_(split_depth) {}

  /// At a node that roots a subtree: may this shard enter it?
  bool enter(std::size_t depth, bool& owned) {
    if (owned || shard_.count == 1 || depth != split_) return true;
    if (next_ticket() != shard_.index) return false;
    owned = true;
    return true;
  }
  /// At a node to be visited: does this shard visit it?
  bool visit(bool owned) {
    if (owned || shard_.count == 1) return true;
    return next_ticket() == shard_.index;
  }

 private:
  std::size_t next_ticket() { return ticket_++ % shard_.count; }

  Shard shard_;
  std::size_t split_;
  std::size_t ticket_ = 0;
};

}  // namespace detail

/// Visits every antichain of nonempty subsets of {0..n-1}, the empty family
/// included. Subsets are taken in canonical order and a branch only extends
/// with later subsets that are not supersets of a chosen one.
inline std::size_t enumerate_antichains(Element n, const std::function<void(const CircuitFamily&)>& visitor,
                                        Shard shard = {}) {
  if (n < 1 || n > 6) throw Error(Errc::bad_parameters, "antichain enumeration supports 1 <= n <= 6");
  shard.validate();
  std::vector<SubsetMask> subsets;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) subsets.emplace_back(s);
  std::sort(subsets.begin(), subsets.end(), CanonicalLess{});
  const std::size_t total = subsets.size();
  std::vector<std::uint64_t> supersets(total, 0);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      if (subsets[i].subset_of(subsets[j])) supersets[i] |= std::uint64_t{1} << j;
    }
  }

  const GroundSet ground(n);
  detail::ShardGate gate(shard, 2);
  std::size_t visited = 0;
  std::vector<SubsetMask> chosen;
  std::function<void(std::uint64_t, bool)> walk = [&](std::uint64_t allowed, bool owned) {
    if (gate.visit(owned)) {
      visitor(CircuitFamily::trusted(ground, chosen));
      ++visited;
    }
    for (std::uint64_t b = allowed; b != 0; b &= b - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(b));
      bool child_owned = owned;
      if (!gate.enter(chosen.size() + 1, child_owned)) continue;
      // Only later indices remain, minus the new member's supersets.
      const std::uint64_t later = (j + 1 >= 64) ? 0 : (~std::uint64_t{0} << (j + 1));
      chosen.push_back(subsets[j]);
      walk(allowed & later & ~supersets[j], child_owned);
      chosen.pop_back();
    }
  };
  const std::uint64_t everything = total == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << total) - 1;
  walk(everything, false);
  return visited;
}

/// Visits every intersection-closed family of subsets of {0..n-1} that
/// contains the whole set. Subsets are decided largest first; including one
/// forces its intersections with the members so far, all of which are still
/// undecided, so every branch ends in a valid family.
inline std::size_t enumerate_moore_families(Element n, const std::function<void(const FlatFamily&)>& visitor,
                                            Shard shard = {}, bool allow_five = false) {
  if (n < 1 || n > (allow_five ? 5U : 4U)) throw Error(Errc::bad_parameters, "Moore family enumeration supports 1 <= n <= 4 (5 on request)");
  shard.validate();
  std::vector<SubsetMask> order;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) order.emplace_back(s);
  std::sort(order.begin(), order.end(), [](SubsetMask a, SubsetMask b) { return canonical_less(b, a); });

  const GroundSet ground(n);
  detail::ShardGate gate(shard, 4);
  std::size_t visited = 0;
  std::vector<SubsetMask> included;
  auto bit = [](SubsetMask s) { return std::uint64_t{1} << s.bits(); };

  std::function<void(std::size_t, std::uint64_t, std::size_t, bool)> walk =
      [&](std::size_t pos, std::uint64_t forced, std::size_t depth, bool owned) {
        if (pos == order.size()) {
          if (gate.visit(owned)) {
            std::vector<SubsetMask> members(included.rbegin(), included.rend());
            visitor(FlatFamily::trusted(ground, std::move(members)));
            ++visited;
          }
          return;
        }
        const SubsetMask s = order[pos];
        auto include = [&](std::size_t next_depth, bool own) {
          std::uint64_t f = forced;
          for (SubsetMask t : included) f |= bit(s & t);
          included.push_back(s);
          walk(pos + 1, f, next_depth, own);
          included.pop_back();
        };
        if ((forced & bit(s)) != 0) {
          include(depth, owned);
          return;
        }
        bool own_excl = owned;
        if (gate.enter(depth + 1, own_excl)) walk(pos + 1, forced, depth + 1, own_excl);
        bool own_incl = owned;
        if (gate.enter(depth + 1, own_incl)) include(depth + 1, own_incl);
      };
  walk(0, bit(ground.full()), 0, false);
  return visited;
}

}  // namespace modmat
