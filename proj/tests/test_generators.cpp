#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "modmat/experiment.hpp"
#include "modmat/generators.hpp"

using namespace modmat;

namespace {

SubsetMask S(std::initializer_list<Element> e) { return SubsetMask::of(e); }

template <typename Fn>
void expect_errc(Errc code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

// Monotone Boolean functions on k variables, as truth tables over 2^k inputs.
std::vector<std::uint32_t> monotone_functions(unsigned k) {
  const unsigned inputs = 1U << k;
  std::vector<std::uint32_t> out;
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << inputs); ++t) {
    bool mono = true;
    for (unsigned x = 0; x < inputs && mono; ++x) {
      for (unsigned i = 0; i < k && mono; ++i) {
        if (!(x >> i & 1U) && (t >> x & 1U) && !(t >> (x | (1U << i)) & 1U)) mono = false;
      }
    }
    if (mono) out.push_back(static_cast<std::uint32_t>(t));
  }
  return out;
}

// Dedekind number D(k+1) counted as pairs f <= g of monotone functions on k
// variables; antichains of nonempty subsets number D(k+1) - 1.
std::size_t dedekind_by_pairs(unsigned k) {
  const auto m = monotone_functions(k);
  std::size_t pairs = 0;
  for (auto f : m) {
    for (auto g : m) pairs += (f & ~g) == 0;
  }
  return pairs;
}

// Intersection-closed families containing the full set, by filtering all
// families of subsets.
std::size_t brute_moore_count(Element n) {
  const unsigned subsets = 1U << n;
  const std::uint64_t full_bit = std::uint64_t{1} << (subsets - 1);
  std::size_t count = 0;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
    if (!(fam & full_bit)) continue;
    bool closed = true;
    for (unsigned a = 0; a < subsets && closed; ++a) {
      if (!(fam >> a & 1U)) continue;
      for (unsigned b = 0; b < subsets && closed; ++b) {
        if ((fam >> b & 1U) && !(fam >> (a & b) & 1U)) closed = false;
      }
    }
    count += closed;
  }
  return count;
}

// Double-precision check that a signed set is the sign pattern of a kernel
// vector: fix the last coordinate to its sign and solve the rest by least squares.
bool is_kernel_sign(const IntMatrix& m, const SignedVector& x) {
  const auto cols = x.support().elements();
  const std::size_t k = cols.size() - 1;
  const double last = x(cols.back());
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t r = 0; r < m.rows(); ++r) a[i][j] += double(m(r, cols[i])) * double(m(r, cols[j]));
    }
    for (std::size_t r = 0; r < m.rows(); ++r) a[i][k] -= double(m(r, cols[i])) * double(m(r, cols.back())) * last;
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    }
    std::swap(a[p], a[c]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= k; ++j) a[r][j] -= f * a[c][j];
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    const double lambda = a[i][k] / a[i][i];
    if (std::abs(lambda) < 1e-9 || (lambda > 0) != (x(cols[i]) > 0)) return false;
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double sum = double(m(r, cols.back())) * last;
    for (std::size_t i = 0; i < k; ++i) sum += double(m(r, cols[i])) * a[i][k] / a[i][i];
    if (std::abs(sum) > 1e-6) return false;
  }
  return true;
}

}  // namespace

TEST(Uniform, Examples) {
  const auto u24 = uniform(2, 4);
  EXPECT_EQ(u24.size(), 4U);
  for (SubsetMask c : u24.members()) EXPECT_EQ(c.count(), 3);
  EXPECT_TRUE(uniform(3, 3).empty());
  EXPECT_EQ(uniform(0, 2), CircuitFamily::make(GroundSet(2), {S({0}), S({1})}));
  expect_errc(Errc::bad_parameters, [] { uniform(5, 4); });
  expect_errc(Errc::bad_parameters, [] { uniform(2, 21); });
}

TEST(Graphic, Examples) {
  EXPECT_EQ(graphic(complete_graph(3)), CircuitFamily::make(GroundSet(3), {S({0, 1, 2})}));
  const auto k4 = graphic(complete_graph(4));
  EXPECT_EQ(k4.size(), 7U);
  std::size_t triangles = 0;
  for (SubsetMask c : k4.members()) triangles += c.count() == 3;
  EXPECT_EQ(triangles, 4U);
  EXPECT_TRUE(check_circuits_full(k4).accepted);
  EXPECT_EQ(graphic(GraphSpec{2, {{0, 1}, {0, 1}}}), CircuitFamily::make(GroundSet(2), {S({0, 1})}));
  EXPECT_EQ(graphic(GraphSpec{1, {{0, 0}}}), CircuitFamily::make(GroundSet(1), {S({0})}));
  expect_errc(Errc::malformed_input, [] { graphic(GraphSpec{2, {{0, 2}}}); });
}

TEST(Graphic, MatchesIncidenceMatrix) {
  for (std::size_t k = 3; k <= 5; ++k) {
    const auto g = complete_graph(k);
    EXPECT_EQ(graphic(g), vector_circuits(incidence_matrix(g)));
    EXPECT_EQ(signed_graphic(g), signed_vector_circuits(incidence_matrix(g)));
  }
  const GraphSpec multi{3, {{0, 1}, {1, 0}, {1, 2}, {2, 0}}};
  EXPECT_EQ(signed_graphic(multi), signed_vector_circuits(incidence_matrix(multi)));
}

TEST(VectorCircuits, Examples) {
  const auto ones = signed_vector_circuits(IntMatrix::from_rows({{1, 1, 1}}));
  EXPECT_EQ(ones.size(), 6U);
  EXPECT_TRUE(ones.contains(SignedVector(S({0}), S({1}))));
  EXPECT_TRUE(ones.contains(SignedVector(S({0}), S({2}))));
  EXPECT_TRUE(ones.contains(SignedVector(S({1}), S({2}))));
  EXPECT_EQ(vector_circuits(IntMatrix::from_rows({{1, 0, 1, 1}, {0, 1, 1, 2}})), uniform(2, 4));
  EXPECT_TRUE(vector_circuits(IntMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());
  EXPECT_EQ(vector_circuits(IntMatrix::from_rows({{0, 1}})), CircuitFamily::make(GroundSet(2), {S({0})}));
}

TEST(VectorCircuits, SignsAreKernelSigns) {
  for (const auto& m : random_matrices(40, 5, 3, 6)) {
    const auto fam = signed_vector_circuits(m);
    ASSERT_EQ(support_family(fam), vector_circuits(m));
    for (const auto& x : fam.members()) {
      if (x.support().count() == 1) continue;
      ASSERT_TRUE(is_kernel_sign(m, x));
    }
  }
}

TEST(VectorCircuits, RankMatchesMatroidRank) {
  for (const auto& m : random_matrices(30, 17, 3, 6)) {
    const auto c = vector_circuits(m);
    const RankTable r(c);
    for (std::uint64_t s = 0; s < 64; ++s) ASSERT_EQ(r(SubsetMask(s)), detail::column_rank(m, SubsetMask(s)));
  }
}

TEST(VectorCircuits, OverflowIsReported) {
  const std::int64_t big = std::int64_t{1} << 40;
  expect_errc(Errc::overflow, [&] { vector_circuits(IntMatrix::from_rows({{big, 1, 3}, {1, big, 5}, {7, 2, big}})); });
}

TEST(Fano, Examples) {
  const auto f = fano();
  EXPECT_EQ(f.size(), 14U);
  const auto lines = fano_lines();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) EXPECT_EQ((lines[i] & lines[j]).count(), 1);
  }
  EXPECT_EQ(rank(f, SubsetMask::full(7)), 3U);
  EXPECT_TRUE(check_circuits_full(f).accepted);
}

TEST(EnumerateAntichains, Counts) {
  const std::size_t expected[] = {0, 2, 5, 19, 167, 7580};
  for (Element n = 1; n <= 5; ++n) EXPECT_EQ(enumerate_antichains(n, [](const CircuitFamily&) {}), expected[n]);
}

TEST(EnumerateAntichains, CountsMatchDedekindOracle) {
  for (unsigned k = 0; k <= 4; ++k) {
    EXPECT_EQ(enumerate_antichains(k + 1, [](const CircuitFamily&) {}) + 1, dedekind_by_pairs(k)) << "n=" << k + 1;
  }
}

TEST(EnumerateAntichains, EachFamilyOnceAndValid) {
  std::set<std::vector<std::uint64_t>> seen;
  enumerate_antichains(4, [&](const CircuitFamily& f) {
    std::vector<std::uint64_t> bits;
    for (SubsetMask m : f.members()) bits.push_back(m.bits());
    ASSERT_TRUE(is_antichain(f.members()));
    ASSERT_TRUE(std::is_sorted(f.members().begin(), f.members().end(), CanonicalLess{}));
    ASSERT_TRUE(seen.insert(bits).second);
  });
  EXPECT_EQ(seen.size(), 167U);
}

TEST(EnumerateAntichains, ShardsPartitionTheEnumeration) {
  std::multiset<std::vector<std::uint64_t>> all;
  std::size_t total = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    total += enumerate_antichains(
        4,
        [&](const CircuitFamily& f) {
          std::vector<std::uint64_t> bits;
          for (SubsetMask m : f.members()) bits.push_back(m.bits());
          all.insert(bits);
        },
        Shard{5, i});
  }
  EXPECT_EQ(total, 167U);
  EXPECT_EQ(std::set<std::vector<std::uint64_t>>(all.begin(), all.end()).size(), 167U);
  expect_errc(Errc::bad_parameters, [] { enumerate_antichains(3, [](const CircuitFamily&) {}, Shard{2, 2}); });
  expect_errc(Errc::bad_parameters, [] { enumerate_antichains(7, [](const CircuitFamily&) {}); });
}

TEST(EnumerateMooreFamilies, Counts) {
  const std::size_t expected[] = {0, 2, 7, 61, 2480};
  for (Element n = 1; n <= 4; ++n) {
    EXPECT_EQ(enumerate_moore_families(n, [](const FlatFamily&) {}), expected[n]);
  }
  expect_errc(Errc::bad_parameters, [] { enumerate_moore_families(5, [](const FlatFamily&) {}); });
}

TEST(EnumerateMooreFamilies, CountsMatchBruteForce) {
  for (Element n = 1; n <= 4; ++n) {
    EXPECT_EQ(enumerate_moore_families(n, [](const FlatFamily&) {}), brute_moore_count(n)) << "n=" << n;
  }
}

TEST(EnumerateMooreFamilies, FamiliesAreValidAndShardsPartition) {
  std::set<std::vector<std::uint64_t>> seen;
  std::size_t total = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    total += enumerate_moore_families(
        4,
        [&](const FlatFamily& f) {
          std::vector<SubsetMask> members(f.members().begin(), f.members().end());
          ASSERT_NO_THROW(FlatFamily::make(f.ground(), members));
          std::vector<std::uint64_t> bits;
          for (SubsetMask m : members) bits.push_back(m.bits());
          seen.insert(bits);
        },
        Shard{3, i});
  }
  EXPECT_EQ(total, 2480U);
  EXPECT_EQ(seen.size(), 2480U);
}
