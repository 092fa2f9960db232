#include <gtest/gtest.h>

#include <random>

#include "modmat/circuits.hpp"
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

// Independence-axiom oracle: sets containing no member must satisfy
// augmentation. Independent of circuit elimination.
bool augmentation_holds(const CircuitFamily& f) {
  const Element n = f.ground().size();
  std::vector<std::uint64_t> indep;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool ok = true;
    for (SubsetMask c : f.members()) ok = ok && !c.subset_of(SubsetMask(s));
    if (ok) indep.push_back(s);
  }
  auto is_indep = [&](std::uint64_t s) { return std::binary_search(indep.begin(), indep.end(), s); };
  for (std::uint64_t i : indep) {
    for (std::uint64_t j : indep) {
      if (std::popcount(i) >= std::popcount(j)) continue;
      bool grows = false;
      for (std::uint64_t rest = j & ~i; rest != 0 && !grows; rest &= rest - 1) {
        grows = is_indep(i | (rest & (~rest + 1)));
      }
      if (!grows) return false;
    }
  }
  return true;
}

std::vector<CircuitFamily> all_antichains(Element n) {
  std::vector<CircuitFamily> out;
  enumerate_antichains(n, [&](const CircuitFamily& f) { out.push_back(f); });
  return out;
}

CircuitFamily path_pair() { return CircuitFamily::make(GroundSet(3), {S({0, 1}), S({1, 2})}); }

}  // namespace

TEST(Eliminates, Examples) {
  const auto u24 = uniform(2, 4);
  EXPECT_EQ(eliminates(u24, S({0, 1, 2}), S({0, 1, 3}), 0), S({1, 2, 3}));
  EXPECT_FALSE(eliminates(path_pair(), S({0, 1}), S({1, 2}), 1).has_value());
  expect_errc(Errc::precondition_violation, [&] { eliminates(u24, S({0, 1, 2}), S({0, 1, 3}), 2); });
  expect_errc(Errc::not_a_member, [&] { eliminates(u24, S({0, 1}), S({0, 1, 3}), 0); });
}

TEST(Eliminates, FanoLinesThroughAPoint) {
  const auto f = fano();
  const auto lines = fano_lines();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const SubsetMask meet = lines[i] & lines[j];
      ASSERT_EQ(meet.count(), 1);
      const auto z = eliminates(f, lines[i], lines[j], meet.first());
      ASSERT_TRUE(z.has_value());
      EXPECT_TRUE(f.contains(*z));
    }
  }
}

TEST(CheckCircuitsFull, Examples) {
  EXPECT_TRUE(check_circuits_full(uniform(2, 4)).accepted);
  const auto v = check_circuits_full(path_pair());
  ASSERT_FALSE(v.accepted);
  const auto& w = std::get<EliminationWitness>(*v.witness);
  EXPECT_EQ(w.c1, S({0, 1}));
  EXPECT_EQ(w.c2, S({1, 2}));
  EXPECT_EQ(w.e, 1U);
  EXPECT_EQ(w.candidates, S({0, 2}));
  EXPECT_TRUE(check_circuits_full(CircuitFamily::make(GroundSet(3), {})).accepted);
}

TEST(CheckCircuitsModular, Examples) {
  EXPECT_TRUE(check_circuits_modular(uniform(2, 4)).accepted);
  EXPECT_TRUE(is_modular_pair(path_pair(), S({0, 1}), S({1, 2})));
  EXPECT_FALSE(check_circuits_modular(path_pair()).accepted);
  EXPECT_TRUE(check_circuits_modular(fano()).accepted);
}

TEST(CheckCircuits, FullMatchesAugmentationOracle) {
  const std::size_t expected_matroids[] = {0, 2, 5, 16, 68};
  for (Element n = 1; n <= 4; ++n) {
    std::size_t matroids = 0;
    for (const auto& f : all_antichains(n)) {
      const bool oracle = augmentation_holds(f);
      ASSERT_EQ(check_circuits_full(f).accepted, oracle);
      ASSERT_EQ(check_circuits_modular(f).accepted, oracle);
      matroids += oracle;
    }
    EXPECT_EQ(matroids, expected_matroids[n]);
  }
}

TEST(CheckCircuits, WitnessRefalsifies) {
  for (const auto& f : all_antichains(4)) {
    for (const auto& v : {check_circuits_full(f), check_circuits_modular(f)}) {
      if (v.accepted) continue;
      const auto& w = std::get<EliminationWitness>(*v.witness);
      ASSERT_TRUE(f.contains(w.c1) && f.contains(w.c2));
      ASSERT_TRUE((w.c1 & w.c2).contains(w.e));
      ASSERT_FALSE(eliminates(f, w.c1, w.c2, w.e).has_value());
    }
  }
}

TEST(CheckCircuits, FullAcceptanceImpliesModular) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<SubsetMask> pool;
    for (int k = 0; k < 6; ++k) pool.emplace_back(1 + rng() % 63);
    std::vector<SubsetMask> fam;
    for (SubsetMask s : pool) {
      bool ok = true;
      for (SubsetMask t : fam) ok = ok && !s.subset_of(t) && !t.subset_of(s);
      if (ok) fam.push_back(s);
    }
    const auto f = CircuitFamily::make(GroundSet(6), fam);
    if (check_circuits_full(f)) EXPECT_TRUE(check_circuits_modular(f).accepted);
  }
}

TEST(Rank, Examples) {
  const auto u24 = uniform(2, 4);
  EXPECT_EQ(rank(u24, S({0, 1, 2})), 2U);
  EXPECT_EQ(rank(u24, SubsetMask{}), 0U);
  EXPECT_EQ(rank(CircuitFamily::make(GroundSet(5), {}), SubsetMask::full(5)), 5U);
  EXPECT_EQ(rank(fano(), SubsetMask::full(7)), 3U);
  expect_errc(Errc::not_a_matroid, [] { rank(path_pair(), S({0, 1, 2}), true); });
}

TEST(Rank, TableMatchesSearch) {
  for (const auto& f : all_antichains(4)) {
    const RankTable table(f);
    for (std::uint64_t s = 0; s < 16; ++s) ASSERT_EQ(table(SubsetMask(s)), rank(f, SubsetMask(s)));
  }
  const RankTable k5(graphic(complete_graph(5)));
  EXPECT_EQ(k5(SubsetMask::full(10)), 4U);
}

TEST(Rank, SubmodularOnMatroids) {
  for (const auto& f : all_antichains(4)) {
    if (!check_circuits_full(f)) continue;
    const RankTable r(f);
    for (std::uint64_t a = 0; a < 16; ++a) {
      for (std::uint64_t b = 0; b < 16; ++b) {
        ASSERT_LE(r(SubsetMask(a | b)) + r(SubsetMask(a & b)), r(SubsetMask(a)) + r(SubsetMask(b)));
      }
    }
  }
}

TEST(DualCircuits, Examples) {
  EXPECT_EQ(dual_circuits(uniform(2, 4)), uniform(2, 4));
  EXPECT_EQ(dual_circuits(uniform(1, 2)), uniform(1, 2));
  EXPECT_EQ(dual_circuits(CircuitFamily::make(GroundSet(3), {})), uniform(0, 3));
  expect_errc(Errc::not_a_matroid, [] { dual_circuits(path_pair()); });
}

TEST(DualCircuits, InvolutionAndDualRank) {
  for (Element n = 1; n <= 4; ++n) {
    for (const auto& f : all_antichains(n)) {
      if (!check_circuits_full(f)) continue;
      const auto d = dual_circuits(f);
      ASSERT_TRUE(check_circuits_full(d).accepted);
      ASSERT_EQ(dual_circuits(d), f);
      const RankTable r(f);
      const RankTable rd(d);
      const SubsetMask e = SubsetMask::full(n);
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        const SubsetMask m(s);
        ASSERT_EQ(rd(m), static_cast<std::size_t>(m.count()) - r(e) + r(e - m));
      }
    }
  }
  for (Element r = 0; r <= 6; ++r) EXPECT_EQ(dual_circuits(uniform(r, 6)), uniform(6 - r, 6));
}

TEST(IsIndependent, Basics) {
  EXPECT_TRUE(is_independent(uniform(2, 4), S({0, 1})));
  EXPECT_FALSE(is_independent(uniform(2, 4), S({0, 1, 2})));
}
