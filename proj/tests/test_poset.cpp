#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "mobius/mobius.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace mobius;

namespace {

Poset fig1() { return Poset::from_covers({"b", "a", "c"}, {{"b", "a"}, {"c", "a"}}); }
Poset square() { return Poset::from_covers({"bot", "x", "y", "top"}, {{"bot", "x"}, {"bot", "y"}, {"x", "top"}, {"y", "top"}}); }

std::set<Simplex> flatten(const Selection& s) {
  std::set<Simplex> out;
  for (const auto& layer : s) out.insert(layer.begin(), layer.end());
  return out;
}

}  // namespace

TEST(Poset, Construction) {
  const auto one = Poset::from_covers({"a"}, {});
  EXPECT_EQ(one.size(), 1u);
  EXPECT_TRUE(one.leq(0, 0));
  const auto p = fig1();
  const auto b = p.index("b"), a = p.index("a"), c = p.index("c");
  EXPECT_TRUE(p.leq(b, a));
  EXPECT_TRUE(p.leq(c, a));
  EXPECT_FALSE(p.comparable(b, c));
  EXPECT_EQ(p.maximum(), a);
  EXPECT_FALSE(p.minimum());
}

TEST(Poset, TransitiveReduction) {
  const auto p = Poset::from_covers({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}, {"x", "z"}});
  EXPECT_EQ(p.covers().size(), 2u);
  EXPECT_FALSE(p.covers_pair(p.index("x"), p.index("z")));
  EXPECT_TRUE(p.lt(p.index("x"), p.index("z")));
}

TEST(Poset, Errors) {
  EXPECT_THROW(Poset::from_covers({"a", "b"}, {{"a", "b"}, {"b", "a"}}), CycleError);
  EXPECT_THROW(Poset::from_covers({"a", "b"}, {{"a", "c"}}), UnknownElement);
  EXPECT_THROW(fig1().index("zz"), UnknownElement);
}

TEST(Poset, LinearExtensionRespectsOrder) {
  gen::Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    const auto p = gen::poset(rng, gen::uniform(rng, 1, 9), 0.4);
    const auto& order = p->linear_extension();
    std::vector<std::size_t> pos(p->size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (std::size_t a = 0; a < p->size(); ++a)
      for (std::size_t b = 0; b < p->size(); ++b)
        if (p->lt(a, b)) EXPECT_LT(pos[a], pos[b]);
    // covers are exactly the relations with nothing strictly between
    for (std::size_t a = 0; a < p->size(); ++a)
      for (std::size_t b = 0; b < p->size(); ++b) {
        bool between = false;
        for (std::size_t z = 0; z < p->size(); ++z) between = between || (p->lt(a, z) && p->lt(z, b));
        EXPECT_EQ(p->covers_pair(a, b), p->lt(a, b) && !between);
      }
  }
}

TEST(Incidence, MobiusExamples) {
  const auto two = Poset::chain({"0", "1"});
  const auto mu2 = mobius_function(two);
  EXPECT_EQ(mu2.at(0, 0), 1);
  EXPECT_EQ(mu2.at(0, 1), -1);
  const auto sq = square();
  EXPECT_EQ(mobius_function(sq).at(sq.index("bot"), sq.index("top")), 1);
  const auto p = fig1();
  const auto mu = mobius_function(p);
  EXPECT_EQ(mu.at(p.index("b"), p.index("a")), -1);
  EXPECT_EQ(mu.at(p.index("b"), p.index("b")), 1);
}

TEST(Incidence, Convolution) {
  const auto two = Poset::chain({"0", "1"});
  const auto zz = convolve(two, zeta_function(two), zeta_function(two));
  EXPECT_EQ(zz.at(0, 0), 1);
  EXPECT_EQ(zz.at(0, 1), 2);
  gen::Rng rng(32);
  for (int t = 0; t < 30; ++t) {
    const auto p = gen::poset(rng, gen::uniform(rng, 1, 8), 0.5);
    const auto z = zeta_function(*p);
    EXPECT_EQ(convolve(*p, z, mobius_function(*p)), delta_function(*p));
    EXPECT_EQ(convolve(*p, delta_function(*p), z), z);
  }
}

TEST(Incidence, MobiusMatchesOracles) {
  gen::Rng rng(33);
  for (int t = 0; t < 40; ++t) {
    const auto p = gen::poset(rng, gen::uniform(rng, 1, 9), 0.45);
    const auto mu = mobius_function(*p);
    const auto inv = oracle::zeta_inverse(*p);
    for (std::size_t a = 0; a < p->size(); ++a)
      for (std::size_t b = 0; b < p->size(); ++b) {
        EXPECT_EQ(p->leq(a, b) ? mu.at(a, b) : 0, inv[a][b]);
        if (!p->leq(a, b)) continue;
        EXPECT_EQ(mu.at(a, b), oracle::chain_mobius(*p, a, b));
        auto counts = oracle::chain_counts(*p, a, b);
        while (counts.size() > 1 && counts.back() == 0) counts.pop_back();
        EXPECT_EQ(hall_chain_counts(*p, a, b), counts);
      }
  }
}

TEST(Incidence, HallCounts) {
  EXPECT_EQ(hall_chain_counts(fig1(), 0, 0), std::vector<std::int64_t>{1});
  const auto sq = square();
  EXPECT_EQ(hall_chain_counts(sq, sq.index("bot"), sq.index("top")), (std::vector<std::int64_t>{0, 1, 2}));
  const auto c3 = Poset::chain({"x", "y", "z"});
  EXPECT_EQ(hall_chain_counts(c3, 0, 2), (std::vector<std::int64_t>{0, 1, 1}));
  EXPECT_THROW(hall_chain_counts(fig1(), 0, 2), NotComparable);
}

TEST(Incidence, Inversion) {
  const auto p = fig1();
  std::vector<GrothElement> m{GrothElement::dimension(1), GrothElement::dimension(2), GrothElement::dimension(1)};
  const auto dm = mobius_inversion(p, m);
  EXPECT_EQ(dm[p.index("b")], GrothElement::dimension(1));
  EXPECT_EQ(dm[p.index("a")], GrothElement::dimension(0));
  EXPECT_EQ(dm[p.index("c")], GrothElement::dimension(1));
  const auto one = Poset::from_covers({"pt"}, {});
  GrothElement g;
  g.add(3, 2);
  EXPECT_EQ(mobius_inversion(one, {g})[0], g);
  EXPECT_THROW(mobius_inversion(p, {g}), ShapeMismatch);

  gen::Rng rng(34);
  for (int t = 0; t < 30; ++t) {
    const auto q = gen::poset(rng, gen::uniform(rng, 1, 8), 0.5);
    std::vector<GrothElement> f(q->size());
    for (auto& v : f) {
      v.add(GrothElement::kDimension, static_cast<std::int64_t>(gen::uniform(rng, 0, 6)) - 3);
      v.add(2, static_cast<std::int64_t>(gen::uniform(rng, 0, 4)));
    }
    EXPECT_EQ(down_set_sums(*q, mobius_inversion(*q, f)), f);
  }
}

TEST(OrderComplex, Examples) {
  const auto p = fig1();
  const OrderComplex k(p);
  EXPECT_EQ(k.dimension_count(), 2u);
  EXPECT_EQ(k.simplices(0).size(), 3u);
  EXPECT_EQ(k.simplices(1).size(), 2u);
  EXPECT_GE(k.find({static_cast<std::uint32_t>(p.index("b")), static_cast<std::uint32_t>(p.index("a"))}), 0);
  const auto c3 = Poset::chain({"x", "y", "z"});
  const OrderComplex kc(c3);
  EXPECT_EQ(kc.simplices(0).size(), 3u);
  EXPECT_EQ(kc.simplices(1).size(), 3u);
  EXPECT_EQ(kc.simplices(2).size(), 1u);
  const auto anti = Poset::from_covers({"a", "b", "c", "d"}, {});
  EXPECT_EQ(OrderComplex(anti).dimension_count(), 1u);
  EXPECT_EQ(OrderComplex(anti).size(), 4u);
}

TEST(OrderComplex, MatchesBruteForceChains) {
  gen::Rng rng(35);
  for (int t = 0; t < 30; ++t) {
    const auto p = gen::poset(rng, gen::uniform(rng, 1, 8), 0.5);
    const OrderComplex k(*p);
    EXPECT_EQ(flatten(k.all()), flatten(oracle::all_chains(*p)));
    for (std::size_t b = 0; b < p->size(); ++b) EXPECT_EQ(flatten(chains_with_max(*p, b)), flatten(k.select(max_eq(b))));
  }
}

TEST(OrderComplex, SignedFaces) {
  const auto edge = signed_faces({0, 1});
  ASSERT_EQ(edge.size(), 2u);
  EXPECT_EQ(edge[0], (std::pair<Simplex, int>{{1}, 1}));
  EXPECT_EQ(edge[1], (std::pair<Simplex, int>{{0}, -1}));
  const auto tri = signed_faces({0, 1, 2});
  EXPECT_EQ(tri[0].second, 1);
  EXPECT_EQ(tri[1].second, -1);
  EXPECT_EQ(tri[2].second, 1);
  // boundary of boundary vanishes
  std::map<Simplex, int> total;
  for (const auto& [f, s] : signed_faces({0, 1, 2, 3}))
    for (const auto& [g, t] : signed_faces(f)) total[g] += s * t;
  for (const auto& [g, v] : total) EXPECT_EQ(v, 0);
}

TEST(OrderComplex, Selectors) {
  const auto p = fig1();
  const OrderComplex k(p);
  const auto a = p.index("a"), b = p.index("b"), c = p.index("c");
  EXPECT_EQ(flatten(k.select(max_leq(p, a))).size(), 5u);
  EXPECT_EQ(flatten(k.select(max_lt(p, a))),
            (std::set<Simplex>{{static_cast<std::uint32_t>(b)}, {static_cast<std::uint32_t>(c)}}));
  EXPECT_EQ(flatten(k.select(max_leq(p, b))), (std::set<Simplex>{{static_cast<std::uint32_t>(b)}}));
  const std::vector<std::size_t> id{0, 1, 2};
  EXPECT_EQ(flatten(k.select(f_max_leq(p, id, b))), flatten(k.select(max_leq(p, b))));
  EXPECT_NO_THROW(k.check_relative(k.select(max_eq(a))));
  EXPECT_THROW(k.check_relative(k.select(max_eq(b))), NotRelativePair);
}

TEST(OrderComplex, SizeLimit) {
  const auto p = Poset::chain(gen::names(12));
  EXPECT_THROW(OrderComplex(p, 100), SizeLimit);
  EXPECT_THROW(chains_with_max(p, 11, 100), SizeLimit);
}
