#include <gtest/gtest.h>

#include "mobius/mobius.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace mobius;
using fx::dims;

namespace {

using Q = RationalVectorSpaces;
using Fp = PrimeFieldVectorSpaces;
using Ab = FiniteAbelianGroups;
using Ints = std::vector<std::vector<Integer>>;

template <class Cat>
bool same(const GradedObjects<Cat>& h, const std::vector<typename Cat::Object>& expected) {
  return h == GradedObjects<Cat>{expected};
}

// Returns how many elements carry homology in positive degree.
template <class Cat>
int expect_matches_quotient(const PosetModule<Cat>& m) {
  const OrderComplex k(m.poset());
  int higher = 0;
  for (std::size_t b = 0; b < m.poset().size(); ++b) {
    const auto expected = oracle::quotient_homology(m, k.select(max_leq(m.poset(), b)), k.select(max_lt(m.poset(), b)));
    const auto ours = mobius_homology_at(m, b);
    EXPECT_EQ(ours, GradedObjects<Cat>{expected}) << "at " << m.poset().name(b);
    higher += !ours.vanishes_above(0);
  }
  return higher;
}

}  // namespace

TEST(Module, FixturesAreValid) {
  const auto m = fx::load<Fp>("fig1_M.json");
  EXPECT_EQ(m.dimension_function(),
            (std::vector<GrothElement>{GrothElement::dimension(1), GrothElement::dimension(2), GrothElement::dimension(1)}));
  const auto klein = fx::load<Ab>("klein_subgroups.json");
  GrothElement two, four;
  two.add(2, 1);
  four.add(2, 2);
  const auto d = klein.dimension_function();
  EXPECT_TRUE(d[klein.poset().index("0")].is_zero());
  EXPECT_EQ(d[klein.poset().index("s1")], two);
  EXPECT_EQ(d[klein.poset().index("top")], four);
}

TEST(Module, BrokenDiamondIsRejected) {
  auto j = io::read_json_file(fx::path("cusp.json"));
  j["maps"]["c|e"] = io::Json::array({io::Json::array({1, -1})});
  EXPECT_THROW(io::parse_module(j), FunctorialityError);
}

TEST(Module, CompositesAlongPaths) {
  const auto m = fx::load<Q>("cusp.json");
  const auto& p = m.poset();
  const auto& cat = m.category();
  const auto a = p.index("a"), c = p.index("c"), e = p.index("e");
  EXPECT_TRUE(cat.equal(m.map(a, e), cat.compose(m.map(c, e), m.map(a, c))));
  EXPECT_TRUE(cat.equal(m.map(a, a), cat.identity(m.at(a))));
}

TEST(Module, IntervalModules) {
  const Q cat;
  auto p = gen::chain(6);
  const auto i13 = interval_module(p, cat, 1, std::optional<std::size_t>(3), cat.object(1));
  for (std::size_t x = 0; x < 6; ++x) EXPECT_EQ(i13.at(x).dim, (x == 1 || x == 2) ? 1u : 0u);
  EXPECT_FALSE(cat.is_zero_morphism(i13.map(1, 2)));
  const auto up_top = upset_module(p, cat, 5, cat.object(2));
  for (std::size_t x = 0; x < 6; ++x) EXPECT_EQ(up_top.at(x).dim, x == 5 ? 2u : 0u);
  const auto up_min = upset_module(p, cat, 0, cat.object(2));
  for (std::size_t x = 0; x < 6; ++x) EXPECT_EQ(up_min.at(x).dim, 2u);
  EXPECT_THROW(interval_module(p, cat, 3, std::optional<std::size_t>(1), cat.object(1)), NotComparable);
}

TEST(Cosheaf, ChainComplexOfConstantCosheaf) {
  const Fp cat{PrimeField(2)};
  auto p = std::make_shared<const Poset>(Poset::from_covers({"b", "a", "c"}, {{"b", "a"}, {"c", "a"}}));
  const auto m = constant_module(p, cat, cat.object(1));
  const OrderCosheaf<Fp> cs(m);
  const OrderComplex k(*p);
  const auto c = chain_complex(cs, k.all());
  ASSERT_EQ(c.degrees(), 2u);
  EXPECT_EQ(c.blocks[0].size(), 3u);
  EXPECT_EQ(c.blocks[1].size(), 2u);
  EXPECT_TRUE(boundary_squares_to_zero(cat, c));
  EXPECT_EQ(cat.homology(c), dims({1, 0}));
  EXPECT_EQ(euler_characteristic(cs, k.all()), GrothElement::dimension(1));
  EXPECT_TRUE(euler_characteristic(cs, {}).is_zero());
  EXPECT_EQ(chain_complex(cs, {}).degrees(), 0u);
  const auto with_max_a = chains_with_max(*p, p->index("a"));
  EXPECT_EQ(with_max_a[0].size() + with_max_a[1].size(), 3u);
  const auto fig = fx::load<Fp>("fig1_M.json");
  EXPECT_EQ(euler_characteristic(OrderCosheaf<Fp>(fig), chains_with_max(fig.poset(), fig.poset().index("a"))),
            GrothElement::dimension(0));
}

TEST(Cosheaf, AntichainAndCoface) {
  const Q cat;
  auto p = std::make_shared<const Poset>(Poset::from_covers({"a", "b", "c", "d"}, {}));
  const auto m = constant_module(p, cat, cat.object(1));
  EXPECT_EQ(selection_homology(m, OrderComplex(*p).all()), GradedObjects<Q>{dims({4})});
  const auto fig = fx::load<Fp>("fig1_M.json");
  const OrderCosheaf<Fp> cs(fig);
  const auto b = static_cast<std::uint32_t>(fig.poset().index("b")), a = static_cast<std::uint32_t>(fig.poset().index("a"));
  EXPECT_EQ(cs.assign({b, a}), fig.at(b));
  EXPECT_TRUE(fig.category().equal(cs.coface_map({b, a}, {a}), fig.map(b, a)));
  EXPECT_TRUE(fig.category().equal(cs.coface_map({b, a}, {b}), fig.category().identity(fig.at(b))));
}

TEST(MobiusHomology, Fig1Tables) {
  const auto m = fx::load<Fp>("fig1_M.json");
  const auto n = fx::load<Fp>("fig1_N.json");
  const auto& p = m.poset();
  EXPECT_TRUE(same(mobius_homology_at(m, p.index("a")), dims({1, 1})));
  EXPECT_TRUE(same(mobius_homology_at(m, p.index("b")), dims({1})));
  EXPECT_TRUE(mobius_homology_at(n, p.index("a")).is_zero());
  const auto check = euler_identity_check(m, p.index("a"));
  EXPECT_TRUE(check.equal);
  EXPECT_TRUE(check.lhs.is_zero());
  const auto total = total_homology_check(m);
  EXPECT_TRUE(total.equal);
  EXPECT_EQ(total.lhs, GrothElement::dimension(2));
}

TEST(MobiusHomology, CuspTable) {
  const auto m = fx::load<Q>("cusp.json");
  const auto h = mobius_homology_module(m);
  const auto& p = m.poset();
  EXPECT_TRUE(same(h[p.index("a")], dims({3})));
  EXPECT_TRUE(same(h[p.index("b")], dims({1})));
  EXPECT_TRUE(same(h[p.index("c")], dims({0, 2})));
  EXPECT_TRUE(same(h[p.index("d")], dims({0, 2})));
  EXPECT_TRUE(same(h[p.index("e")], dims({0, 0, 1})));
}

TEST(MobiusHomology, SubgroupTables) {
  const Ab cat;
  const auto klein = fx::load<Ab>("klein_subgroups.json");
  EXPECT_TRUE(same(mobius_homology_at(klein, klein.poset().index("top")), {cat.zero_object(), cat.object({2})}));
  const auto z4 = fx::load<Ab>("z4_subgroups.json");
  const auto top = z4.poset().index("Z4");
  EXPECT_TRUE(same(mobius_homology_at(z4, top), {cat.object({2})}));
  const auto check = euler_identity_check(z4, top);
  GrothElement two;
  two.add(2, 1);
  EXPECT_EQ(check.lhs, two);
  EXPECT_EQ(check.rhs, two);
}

TEST(MobiusHomology, TrivialCases) {
  const Q cat;
  auto pt = std::make_shared<const Poset>(Poset::from_covers({"pt"}, {}));
  EXPECT_TRUE(same(mobius_homology_at(constant_module(pt, cat, cat.object(3)), 0), dims({3})));
  auto p = gen::chain(4);
  const auto zero = zero_module(p, cat);
  EXPECT_TRUE(total_homology_check(zero).lhs.is_zero());
  EXPECT_TRUE(total_homology_check(zero).equal);
  const auto constant = constant_module(p, cat, cat.object(1));
  EXPECT_EQ(total_homology_check(constant).rhs, GrothElement::dimension(1));
}

TEST(MobiusHomology, MatchesLiteralQuotientComplex) {
  gen::Rng rng(41);
  int higher = 0, higher_ab = 0;
  for (int t = 0; t < 25; ++t) {
    auto p = gen::poset(rng, gen::uniform(rng, 2, 6), 0.5);
    higher += expect_matches_quotient(gen::module(rng, p, Q{}, 4, 3));
    higher += expect_matches_quotient(gen::module(rng, p, Fp{PrimeField(3)}, 4, 3));
    higher_ab += expect_matches_quotient(gen::module(rng, gen::poset(rng, gen::uniform(rng, 2, 5), 0.5), Ab{}, 3, 2));
  }
  higher += expect_matches_quotient(fx::load<Q>("cusp.json"));
  higher_ab += expect_matches_quotient(fx::load<Ab>("klein_subgroups.json"));
  EXPECT_GT(higher, 5);
  EXPECT_GT(higher_ab, 1);
}

TEST(MobiusHomology, EulerIdentityOnRandomModules) {
  gen::Rng rng(42);
  for (int t = 0; t < 60; ++t) {
    auto p = gen::poset(rng, gen::uniform(rng, 2, 7), 0.5);
    const auto m = gen::module(rng, p, Q{}, 5, 3);
    for (std::size_t b = 0; b < p->size(); ++b) EXPECT_TRUE(euler_identity_check(m, b).equal);
    EXPECT_TRUE(total_homology_check(m).equal);
    const auto a = gen::module(rng, p, Ab{}, 3, 2);
    for (std::size_t b = 0; b < p->size(); ++b) EXPECT_TRUE(euler_identity_check(a, b).equal);
  }
}

TEST(MobiusHomology, ParallelMatchesSerial) {
  gen::Rng rng(43);
  auto p = gen::poset(rng, 8, 0.5);
  const auto m = gen::module(rng, p, Q{}, 5, 3);
  EXPECT_EQ(mobius_homology_module(m, 1), mobius_homology_module(m, 4));
}

TEST(MobiusHomology, Incompleteness) {
  const auto mu = fx::load<Fp>("grid_mu.json");
  const auto nu = fx::load<Fp>("grid_nu.json");
  EXPECT_EQ(mobius_homology_module(mu), mobius_homology_module(nu));
  const auto b3 = mu.poset().index("b3"), t3 = mu.poset().index("t3");
  EXPECT_FALSE(mu.category().equal(mu.map(b3, t3), nu.map(b3, t3)));
}
