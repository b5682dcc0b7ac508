#include <gtest/gtest.h>

#include "mobius/mobius.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace mobius;

namespace {

using Q = RationalVectorSpaces;
using Fp = PrimeFieldVectorSpaces;
using Ab = FiniteAbelianGroups;

std::shared_ptr<const Poset> square() {
  return std::make_shared<const Poset>(
      Poset::from_covers({"bot", "x", "y", "top"}, {{"bot", "x"}, {"bot", "y"}, {"x", "top"}, {"y", "top"}}));
}

GaloisConnection fixture_connection() {
  auto p = std::make_shared<const Poset>(io::parse_poset(io::read_json_file(fx::path("galois_source.json"))));
  auto q = std::make_shared<const Poset>(io::parse_poset(io::read_json_file(fx::path("galois_target.json"))));
  return io::parse_connection(io::read_json_file(fx::path("galois_connection.json")), p, q);
}

// H_*(f^{-1}(Q_{<=y}), f^{-1}(Q_{<y})) from the literal quotient complex.
template <class Cat>
std::vector<typename Cat::Object> relative_oracle(const GaloisConnection& c, const PosetModule<Cat>& m, std::size_t y) {
  const OrderComplex k(c.source());
  const auto& q = c.target();
  const auto& f = c.f.map;
  return oracle::quotient_homology(m, k.select(f_max_leq(q, f, y)), k.select(f_max_lt(q, f, y)));
}

}  // namespace

TEST(Galois, Validation) {
  auto p = square();
  EXPECT_NO_THROW(GaloisConnection::identity(p));
  auto c3 = gen::chain(3);
  // monotone f collapsing x, y; g the wrong way round
  const MonotoneMap f(p, c3, {0, 1, 1, 2});
  EXPECT_THROW(MonotoneMap(p, c3, {2, 1, 1, 0}), MonotonicityError);
  EXPECT_THROW(GaloisConnection(f, MonotoneMap(c3, p, {0, 0, 3})), AdjunctionError);
  EXPECT_THROW(MonotoneMap(p, c3, {0, 1}), ShapeMismatch);
  EXPECT_THROW(MonotoneMap(p, c3, {0, 1, 1, 7}), UnknownElement);
}

TEST(Galois, FixtureConnection) {
  const auto c = fixture_connection();
  EXPECT_TRUE(check_galois_properties(c).all());
  EXPECT_TRUE(chain_homotopy_check(c).all());
  const auto m = fx::load<Q>("galois_module.json");
  for (std::size_t y = 0; y < c.target().size(); ++y) {
    const auto r = rota_check(c, m, y);
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.rhs, GradedObjects<Q>{relative_oracle(c, m, y)});
  }
}

TEST(Galois, IdentityConnection) {
  gen::Rng rng(51);
  auto p = gen::poset(rng, 6, 0.5);
  const auto id = GaloisConnection::identity(p);
  EXPECT_TRUE(check_galois_properties(id).all());
  const auto h = chain_homotopy_check(id);
  EXPECT_TRUE(h.all());
  const auto m = gen::module(rng, p, Q{}, 4, 2);
  for (std::size_t y = 0; y < p->size(); ++y) EXPECT_EQ(rota_rhs(id, m, y), mobius_homology_at(m, y));
}

TEST(Galois, RandomConnections) {
  gen::Rng rng(52);
  for (int t = 0; t < 60; ++t) {
    const auto c = gen::connection(rng, 7);
    EXPECT_TRUE(check_galois_properties(c).all());
    EXPECT_TRUE(chain_homotopy_check(c).all());
  }
}

TEST(Galois, RotaMatchesRelativeHomology) {
  gen::Rng rng(53);
  for (int t = 0; t < 40; ++t) {
    const auto c = gen::connection(rng, 6);
    const auto mq = gen::module(rng, c.f.source, Q{}, 3, 2);
    const auto ma = gen::module(rng, c.f.source, Ab{}, 2, 2);
    for (std::size_t y = 0; y < c.target().size(); ++y) {
      const auto r = rota_check(c, mq, y);
      EXPECT_TRUE(r.equal);
      EXPECT_EQ(r.rhs, GradedObjects<Q>{relative_oracle(c, mq, y)});
      EXPECT_TRUE(rota_check(c, ma, y).equal);
      EXPECT_EQ(rota_rhs(c, ma, y), GradedObjects<Ab>{relative_oracle(c, ma, y)});
    }
  }
}

TEST(Galois, RefinementVanishesOffImage) {
  // Q refines P: f injective, so g o f = id and points outside f(P) see 0
  gen::Rng rng(54);
  auto p = gen::chain(3);
  auto q = gen::chain(5);
  const GaloisConnection c(MonotoneMap(p, q, {0, 2, 4}), MonotoneMap(q, p, {0, 0, 1, 1, 2}));
  const auto m = gen::module(rng, p, Q{}, 3, 2);
  for (std::size_t y : {1u, 3u}) {
    const auto r = rota_check(c, m, y);
    EXPECT_TRUE(r.lhs.is_zero());
    EXPECT_TRUE(r.rhs.is_zero());
  }
}

TEST(Galois, ModuleOnWrongPoset) {
  auto p = square();
  const auto m = constant_module(gen::chain(4), Q{}, Q{}.object(1));
  EXPECT_THROW(rota_rhs(GaloisConnection::identity(p), m, 0), ValidationError);
}

TEST(Lattice, MeetsJoinsAndDistributivity) {
  auto sq = square();
  const Lattice l(sq);
  EXPECT_EQ(l.meet(sq->index("x"), sq->index("y")), sq->index("bot"));
  EXPECT_EQ(l.join(sq->index("x"), sq->index("y")), sq->index("top"));
  EXPECT_TRUE(l.distributive());
  auto n5 = std::make_shared<const Poset>(
      Poset::from_covers({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}}));
  const Lattice pentagon(n5);
  EXPECT_FALSE(pentagon.distributive());
  EXPECT_THROW(depth_bound_check(pentagon, constant_module(n5, Q{}, Q{}.object(1)), 4), NotDistributive);
  auto fig1 = std::make_shared<const Poset>(Poset::from_covers({"b", "a", "c"}, {{"b", "a"}, {"c", "a"}}));
  EXPECT_THROW(Lattice{fig1}, NotALattice);
}

TEST(Lattice, MeetGeneratedSublattice) {
  auto sq = square();
  const Lattice l(sq);
  EXPECT_EQ(meet_generated_sublattice(l, sq->index("top")).sub->size(), 4u);
  EXPECT_EQ(meet_generated_sublattice(l, sq->index("x")).sub->size(), 2u);
  // interval [b,d) of a chain covers [b',d) and [b,d'): the sublattice is a square
  auto chain = gen::chain(4);
  auto ip = std::make_shared<const IntervalPoset>(chain);
  const Lattice il(ip->poset_ptr());
  const auto s = meet_generated_sublattice(il, ip->index(1, 3));
  EXPECT_EQ(s.sub->size(), 4u);
  EXPECT_TRUE(check_galois_properties(s.connection).all());
}

TEST(Lattice, DepthBound) {
  gen::Rng rng(55);
  auto sq = square();
  const Lattice l(sq);
  for (int t = 0; t < 20; ++t) {
    const auto m = gen::module(rng, sq, Q{}, 4, 3);
    const auto r = depth_bound_check(l, m, sq->index("top"));
    EXPECT_EQ(r.covers, 2u);
    EXPECT_TRUE(r.ok);
    auto c = gen::chain(gen::uniform(rng, 1, 5));
    const Lattice lc(c);
    const auto mc = gen::module(rng, c, Q{}, 3, 3);
    for (std::size_t b = 0; b < c->size(); ++b) {
      const auto rc = depth_bound_check(lc, mc, b);
      EXPECT_LE(rc.covers, 1u);
      EXPECT_TRUE(rc.homology.vanishes_above(1));
    }
  }
  auto pt = gen::chain(1);
  const auto r = depth_bound_check(Lattice(pt), constant_module(pt, Q{}, Q{}.object(2)), 0);
  EXPECT_EQ(r.covers, 0u);
  EXPECT_TRUE(r.ok);
}
