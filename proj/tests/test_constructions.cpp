#include "diagcl/constructions.hpp"
#include "diagcl/errors.hpp"

#include <doctest.h>

#include <random>

using namespace diagcl;

namespace {

PointAddr pt(const char* text) { return parse_point(text); }

ConstructionKind kind_of(const char* spec) { return realise_t1(parse_spec(spec)).kind(); }

/// Random valid address with small indices.
PointAddr random_point(std::mt19937_64& gen, const PartitionSpec& spec) {
  for (;;) {
    auto cls = gen() % 3;
    auto block = gen() % 6;
    PointAddr p;
    if (cls == 0) p = PointAddr::singleton(block);
    if (cls == 1) {
      if (spec.finite_blocks().empty()) continue;
      if (!spec.finite_block_count().covers(block)) continue;
      p = PointAddr::finite(block, gen() % spec.finite_blocks().size_of(block));
    }
    if (cls == 2) p = PointAddr::infinite(block, gen() % 6);
    if (is_valid_address(spec, p)) return p;
  }
}

} // namespace

TEST_CASE("realise_t1 dispatch") {
  CHECK(kind_of("singletons=0;fin=[];inf=3") == ConstructionKind::InfBlocks);
  CHECK(kind_of("singletons=omega;fin=[3,2];inf=1") == ConstructionKind::FinTwoCase1);
  CHECK(kind_of("singletons=2;fin=[2];inf=omega") == ConstructionKind::FinTwoCase2);
  CHECK(kind_of("singletons=0;fin=cycle[2];inf=0") == ConstructionKind::PairBlocks);
  CHECK(kind_of("singletons=omega;fin=[];inf=0") == ConstructionKind::InfOrSingleton);
  CHECK(kind_of("singletons=3;fin=[];inf=omega") == ConstructionKind::InfOrSingleton);

  auto split = realise_t1(parse_spec("singletons=1;fin=cycle[2,3];inf=2"));
  CHECK(split.kind() == ConstructionKind::SplitUnion);
  auto kids = split.children();
  REQUIRE(kids.size() == 2);
  CHECK(kids[0].kind() == ConstructionKind::ExtendPairs);
  CHECK(kids[1].kind() == ConstructionKind::InfOrSingleton);
  CHECK(realise_t1(parse_spec("singletons=0;fin=cycle[2,3];inf=0")).kind() == ConstructionKind::ExtendPairs);

  CHECK_THROWS_AS(realise_t1(parse_spec("singletons=1;fin=[2];inf=1")), NotRealisable);
  for (const char* s : {"singletons=0;fin=[2];inf=1", "singletons=4;fin=[3,3];inf=2"}) {
    CAPTURE(s);
    CHECK_THROWS_AS(realise_t1(parse_spec(s)), NotRealisable);
  }
}

TEST_CASE("realise_t0 works where realise_t1 fails") {
  auto c = realise_t0(parse_spec("singletons=1;fin=[2];inf=1"));
  CHECK(c.kind() == ConstructionKind::T0Sat);
  CHECK(!c.is_t1());
  CHECK(!separable(c, pt("f:0:0"), pt("f:0:1")));
  CHECK(separable(c, pt("f:0:0"), pt("s:0")));
  CHECK(separable(c, pt("i:0:3"), pt("f:0:1")));
  CHECK(!separable(c, pt("i:0:3"), pt("i:0:8")));

  auto singles = realise_t0(parse_spec("singletons=omega;fin=[];inf=0"));
  CHECK(separable(singles, pt("s:0"), pt("s:1")));
  auto w = witness(singles, pt("s:0"), pt("s:1"));
  REQUIRE(w);
  CHECK(std::get<SatPair>(w->open_a).point == pt("s:0"));

  auto cycle = realise_t0(parse_spec("singletons=0;fin=cycle[2];inf=0"));
  CHECK(member(cycle, SatPair{pt("f:4:1")}, pt("f:4:0")));
  CHECK(member(cycle, SatPair{pt("f:4:0")}, pt("f:4:0")));
  CHECK(!member(cycle, SatPair{pt("f:4:0")}, pt("f:4:1")));
}

TEST_CASE("separable examples") {
  auto inf = realise_t1(parse_spec("singletons=0;fin=[];inf=3"));
  CHECK(!separable(inf, pt("i:0:0"), pt("i:0:9")));
  CHECK(separable(inf, pt("i:0:0"), pt("i:1:0")));
  CHECK_THROWS_AS(separable(inf, pt("i:3:0"), pt("i:0:0")), InvalidAddress);
  CHECK_THROWS_AS(separable(inf, pt("s:0"), pt("i:0:0")), InvalidAddress);

  auto ex = subbasis_example(default_designated_sets());
  CHECK(!separable(ex, omega_point(2), omega_point(3)));
  CHECK(!separable(ex, omega_point(3), omega_point(4)));
  CHECK(separable(ex, omega_point(2), omega_point(4)));
  CHECK(separable(ex, omega_point(1), omega_point(5)));
  CHECK(!separable(ex, omega_point(1), omega_point(4)));

  auto empty = subbasis_example({});
  for (std::uint64_t a = 0; a < 6; ++a)
    for (std::uint64_t b = 0; b < 6; ++b) CHECK(!separable(empty, omega_point(a), omega_point(b)));
}

TEST_CASE("witness examples") {
  auto c1 = realise_t1(parse_spec("singletons=omega;fin=[3,2];inf=1"));
  auto w = witness(c1, pt("f:0:0"), pt("s:0"));
  REQUIRE(w);
  CHECK(*w == Certificate{FinPt1{0, 0, {0}}, SingletonPt{pt("s:0")}});
  CHECK(check_certificate(c1, pt("f:0:0"), pt("s:0"), *w));
  CHECK(w->to_string() == "FinPt1(f:0:0,excl=[s:0])\nSingletonPt(s:0)");

  // Blocks 0 and 2 of a pair-block spec map to (0, 0) and (0, 1).
  auto pairs = realise_t1(parse_spec("singletons=0;fin=cycle[2];inf=0"));
  CHECK(pair_encode(0) == std::pair<std::uint64_t, Rational>{0, Rational(0)});
  CHECK(pair_encode(2) == std::pair<std::uint64_t, Rational>{0, Rational(1)});
  auto b = witness(pairs, pt("f:0:0"), pt("f:2:1"));
  REQUIRE(b);
  const auto& ba = std::get<Ball>(b->open_a).ball;
  const auto& bb = std::get<Ball>(b->open_b).ball;
  CHECK(ba.x_index() == 0);
  CHECK(bb.x_index() == 0);
  CHECK(ba.center() == Rational(0));
  CHECK(bb.center() == Rational(1));
  CHECK(ba.radius() == Rational(1, 2));
  CHECK(bb.radius() == Rational(1, 2));
  CHECK(check_certificate(pairs, pt("f:0:0"), pt("f:2:1"), *b));

  for (const char* s : {"singletons=0;fin=[];inf=3", "singletons=omega;fin=[3,2];inf=1", "singletons=2;fin=[2];inf=omega"}) {
    auto c = realise_t1(parse_spec(s));
    CHECK(!witness(c, pt("i:0:1"), pt("i:0:2")));
    CHECK(!witness(c, pt("i:0:1"), pt("i:0:1")));
  }
  CHECK(!witness(pairs, pt("f:3:0"), pt("f:3:1")));
}

TEST_CASE("check_certificate rejects tampering") {
  auto pairs = realise_t1(parse_spec("singletons=0;fin=cycle[2];inf=0"));
  auto p = pt("f:0:0"), q = pt("f:2:0");
  auto cert = *witness(pairs, p, q);
  CHECK(!check_certificate(pairs, q, p, cert));
  Certificate swapped{cert.open_b, cert.open_a};
  CHECK(check_certificate(pairs, q, p, swapped));
  Certificate overlapping{Ball{RationalBall(0, Rational(0), Rational(1))}, Ball{RationalBall(0, Rational(1), Rational(1))}};
  CHECK(!check_certificate(pairs, p, q, overlapping));

  auto inf = realise_t1(parse_spec("singletons=0;fin=[];inf=3"));
  Certificate foreign{SatPair{pt("i:0:0")}, SatPair{pt("i:1:0")}};
  CHECK_THROWS_AS(check_certificate(inf, pt("i:0:0"), pt("i:1:0"), foreign), ForeignVariant);
}

TEST_CASE("t1 witnesses") {
  auto inf = realise_t1(parse_spec("singletons=0;fin=[];inf=3"));
  auto o = t1_witness(inf, pt("i:0:0"), pt("i:0:1"));
  CHECK(o == BasicOpen{CofInBlock{{PointClass::InfiniteBlock, 0}, {1}}});
  CHECK(member(inf, o, pt("i:0:0")));
  CHECK(!member(inf, o, pt("i:0:1")));

  auto c1 = realise_t1(parse_spec("singletons=omega;fin=[3,2];inf=1"));
  auto f = t1_witness(c1, pt("f:0:0"), pt("f:0:1"));
  CHECK(f == BasicOpen{FinPt1{0, 0, {}}});
  CHECK(!member(c1, f, pt("f:0:1")));

  auto t0 = realise_t0(parse_spec("singletons=1;fin=[2];inf=1"));
  CHECK_THROWS_AS(t1_witness(t0, pt("f:0:0"), pt("f:0:1")), NotT1Construction);
  auto tau = realise_tau_r(parse_spec("singletons=1;fin=[2];inf=1"));
  CHECK_THROWS_AS(t1_witness(tau, pt("f:0:0"), pt("s:0")), NotT1Construction);
}

TEST_CASE("t1 witnesses contain p and miss q on sampled pairs") {
  std::mt19937_64 gen(17);
  for (const char* s : {"singletons=0;fin=[];inf=3", "singletons=omega;fin=[];inf=2", "singletons=omega;fin=[3,2];inf=1",
                        "singletons=2;fin=[2];inf=omega", "singletons=0;fin=cycle[2];inf=0",
                        "singletons=1;fin=cycle[2,3];inf=2"}) {
    CAPTURE(s);
    auto spec = parse_spec(s);
    auto c = realise_t1(spec);
    for (int i = 0; i < 300; ++i) {
      auto p = random_point(gen, spec), q = random_point(gen, spec);
      if (p == q) continue;
      auto o = t1_witness(c, p, q);
      CHECK(member(c, o, p));
      CHECK(!member(c, o, q));
    }
  }
}

TEST_CASE("separability matches the relation on sampled pairs") {
  std::mt19937_64 gen(23);
  for (const char* s : {"singletons=0;fin=[];inf=3", "singletons=omega;fin=[3,2];inf=1", "singletons=2;fin=[2];inf=omega",
                        "singletons=0;fin=cycle[2];inf=0", "singletons=1;fin=cycle[2,3];inf=2"}) {
    CAPTURE(s);
    auto spec = parse_spec(s);
    for (const auto& c : {realise_t1(spec), realise_t0(spec), realise_tau_r(spec)}) {
      for (int i = 0; i < 300; ++i) {
        auto p = random_point(gen, spec), q = random_point(gen, spec);
        if (p == q) continue;
        auto w = witness(c, p, q);
        CHECK(w.has_value() == !same_block(spec, p, q));
        CHECK(separable(c, p, q) == w.has_value());
        if (w) CHECK(check_certificate(c, p, q, *w));
      }
    }
  }
}

TEST_CASE("membership and disjointness rules") {
  auto inf = realise_t1(parse_spec("singletons=0;fin=[];inf=3"));
  CofInBlock b0{{PointClass::InfiniteBlock, 0}, {4}};
  CHECK(!member(inf, b0, pt("i:0:4")));
  CHECK(member(inf, b0, pt("i:0:5")));
  CHECK(!disjoint(inf, b0, CofInBlock{{PointClass::InfiniteBlock, 0}, {5, 6}}));
  CHECK(disjoint(inf, b0, CofInBlock{{PointClass::InfiniteBlock, 1}, {}}));

  auto c1 = realise_t1(parse_spec("singletons=omega;fin=[3,2];inf=1"));
  CHECK(disjoint(c1, FinPt1{0, 1, {2}}, CofInBlock{{PointClass::InfiniteBlock, 0}, {}}));
  CHECK(!disjoint(c1, FinPt1{0, 1, {}}, FinPt1{0, 2, {4}}));
  CHECK(disjoint(c1, FinPt1{0, 1, {}}, FinPt1{1, 0, {}}));
  // S_0 holds the even singletons when there are two finite blocks.
  CHECK(member(c1, FinPt1{0, 1, {}}, pt("s:4")));
  CHECK(!member(c1, FinPt1{0, 1, {}}, pt("s:5")));
  CHECK(!member(c1, FinPt1{0, 1, {4}}, pt("s:4")));

  auto c2 = realise_t1(parse_spec("singletons=2;fin=[2,3];inf=omega"));
  FinPt2 f{0, 1, {2}};
  CHECK(disjoint(c2, f, CofInBlock{{PointClass::InfiniteBlock, 1}, {}}));
  CHECK(disjoint(c2, f, CofInBlock{{PointClass::InfiniteBlock, 2}, {}}));
  CHECK(!disjoint(c2, f, CofInBlock{{PointClass::InfiniteBlock, 4}, {}}));
  CHECK(member(c2, f, pt("i:4:7")));
  CHECK(!member(c2, f, pt("i:2:7")));

  auto pairs = realise_t1(parse_spec("singletons=0;fin=cycle[2];inf=0"));
  Ball near{RationalBall(0, Rational(0), Rational(1))};
  CHECK(disjoint(pairs, near, Ball{RationalBall(1, Rational(0), Rational(1))}));
  CHECK(disjoint(pairs, near, Ball{RationalBall(0, Rational(3), Rational(1))}));
  CHECK(!disjoint(pairs, near, Ball{RationalBall(0, Rational(1), Rational(1), {{Rational(1, 2), 0}})}));

  auto t0 = realise_t0(parse_spec("singletons=1;fin=[2];inf=1"));
  CHECK(!disjoint(t0, SatPair{pt("f:0:0")}, SatPair{pt("f:0:1")}));
  CHECK(disjoint(t0, SatPair{pt("f:0:1")}, SatPair{pt("i:0:1")}));

  CHECK_THROWS_AS(member(inf, SatPair{pt("i:0:0")}, pt("i:0:0")), ForeignVariant);
  CHECK_THROWS_AS(disjoint(c1, Ball{RationalBall(0, Rational(0), Rational(1))}, b0), ForeignVariant);
}

TEST_CASE("extended pair opens") {
  auto ext = realise_t1(parse_spec("singletons=0;fin=cycle[3];inf=0"));
  CHECK(ext.kind() == ConstructionKind::ExtendPairs);
  // Block 0 maps to x=0, q=0; element 0 sits at (0,0,level 0).
  RationalBall n0(0, Rational(0), Rational(1));
  ExtPt e{0, 2, n0};
  CHECK(member(ext, e, pt("f:0:2")));
  CHECK(!member(ext, e, pt("f:0:0")));
  CHECK(member(ext, e, pt("f:0:1")));
  CHECK(!disjoint(ext, e, Ball{n0}));
  CHECK(disjoint(ext, e, Ball{RationalBall(0, Rational(2), Rational(1))}));
  CHECK(!witness(ext, pt("f:0:2"), pt("f:0:0")));
  CHECK(!witness(ext, pt("f:0:2"), pt("f:0:1")));
  auto w = witness(ext, pt("f:0:2"), pt("f:2:0"));
  REQUIRE(w);
  CHECK(check_certificate(ext, pt("f:0:2"), pt("f:2:0"), *w));
}

TEST_CASE("split union keeps children apart") {
  auto split = realise_t1(parse_spec("singletons=1;fin=cycle[2,3];inf=2"));
  auto a = canonical_open(split, pt("f:0:0"));
  auto b = canonical_open(split, pt("s:0"));
  auto c = canonical_open(split, pt("i:1:4"));
  CHECK(disjoint(split, a, b));
  CHECK(disjoint(split, a, c));
  CHECK(!disjoint(split, c, CofInBlock{{PointClass::InfiniteBlock, 1}, {}}));
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    auto o1 = sample_open_containing(split, PointAddr::finite(rng.below(6), 0), rng, {});
    auto o2 = sample_open_containing(split, PointAddr::infinite(rng.below(2), rng.below(9)), rng, {});
    CHECK(disjoint(split, o1, o2));
  }
  auto w = witness(split, pt("f:1:2"), pt("i:0:0"));
  REQUIRE(w);
  CHECK(check_certificate(split, pt("f:1:2"), pt("i:0:0"), *w));
}

TEST_CASE("tau_r construction") {
  auto tau = realise_tau_r(parse_spec("singletons=1;fin=[2];inf=1"));
  CHECK(tau.kind() == ConstructionKind::TauR);
  CHECK(!tau.is_t1());
  BlockOpen b{{PointClass::FiniteBlock, 0}};
  CHECK(member(tau, b, pt("f:0:0")));
  CHECK(member(tau, b, pt("f:0:1")));
  CHECK(!member(tau, b, pt("s:0")));
  CHECK(disjoint(tau, b, BlockOpen{{PointClass::Singleton, 0}}));
  CHECK(!separable(tau, pt("f:0:0"), pt("f:0:1")));
  CHECK(separable(tau, pt("f:0:0"), pt("i:0:0")));
}

TEST_CASE("subbasis example") {
  auto ex = subbasis_example(default_designated_sets());
  CHECK(ex.kind() == ConstructionKind::SubbasisExample);
  CHECK(designated_sets(ex) == default_designated_sets());
  auto w = witness(ex, omega_point(2), omega_point(4));
  REQUIRE(w);
  CHECK(*w == Certificate{CofInD{2, {}}, CofInD{1, {}}});
  CHECK(w->to_string() == "CofInD(2,excl=[])\nCofInD(1,excl=[])");
  CHECK(!disjoint(ex, CofOmega{{1, 2}}, CofInD{1, {}}));
  CHECK(disjoint(ex, CofInD{1, {}}, CofInD{2, {7}}));
  CHECK(member(ex, CofInD{1, {}}, omega_point(7)));
  CHECK(!member(ex, CofInD{1, {7}}, omega_point(7)));
  CHECK(!member(ex, CofInD{1, {}}, omega_point(2)));
  auto t = t1_witness(ex, omega_point(3), omega_point(4));
  CHECK(member(ex, t, omega_point(3)));
  CHECK(!member(ex, t, omega_point(4)));

  CHECK_THROWS_AS(subbasis_example({{0, 2}, {2, 4}}), InvalidDesignatedSets);
  CHECK_THROWS_AS(subbasis_example({{0, 2}, {1, 2}}), InvalidDesignatedSets);
  CHECK_THROWS_AS(separable(ex, pt("i:0:0"), omega_point(1)), InvalidAddress);
}

TEST_CASE("nontransitive demo") {
  auto r = nontransitive_demo();
  CHECK(!r.total);
  REQUIRE(r.triple);
  CHECK(*r.triple == std::array<std::uint64_t, 3>{2, 3, 4});
  REQUIRE(r.certificate);
  CHECK(*r.certificate == Certificate{CofInD{2, {}}, CofInD{1, {}}});
  CHECK(r.to_string() ==
        "designated: {3n+1} {3n+2}\n"
        "triple: (2,3,4)\n"
        "(2,3) inseparable\n"
        "(3,4) inseparable\n"
        "(2,4) separable\n"
        "CofInD(2,excl=[])\n"
        "CofInD(1,excl=[])\n");

  auto empty = nontransitive_demo({});
  CHECK(empty.total);
  CHECK(!empty.triple);
  CHECK(empty.to_string() == "designated: (none)\nclosure is total, no triple exists\n");

  CHECK_THROWS_AS(nontransitive_demo({{0, 2}, {2, 4}}), InvalidDesignatedSets);

  auto other = nontransitive_demo({{0, 4}, {1, 4}});
  REQUIRE(other.triple);
  auto [x, y, z] = *other.triple;
  auto ex = subbasis_example({{0, 4}, {1, 4}});
  CHECK(!separable(ex, omega_point(x), omega_point(y)));
  CHECK(!separable(ex, omega_point(y), omega_point(z)));
  CHECK(separable(ex, omega_point(x), omega_point(z)));
}

TEST_CASE("renderings of basic opens") {
  CHECK(to_string(SingletonPt{pt("s:3")}) == "SingletonPt(s:3)");
  CHECK(to_string(CofInBlock{{PointClass::InfiniteBlock, 0}, {3, 1}}) == "CofInBlock(i:0,excl=[1,3])");
  CHECK(to_string(FinPt2{0, 1, {4}}) == "FinPt2(f:0:1,excl=[i:4])");
  CHECK(to_string(BlockOpen{{PointClass::FiniteBlock, 1}}) == "BlockOpen(f:1)");
  CHECK(variant_name(CofOmega{{}}) == "CofOmega");
}
