// Constructions on countably many finite blocks. Elements 0 and 1 of block j
// are sent to (x, q, 0) and (x, q, 1) where (x, q) = pair_encode(j); opens
// on those points are rational balls. Further elements of a block attach to
// a ball around the block's image with the image of element 0 removed.

#include "model.hpp"

#include <algorithm>

namespace diagcl::detail {

namespace {

class PairsModel final : public Model {
public:
  PairsModel(ConstructionKind kind, const PartitionSpec& spec, Fault fault) : Model(kind, spec, fault) {}

  std::vector<Fault> applicable_faults() const override {
    if (extend()) return {Fault::SwappedRepresentatives, Fault::OffByOneExclusion};
    return {Fault::OffByOneExclusion};
  }

  bool accepts(const PointAddr& p) const override {
    return p.cls == PointClass::FiniteBlock && is_valid_address(spec(), p);
  }

  bool owns(const BasicOpen& o) const override {
    return std::holds_alternative<Ball>(o) || (extend() && std::holds_alternative<ExtPt>(o));
  }

  void check_parameters(const BasicOpen& o) const override {
    auto* e = std::get_if<ExtPt>(&o);
    if (!e) return;
    auto p = PointAddr::finite(e->block, e->element);
    if (!accepts(p) || e->element < 2 || !ball_member(e->ball, image(e->block, 0)))
      throw InvalidAddress(to_string(o) + " is not a basic open of " + describe());
  }

  bool member(const BasicOpen& o, const PointAddr& p) const override {
    if (auto* b = std::get_if<Ball>(&o)) return is_w(p) && ball_member(b->ball, image(p));
    const auto& e = std::get<ExtPt>(o);
    if (p == PointAddr::finite(e.block, e.element)) return true;
    return is_w(p) && !(p.block == e.block && p.element == 0) && ball_member(e.ball, image(p));
  }

  bool disjoint(const BasicOpen& a, const BasicOpen& b) const override {
    // Overlapping rational intervals share infinitely many points, so
    // finitely many exclusions never matter.
    if (!ball_disjoint(ball_of(a), ball_of(b))) return false;
    auto* ea = std::get_if<ExtPt>(&a);
    auto* eb = std::get_if<ExtPt>(&b);
    return !(ea && eb && ea->block == eb->block && ea->element == eb->element);
  }

  bool contains(const BasicOpen& outer, const BasicOpen& inner) const override {
    auto* ei = std::get_if<ExtPt>(&inner);
    auto* eo = std::get_if<ExtPt>(&outer);
    if (ei) {
      if (!eo || eo->block != ei->block || eo->element != ei->element) return false;
      return ball_subset(w_part(*ei), w_part(*eo));
    }
    const auto& bi = std::get<Ball>(inner).ball;
    return ball_subset(bi, eo ? w_part(*eo) : std::get<Ball>(outer).ball);
  }

  std::optional<Certificate> candidate(const PointAddr& p, const PointAddr& q) const override {
    if (same_block(spec(), p, q)) return std::nullopt;
    auto [xp, qp] = pair_encode(p.block);
    auto [xq, qq] = pair_encode(q.block);
    Rational radius = xp != xq ? Rational(1) : abs(qp - qq) / Rational(2);
    return Certificate{open_around(p, radius), open_around(q, radius)};
  }

  BasicOpen t1_open(const PointAddr& p, const PointAddr& q) const override {
    BasicOpen o = open_around(p, Rational(1));
    if (!is_w(q)) return o;
    // A W point under p's open has to be cut out, except element 0 of p's
    // own block when p extends it: that one is never in an ExtPt.
    if (!is_w(p) && q.block == p.block && q.element == builder_r1()) return o;
    auto img = image(q);
    unsigned level = faulty(Fault::OffByOneExclusion) ? 1 - img.level : img.level;
    auto& ball = is_w(p) ? std::get<Ball>(o).ball : std::get<ExtPt>(o).ball;
    if (ball.x_index() == img.x) ball = ball.excluding(LeveledRational{img.q, level});
    return o;
  }

  BasicOpen canonical_open(const PointAddr& p) const override { return open_around(p, Rational(1)); }

  BasicOpen refine(const BasicOpen& a, const BasicOpen& b, const PointAddr& p) const override {
    auto anchor = pair_encode(p.block);
    const std::uint64_t x = anchor.first;
    const Rational& c = anchor.second;
    Rational radius = room(ball_of(a), c);
    if (Rational r = room(ball_of(b), c); r < radius) radius = r;
    RationalBall probe(x, c, radius);
    std::set<LeveledRational> excl;
    auto collect = [&](const BasicOpen& o) {
      for (const auto& e : ball_of(o).excluded())
        if (probe.interval_contains(e.q)) excl.insert(e);
      if (auto* e = std::get_if<ExtPt>(&o); e && is_w(p)) {
        auto r1 = image(e->block, 0);
        if (r1.x == x && probe.interval_contains(r1.q)) excl.insert(LeveledRational{r1.q, 0});
      }
    };
    collect(a);
    collect(b);
    RationalBall ball(x, c, radius, std::move(excl));
    if (is_w(p)) return Ball{std::move(ball)};
    return ExtPt{p.block, p.element, std::move(ball)};
  }

  BasicOpen sample_open(const PointAddr& p, Rng& rng, const SampleBounds& bounds) const override {
    auto [x, c] = pair_encode(p.block);
    if (!is_w(p)) return ExtPt{p.block, p.element, random_ball(rng, x, c, Rational(0), {{c, 0}})};
    LeveledRational self{c, static_cast<unsigned>(p.element)};
    if (extend() && rng.below(3) == 0) {
      // An ExtPt of another block with the same x whose ball reaches p.
      std::uint64_t own = rational_index(c);
      for (int attempt = 0; attempt < 8; ++attempt) {
        std::uint64_t idx = rng.between(0, 2 * bounds.max_block);
        if (idx == own) continue;
        std::uint64_t j = cantor_pair(x, idx);
        std::uint64_t size = spec().finite_blocks().size_of(j);
        if (size < 3) continue;
        Rational qj = rational_at(idx);
        RationalBall ball = random_ball(rng, x, qj, abs(qj - c), {self, {qj, 0}});
        return ExtPt{j, rng.between(2, size - 1), std::move(ball)};
      }
    }
    return Ball{random_ball(rng, x, c, Rational(0), {self})};
  }

private:
  bool extend() const { return kind() == ConstructionKind::ExtendPairs; }
  static bool is_w(const PointAddr& p) { return p.element <= 1; }
  /// Element the builders treat as r1 of each block.
  std::uint64_t builder_r1() const { return faulty(Fault::SwappedRepresentatives) ? 1 : 0; }

  static BallPoint image(std::uint64_t block, std::uint64_t element) {
    auto [x, q] = pair_encode(block);
    return BallPoint{x, std::move(q), static_cast<unsigned>(element)};
  }
  static BallPoint image(const PointAddr& p) { return image(p.block, p.element); }

  static const RationalBall& ball_of(const BasicOpen& o) {
    if (auto* b = std::get_if<Ball>(&o)) return b->ball;
    return std::get<ExtPt>(o).ball;
  }

  /// The W points of an ExtPt as a ball.
  static RationalBall w_part(const ExtPt& e) {
    auto r1 = image(e.block, 0);
    return e.ball.excluding(LeveledRational{r1.q, 0});
  }

  /// Largest radius around c that stays inside b's interval.
  static Rational room(const RationalBall& b, const Rational& c) { return b.radius() - abs(c - b.center()); }

  BasicOpen open_around(const PointAddr& p, const Rational& radius) const {
    auto [x, c] = pair_encode(p.block);
    RationalBall ball(x, c, radius);
    if (is_w(p)) return Ball{std::move(ball)};
    return ExtPt{p.block, p.element, std::move(ball)};
  }

  /// Ball on row x around a random centre within reach of c, of radius above
  /// `reach` plus a random margin, with a few random exclusions avoiding keep.
  static RationalBall random_ball(Rng& rng, std::uint64_t x, const Rational& c, const Rational& reach,
                                  const std::vector<LeveledRational>& keep) {
    auto frac = [&](std::uint64_t den) {
      // Uniform-ish rational in (-1, 1) with denominator den.
      auto num = static_cast<std::int64_t>(rng.below(2 * den - 1)) - static_cast<std::int64_t>(den - 1);
      return Rational(BigInt(num), BigInt(den));
    };
    Rational margin(BigInt(1 + rng.below(16)), BigInt(1 + rng.below(8)));
    Rational center = c + margin * frac(1 + rng.below(8));
    Rational radius = reach + margin;
    if (reach.sign() > 0) center = c;
    std::set<LeveledRational> excl;
    auto count = rng.below(3);
    for (std::uint64_t i = 0; i < count; ++i) {
      LeveledRational e{center + radius * frac(1 + rng.below(8)), static_cast<unsigned>(rng.below(2))};
      if (std::ranges::find(keep, e) == keep.end()) excl.insert(std::move(e));
    }
    return RationalBall(x, std::move(center), std::move(radius), std::move(excl));
  }
};

} // namespace

std::shared_ptr<const Model> make_pairs_model(ConstructionKind kind, const PartitionSpec& spec, Fault fault) {
  return std::make_shared<PairsModel>(kind, spec, fault);
}

} // namespace diagcl::detail
