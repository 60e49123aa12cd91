// Constructions whose basic opens are singletons, cofinite parts of
// infinite blocks and, when finitely many finite blocks exist, opens that
// glue each finite-block point to an infinite reservoir indexed by the
// block's residue class.

#include "model.hpp"

#include <algorithm>
#include <limits>

namespace diagcl::detail {

namespace {

constexpr std::uint64_t no_keep = std::numeric_limits<std::uint64_t>::max();

class BlocksModel final : public Model {
public:
  BlocksModel(ConstructionKind kind, const PartitionSpec& spec, Fault fault, bool restricted)
      : Model(kind, spec, fault), restricted_(restricted) {
    if (kind == ConstructionKind::FinTwoCase1 || kind == ConstructionKind::FinTwoCase2)
      m_ = spec.finite_blocks().sizes.size();
  }

  std::vector<Fault> applicable_faults() const override {
    if (m_ == 0) return {Fault::OffByOneExclusion};
    return {Fault::WrongResidue, Fault::OffByOneExclusion};
  }

  bool accepts(const PointAddr& p) const override {
    return (!restricted_ || p.cls != PointClass::FiniteBlock) && is_valid_address(spec(), p);
  }

  bool owns(const BasicOpen& o) const override {
    if (std::holds_alternative<SingletonPt>(o) || std::holds_alternative<CofInBlock>(o)) return true;
    if (std::holds_alternative<FinPt1>(o)) return case1();
    if (std::holds_alternative<FinPt2>(o)) return case2();
    return false;
  }

  void check_parameters(const BasicOpen& o) const override {
    auto bad = [&] { throw InvalidAddress(to_string(o) + " is not a basic open of " + describe()); };
    if (auto* s = std::get_if<SingletonPt>(&o)) {
      if (s->point.cls != PointClass::Singleton || !accepts(s->point)) bad();
    } else if (auto* c = std::get_if<CofInBlock>(&o)) {
      if (c->block.cls != PointClass::InfiniteBlock || !spec().infinite_block_count().covers(c->block.index)) bad();
    } else {
      auto [block, element] = finite_target(o);
      if (block >= m_ || element >= spec().finite_blocks().size_of(block)) bad();
    }
  }

  bool member(const BasicOpen& o, const PointAddr& p) const override {
    if (auto* s = std::get_if<SingletonPt>(&o)) return s->point == p;
    if (auto* c = std::get_if<CofInBlock>(&o))
      return p.cls == PointClass::InfiniteBlock && p.block == c->block.index && !c->excluded.contains(p.element);
    if (auto* f = std::get_if<FinPt1>(&o)) {
      if (p == PointAddr::finite(f->block, f->element)) return true;
      return p.cls == PointClass::Singleton && in_reservoir(p.block, f->block) && !f->excluded.contains(p.block);
    }
    const auto& f = std::get<FinPt2>(o);
    if (p == PointAddr::finite(f.block, f.element)) return true;
    return p.cls == PointClass::InfiniteBlock && in_reservoir(p.block, f.block) && !f.excluded_blocks.contains(p.block);
  }

  bool disjoint(const BasicOpen& a, const BasicOpen& b) const override {
    if (a.index() > b.index()) return disjoint(b, a);
    if (auto* s = std::get_if<SingletonPt>(&a)) return !member(b, s->point);
    if (auto* c = std::get_if<CofInBlock>(&a)) {
      if (auto* c2 = std::get_if<CofInBlock>(&b)) return c->block != c2->block;
      if (auto* f = std::get_if<FinPt2>(&b))
        return !in_reservoir(c->block.index, f->block) || f->excluded_blocks.contains(c->block.index);
      return true;
    }
    // Two reservoir opens: the same block shares a cofinite reservoir,
    // different blocks have disjoint reservoirs and distinct points.
    return finite_target(a).first != finite_target(b).first;
  }

  bool contains(const BasicOpen& outer, const BasicOpen& inner) const override {
    if (auto* s = std::get_if<SingletonPt>(&inner)) return member(outer, s->point);
    if (auto* c = std::get_if<CofInBlock>(&inner)) {
      if (auto* c2 = std::get_if<CofInBlock>(&outer))
        return c2->block == c->block && std::ranges::includes(c->excluded, c2->excluded);
      if (auto* f = std::get_if<FinPt2>(&outer))
        return in_reservoir(c->block.index, f->block) && !f->excluded_blocks.contains(c->block.index);
      return false;
    }
    if (inner.index() != outer.index() || finite_target(inner) != finite_target(outer)) return false;
    auto block = finite_target(inner).first;
    const auto& in_ex = exclusions(inner);
    return std::ranges::all_of(exclusions(outer),
                               [&](auto e) { return !in_reservoir(e, block) || in_ex.contains(e); });
  }

  std::optional<Certificate> candidate(const PointAddr& p, const PointAddr& q) const override {
    if (same_block(spec(), p, q)) return std::nullopt;
    if (p.cls == PointClass::FiniteBlock || q.cls == PointClass::FiniteBlock) {
      if (p.cls != PointClass::FiniteBlock) {
        auto swapped = candidate(q, p);
        return Certificate{swapped->open_b, swapped->open_a};
      }
      // p is a finite-block point; keep q's canonical open out of p's reservoir.
      BasicOpen open_q = canonical_open(q);
      std::set<std::uint64_t> excl;
      if (reservoir_class(q) && builder_in_reservoir(q.block, p.block)) excl.insert(q.block);
      return Certificate{reservoir_open(p, std::move(excl)), std::move(open_q)};
    }
    return Certificate{canonical_open(p), canonical_open(q)};
  }

  BasicOpen t1_open(const PointAddr& p, const PointAddr& q) const override {
    std::uint64_t shift = faulty(Fault::OffByOneExclusion) ? 1 : 0;
    switch (p.cls) {
    case PointClass::Singleton: return SingletonPt{p};
    case PointClass::InfiniteBlock: {
      std::set<std::uint64_t> excl;
      if (same_block(spec(), p, q)) excl.insert(q.element + shift);
      return CofInBlock{p.block_ref(), std::move(excl)};
    }
    case PointClass::FiniteBlock: break;
    }
    std::set<std::uint64_t> excl;
    if (reservoir_class(q) && builder_in_reservoir(q.block, p.block)) excl.insert(q.block + shift);
    return reservoir_open(p, std::move(excl));
  }

  BasicOpen canonical_open(const PointAddr& p) const override {
    switch (p.cls) {
    case PointClass::Singleton: return SingletonPt{p};
    case PointClass::InfiniteBlock: return CofInBlock{p.block_ref(), {}};
    case PointClass::FiniteBlock: break;
    }
    return reservoir_open(p, {});
  }

  BasicOpen refine(const BasicOpen& a, const BasicOpen& b, const PointAddr& p) const override {
    switch (p.cls) {
    case PointClass::Singleton: return SingletonPt{p};
    case PointClass::InfiniteBlock: {
      // Only CofInBlock opens restrict an infinite block element-wise.
      std::set<std::uint64_t> excl;
      for (const auto* o : {&a, &b})
        if (auto* c = std::get_if<CofInBlock>(o)) excl = set_union(excl, c->excluded);
      return CofInBlock{p.block_ref(), std::move(excl)};
    }
    case PointClass::FiniteBlock: break;
    }
    return reservoir_open(p, set_union(exclusions(a), exclusions(b)));
  }

  BasicOpen sample_open(const PointAddr& p, Rng& rng, const SampleBounds& bounds) const override {
    const auto& fin = spec().finite_blocks();
    switch (p.cls) {
    case PointClass::Singleton:
      if (case1() && rng.coin()) {
        std::uint64_t j = p.block % m_;
        return FinPt1{j, rng.below(fin.size_of(j)), random_exclusions(rng, bounds.max_block, p.block)};
      }
      return SingletonPt{p};
    case PointClass::InfiniteBlock:
      if (case2() && rng.coin()) {
        std::uint64_t j = p.block % m_;
        return FinPt2{j, rng.below(fin.size_of(j)), random_exclusions(rng, bounds.max_block, p.block)};
      }
      return CofInBlock{p.block_ref(), random_exclusions(rng, bounds.max_element, p.element)};
    case PointClass::FiniteBlock: break;
    }
    return reservoir_open(p, random_exclusions(rng, bounds.max_block, no_keep));
  }

private:
  bool case1() const { return kind() == ConstructionKind::FinTwoCase1; }
  bool case2() const { return kind() == ConstructionKind::FinTwoCase2; }

  bool in_reservoir(std::uint64_t index, std::uint64_t block) const { return m_ != 0 && index % m_ == block; }
  /// Residue assignment as the certificate and T1 builders see it.
  bool builder_in_reservoir(std::uint64_t index, std::uint64_t block) const {
    std::uint64_t modulus = faulty(Fault::WrongResidue) ? m_ + 1 : m_;
    return modulus != 0 && index % modulus == block;
  }
  /// Whether q's class feeds the reservoirs of this construction.
  bool reservoir_class(const PointAddr& q) const {
    return (case1() && q.cls == PointClass::Singleton) || (case2() && q.cls == PointClass::InfiniteBlock);
  }

  BasicOpen reservoir_open(const PointAddr& p, std::set<std::uint64_t> excl) const {
    if (case1()) return FinPt1{p.block, p.element, std::move(excl)};
    return FinPt2{p.block, p.element, std::move(excl)};
  }

  static std::pair<std::uint64_t, std::uint64_t> finite_target(const BasicOpen& o) {
    if (auto* f = std::get_if<FinPt1>(&o)) return {f->block, f->element};
    const auto& f = std::get<FinPt2>(o);
    return {f.block, f.element};
  }

  static const std::set<std::uint64_t>& exclusions(const BasicOpen& o) {
    if (auto* f = std::get_if<FinPt1>(&o)) return f->excluded;
    return std::get<FinPt2>(o).excluded_blocks;
  }

  bool restricted_;
  std::uint64_t m_ = 0;
};

} // namespace

std::shared_ptr<const Model> make_blocks_model(ConstructionKind kind, const PartitionSpec& spec, Fault fault,
                                               bool restricted) {
  return std::make_shared<BlocksModel>(kind, spec, fault, restricted);
}

} // namespace diagcl::detail
