// Topologies whose opens are saturated with respect to blocks: the T0
// saturation topology (every open meeting a block holds its representative)
// and the block topology (every open is a union of blocks).

#include "model.hpp"

namespace diagcl::detail {

namespace {

class SaturationModel final : public Model {
public:
  SaturationModel(ConstructionKind kind, const PartitionSpec& spec, Fault fault) : Model(kind, spec, fault) {}

  bool is_t1() const override { return false; }

  std::vector<Fault> applicable_faults() const override {
    if (sat()) return {Fault::SwappedRepresentatives};
    return {};
  }

  bool owns(const BasicOpen& o) const override {
    return sat() ? std::holds_alternative<SatPair>(o) : std::holds_alternative<BlockOpen>(o);
  }

  void check_parameters(const BasicOpen& o) const override {
    bool ok = sat() ? accepts(std::get<SatPair>(o).point) : block_exists(std::get<BlockOpen>(o).block);
    if (!ok) throw InvalidAddress(to_string(o) + " is not a basic open of " + describe());
  }

  bool member(const BasicOpen& o, const PointAddr& p) const override {
    if (auto* b = std::get_if<BlockOpen>(&o)) return p.block_ref() == b->block;
    const auto& x = std::get<SatPair>(o).point;
    return p == x || p == rep(x);
  }

  bool disjoint(const BasicOpen& a, const BasicOpen& b) const override { return block_of(a) != block_of(b); }

  bool contains(const BasicOpen& outer, const BasicOpen& inner) const override {
    if (!sat()) return block_of(outer) == block_of(inner);
    // {y, r} inside {x, r}: y is x or y is r itself.
    const auto& x = std::get<SatPair>(outer).point;
    const auto& y = std::get<SatPair>(inner).point;
    return block_of(outer) == block_of(inner) && (y == x || y == rep(y));
  }

  std::optional<Certificate> candidate(const PointAddr& p, const PointAddr& q) const override {
    if (same_block(spec(), p, q)) return std::nullopt;
    return Certificate{canonical_open(p), canonical_open(q)};
  }

  BasicOpen canonical_open(const PointAddr& p) const override {
    if (sat()) return SatPair{p};
    return BlockOpen{p.block_ref()};
  }

  BasicOpen refine(const BasicOpen& a, const BasicOpen& b, const PointAddr& p) const override {
    if (!sat() || a == b) return a;
    // Two different SatPairs of one block meet exactly in the representative.
    return SatPair{p};
  }

  BasicOpen sample_open(const PointAddr& p, Rng& rng, const SampleBounds& bounds) const override {
    if (!sat() || p != rep(p) || p.cls == PointClass::Singleton) return canonical_open(p);
    // Every SatPair of the block contains its representative.
    std::uint64_t top = p.cls == PointClass::FiniteBlock ? spec().finite_blocks().size_of(p.block) - 1
                                                         : bounds.max_element;
    return SatPair{PointAddr{p.cls, p.block, rng.between(0, top)}};
  }

private:
  bool sat() const { return kind() == ConstructionKind::T0Sat; }

  PointAddr rep(const PointAddr& p) const {
    if (p.cls == PointClass::Singleton) return p;
    return PointAddr{p.cls, p.block, faulty(Fault::SwappedRepresentatives) ? 1U : 0U};
  }

  static BlockRef block_of(const BasicOpen& o) {
    if (auto* b = std::get_if<BlockOpen>(&o)) return b->block;
    return std::get<SatPair>(o).point.block_ref();
  }

  bool block_exists(const BlockRef& b) const {
    PointAddr first{b.cls, b.index, 0};
    return is_valid_address(spec(), first);
  }
};

} // namespace

std::shared_ptr<const Model> make_saturation_model(ConstructionKind kind, const PartitionSpec& spec, Fault fault) {
  return std::make_shared<SaturationModel>(kind, spec, fault);
}

} // namespace diagcl::detail
