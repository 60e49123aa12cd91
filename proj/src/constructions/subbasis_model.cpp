// Topology on omega generated by the cofinite sets together with finitely
// many pairwise disjoint residue classes. Finite intersections of subbasic
// sets are cofinite sets and cofinite parts of one designated class.

#include "model.hpp"

#include <algorithm>

namespace diagcl::detail {

namespace {

PartitionSpec omega_spec() { return PartitionSpec(Count::omega(), FiniteBlocks{}, Count(0)); }

class SubbasisModel final : public Model {
public:
  SubbasisModel(std::vector<ResidueClassSet> designated, Fault fault)
      : Model(ConstructionKind::SubbasisExample, omega_spec(), fault), designated_(std::move(designated)) {
    Rational density(0);
    for (std::size_t i = 0; i < designated_.size(); ++i) {
      for (std::size_t j = i + 1; j < designated_.size(); ++j)
        if (!residues_disjoint(designated_[i], designated_[j]))
          throw InvalidDesignatedSets("designated sets " + designated_[i].to_string() + " and " +
                                      designated_[j].to_string() + " are not disjoint");
      density = density + Rational(BigInt(1), BigInt(designated_[i].modulus));
    }
    // Disjoint classes of total density 1 cover all but finitely many naturals.
    if (density >= Rational(1))
      throw InvalidDesignatedSets("designated sets leave only finitely many undesignated points");
  }

  std::string describe() const override {
    std::string out = "SubbasisExample(";
    for (std::size_t i = 0; i < designated_.size(); ++i) out += (i ? "," : "") + designated_[i].to_string();
    return out + ")";
  }

  std::vector<Fault> applicable_faults() const override { return {Fault::WrongResidue, Fault::OffByOneExclusion}; }

  const std::vector<ResidueClassSet>& designated() const { return designated_; }

  bool owns(const BasicOpen& o) const override {
    return std::holds_alternative<CofOmega>(o) || std::holds_alternative<CofInD>(o);
  }

  void check_parameters(const BasicOpen& o) const override {
    auto* d = std::get_if<CofInD>(&o);
    if (d && (d->designated == 0 || d->designated > designated_.size()))
      throw InvalidAddress(to_string(o) + " names no designated set of " + describe());
  }

  bool member(const BasicOpen& o, const PointAddr& p) const override {
    if (auto* c = std::get_if<CofOmega>(&o)) return !c->excluded.contains(p.block);
    const auto& d = std::get<CofInD>(o);
    return set_of(d).contains(p.block) && !d.excluded.contains(p.block);
  }

  bool disjoint(const BasicOpen& a, const BasicOpen& b) const override {
    // Every basic open is infinite and meets every cofinite set.
    auto* da = std::get_if<CofInD>(&a);
    auto* db = std::get_if<CofInD>(&b);
    return da && db && da->designated != db->designated;
  }

  bool contains(const BasicOpen& outer, const BasicOpen& inner) const override {
    if (auto* ci = std::get_if<CofOmega>(&inner)) {
      // A cofinite set never fits inside a class with infinite complement.
      auto* co = std::get_if<CofOmega>(&outer);
      return co && std::ranges::includes(ci->excluded, co->excluded);
    }
    const auto& di = std::get<CofInD>(inner);
    const auto& d = set_of(di);
    const std::set<std::uint64_t>* outer_excl = nullptr;
    if (auto* co = std::get_if<CofOmega>(&outer)) {
      outer_excl = &co->excluded;
    } else {
      const auto& dout = std::get<CofInD>(outer);
      if (dout.designated != di.designated) return false;
      outer_excl = &dout.excluded;
    }
    return std::ranges::all_of(*outer_excl, [&](auto e) { return !d.contains(e) || di.excluded.contains(e); });
  }

  std::optional<Certificate> candidate(const PointAddr& p, const PointAddr& q) const override {
    auto dp = builder_lookup(p.block);
    auto dq = builder_lookup(q.block);
    if (!dp || !dq || *dp == *dq) return std::nullopt;
    return Certificate{CofInD{*dp, {}}, CofInD{*dq, {}}};
  }

  BasicOpen t1_open(const PointAddr&, const PointAddr& q) const override {
    return CofOmega{{q.block + (faulty(Fault::OffByOneExclusion) ? 1 : 0)}};
  }

  BasicOpen canonical_open(const PointAddr& p) const override {
    if (auto d = lookup(p.block)) return CofInD{*d, {}};
    return CofOmega{};
  }

  BasicOpen refine(const BasicOpen& a, const BasicOpen& b, const PointAddr&) const override {
    auto excl = set_union(exclusions(a), exclusions(b));
    for (const auto* o : {&a, &b})
      if (auto* d = std::get_if<CofInD>(o)) return CofInD{d->designated, std::move(excl)};
    return CofOmega{std::move(excl)};
  }

  BasicOpen sample_open(const PointAddr& p, Rng& rng, const SampleBounds& bounds) const override {
    auto excl = random_exclusions(rng, bounds.max_block, p.block);
    if (auto d = lookup(p.block); d && rng.coin()) return CofInD{*d, std::move(excl)};
    return CofOmega{std::move(excl)};
  }

private:
  const ResidueClassSet& set_of(const CofInD& d) const { return designated_[d.designated - 1]; }

  static const std::set<std::uint64_t>& exclusions(const BasicOpen& o) {
    if (auto* c = std::get_if<CofOmega>(&o)) return c->excluded;
    return std::get<CofInD>(o).excluded;
  }

  /// 1-based index of the designated set holding n.
  std::optional<std::size_t> lookup(std::uint64_t n) const {
    for (std::size_t i = 0; i < designated_.size(); ++i)
      if (designated_[i].contains(n)) return i + 1;
    return std::nullopt;
  }

  std::optional<std::size_t> builder_lookup(std::uint64_t n) const {
    if (!faulty(Fault::WrongResidue)) return lookup(n);
    for (std::size_t i = 0; i < designated_.size(); ++i) {
      ResidueClassSet wrong(designated_[i].offset, designated_[i].modulus + 1);
      if (wrong.contains(n)) return i + 1;
    }
    return std::nullopt;
  }

  std::vector<ResidueClassSet> designated_;
};

} // namespace

std::shared_ptr<const Model> make_subbasis_model(std::vector<ResidueClassSet> designated, Fault fault) {
  return std::make_shared<SubbasisModel>(std::move(designated), fault);
}

const std::vector<ResidueClassSet>& subbasis_designated(const Model& m) {
  auto* s = dynamic_cast<const SubbasisModel*>(&m);
  if (!s) throw std::invalid_argument(m.describe() + " has no designated sets");
  return s->designated();
}

} // namespace diagcl::detail
