#include "model.hpp"

#include <algorithm>
#include <stdexcept>

namespace diagcl {

std::string kind_name(ConstructionKind k) {
  switch (k) {
  case ConstructionKind::InfBlocks: return "InfBlocks";
  case ConstructionKind::InfOrSingleton: return "InfOrSingleton";
  case ConstructionKind::FinTwoCase1: return "FinTwoCase1";
  case ConstructionKind::FinTwoCase2: return "FinTwoCase2";
  case ConstructionKind::PairBlocks: return "PairBlocks";
  case ConstructionKind::ExtendPairs: return "ExtendPairs";
  case ConstructionKind::SplitUnion: return "SplitUnion";
  case ConstructionKind::T0Sat: return "T0Sat";
  case ConstructionKind::TauR: return "TauR";
  case ConstructionKind::SubbasisExample: return "SubbasisExample";
  }
  return "?";
}

std::string fault_name(Fault f) {
  switch (f) {
  case Fault::None: return "none";
  case Fault::WrongResidue: return "wrong-residue";
  case Fault::SwappedRepresentatives: return "swapped-representatives";
  case Fault::OffByOneExclusion: return "off-by-one-exclusion";
  }
  return "?";
}

namespace detail {

namespace {

/// Disjoint union of a model on the finite blocks and one on the rest.
class SplitUnionModel final : public Model {
public:
  SplitUnionModel(const PartitionSpec& spec, std::shared_ptr<const Model> finite_part,
                  std::shared_ptr<const Model> rest, Fault fault)
      : Model(ConstructionKind::SplitUnion, spec, fault), finite_(std::move(finite_part)), rest_(std::move(rest)) {}

  std::string describe() const override {
    return "SplitUnion(" + finite_->describe() + "," + rest_->describe() + ")";
  }
  std::vector<Construction> children() const override { return {Construction(finite_), Construction(rest_)}; }

  std::vector<Fault> applicable_faults() const override {
    std::vector<Fault> out;
    for (auto f : {Fault::WrongResidue, Fault::SwappedRepresentatives, Fault::OffByOneExclusion}) {
      auto a = finite_->applicable_faults();
      auto b = rest_->applicable_faults();
      if (std::ranges::find(a, f) != a.end() || std::ranges::find(b, f) != b.end()) out.push_back(f);
    }
    return out;
  }

  bool accepts(const PointAddr& p) const override { return part_of(p).accepts(p); }
  bool owns(const BasicOpen& o) const override { return finite_->owns(o) || rest_->owns(o); }
  void check_parameters(const BasicOpen& o) const override { part_of(o).check_parameters(o); }

  bool member(const BasicOpen& o, const PointAddr& p) const override {
    const Model& m = part_of(o);
    return &m == &part_of(p) && m.member(o, p);
  }
  bool disjoint(const BasicOpen& a, const BasicOpen& b) const override {
    const Model& m = part_of(a);
    return &m != &part_of(b) || m.disjoint(a, b);
  }
  bool contains(const BasicOpen& outer, const BasicOpen& inner) const override {
    const Model& m = part_of(outer);
    return &m == &part_of(inner) && m.contains(outer, inner);
  }

  std::optional<Certificate> candidate(const PointAddr& p, const PointAddr& q) const override {
    const Model& mp = part_of(p);
    const Model& mq = part_of(q);
    if (&mp == &mq) return mp.candidate(p, q);
    return Certificate{mp.canonical_open(p), mq.canonical_open(q)};
  }
  BasicOpen t1_open(const PointAddr& p, const PointAddr& q) const override {
    const Model& mp = part_of(p);
    if (&mp == &part_of(q)) return mp.t1_open(p, q);
    return mp.canonical_open(p);
  }
  BasicOpen canonical_open(const PointAddr& p) const override { return part_of(p).canonical_open(p); }
  BasicOpen refine(const BasicOpen& a, const BasicOpen& b, const PointAddr& p) const override {
    return part_of(p).refine(a, b, p);
  }
  BasicOpen sample_open(const PointAddr& p, Rng& rng, const SampleBounds& bounds) const override {
    return part_of(p).sample_open(p, rng, bounds);
  }

private:
  const Model& part_of(const PointAddr& p) const { return p.cls == PointClass::FiniteBlock ? *finite_ : *rest_; }
  const Model& part_of(const BasicOpen& o) const { return finite_->owns(o) ? *finite_ : *rest_; }

  std::shared_ptr<const Model> finite_;
  std::shared_ptr<const Model> rest_;
};

bool certificate_holds(const Model& m, const PointAddr& p, const PointAddr& q, const Certificate& cert) {
  return m.member(cert.open_a, p) && m.member(cert.open_b, q) && m.disjoint(cert.open_a, cert.open_b);
}

} // namespace

std::shared_ptr<const Model> make_split_union(const PartitionSpec& spec, std::shared_ptr<const Model> finite_part,
                                              std::shared_ptr<const Model> rest, Fault fault) {
  return std::make_shared<SplitUnionModel>(spec, std::move(finite_part), std::move(rest), fault);
}

} // namespace detail

// --- Construction -------------------------------------------------------------

Construction::Construction(std::shared_ptr<const detail::Model> model) : model_(std::move(model)) {}

ConstructionKind Construction::kind() const { return model_->kind(); }
std::string Construction::describe() const { return model_->describe(); }
const PartitionSpec& Construction::spec() const { return model_->spec(); }
std::vector<Construction> Construction::children() const { return model_->children(); }
bool Construction::is_t1() const { return model_->is_t1(); }
Fault Construction::fault() const { return model_->fault(); }
std::vector<Fault> Construction::applicable_faults() const { return model_->applicable_faults(); }

Construction realise_t1(const PartitionSpec& spec, Fault fault) {
  using K = ConstructionKind;
  const auto& fin = spec.finite_blocks();
  if (fin.empty()) {
    auto kind = spec.singleton_count() == Count(0) ? K::InfBlocks : K::InfOrSingleton;
    return Construction(detail::make_blocks_model(kind, spec, fault, false));
  }
  if (!fin.cycle) {
    if (!is_t1_realisable(spec))
      throw NotRealisable("not T1-realisable: Part(R) finite with a finite block of size ≥ 2");
    auto kind = spec.singleton_count().is_omega() ? K::FinTwoCase1 : K::FinTwoCase2;
    return Construction(detail::make_blocks_model(kind, spec, fault, false));
  }
  bool all_pairs = std::ranges::all_of(fin.sizes, [](auto s) { return s == 2; });
  auto pairs = detail::make_pairs_model(all_pairs ? K::PairBlocks : K::ExtendPairs, spec, fault);
  if (spec.singleton_count() == Count(0) && spec.infinite_block_count() == Count(0)) return Construction(pairs);
  auto rest = detail::make_blocks_model(K::InfOrSingleton, spec, fault, true);
  return Construction(detail::make_split_union(spec, std::move(pairs), std::move(rest), fault));
}

Construction realise_t0(const PartitionSpec& spec, Fault fault) {
  return Construction(detail::make_saturation_model(ConstructionKind::T0Sat, spec, fault));
}

Construction realise_tau_r(const PartitionSpec& spec, Fault fault) {
  return Construction(detail::make_saturation_model(ConstructionKind::TauR, spec, fault));
}

std::vector<ResidueClassSet> default_designated_sets() { return {ResidueClassSet(1, 3), ResidueClassSet(2, 3)}; }

Construction subbasis_example(std::vector<ResidueClassSet> designated, Fault fault) {
  return Construction(detail::make_subbasis_model(std::move(designated), fault));
}

const std::vector<ResidueClassSet>& designated_sets(const Construction& c) {
  return detail::subbasis_designated(c.model());
}

// --- oracle operations --------------------------------------------------------

std::optional<Certificate> witness(const Construction& c, const PointAddr& p, const PointAddr& q) {
  const auto& m = c.model();
  m.require_point(p);
  m.require_point(q);
  if (p == q) return std::nullopt;
  auto cert = m.candidate(p, q);
  if (!cert) return std::nullopt;
  // A builder may emit opens whose parameters are out of range; such a
  // proposal simply fails to certify.
  try {
    m.require_open(cert->open_a);
    m.require_open(cert->open_b);
  } catch (const InvalidAddress&) {
    return std::nullopt;
  }
  if (!detail::certificate_holds(m, p, q, *cert)) return std::nullopt;
  return cert;
}

bool separable(const Construction& c, const PointAddr& p, const PointAddr& q) { return witness(c, p, q).has_value(); }

bool check_certificate(const Construction& c, const PointAddr& p, const PointAddr& q, const Certificate& cert) {
  const auto& m = c.model();
  m.require_point(p);
  m.require_point(q);
  m.require_open(cert.open_a);
  m.require_open(cert.open_b);
  return detail::certificate_holds(m, p, q, cert);
}

BasicOpen t1_witness(const Construction& c, const PointAddr& p, const PointAddr& q) {
  const auto& m = c.model();
  if (!m.is_t1()) throw NotT1Construction(m.describe() + " is not a T1 construction");
  m.require_point(p);
  m.require_point(q);
  if (p == q) throw std::invalid_argument("t1_witness needs two distinct points");
  return m.t1_open(p, q);
}

bool member(const Construction& c, const BasicOpen& o, const PointAddr& p) {
  const auto& m = c.model();
  m.require_open(o);
  m.require_point(p);
  return m.member(o, p);
}

bool disjoint(const Construction& c, const BasicOpen& o1, const BasicOpen& o2) {
  const auto& m = c.model();
  m.require_open(o1);
  m.require_open(o2);
  return m.disjoint(o1, o2);
}

bool contains(const Construction& c, const BasicOpen& outer, const BasicOpen& inner) {
  const auto& m = c.model();
  m.require_open(outer);
  m.require_open(inner);
  return m.contains(outer, inner);
}

BasicOpen basis_refine(const Construction& c, const BasicOpen& o1, const BasicOpen& o2, const PointAddr& p) {
  const auto& m = c.model();
  m.require_open(o1);
  m.require_open(o2);
  m.require_point(p);
  if (!m.member(o1, p) || !m.member(o2, p))
    throw std::invalid_argument("basis_refine: " + p.to_string() + " is not in both opens");
  return m.refine(o1, o2, p);
}

BasicOpen canonical_open(const Construction& c, const PointAddr& p) {
  c.model().require_point(p);
  return c.model().canonical_open(p);
}

BasicOpen sample_open_containing(const Construction& c, const PointAddr& p, Rng& rng, const SampleBounds& bounds) {
  c.model().require_point(p);
  return c.model().sample_open(p, rng, bounds);
}

// --- the non-transitive example -------------------------------------------------

std::string NontransitiveReport::to_string() const {
  std::string out = "designated:";
  if (designated.empty()) out += " (none)";
  for (const auto& d : designated) out += " " + d.to_string();
  out += "\n";
  if (!triple) return out + "closure is total, no triple exists\n";
  auto [x, y, z] = *triple;
  auto pair = [](std::uint64_t a, std::uint64_t b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; };
  out += "triple: (" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")\n";
  out += pair(x, y) + " inseparable\n";
  out += pair(y, z) + " inseparable\n";
  out += pair(x, z) + " separable\n";
  out += certificate->to_string() + "\n";
  return out;
}

NontransitiveReport nontransitive_demo(std::vector<ResidueClassSet> designated) {
  auto c = subbasis_example(designated);
  NontransitiveReport report;
  report.designated = designated;
  if (designated.size() < 2) {
    report.total = true;
    return report;
  }
  auto pt = [](std::uint64_t n) { return omega_point(n); };
  // With two disjoint designated sets and an infinite undesignated rest a
  // triple always exists, so the search terminates.
  for (std::uint64_t z = 2;; ++z) {
    for (std::uint64_t y = 1; y < z; ++y) {
      if (separable(c, pt(y), pt(z))) continue;
      for (std::uint64_t x = 0; x < y; ++x) {
        if (separable(c, pt(x), pt(y))) continue;
        auto cert = witness(c, pt(x), pt(z));
        if (!cert) continue;
        if (!check_certificate(c, pt(x), pt(z), *cert))
          throw std::logic_error("nontransitive_demo: certificate failed its own check");
        report.triple = std::array<std::uint64_t, 3>{x, y, z};
        report.certificate = *cert;
        return report;
      }
    }
  }
}

} // namespace diagcl
