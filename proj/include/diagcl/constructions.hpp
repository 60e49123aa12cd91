#pragma once

// Realised topologies on symbolic ground sets, presented as separation
// oracles over decidable families of basic open sets.
//
// Every construction fixes a basis. Two points are separable exactly when
// some pair of disjoint basic opens contains them; when that happens the
// oracle returns the pair as a certificate that can be re-checked exactly
// with member() and disjoint().

#include "diagcl/relations.hpp"
#include "diagcl/rng.hpp"
#include "diagcl/symbolic_sets.hpp"

#include <cstdint>
#include <array>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace diagcl {

// --- basic opens ------------------------------------------------------------

/// {p}
struct SingletonPt {
  PointAddr point;
  friend bool operator==(const SingletonPt&, const SingletonPt&) = default;
};

/// An infinite block minus finitely many element indices.
struct CofInBlock {
  BlockRef block;
  std::set<std::uint64_t> excluded;
  friend bool operator==(const CofInBlock&, const CofInBlock&) = default;
};

/// {f:block:element} plus the singleton points s:i with i = block (mod m),
/// minus the singleton indices listed in excluded. m is the number of finite
/// blocks.
struct FinPt1 {
  std::uint64_t block = 0;
  std::uint64_t element = 0;
  std::set<std::uint64_t> excluded;
  friend bool operator==(const FinPt1&, const FinPt1&) = default;
};

/// {f:block:element} plus every infinite block i:b with b = block (mod m)
/// and b not listed in excluded_blocks.
struct FinPt2 {
  std::uint64_t block = 0;
  std::uint64_t element = 0;
  std::set<std::uint64_t> excluded_blocks;
  friend bool operator==(const FinPt2&, const FinPt2&) = default;
};

/// Rational ball over the pair points: block j carries image pair_encode(j)
/// and element k in {0,1} sits at level k.
struct Ball {
  RationalBall ball;
  friend bool operator==(const Ball&, const Ball&) = default;
};

/// {f:block:element} (element >= 2) plus ball minus the image of element 0 of
/// the same block. The ball's interval must contain that image.
struct ExtPt {
  std::uint64_t block = 0;
  std::uint64_t element = 0;
  RationalBall ball;
  friend bool operator==(const ExtPt&, const ExtPt&) = default;
};

/// {point, representative of point's block}.
struct SatPair {
  PointAddr point;
  friend bool operator==(const SatPair&, const SatPair&) = default;
};

/// A whole block.
struct BlockOpen {
  BlockRef block;
  friend bool operator==(const BlockOpen&, const BlockOpen&) = default;
};

/// omega minus finitely many naturals.
struct CofOmega {
  std::set<std::uint64_t> excluded;
  friend bool operator==(const CofOmega&, const CofOmega&) = default;
};

/// Designated set number `designated` (1-based) minus finitely many naturals.
struct CofInD {
  std::size_t designated = 1;
  std::set<std::uint64_t> excluded;
  friend bool operator==(const CofInD&, const CofInD&) = default;
};

using BasicOpen = std::variant<SingletonPt, CofInBlock, FinPt1, FinPt2, Ball, ExtPt, SatPair, BlockOpen, CofOmega, CofInD>;

std::string variant_name(const BasicOpen& o);
/// Stable rendering, exclusion lists ascending.
std::string to_string(const BasicOpen& o);

/// Disjoint basic opens containing the first and second query point.
struct Certificate {
  BasicOpen open_a;
  BasicOpen open_b;

  friend bool operator==(const Certificate&, const Certificate&) = default;
  /// Two lines, one rendered open each.
  std::string to_string() const;
};

// --- constructions ----------------------------------------------------------

enum class ConstructionKind {
  InfBlocks,
  InfOrSingleton,
  FinTwoCase1,
  FinTwoCase2,
  PairBlocks,
  ExtendPairs,
  SplitUnion,
  T0Sat,
  TauR,
  SubbasisExample,
};

std::string kind_name(ConstructionKind k);

/// Deliberate defects for testing the verification harness.
enum class Fault {
  None,
  /// Certificate and T1 builders assign residue classes modulo m+1 instead of m.
  WrongResidue,
  /// Representatives take element 1 instead of element 0.
  SwappedRepresentatives,
  /// T1 builders exclude the successor of the point they must exclude.
  OffByOneExclusion,
};

std::string fault_name(Fault f);

namespace detail {
class Model;
}

class Construction {
public:
  explicit Construction(std::shared_ptr<const detail::Model> model);

  ConstructionKind kind() const;
  /// Kind with children, e.g. "SplitUnion(ExtendPairs,InfOrSingleton)".
  std::string describe() const;
  const PartitionSpec& spec() const;
  std::vector<Construction> children() const;
  bool is_t1() const;
  Fault fault() const;
  /// Fault modes that touch a parameter this construction actually has.
  std::vector<Fault> applicable_faults() const;

  const detail::Model& model() const { return *model_; }

private:
  std::shared_ptr<const detail::Model> model_;
};

/// Routes the partition spec to the construction for its block profile. Throws
/// NotRealisable when no T1 topology realises the relation.
Construction realise_t1(const PartitionSpec& spec, Fault fault = Fault::None);
/// Saturation topology: U is open iff U meeting a block forces element 0 of
/// that block into U. Works for every spec.
Construction realise_t0(const PartitionSpec& spec, Fault fault = Fault::None);
/// Opens are exactly the unions of blocks.
Construction realise_tau_r(const PartitionSpec& spec, Fault fault = Fault::None);

/// The residue classes of the non-transitive example on omega.
std::vector<ResidueClassSet> default_designated_sets();
/// Topology on omega generated by the cofinite sets and the designated sets.
/// Points are addressed as s:<n>. Throws InvalidDesignatedSets unless the
/// sets are pairwise disjoint with an infinite union complement.
Construction subbasis_example(std::vector<ResidueClassSet> designated, Fault fault = Fault::None);
const std::vector<ResidueClassSet>& designated_sets(const Construction& c);

/// Points of omega used by subbasis_example.
inline PointAddr omega_point(std::uint64_t n) { return PointAddr::singleton(n); }

// --- oracle operations --------------------------------------------------------
// All throw InvalidAddress for points outside the construction's ground set
// and ForeignVariant for opens that do not belong to the construction.

bool separable(const Construction& c, const PointAddr& p, const PointAddr& q);
std::optional<Certificate> witness(const Construction& c, const PointAddr& p, const PointAddr& q);
bool check_certificate(const Construction& c, const PointAddr& p, const PointAddr& q, const Certificate& cert);
/// A basic open containing p but not q. Throws NotT1Construction for T0Sat and TauR.
BasicOpen t1_witness(const Construction& c, const PointAddr& p, const PointAddr& q);

bool member(const Construction& c, const BasicOpen& o, const PointAddr& p);
bool disjoint(const Construction& c, const BasicOpen& o1, const BasicOpen& o2);
/// Exact containment inner ⊆ outer.
bool contains(const Construction& c, const BasicOpen& outer, const BasicOpen& inner);
/// Basic open o3 with p in o3 and o3 inside o1 ∩ o2; requires p in both.
BasicOpen basis_refine(const Construction& c, const BasicOpen& o1, const BasicOpen& o2, const PointAddr& p);
/// The basic open the oracle uses for p when nothing else constrains it.
BasicOpen canonical_open(const Construction& c, const PointAddr& p);
/// Random basic open containing p.
BasicOpen sample_open_containing(const Construction& c, const PointAddr& p, Rng& rng, const SampleBounds& bounds);

struct NontransitiveReport {
  bool total = false;
  /// x, y, z with (x,y) and (y,z) inseparable but (x,z) separable.
  std::optional<std::array<std::uint64_t, 3>> triple;
  std::optional<Certificate> certificate;
  std::vector<ResidueClassSet> designated;

  std::string to_string() const;
};

/// Builds the subbasis example and searches for the increasing triple
/// x < y < z of least z (then y, then x) witnessing non-transitivity.
NontransitiveReport nontransitive_demo(std::vector<ResidueClassSet> designated = default_designated_sets());

} // namespace diagcl
