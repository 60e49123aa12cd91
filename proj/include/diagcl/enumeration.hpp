#pragma once

// Exhaustive enumeration of the topologies on n labeled points (as preorders)
// and catalogs of the diagonal closures they produce.

#include "diagcl/finite_topology.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace diagcl {

inline constexpr unsigned enumeration_soft_limit = 7;
inline constexpr unsigned enumeration_hard_limit = 8;

using PreorderConsumer = std::function<void(const Preorder&)>;

/// Delivers every preorder on n points exactly once, in ascending
/// lexicographic order of the row-major matrix (cell (0,0) most significant).
/// Depth-first over off-diagonal cells with transitivity propagated on every
/// 1-assignment. Warns on stderr above the soft limit; throws BoundExceeded
/// above the hard limit.
std::uint64_t enumerate_preorders(unsigned n, const PreorderConsumer& consumer);

/// Independent generator: extends each preorder on n-1 points by one new
/// point with a compatible (down-set, up-set) pair. Order is unspecified.
std::uint64_t enumerate_preorders_by_extension(unsigned n, const PreorderConsumer& consumer);

/// Counts families of subsets of {0..n-1} containing both trivial sets and
/// closed under union and intersection, by scanning all 2^(2^n) families.
/// Throws BoundExceeded for n > 3.
std::uint64_t brute_force_topology_count(unsigned n);

/// (x,y) related iff up(x) meets up(y).
FiniteRelation closure_of_preorder(const Preorder& p);

/// Upper-triangle encoding of a relation: pair (i,j), i<j, in lexicographic
/// order, first pair in the least significant bit.
std::uint64_t relation_bits(const FiniteRelation& r);
FiniteRelation relation_from_bits(std::uint64_t bits, unsigned n);

/// Hex rendering of relation_bits, optionally minimised over point permutations.
std::string canonical_code(const FiniteRelation& r, bool up_to_iso = false);
FiniteRelation decode(const std::string& code, unsigned n);

/// Minimises relation_bits over all permutations and reports the permutation
/// perm (point x goes to perm[x]) achieving it.
struct CanonicalForm {
  std::uint64_t bits = 0;
  std::vector<unsigned> perm;
};
CanonicalForm canonical_form(const FiniteRelation& r);

/// Full-matrix encoding of a preorder: cell (x,y) at bit x*n+y.
std::uint64_t preorder_bits(const Preorder& p);
Preorder preorder_from_bits(std::uint64_t bits, unsigned n);
std::string preorder_code(const Preorder& p);
Preorder decode_preorder(const std::string& code, unsigned n);

std::string to_hex(std::uint64_t v);
std::uint64_t from_hex(const std::string& s);

struct CatalogRecord {
  unsigned n = 0;
  std::string relation_code;
  std::uint64_t labeled_topology_count = 0;
  std::uint64_t t0_topology_count = 0;
  bool transitive = false;
  bool equivalence = false;
  std::string example_preorder_code;

  friend bool operator==(const CatalogRecord&, const CatalogRecord&) = default;
};

struct Catalog {
  unsigned n = 0;
  bool t0_only = false;
  bool up_to_iso = false;
  /// Sorted by relation value, strictly increasing.
  std::vector<CatalogRecord> records;
  std::uint64_t total_topologies = 0;
  std::uint64_t total_t0 = 0;

  const CatalogRecord* find(const std::string& relation_code) const;
  std::size_t nontransitive_count() const;

  friend bool operator==(const Catalog&, const Catalog&) = default;
};

/// One record per distinct closure relation among the topologies on n points
/// (T0 ones only when t0_only). With up_to_iso, relations are merged by
/// canonical code and each example preorder is relabeled so its closure is
/// exactly the decoded relation. workers > 1 splits the search at the first
/// matrix row; the result is identical for every worker count.
Catalog build_catalog(unsigned n, bool t0_only, bool up_to_iso, unsigned workers = 1);

void write_catalog(std::ostream& out, const Catalog& catalog);
/// Reads the TSV written by write_catalog; throws SyntaxError.
Catalog read_catalog(std::istream& in);

} // namespace diagcl
