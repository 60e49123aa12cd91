#pragma once

// Topologies on n labeled points. On a finite set every topology is the
// Alexandrov topology of its specialization preorder; here x <= y means every
// open set containing x contains y, so open sets are the up-sets and the
// minimal open neighbourhood of x is up(x) = {y : x <= y}.

#include "diagcl/relations.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace diagcl {

class Preorder {
public:
  /// Throws std::invalid_argument unless up_sets describe a reflexive transitive relation.
  Preorder(unsigned n, std::vector<PointSet> up_sets);
  static Preorder equality(unsigned n);
  static Preorder from_relation(const FiniteRelation& leq);

  unsigned size() const { return n_; }
  bool leq(unsigned x, unsigned y) const { return (up_[x] >> y) & 1U; }
  PointSet up(unsigned x) const { return up_[x]; }
  const std::vector<PointSet>& up_sets() const { return up_; }
  /// No two distinct points are mutually related.
  bool is_antisymmetric() const;

  friend bool operator==(const Preorder&, const Preorder&) = default;

private:
  unsigned n_ = 0;
  std::vector<PointSet> up_;
};

class FiniteTopology {
public:
  /// Throws NotATopology naming the first failing axiom and witness sets.
  FiniteTopology(unsigned n, std::vector<PointSet> opens);

  static FiniteTopology discrete(unsigned n);
  static FiniteTopology indiscrete(unsigned n);

  unsigned size() const { return n_; }
  PointSet full_set() const;
  /// Sorted ascending by mask value.
  const std::vector<PointSet>& opens() const { return opens_; }
  bool is_open(PointSet s) const;
  bool contains_family(const FiniteTopology& coarser) const;

  /// Intersection of all opens containing x.
  PointSet minimal_neighbourhood(unsigned x) const;

  friend bool operator==(const FiniteTopology&, const FiniteTopology&) = default;

private:
  unsigned n_ = 0;
  std::vector<PointSet> opens_;
};

/// First violated axiom of a candidate open family, or nullopt when it is a topology.
std::optional<std::string> topology_violation(unsigned n, const std::vector<PointSet>& sets);

FiniteTopology generate_from_subbasis(unsigned n, const std::vector<PointSet>& sets);
FiniteTopology topology_of_preorder(const Preorder& p);
Preorder preorder_of_topology(const FiniteTopology& t);

/// Diagonal closure via minimal neighbourhoods: (x,y) related iff up(x) meets up(y).
FiniteRelation cl_delta(const FiniteTopology& t);
/// Diagonal closure straight from the definition: (x,y) related iff no two
/// disjoint opens contain x and y respectively.
FiniteRelation cl_delta_by_open_pairs(const FiniteTopology& t);

bool is_t0(const FiniteTopology& t);
bool is_t1(const FiniteTopology& t);
bool is_t2(const FiniteTopology& t);

/// Opens are exactly the unions of blocks.
FiniteTopology tau_r(const FinitePartition& p);

/// U is open iff U meeting a block B forces rep(B) into U. rep is indexed by
/// block position; throws InvalidRepresentative when rep[i] is not in block i.
FiniteTopology t0_saturation(const FinitePartition& p, const std::vector<unsigned>& rep);
/// Uses the least point of each block as its representative.
FiniteTopology t0_saturation(const FinitePartition& p);

/// One open per line, sorted comma-separated points, "-" for the empty set.
std::string format_opens(const FiniteTopology& t);
/// Parses the format above. n defaults to one more than the largest point
/// mentioned. Throws SyntaxError on malformed lines, NotATopology otherwise.
FiniteTopology parse_opens(std::string_view text, std::optional<unsigned> n = std::nullopt);

std::string format_point_set(PointSet s);

} // namespace diagcl
