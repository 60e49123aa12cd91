#pragma once

// Equivalence relations, both as explicit bit matrices on {0..n-1} and as
// symbolic block profiles on a countably infinite ground set.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace diagcl {

/// Point set over {0..63} as a bit mask.
using PointSet = std::uint64_t;

inline constexpr unsigned max_finite_points = 64;

/// A natural number or omega (countable infinity).
class Count {
public:
  constexpr Count() = default;
  constexpr explicit Count(std::uint64_t value) : value_(value) {}
  static constexpr Count omega() {
    Count c;
    c.omega_ = true;
    return c;
  }

  constexpr bool is_omega() const { return omega_; }
  constexpr bool is_finite() const { return !omega_; }
  /// Finite value; throws std::logic_error for omega.
  std::uint64_t value() const;

  /// True when index is below this count (always true for omega).
  constexpr bool covers(std::uint64_t index) const { return omega_ || index < value_; }

  friend Count operator+(Count a, Count b);
  friend constexpr bool operator==(Count a, Count b) {
    return a.omega_ == b.omega_ && (a.omega_ || a.value_ == b.value_);
  }

  std::string to_string() const;

private:
  std::uint64_t value_ = 0;
  bool omega_ = false;
};

/// Sizes of the finite non-singleton blocks: an explicit list, or countably
/// many blocks whose sizes repeat the given list cyclically.
struct FiniteBlocks {
  bool cycle = false;
  std::vector<std::uint64_t> sizes;

  Count count() const;
  std::uint64_t size_of(std::uint64_t block) const;
  bool empty() const { return !cycle && sizes.empty(); }

  friend bool operator==(const FiniteBlocks&, const FiniteBlocks&) = default;
};

/// Cardinality profile of an equivalence relation on a countable infinite set.
class PartitionSpec {
public:
  /// Validates; throws GroundSetFinite or SyntaxError.
  PartitionSpec(Count singletons, FiniteBlocks finite, Count infinite);

  Count singleton_count() const { return singletons_; }
  const FiniteBlocks& finite_blocks() const { return finite_; }
  Count infinite_block_count() const { return infinite_; }

  /// Number of finite blocks with at least two points.
  Count finite_block_count() const { return finite_.count(); }
  /// True iff the relation has only finitely many blocks.
  bool part_finite() const;

  /// Canonical text form, re-parseable by parse_spec.
  std::string to_string() const;

  friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;

private:
  Count singletons_;
  FiniteBlocks finite_;
  Count infinite_;
};

PartitionSpec parse_spec(std::string_view text);

enum class PointClass : std::uint8_t { Singleton, FiniteBlock, InfiniteBlock };

/// A block of a symbolic spec: class plus index within that class.
struct BlockRef {
  PointClass cls = PointClass::Singleton;
  std::uint64_t index = 0;

  friend auto operator<=>(const BlockRef&, const BlockRef&) = default;
  std::string to_string() const;
};

/// Address of a point of the symbolic ground set.
struct PointAddr {
  PointClass cls = PointClass::Singleton;
  std::uint64_t block = 0;
  std::uint64_t element = 0;

  static PointAddr singleton(std::uint64_t i) { return {PointClass::Singleton, i, 0}; }
  static PointAddr finite(std::uint64_t j, std::uint64_t k) { return {PointClass::FiniteBlock, j, k}; }
  static PointAddr infinite(std::uint64_t j, std::uint64_t k) { return {PointClass::InfiniteBlock, j, k}; }

  BlockRef block_ref() const { return {cls, block}; }

  friend auto operator<=>(const PointAddr&, const PointAddr&) = default;
  std::string to_string() const;
};

/// Parses "s:<i>", "f:<j>:<k>" or "i:<j>:<k>"; throws InvalidAddress.
PointAddr parse_point(std::string_view text);

bool is_valid_address(const PartitionSpec& spec, const PointAddr& p);
/// Throws InvalidAddress naming the point when it is not a point of spec.
void require_valid_address(const PartitionSpec& spec, const PointAddr& p);

/// Symbolic membership test for R: same class and same block index.
bool same_block(const PartitionSpec& spec, const PointAddr& p, const PointAddr& q);

/// Characterisation of T1-realisable equivalence relations on infinite sets:
/// false exactly when there are finitely many blocks and one of them is
/// finite with at least two points.
bool is_t1_realisable(const PartitionSpec& spec);

/// Boolean relation on {0..n-1}, one bit mask per row.
class FiniteRelation {
public:
  explicit FiniteRelation(unsigned n = 0);
  static FiniteRelation identity(unsigned n);
  static FiniteRelation full(unsigned n);

  unsigned size() const { return n_; }
  bool get(unsigned x, unsigned y) const { return (rows_[x] >> y) & 1U; }
  void set(unsigned x, unsigned y, bool value = true);
  void set_symmetric(unsigned x, unsigned y, bool value = true);
  PointSet row(unsigned x) const { return rows_[x]; }

  bool is_reflexive() const;
  bool is_symmetric() const;
  bool is_transitive() const;
  bool is_equivalence() const { return is_reflexive() && is_symmetric() && is_transitive(); }
  bool is_subset_of(const FiniteRelation& other) const;

  /// Rows of 0/1 characters.
  std::string to_matrix_string() const;

  friend bool operator==(const FiniteRelation&, const FiniteRelation&) = default;

private:
  unsigned n_ = 0;
  std::vector<PointSet> rows_;
};

/// Partition of {0..n-1}; blocks are ordered by their least element.
class FinitePartition {
public:
  /// Throws std::invalid_argument unless blocks partition {0..n-1}.
  FinitePartition(unsigned n, const std::vector<std::vector<unsigned>>& blocks);

  unsigned size() const { return n_; }
  const std::vector<PointSet>& blocks() const { return blocks_; }
  std::size_t block_of(unsigned x) const { return block_of_[x]; }
  bool has_nonsingleton_block() const;

  std::string to_string() const;

  friend bool operator==(const FinitePartition&, const FinitePartition&) = default;

private:
  unsigned n_ = 0;
  std::vector<PointSet> blocks_;
  std::vector<std::size_t> block_of_;
};

FiniteRelation eq_of_partition(const FinitePartition& p);
/// Throws NotEquivalence.
FinitePartition partition_of_eq(const FiniteRelation& r);

/// All set partitions of {0..n-1} in restricted-growth-string order.
std::vector<FinitePartition> all_partitions(unsigned n);

/// Parses "0,1|2" (blocks separated by '|'); throws SyntaxError.
FinitePartition parse_partition(std::string_view text);

} // namespace diagcl
