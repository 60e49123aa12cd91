#pragma once

// Internal interface shared by the per-kind construction models.

#include "diagcl/constructions.hpp"
#include "diagcl/errors.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace diagcl::detail {

class Model {
public:
  Model(ConstructionKind kind, PartitionSpec spec, Fault fault) : kind_(kind), spec_(std::move(spec)), fault_(fault) {}
  virtual ~Model() = default;

  ConstructionKind kind() const { return kind_; }
  const PartitionSpec& spec() const { return spec_; }
  Fault fault() const { return fault_; }

  virtual std::string describe() const { return kind_name(kind_); }
  virtual std::vector<Construction> children() const { return {}; }
  virtual bool is_t1() const { return true; }
  virtual std::vector<Fault> applicable_faults() const = 0;

  /// Whether p is a point of this model's ground set.
  virtual bool accepts(const PointAddr& p) const { return is_valid_address(spec_, p); }
  /// Whether o is a variant this model owns (parameters unchecked).
  virtual bool owns(const BasicOpen& o) const = 0;
  /// Throws InvalidAddress when o's parameters do not describe a basic open
  /// of this model. Only called on owned opens.
  virtual void check_parameters(const BasicOpen& o) const = 0;

  virtual bool member(const BasicOpen& o, const PointAddr& p) const = 0;
  virtual bool disjoint(const BasicOpen& a, const BasicOpen& b) const = 0;
  virtual bool contains(const BasicOpen& outer, const BasicOpen& inner) const = 0;

  /// Proposed certificate for distinct points; the caller re-checks it.
  virtual std::optional<Certificate> candidate(const PointAddr& p, const PointAddr& q) const = 0;
  virtual BasicOpen t1_open(const PointAddr& p, const PointAddr& q) const;
  virtual BasicOpen canonical_open(const PointAddr& p) const = 0;
  virtual BasicOpen refine(const BasicOpen& a, const BasicOpen& b, const PointAddr& p) const = 0;
  virtual BasicOpen sample_open(const PointAddr& p, Rng& rng, const SampleBounds& bounds) const = 0;

  /// Full validation used by the public entry points.
  void require_point(const PointAddr& p) const;
  void require_open(const BasicOpen& o) const;

protected:
  bool faulty(Fault f) const { return fault_ == f; }

private:
  ConstructionKind kind_;
  PartitionSpec spec_;
  Fault fault_;
};

std::shared_ptr<const Model> make_blocks_model(ConstructionKind kind, const PartitionSpec& spec, Fault fault,
                                               bool restricted);
std::shared_ptr<const Model> make_pairs_model(ConstructionKind kind, const PartitionSpec& spec, Fault fault);
std::shared_ptr<const Model> make_split_union(const PartitionSpec& spec, std::shared_ptr<const Model> finite_part,
                                              std::shared_ptr<const Model> rest, Fault fault);
std::shared_ptr<const Model> make_saturation_model(ConstructionKind kind, const PartitionSpec& spec, Fault fault);
std::shared_ptr<const Model> make_subbasis_model(std::vector<ResidueClassSet> designated, Fault fault);

const std::vector<ResidueClassSet>& subbasis_designated(const Model& m);

/// Random finite exclusion set drawn from [0, bound], never containing keep.
std::set<std::uint64_t> random_exclusions(Rng& rng, std::uint64_t bound, std::uint64_t keep);

std::set<std::uint64_t> set_union(const std::set<std::uint64_t>& a, const std::set<std::uint64_t>& b);

} // namespace diagcl::detail
