#pragma once

// Sampled verification of symbolic constructions against the relation they
// realise, and exhaustive checks of the finite constructions.

#include "diagcl/constructions.hpp"
#include "diagcl/relations.hpp"
#include "diagcl/rng.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace diagcl {

struct VerifyOptions {
  std::uint64_t n_pairs = 10000;
  std::uint64_t basis_samples = 2000;
  SampleBounds bounds;
  std::uint64_t seed = 0;
};

struct StratumCount {
  std::string name;
  std::uint64_t pairs = 0;

  friend bool operator==(const StratumCount&, const StratumCount&) = default;
};

struct VerifyReport {
  std::string spec;
  std::string construction;
  std::uint64_t seed = 0;
  SampleBounds bounds;

  std::uint64_t pairs_checked = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t certificates_checked = 0;
  std::uint64_t certificate_failures = 0;
  std::uint64_t t1_checks = 0;
  std::uint64_t t1_failures = 0;
  std::uint64_t basis_checks = 0;
  std::uint64_t basis_failures = 0;
  /// Sampled open pairs around inseparable points that must intersect.
  std::uint64_t probe_checks = 0;
  std::uint64_t probe_failures = 0;
  /// Opens around a point that must hold its block's representative (T0Sat)
  /// or its whole block (TauR).
  std::uint64_t saturation_checks = 0;
  std::uint64_t saturation_failures = 0;
  std::vector<StratumCount> strata;

  bool passed() const;
  /// Total of all mismatch and failure counters.
  std::uint64_t failures() const;

  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;

  /// Aligned "key  value" lines.
  std::string to_text() const;
  /// One JSON object on a single line, keys in fixed order.
  std::string to_json_line() const;
};

/// A sampled query pair with the stratum it was drawn for.
struct SampledPair {
  PointAddr p;
  PointAddr q;
  std::size_t stratum = 0;
};

/// Names of the strata applicable to c, in sampling order.
std::vector<std::string> strata_for(const Construction& c);

/// Deterministic stratified sample: pair i comes from stratum i mod k, and
/// stratum s draws from its own generator seeded with seed + s.
std::vector<SampledPair> sample_pairs(const Construction& c, std::uint64_t n, const SampleBounds& bounds,
                                      std::uint64_t seed);

/// Throws SpecMismatch unless c was built from spec.
VerifyReport verify_construction(const Construction& c, const PartitionSpec& spec, const VerifyOptions& options = {});

/// Result of an exhaustive finite check.
struct FiniteCheckReport {
  std::string name;
  unsigned n = 0;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  /// Descriptions of the first few failing cases.
  std::vector<std::string> notes;

  bool passed() const { return failures == 0; }
  std::string to_text() const;
};

/// For every partition of n <= 5 points: both block topologies realise the
/// partition's relation, the saturation topology is T0, and the block
/// topology is T0 only when all blocks are singletons. Closures are computed
/// from the open family, not from minimal neighbourhoods.
FiniteCheckReport finite_cross_check(unsigned n);

/// For every pair of topologies on n <= 3 points with sigma finer than tau:
/// the closure under sigma is contained in the closure under tau.
FiniteCheckReport monotonicity_check(unsigned n);

/// For every topology on n <= 4 points: separating every pair of distinct
/// points by disjoint opens (checked over the open family) holds exactly when
/// the closure is the diagonal.
FiniteCheckReport t2_check(unsigned n);

} // namespace diagcl
