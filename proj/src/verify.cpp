#include "diagcl/verify.hpp"

#include "diagcl/enumeration.hpp"
#include "diagcl/errors.hpp"
#include "diagcl/finite_topology.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <optional>

namespace diagcl {

namespace {

// ---------------------------------------------------------------------------
// Stratified point sampling

struct Stratum {
  std::string name;
  std::function<std::pair<PointAddr, PointAddr>(Rng&)> draw;
};

/// Largest index below count that the bound allows, at least `floor` when
/// count permits it.
std::uint64_t cap(Count count, std::uint64_t bound, std::uint64_t floor = 0) {
  std::uint64_t top = std::max(bound, floor);
  if (count.is_omega()) return top;
  return std::min(top, count.value() - 1);
}

/// Two distinct draws from [0, top], top >= 1.
std::pair<std::uint64_t, std::uint64_t> distinct(Rng& rng, std::uint64_t top) {
  auto a = rng.between(0, top);
  auto b = rng.between(0, top - 1);
  if (b >= a) ++b;
  return {a, b};
}

bool at_least(Count c, std::uint64_t k) { return c.is_omega() || c.value() >= k; }

std::vector<Stratum> block_strata(const PartitionSpec& spec, const SampleBounds& bounds) {
  Count ns = spec.singleton_count();
  Count nf = spec.finite_block_count();
  Count ni = spec.infinite_block_count();
  const FiniteBlocks& fin = spec.finite_blocks();

  auto singleton = [=](Rng& rng) { return PointAddr::singleton(rng.between(0, cap(ns, bounds.max_block))); };
  auto finite = [=](Rng& rng) {
    auto j = rng.between(0, cap(nf, bounds.max_block));
    return PointAddr::finite(j, rng.between(0, std::min(fin.size_of(j) - 1, bounds.max_element)));
  };
  auto infinite = [=](Rng& rng) {
    return PointAddr::infinite(rng.between(0, cap(ni, bounds.max_block)), rng.between(0, bounds.max_element));
  };

  std::vector<Stratum> out;
  bool has_s = ns != Count(0), has_f = !fin.empty(), has_i = ni != Count(0);
  if (at_least(ns, 2))
    out.push_back({"s-s", [=](Rng& rng) {
                     auto [a, b] = distinct(rng, cap(ns, bounds.max_block, 1));
                     return std::pair{PointAddr::singleton(a), PointAddr::singleton(b)};
                   }});
  if (has_s && has_f) out.push_back({"s-f", [=](Rng& rng) { return std::pair{singleton(rng), finite(rng)}; }});
  if (has_s && has_i) out.push_back({"s-i", [=](Rng& rng) { return std::pair{singleton(rng), infinite(rng)}; }});
  if (has_f)
    out.push_back({"f-f-same", [=](Rng& rng) {
                     auto j = rng.between(0, cap(nf, bounds.max_block));
                     auto [a, b] = distinct(rng, std::max<std::uint64_t>(1, std::min(fin.size_of(j) - 1, bounds.max_element)));
                     return std::pair{PointAddr::finite(j, a), PointAddr::finite(j, b)};
                   }});
  if (at_least(nf, 2))
    out.push_back({"f-f-diff", [=](Rng& rng) {
                     auto [j1, j2] = distinct(rng, cap(nf, bounds.max_block, 1));
                     auto e1 = rng.between(0, std::min(fin.size_of(j1) - 1, bounds.max_element));
                     auto e2 = rng.between(0, std::min(fin.size_of(j2) - 1, bounds.max_element));
                     return std::pair{PointAddr::finite(j1, e1), PointAddr::finite(j2, e2)};
                   }});
  if (has_f && has_i) out.push_back({"f-i", [=](Rng& rng) { return std::pair{finite(rng), infinite(rng)}; }});
  if (has_i)
    out.push_back({"i-i-same", [=](Rng& rng) {
                     auto b = rng.between(0, cap(ni, bounds.max_block));
                     auto [e1, e2] = distinct(rng, std::max<std::uint64_t>(1, bounds.max_element));
                     return std::pair{PointAddr::infinite(b, e1), PointAddr::infinite(b, e2)};
                   }});
  if (at_least(ni, 2))
    out.push_back({"i-i-diff", [=](Rng& rng) {
                     auto [b1, b2] = distinct(rng, cap(ni, bounds.max_block, 1));
                     return std::pair{PointAddr::infinite(b1, rng.between(0, bounds.max_element)),
                                      PointAddr::infinite(b2, rng.between(0, bounds.max_element))};
                   }});
  return out;
}

/// 1-based designated set holding n, 0 for none.
std::size_t designated_index(const std::vector<ResidueClassSet>& ds, std::uint64_t n) {
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (ds[i].contains(n)) return i + 1;
  return 0;
}

std::vector<Stratum> subbasis_strata(const std::vector<ResidueClassSet>& ds, const SampleBounds& bounds) {
  // Scan far enough that every designated set and the rest are represented.
  std::uint64_t top = bounds.max_block;
  for (const auto& d : ds) top = std::max(top, d.offset + 2 * d.modulus);
  std::vector<std::vector<std::uint64_t>> by_set(ds.size() + 1);
  for (std::uint64_t n = 0; n <= top; ++n) by_set[designated_index(ds, n)].push_back(n);

  auto pick = [](Rng& rng, const std::vector<std::uint64_t>& xs) { return xs[rng.below(xs.size())]; };
  auto pt = [](std::uint64_t n) { return omega_point(n); };
  std::vector<std::size_t> nonempty, plural;
  for (std::size_t i = 1; i < by_set.size(); ++i) {
    if (!by_set[i].empty()) nonempty.push_back(i);
    if (by_set[i].size() >= 2) plural.push_back(i);
  }

  std::vector<Stratum> out;
  if (!plural.empty())
    out.push_back({"D-D-same", [=](Rng& rng) {
                     const auto& xs = by_set[plural[rng.below(plural.size())]];
                     auto [a, b] = distinct(rng, xs.size() - 1);
                     return std::pair{pt(xs[a]), pt(xs[b])};
                   }});
  if (nonempty.size() >= 2)
    out.push_back({"D-D-diff", [=](Rng& rng) {
                     auto [a, b] = distinct(rng, nonempty.size() - 1);
                     return std::pair{pt(pick(rng, by_set[nonempty[a]])), pt(pick(rng, by_set[nonempty[b]]))};
                   }});
  if (!nonempty.empty() && !by_set[0].empty())
    out.push_back({"D-rest", [=](Rng& rng) {
                     const auto& xs = by_set[nonempty[rng.below(nonempty.size())]];
                     return std::pair{pt(pick(rng, xs)), pt(pick(rng, by_set[0]))};
                   }});
  if (by_set[0].size() >= 2)
    out.push_back({"rest-rest", [=](Rng& rng) {
                     const auto& xs = by_set[0];
                     auto [a, b] = distinct(rng, xs.size() - 1);
                     return std::pair{pt(xs[a]), pt(xs[b])};
                   }});
  return out;
}

std::vector<Stratum> strata_of(const Construction& c, const SampleBounds& bounds) {
  if (c.kind() == ConstructionKind::SubbasisExample) return subbasis_strata(designated_sets(c), bounds);
  return block_strata(c.spec(), bounds);
}

/// The relation the construction claims to realise, decided independently
/// of the oracle.
bool expected_separable(const Construction& c, const PointAddr& p, const PointAddr& q) {
  if (c.kind() == ConstructionKind::SubbasisExample) {
    const auto& ds = designated_sets(c);
    auto a = designated_index(ds, p.block);
    auto b = designated_index(ds, q.block);
    return a != 0 && b != 0 && a != b;
  }
  return !same_block(c.spec(), p, q);
}

/// Runs check, counting a thrown exception as a failed check.
template <class F>
bool holds(F&& check) {
  try {
    return check();
  } catch (const std::exception&) {
    return false;
  }
}

constexpr std::uint64_t basis_probe_points = 8;

} // namespace

// ---------------------------------------------------------------------------
// Reports

bool VerifyReport::passed() const { return failures() == 0; }

std::uint64_t VerifyReport::failures() const {
  return mismatches + certificate_failures + t1_failures + basis_failures + probe_failures + saturation_failures;
}

std::string VerifyReport::to_text() const {
  std::vector<std::pair<std::string, std::string>> rows = {
      {"spec", spec},
      {"construction", construction},
      {"seed", std::to_string(seed)},
      {"bounds", std::to_string(bounds.max_block) + "," + std::to_string(bounds.max_element)},
      {"pairs_checked", std::to_string(pairs_checked)},
      {"mismatches", std::to_string(mismatches)},
      {"certificates_checked", std::to_string(certificates_checked)},
      {"certificate_failures", std::to_string(certificate_failures)},
      {"t1_checks", std::to_string(t1_checks)},
      {"t1_failures", std::to_string(t1_failures)},
      {"basis_checks", std::to_string(basis_checks)},
      {"basis_failures", std::to_string(basis_failures)},
      {"probe_checks", std::to_string(probe_checks)},
      {"probe_failures", std::to_string(probe_failures)},
      {"saturation_checks", std::to_string(saturation_checks)},
      {"saturation_failures", std::to_string(saturation_failures)},
  };
  for (const auto& s : strata) rows.emplace_back("stratum " + s.name, std::to_string(s.pairs));
  rows.emplace_back("result", passed() ? "PASS" : "FAIL");
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::string out;
  for (const auto& [k, v] : rows) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
  return out;
}

std::string VerifyReport::to_json_line() const {
  nlohmann::ordered_json j;
  j["spec"] = spec;
  j["construction"] = construction;
  j["seed"] = seed;
  j["bounds"] = {bounds.max_block, bounds.max_element};
  j["pairs_checked"] = pairs_checked;
  j["mismatches"] = mismatches;
  j["certificates_checked"] = certificates_checked;
  j["certificate_failures"] = certificate_failures;
  j["t1_checks"] = t1_checks;
  j["t1_failures"] = t1_failures;
  j["basis_checks"] = basis_checks;
  j["basis_failures"] = basis_failures;
  j["probe_checks"] = probe_checks;
  j["probe_failures"] = probe_failures;
  j["saturation_checks"] = saturation_checks;
  j["saturation_failures"] = saturation_failures;
  nlohmann::ordered_json st = nlohmann::ordered_json::object();
  for (const auto& s : strata) st[s.name] = s.pairs;
  j["strata"] = st;
  j["passed"] = passed();
  return j.dump();
}

std::string FiniteCheckReport::to_text() const {
  std::string out = name + " n=" + std::to_string(n) + ": " + std::to_string(cases) + " cases, " +
                    std::to_string(failures) + " failures\n";
  for (const auto& note : notes) out += "  " + note + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Sampling and verification

std::vector<std::string> strata_for(const Construction& c) {
  std::vector<std::string> names;
  for (const auto& s : strata_of(c, SampleBounds{})) names.push_back(s.name);
  return names;
}

std::vector<SampledPair> sample_pairs(const Construction& c, std::uint64_t n, const SampleBounds& bounds,
                                      std::uint64_t seed) {
  auto strata = strata_of(c, bounds);
  std::vector<Rng> streams;
  for (std::size_t s = 0; s < strata.size(); ++s) streams.emplace_back(seed + s);
  std::vector<SampledPair> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::size_t s = i % strata.size();
    auto [p, q] = strata[s].draw(streams[s]);
    out.push_back({p, q, s});
  }
  return out;
}

VerifyReport verify_construction(const Construction& c, const PartitionSpec& spec, const VerifyOptions& options) {
  if (!(c.spec() == spec))
    throw SpecMismatch(c.describe() + " was built from " + c.spec().to_string() + ", not " + spec.to_string());

  VerifyReport r;
  r.spec = spec.to_string();
  r.construction = c.describe();
  r.seed = options.seed;
  r.bounds = options.bounds;

  auto strata = strata_of(c, options.bounds);
  for (const auto& s : strata) r.strata.push_back({s.name, 0});
  const bool sat = c.kind() == ConstructionKind::T0Sat;
  const bool blocks = c.kind() == ConstructionKind::TauR;

  // Probe opens come from a stream of their own so that changing one check
  // never shifts the pairs the others see.
  Rng probe_rng(options.seed + strata.size() + 1);
  for (const auto& [p, q, s] : sample_pairs(c, options.n_pairs, options.bounds, options.seed)) {
    ++r.strata[s].pairs;
    ++r.pairs_checked;
    bool expected = expected_separable(c, p, q);
    std::optional<Certificate> cert;
    bool answered = holds([&] {
      cert = witness(c, p, q);
      return separable(c, p, q) == cert.has_value();
    });
    if (!answered || cert.has_value() != expected) ++r.mismatches;

    if (cert) {
      ++r.certificates_checked;
      if (!holds([&] { return check_certificate(c, p, q, *cert); })) ++r.certificate_failures;
    }

    if (c.is_t1()) {
      for (const auto& [a, b] : {std::pair{p, q}, std::pair{q, p}}) {
        ++r.t1_checks;
        if (!holds([&] {
              auto o = t1_witness(c, a, b);
              return member(c, o, a) && !member(c, o, b);
            }))
          ++r.t1_failures;
      }
    }

    if (!expected) {
      ++r.probe_checks;
      if (!holds([&] {
            auto op = sample_open_containing(c, p, probe_rng, options.bounds);
            auto oq = sample_open_containing(c, q, probe_rng, options.bounds);
            return member(c, op, p) && member(c, oq, q) && !disjoint(c, op, oq);
          }))
        ++r.probe_failures;
    }

    if (sat) {
      for (const auto& x : {p, q}) {
        if (x.cls == PointClass::Singleton || x.element == 0) continue;
        PointAddr rep{x.cls, x.block, 0};
        for (int round = 0; round < 2; ++round) {
          ++r.saturation_checks;
          if (!holds([&] {
                auto o = round == 0 ? canonical_open(c, x) : sample_open_containing(c, x, probe_rng, options.bounds);
                return member(c, o, rep);
              }))
            ++r.saturation_failures;
        }
      }
    }
    if (blocks && same_block(spec, p, q)) {
      ++r.saturation_checks;
      if (!holds([&] { return member(c, sample_open_containing(c, p, probe_rng, options.bounds), q); }))
        ++r.saturation_failures;
    }
  }

  Rng basis_rng(options.seed + strata.size());
  for (std::uint64_t i = 0; i < options.basis_samples; ++i) {
    ++r.basis_checks;
    const auto& stratum = strata[i % strata.size()];
    auto [a, b] = stratum.draw(basis_rng);
    PointAddr p = basis_rng.coin() ? a : b;
    std::vector<PointAddr> probes;
    for (std::uint64_t k = 0; k < basis_probe_points; ++k) {
      auto [x, y] = stratum.draw(basis_rng);
      probes.push_back(x);
      probes.push_back(y);
    }
    bool ok = holds([&] {
      auto o1 = sample_open_containing(c, p, basis_rng, options.bounds);
      auto o2 = sample_open_containing(c, p, basis_rng, options.bounds);
      if (!member(c, o1, p) || !member(c, o2, p)) return false;
      auto o3 = basis_refine(c, o1, o2, p);
      if (!member(c, o3, p) || !contains(c, o1, o3) || !contains(c, o2, o3)) return false;
      return std::ranges::all_of(probes, [&](const PointAddr& x) {
        return !member(c, o3, x) || (member(c, o1, x) && member(c, o2, x));
      });
    });
    if (!ok) ++r.basis_failures;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Exhaustive finite checks

namespace {

void note_failure(FiniteCheckReport& r, std::string note) {
  ++r.failures;
  if (r.notes.size() < 10) r.notes.push_back(std::move(note));
}

std::vector<FiniteTopology> all_topologies(unsigned n) {
  std::vector<FiniteTopology> out;
  enumerate_preorders(n, [&](const Preorder& p) { out.push_back(topology_of_preorder(p)); });
  return out;
}

/// Distinct points always have disjoint open neighbourhoods, by scanning the
/// open family.
bool separates_all_points(const FiniteTopology& t) {
  for (unsigned x = 0; x < t.size(); ++x)
    for (unsigned y = x + 1; y < t.size(); ++y) {
      bool found = false;
      for (auto u : t.opens()) {
        if (!((u >> x) & 1U)) continue;
        for (auto v : t.opens())
          if (((v >> y) & 1U) && (u & v) == 0) found = true;
        if (found) break;
      }
      if (!found) return false;
    }
  return true;
}

} // namespace

FiniteCheckReport finite_cross_check(unsigned n) {
  if (n > 5) throw BoundExceeded("finite_cross_check supports n <= 5, got " + std::to_string(n));
  FiniteCheckReport r{"finite-cross-check", n, 0, 0, {}};
  for (const auto& p : all_partitions(n)) {
    ++r.cases;
    auto rel = eq_of_partition(p);
    auto tr = tau_r(p);
    auto sat = t0_saturation(p);
    std::string why;
    if (!(cl_delta_by_open_pairs(tr) == rel)) why += " tau_r closure differs;";
    if (!(cl_delta_by_open_pairs(sat) == rel)) why += " saturation closure differs;";
    if (!is_t0(sat)) why += " saturation not T0;";
    if (is_t0(tr) == p.has_nonsingleton_block()) why += " tau_r T0 flag wrong;";
    if (p.has_nonsingleton_block() && is_t1(sat)) why += " saturation unexpectedly T1;";
    if (!why.empty()) note_failure(r, p.to_string() + ":" + why);
  }
  return r;
}

FiniteCheckReport monotonicity_check(unsigned n) {
  if (n > 3) throw BoundExceeded("monotonicity_check supports n <= 3, got " + std::to_string(n));
  FiniteCheckReport r{"monotonicity", n, 0, 0, {}};
  auto tops = all_topologies(n);
  std::vector<FiniteRelation> closures;
  for (const auto& t : tops) closures.push_back(cl_delta_by_open_pairs(t));
  for (std::size_t i = 0; i < tops.size(); ++i)
    for (std::size_t j = 0; j < tops.size(); ++j) {
      if (!tops[i].contains_family(tops[j])) continue;
      ++r.cases;
      if (!closures[i].is_subset_of(closures[j]))
        note_failure(r, format_opens(tops[i]) + " finer than " + format_opens(tops[j]) + " but closure not smaller");
    }
  return r;
}

FiniteCheckReport t2_check(unsigned n) {
  if (n > 4) throw BoundExceeded("t2_check supports n <= 4, got " + std::to_string(n));
  FiniteCheckReport r{"t2-diagonal", n, 0, 0, {}};
  for (const auto& t : all_topologies(n)) {
    ++r.cases;
    bool t2 = separates_all_points(t);
    bool diagonal = cl_delta(t) == FiniteRelation::identity(n);
    if (t2 != diagonal || is_t2(t) != t2) note_failure(r, "T2 and diagonal closure disagree on\n" + format_opens(t));
  }
  return r;
}

} // namespace diagcl
