// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "diagcl/constructions.hpp"
#include "diagcl/enumeration.hpp"
#include "diagcl/errors.hpp"
#include "diagcl/finite_topology.hpp"
#include "diagcl/verify.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace diagcl;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

struct VerifyCase {
  const char* spec;
  ConstructionKind kind;
  int axiom; // 1 realise_t1, 0 realise_t0, 2 realise_tau_r
};

const VerifyCase verify_cases[] = {
    {"singletons=0;fin=[];inf=3", ConstructionKind::InfBlocks, 1},
    {"singletons=3;fin=[];inf=omega", ConstructionKind::InfOrSingleton, 1},
    {"singletons=omega;fin=[3,2];inf=1", ConstructionKind::FinTwoCase1, 1},
    {"singletons=2;fin=[2];inf=omega", ConstructionKind::FinTwoCase2, 1},
    {"singletons=0;fin=cycle[2];inf=0", ConstructionKind::PairBlocks, 1},
    {"singletons=1;fin=cycle[2,3];inf=2", ConstructionKind::SplitUnion, 1},
    {"singletons=1;fin=[2];inf=1", ConstructionKind::T0Sat, 0},
    {"singletons=1;fin=[2];inf=1", ConstructionKind::TauR, 2},
};

Construction build(const VerifyCase& c, Fault fault = Fault::None) {
  auto spec = parse_spec(c.spec);
  if (c.axiom == 0) return realise_t0(spec, fault);
  if (c.axiom == 2) return realise_tau_r(spec, fault);
  return realise_t1(spec, fault);
}

const VerifyOptions criterion3_options{20000, 2000, {50, 50}, 0};

std::string golden_of(const VerifyReport& r) { return r.to_text() + r.to_json_line() + "\n"; }

std::vector<std::string> first_goldens;

Outcome decision_table() {
  Outcome o;
  struct Row {
    const char* spec;
    bool realisable;
  };
  // Every singleton-count and finite-block shape combination, plus two rows
  // varying the infinite blocks.
  const Row rows[] = {
      {"singletons=2;fin=[];inf=1", true},          {"singletons=2;fin=[2];inf=1", false},
      {"singletons=2;fin=cycle[2];inf=0", true},    {"singletons=omega;fin=[];inf=0", true},
      {"singletons=omega;fin=[2];inf=0", true},     {"singletons=omega;fin=cycle[2];inf=0", true},
      {"singletons=2;fin=[2];inf=omega", true},     {"singletons=0;fin=[2,3];inf=2", false},
  };
  auto start = Clock::now();
  for (const auto& r : rows)
    o.require(is_t1_realisable(parse_spec(r.spec)) == r.realisable, std::string("row ") + r.spec);
  double ms = ms_since(start);
  o.require(ms < 1.0, "took " + std::to_string(ms) + " ms");
  for (const auto& r : rows) {
    bool threw = false;
    try {
      realise_t1(parse_spec(r.spec));
    } catch (const NotRealisable&) {
      threw = true;
    }
    o.require(threw == !r.realisable, std::string("dispatch disagrees on ") + r.spec);
  }
  return o;
}

Outcome worked_example() {
  Outcome o;
  auto start = Clock::now();
  auto ex = subbasis_example(default_designated_sets());
  auto p = [](std::uint64_t n) { return omega_point(n); };
  o.require(!separable(ex, p(2), p(3)), "(2,3) separable");
  o.require(!separable(ex, p(3), p(4)), "(3,4) separable");
  auto cert = witness(ex, p(2), p(4));
  o.require(cert.has_value() && check_certificate(ex, p(2), p(4), *cert), "(2,4) lacks a verified certificate");
  auto report = nontransitive_demo();
  o.require(report.triple && *report.triple == std::array<std::uint64_t, 3>{2, 3, 4}, "triple is not (2,3,4)");
  o.require(report.certificate && *report.certificate == Certificate{CofInD{2, {}}, CofInD{1, {}}},
            "unexpected certificate");
  double ms = ms_since(start);
  o.require(ms < 1000.0, "took " + std::to_string(ms) + " ms");
  return o;
}

Outcome construction_verification() {
  Outcome o;
  for (const auto& c : verify_cases) {
    auto start = Clock::now();
    auto con = build(c);
    o.require(con.kind() == c.kind, std::string("wrong kind for ") + c.spec);
    auto r = verify_construction(con, parse_spec(c.spec), criterion3_options);
    double ms = ms_since(start);
    std::string name = kind_name(c.kind);
    o.require(r.pairs_checked == 20000, name + " checked " + std::to_string(r.pairs_checked) + " pairs");
    o.require(r.mismatches == 0, name + " mismatches");
    o.require(r.certificate_failures == 0, name + " certificate failures");
    o.require(r.t1_failures == 0, name + " T1 failures");
    o.require(r.basis_failures == 0, name + " basis failures");
    o.require(r.basis_checks > 0, name + " ran no basis checks");
    o.require(r.passed(), name + " report failed");
    o.require(ms < 10000.0, name + " took " + std::to_string(ms) + " ms");
    first_goldens.push_back(golden_of(r));
  }
  return o;
}

Outcome enumeration_counts() {
  Outcome o;
  const std::uint64_t expected[] = {1, 1, 4, 29, 355, 6942, 209527};
  for (unsigned n = 0; n <= 6; ++n) {
    auto start = Clock::now();
    auto count = enumerate_preorders(n, [](const Preorder&) {});
    double ms = ms_since(start);
    o.require(count == expected[n], "n=" + std::to_string(n) + " gave " + std::to_string(count));
    if (n <= 3) o.require(brute_force_topology_count(n) == count, "brute force disagrees at n=" + std::to_string(n));
    if (n == 6) o.require(ms <= 60000.0, "n=6 took " + std::to_string(ms) + " ms");
  }
  return o;
}

Outcome finite_cross_check_n5() {
  Outcome o;
  auto start = Clock::now();
  auto parts = all_partitions(5);
  o.require(parts.size() == 52, "expected 52 partitions");
  for (const auto& p : parts) {
    auto r = eq_of_partition(p);
    auto tau = tau_r(p);
    auto sat = t0_saturation(p);
    o.require(cl_delta(tau) == r, "tau_r closure differs for " + p.to_string());
    o.require(cl_delta(sat) == r, "t0_saturation closure differs for " + p.to_string());
    o.require(is_t0(sat), "t0_saturation not T0 for " + p.to_string());
    if (p.has_nonsingleton_block()) o.require(!is_t0(tau), "tau_r T0 for " + p.to_string());
  }
  o.require(finite_cross_check(5).passed(), "library cross-check failed");
  double ms = ms_since(start);
  o.require(ms < 5000.0, "took " + std::to_string(ms) + " ms");
  return o;
}

Outcome monotonicity_and_t2() {
  Outcome o;
  auto start = Clock::now();
  auto mono = monotonicity_check(3);
  o.require(mono.passed() && mono.cases > 0, "monotonicity at n=3");
  for (unsigned n = 0; n <= 4; ++n) {
    auto t2 = t2_check(n);
    o.require(t2.passed() && t2.cases > 0, "T2 check at n=" + std::to_string(n));
  }
  double ms = ms_since(start);
  o.require(ms < 5000.0, "took " + std::to_string(ms) + " ms");
  return o;
}

Outcome nontransitive_catalog() {
  Outcome o;
  auto catalog = build_catalog(3, false, false);
  auto rel = FiniteRelation::identity(3);
  rel.set_symmetric(0, 1);
  rel.set_symmetric(1, 2);
  const auto* rec = catalog.find(canonical_code(rel));
  o.require(rec != nullptr, "relation missing from the n=3 catalog");
  if (rec) {
    o.require(!rec->transitive, "record marked transitive");
    o.require(!rec->example_preorder_code.empty(), "no stored witness");
    auto witness = decode_preorder(rec->example_preorder_code, 3);
    o.require(closure_of_preorder(witness) == rel, "stored witness does not reproduce the relation");
    o.require(cl_delta(topology_of_preorder(witness)) == rel, "open-family closure of witness differs");
  }
  return o;
}

Outcome t0_coverage() {
  Outcome o;
  for (unsigned n = 0; n <= 5; ++n) {
    auto catalog = build_catalog(n, true, false);
    for (const auto& p : all_partitions(n))
      o.require(catalog.find(canonical_code(eq_of_partition(p))) != nullptr,
                "n=" + std::to_string(n) + " missing " + p.to_string());
  }
  return o;
}

Outcome determinism_and_sensitivity() {
  Outcome o;
  std::size_t i = 0;
  for (const auto& c : verify_cases) {
    auto r = verify_construction(build(c), parse_spec(c.spec), criterion3_options);
    o.require(i < first_goldens.size() && golden_of(r) == first_goldens[i],
              std::string("report differs on rerun for ") + kind_name(c.kind));
    ++i;
  }
  std::size_t faults = 0;
  for (const auto& c : verify_cases)
    for (auto f : build(c).applicable_faults()) {
      ++faults;
      auto r = verify_construction(build(c, f), parse_spec(c.spec), VerifyOptions{10000, 2000, {50, 50}, 0});
      o.require(!r.passed(), std::string(kind_name(c.kind)) + " missed " + fault_name(f));
    }
  auto ex = subbasis_example(default_designated_sets());
  for (auto f : ex.applicable_faults()) {
    ++faults;
    auto bad = subbasis_example(default_designated_sets(), f);
    auto r = verify_construction(bad, bad.spec(), VerifyOptions{10000, 2000, {50, 50}, 0});
    o.require(!r.passed(), std::string("SubbasisExample missed ") + fault_name(f));
  }
  o.require(faults > 0, "no fault modes exercised");
  return o;
}

} // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"T1-realisability decision table", decision_table},
      {"non-transitive worked example on omega", worked_example},
      {"sampled verification of every construction", construction_verification},
      {"preorder enumeration counts for n = 0..6", enumeration_counts},
      {"finite cross-check over the 52 partitions of 5 points", finite_cross_check_n5},
      {"monotonicity at n = 3 and T2 iff diagonal closed for n <= 4", monotonicity_and_t2},
      {"non-transitive closure in the 3-point catalog", nontransitive_catalog},
      {"T0 catalogs hold every equivalence relation for n <= 5", t0_coverage},
      {"determinism of reports and fault detection", determinism_and_sensitivity},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double ms = ms_since(start);
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1f ms", ms);
    std::cout << "criterion " << index << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  (" << timing
              << ")";
    if (!o.pass) std::cout << "  " << o.detail;
    std::cout << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
