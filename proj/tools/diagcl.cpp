// Command-line front end: realisation and verification of symbolic
// constructions, pair queries, finite enumeration and the non-transitive
// example.

#include "diagcl/constructions.hpp"
#include "diagcl/enumeration.hpp"
#include "diagcl/errors.hpp"
#include "diagcl/finite_topology.hpp"
#include "diagcl/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace diagcl;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;

/// Thrown by handlers to leave with a usage-class status.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, Fault> fault_names = {
    {"none", Fault::None},
    {"wrong-residue", Fault::WrongResidue},
    {"swapped-representatives", Fault::SwappedRepresentatives},
    {"off-by-one-exclusion", Fault::OffByOneExclusion},
};

Construction realise(const PartitionSpec& spec, const std::string& axiom, Fault fault) {
  if (axiom == "t0") return realise_t0(spec, fault);
  return realise_t1(spec, fault);
}

SampleBounds parse_bounds(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--bounds expects B,E");
  try {
    return SampleBounds{std::stoull(text.substr(0, comma)), std::stoull(text.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw UsageError("--bounds expects two naturals, got '" + text + "'");
  }
}

ResidueClassSet parse_designated(const std::string& text) {
  auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(text);
    return ResidueClassSet(std::stoull(text.substr(0, comma)), std::stoull(text.substr(comma + 1)));
  } catch (const std::logic_error&) {
    throw UsageError("--d expects \"offset,modulus\" with modulus >= 1, got '" + text + "'");
  }
}

std::string flag(bool b) { return b ? "true" : "false"; }

// --- subcommands --------------------------------------------------------------

struct RealiseArgs {
  std::string spec;
  std::string axiom = "t1";
  std::uint64_t pairs = 10000;
  std::string bounds = "50,50";
  std::uint64_t seed = 0;
  std::uint64_t basis = 2000;
  std::string fault = "none";
  bool json = false;
};

int cmd_realise(const RealiseArgs& a) {
  auto spec = parse_spec(a.spec);
  VerifyOptions opts{a.pairs, a.basis, parse_bounds(a.bounds), a.seed};
  Construction c = [&] {
    try {
      return realise(spec, a.axiom, fault_names.at(a.fault));
    } catch (const NotRealisable& e) {
      std::cout << e.what() << "\n";
      throw;
    }
  }();
  auto report = verify_construction(c, spec, opts);
  if (a.json) {
    std::cout << report.to_json_line() << "\n";
  } else {
    std::cout << report.to_text();
  }
  return report.passed() ? exit_ok : exit_violation;
}

struct SeparableArgs {
  std::string spec;
  std::string axiom = "t1";
  std::string p;
  std::string q;
};

int cmd_separable(const SeparableArgs& a) {
  auto spec = parse_spec(a.spec);
  auto p = parse_point(a.p);
  auto q = parse_point(a.q);
  Construction c = [&] {
    try {
      return realise(spec, a.axiom, Fault::None);
    } catch (const NotRealisable& e) {
      std::cout << e.what() << "\n";
      throw;
    }
  }();
  auto cert = witness(c, p, q);
  if (!cert) {
    std::cout << "inseparable\n";
    return exit_ok;
  }
  std::cout << "separable\n" << cert->to_string() << "\n";
  return exit_ok;
}

struct EnumerateArgs {
  unsigned n = 0;
  bool t0 = false;
  bool iso = false;
  std::string out;
  bool force = false;
  unsigned workers = 1;
};

int cmd_enumerate(const EnumerateArgs& a) {
  if (a.n > enumeration_soft_limit && !a.force)
    throw UsageError("--n " + std::to_string(a.n) + " exceeds " + std::to_string(enumeration_soft_limit) +
                     "; pass --force to run anyway");
  auto catalog = build_catalog(a.n, a.t0, a.iso, a.workers);
  if (!a.out.empty()) {
    std::ofstream file(a.out);
    if (!file) throw UsageError("cannot write " + a.out);
    write_catalog(file, catalog);
  }
  std::cout << "n                       " << a.n << "\n"
            << "topologies              " << catalog.total_topologies << "\n"
            << "t0_topologies           " << catalog.total_t0 << "\n"
            << "distinct_closures       " << catalog.records.size() << "\n"
            << "nontransitive_closures  " << catalog.nontransitive_count() << "\n";
  return exit_ok;
}

struct ExampleArgs {
  std::string name;
  std::vector<std::string> designated;
  bool empty = false;
};

int cmd_example(const ExampleArgs& a) {
  if (a.name != "nontransitive") throw UsageError("unknown example '" + a.name + "'");
  std::vector<ResidueClassSet> ds;
  if (a.empty) {
    if (!a.designated.empty()) throw UsageError("--empty cannot be combined with --d");
  } else if (a.designated.empty()) {
    ds = default_designated_sets();
  } else {
    for (const auto& d : a.designated) ds.push_back(parse_designated(d));
  }
  NontransitiveReport report;
  try {
    report = nontransitive_demo(ds);
  } catch (const InvalidDesignatedSets& e) {
    throw UsageError(e.what());
  }
  std::cout << report.to_string();
  return report.triple ? exit_ok : exit_violation;
}

struct FiniteArgs {
  std::string opens;
  std::string partition;
  std::string topology = "taur";
  std::vector<std::string> show;
};

int cmd_finite(const FiniteArgs& a) {
  if (a.opens.empty() == a.partition.empty()) throw UsageError("give exactly one of --opens and --partition");
  FiniteTopology t = FiniteTopology::discrete(0);
  if (!a.opens.empty()) {
    std::ifstream file(a.opens);
    if (!file) throw UsageError("cannot read " + a.opens);
    std::stringstream text;
    text << file.rdbuf();
    t = parse_opens(text.str());
  } else {
    auto p = parse_partition(a.partition);
    t = a.topology == "t0sat" ? t0_saturation(p) : tau_r(p);
  }
  auto show = a.show.empty() ? std::vector<std::string>{"closure", "axioms"} : a.show;
  for (const auto& what : show) {
    if (what == "closure") {
      auto r = cl_delta(t);
      std::cout << "closure\n" << r.to_matrix_string() << "transitive  " << flag(r.is_transitive()) << "\n";
    } else {
      std::cout << "T0  " << flag(is_t0(t)) << "\n"
                << "T1  " << flag(is_t1(t)) << "\n"
                << "T2  " << flag(is_t2(t)) << "\n";
    }
  }
  return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagonal closures of topologies: realisation oracles and finite enumeration"};
  app.require_subcommand(1);

  RealiseArgs ra;
  auto* realise_cmd = app.add_subcommand("realise", "Realise a partition spec and verify the construction");
  realise_cmd->add_option("--spec", ra.spec, "Partition spec, e.g. \"singletons=0;fin=[];inf=3\"")->required();
  realise_cmd->add_option("--axiom", ra.axiom, "Separation axiom of the realisation")
      ->check(CLI::IsMember({"t0", "t1"}));
  realise_cmd->add_option("--pairs", ra.pairs, "Number of sampled point pairs");
  realise_cmd->add_option("--bounds", ra.bounds, "Largest sampled block and element index, B,E");
  realise_cmd->add_option("--seed", ra.seed, "Seed of the sampling generator");
  realise_cmd->add_option("--basis", ra.basis, "Number of basis-axiom samples");
  realise_cmd->add_option("--inject", ra.fault, "Inject a fault into the construction (harness testing)")
      ->check(CLI::IsMember({"none", "wrong-residue", "swapped-representatives", "off-by-one-exclusion"}));
  realise_cmd->add_flag("--json-lines", ra.json, "Print the report as one JSON line");

  SeparableArgs sa;
  auto* sep_cmd = app.add_subcommand("separable", "Decide whether two points have disjoint basic neighbourhoods");
  sep_cmd->add_option("--spec", sa.spec, "Partition spec")->required();
  sep_cmd->add_option("--axiom", sa.axiom, "Separation axiom of the realisation")->check(CLI::IsMember({"t0", "t1"}));
  sep_cmd->add_option("-p", sa.p, "First point, e.g. i:0:0")->required();
  sep_cmd->add_option("-q", sa.q, "Second point")->required();

  EnumerateArgs ea;
  auto* enum_cmd = app.add_subcommand("enumerate", "Classify the diagonal closures of all topologies on n points");
  enum_cmd->add_option("--n", ea.n, "Number of points")->required();
  enum_cmd->add_flag("--t0", ea.t0, "Only T0 topologies");
  enum_cmd->add_flag("--iso", ea.iso, "Merge closures up to relabeling of points");
  enum_cmd->add_option("--out", ea.out, "Write the catalog TSV here");
  enum_cmd->add_flag("--force", ea.force, "Allow n above the soft limit");
  enum_cmd->add_option("--workers", ea.workers, "Worker threads")->check(CLI::PositiveNumber);

  ExampleArgs xa;
  auto* ex_cmd = app.add_subcommand("example", "Run a worked example");
  ex_cmd->add_option("name", xa.name, "Example name (nontransitive)")->required();
  ex_cmd->add_option("--d", xa.designated, "Designated residue class \"offset,modulus\"; repeatable");
  ex_cmd->add_flag("--empty", xa.empty, "Use no designated sets");

  FiniteArgs fa;
  auto* fin_cmd = app.add_subcommand("finite", "Diagonal closure and separation axioms of a finite topology");
  fin_cmd->add_option("--opens", fa.opens, "Topology file, one open set per line");
  fin_cmd->add_option("--partition", fa.partition, "Partition literal, e.g. \"0,1|2\"");
  fin_cmd->add_option("--topology", fa.topology, "Topology built from --partition")
      ->check(CLI::IsMember({"taur", "t0sat"}));
  fin_cmd->add_option("--show", fa.show, "closure and/or axioms; repeatable")
      ->check(CLI::IsMember({"closure", "axioms"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*realise_cmd) return cmd_realise(ra);
    if (*sep_cmd) return cmd_separable(sa);
    if (*enum_cmd) return cmd_enumerate(ea);
    if (*ex_cmd) return cmd_example(xa);
    if (*fin_cmd) return cmd_finite(fa);
  } catch (const NotRealisable&) {
    return exit_violation;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    // Syntax, address and topology errors are all input problems.
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
