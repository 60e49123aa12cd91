#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

/// Runs the CLI with the given arguments; stderr joins stdout when merge is set.
Run cli(const std::string& args, bool merge = false) {
  std::string cmd = std::string("'") + DIAGCL_CLI + "' " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

} // namespace

TEST_CASE("example nontransitive") {
  auto r = cli("example nontransitive");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "designated: {3n+1} {3n+2}\n"
        "triple: (2,3,4)\n"
        "(2,3) inseparable\n"
        "(3,4) inseparable\n"
        "(2,4) separable\n"
        "CofInD(2,excl=[])\n"
        "CofInD(1,excl=[])\n");
  CHECK(cli("example nontransitive --d 1,3 --d 2,3").out == r.out);

  auto empty = cli("example nontransitive --empty");
  CHECK(empty.status == 1);
  CHECK(empty.out == "designated: (none)\nclosure is total, no triple exists\n");

  auto bad = cli("example nontransitive --d 0,2 --d 2,4", true);
  CHECK(bad.status == 2);
  CHECK(bad.out == "error: designated sets {2n+0} and {4n+2} are not disjoint\n");
}

TEST_CASE("separable") {
  auto r = cli("separable --spec 'singletons=omega;fin=[3,2];inf=1' -p f:0:0 -q s:0");
  CHECK(r.status == 0);
  CHECK(r.out == "separable\nFinPt1(f:0:0,excl=[s:0])\nSingletonPt(s:0)\n");

  auto same = cli("separable --spec 'singletons=0;fin=[];inf=3' -p i:0:0 -q i:0:9");
  CHECK(same.status == 0);
  CHECK(same.out == "inseparable\n");

  auto forbidden = cli("separable --spec 'singletons=1;fin=[2];inf=1' -p f:0:0 -q s:0");
  CHECK(forbidden.status == 1);
  CHECK(forbidden.out == "not T1-realisable: Part(R) finite with a finite block of size ≥ 2\n");

  auto t0 = cli("separable --spec 'singletons=1;fin=[2];inf=1' --axiom t0 -p f:0:0 -q s:0");
  CHECK(t0.status == 0);
  CHECK(t0.out == "separable\nSatPair(f:0:0)\nSatPair(s:0)\n");

  CHECK(cli("separable --spec 'singletons=0;fin=[];inf=3' -p i:4:0 -q i:0:0").status == 2);
  CHECK(cli("separable --spec 'singletons=0;fin=[];inf=3' -p bad -q i:0:0").status == 2);
}

TEST_CASE("realise") {
  auto r = cli("realise --spec 'singletons=0;fin=[];inf=3' --pairs 200 --basis 20");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "spec                  singletons=0;fin=[];inf=3\n"
        "construction          InfBlocks\n"
        "seed                  0\n"
        "bounds                50,50\n"
        "pairs_checked         200\n"
        "mismatches            0\n"
        "certificates_checked  100\n"
        "certificate_failures  0\n"
        "t1_checks             400\n"
        "t1_failures           0\n"
        "basis_checks          20\n"
        "basis_failures        0\n"
        "probe_checks          100\n"
        "probe_failures        0\n"
        "saturation_checks     0\n"
        "saturation_failures   0\n"
        "stratum i-i-same      100\n"
        "stratum i-i-diff      100\n"
        "result                PASS\n");

  auto json = cli("realise --spec 'singletons=0;fin=[];inf=3' --pairs 200 --basis 20 --json-lines");
  CHECK(json.status == 0);
  CHECK(json.out ==
        "{\"spec\":\"singletons=0;fin=[];inf=3\",\"construction\":\"InfBlocks\",\"seed\":0,\"bounds\":[50,50],"
        "\"pairs_checked\":200,\"mismatches\":0,\"certificates_checked\":100,\"certificate_failures\":0,"
        "\"t1_checks\":400,\"t1_failures\":0,\"basis_checks\":20,\"basis_failures\":0,\"probe_checks\":100,"
        "\"probe_failures\":0,\"saturation_checks\":0,\"saturation_failures\":0,"
        "\"strata\":{\"i-i-same\":100,\"i-i-diff\":100},\"passed\":true}\n");

  auto injected = cli("realise --spec 'singletons=0;fin=[];inf=3' --pairs 2000 --inject off-by-one-exclusion");
  CHECK(injected.status == 1);
  CHECK(injected.out.ends_with("result                FAIL\n"));

  auto t0 = cli("realise --spec 'singletons=1;fin=[2];inf=1' --axiom t0 --pairs 500 --basis 50");
  CHECK(t0.status == 0);
  CHECK(t0.out.find("construction          T0Sat\n") != std::string::npos);

  auto forbidden = cli("realise --spec 'singletons=1;fin=[2];inf=1'");
  CHECK(forbidden.status == 1);
  CHECK(forbidden.out.starts_with("not T1-realisable"));

  CHECK(cli("realise --spec 'singletons=3;fin=[2,3];inf=0'").status == 2);
  CHECK(cli("realise --spec bogus").status == 2);
  CHECK(cli("realise --spec 'singletons=0;fin=[];inf=3' --bounds 5").status == 2);
  CHECK(cli("realise --spec 'singletons=0;fin=[];inf=3' --axiom t2").status == 2);
}

TEST_CASE("repeated runs are byte-identical") {
  for (const char* args : {"realise --spec 'singletons=1;fin=cycle[2,3];inf=2' --pairs 3000 --seed 5",
                           "realise --spec 'singletons=omega;fin=[3,2];inf=1' --pairs 3000 --json-lines",
                           "enumerate --n 4 --workers 3", "example nontransitive --d 0,4 --d 1,4"}) {
    CAPTURE(args);
    auto a = cli(args), b = cli(args);
    CHECK(a.status == b.status);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
  }
}

TEST_CASE("enumerate") {
  auto r = cli("enumerate --n 3");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "n                       3\n"
        "topologies              29\n"
        "t0_topologies           19\n"
        "distinct_closures       8\n"
        "nontransitive_closures  3\n");
  CHECK(cli("enumerate --n 5 --workers 4").out == cli("enumerate --n 5").out);

  std::string path = "cli_catalog_test.tsv";
  auto w = cli("enumerate --n 3 --out " + path);
  CHECK(w.status == 0);
  std::ifstream file(path);
  std::string header;
  std::getline(file, header);
  CHECK(header == "n\trelation\tlabeled\tt0\ttransitive\tequivalence\texample");
  std::remove(path.c_str());

  auto big = cli("enumerate --n 9", true);
  CHECK(big.status == 2);
  CHECK(big.out == "error: --n 9 exceeds 7; pass --force to run anyway\n");
}

TEST_CASE("finite") {
  auto r = cli("finite --partition '0,1|2'");
  CHECK(r.status == 0);
  CHECK(r.out == "closure\n110\n110\n001\ntransitive  true\nT0  false\nT1  false\nT2  false\n");

  auto sat = cli("finite --partition '0,1|2' --topology t0sat --show axioms");
  CHECK(sat.out == "T0  true\nT1  false\nT2  false\n");

  std::string path = "cli_opens_test.txt";
  {
    std::ofstream f(path);
    f << "-\n0\n0,1\n";
  }
  auto s = cli("finite --opens " + path);
  CHECK(s.status == 0);
  CHECK(s.out == "closure\n11\n11\ntransitive  true\nT0  true\nT1  false\nT2  false\n");
  {
    std::ofstream f(path);
    f << "-\n0\n1\n0,1,2\n";
  }
  auto bad = cli("finite --opens " + path, true);
  CHECK(bad.status == 2);
  CHECK(bad.out == "error: union of {0} and {1} is not open\n");
  std::remove(path.c_str());

  CHECK(cli("finite").status == 2);
  CHECK(cli("finite --partition '0,1' --opens x").status == 2);
}

TEST_CASE("usage errors") {
  CHECK(cli("").status == 2);
  CHECK(cli("frobnicate").status == 2);
  CHECK(cli("example other").status == 2);
  CHECK(cli("--help").status == 0);
}
