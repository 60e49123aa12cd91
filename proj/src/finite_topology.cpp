#include "diagcl/finite_topology.hpp"

#include "diagcl/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace diagcl {

namespace {

PointSet all_points(unsigned n) { return n >= 64 ? ~PointSet{0} : (PointSet{1} << n) - 1; }

std::vector<PointSet> normalised(std::vector<PointSet> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return sets;
}

/// Every union of a subfamily of generators, including the empty union.
std::vector<PointSet> all_unions(const std::vector<PointSet>& generators) {
  std::vector<PointSet> out{0};
  for (auto g : generators) {
    std::size_t count = out.size();
    for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] | g);
    out = normalised(std::move(out));
  }
  return out;
}

} // namespace

std::string format_point_set(PointSet s) {
  if (s == 0) return "-";
  std::string out;
  for (PointSet m = s; m; m &= m - 1) {
    if (!out.empty()) out += ',';
    out += std::to_string(std::countr_zero(m));
  }
  return out;
}

Preorder::Preorder(unsigned n, std::vector<PointSet> up_sets) : n_(n), up_(std::move(up_sets)) {
  if (n > max_finite_points || up_.size() != n) throw std::invalid_argument("preorder size mismatch");
  PointSet all = all_points(n);
  for (unsigned x = 0; x < n; ++x) {
    if ((up_[x] & ~all) != 0) throw std::invalid_argument("preorder row out of range");
    if (!((up_[x] >> x) & 1U)) throw std::invalid_argument("preorder is not reflexive");
  }
  for (unsigned x = 0; x < n; ++x)
    for (PointSet m = up_[x]; m; m &= m - 1)
      if ((up_[std::countr_zero(m)] & ~up_[x]) != 0) throw std::invalid_argument("preorder is not transitive");
}

Preorder Preorder::equality(unsigned n) {
  std::vector<PointSet> up(n);
  for (unsigned x = 0; x < n; ++x) up[x] = PointSet{1} << x;
  return Preorder(n, std::move(up));
}

Preorder Preorder::from_relation(const FiniteRelation& leq) {
  std::vector<PointSet> up(leq.size());
  for (unsigned x = 0; x < leq.size(); ++x) up[x] = leq.row(x);
  return Preorder(leq.size(), std::move(up));
}

bool Preorder::is_antisymmetric() const {
  for (unsigned x = 0; x < n_; ++x)
    for (PointSet m = up_[x] & ~(PointSet{1} << x); m; m &= m - 1)
      if (leq(std::countr_zero(m), x)) return false;
  return true;
}

std::optional<std::string> topology_violation(unsigned n, const std::vector<PointSet>& sets) {
  PointSet all = all_points(n);
  auto family = normalised(sets);
  for (auto s : family)
    if ((s & ~all) != 0) return "set {" + format_point_set(s) + "} has points outside 0.." + std::to_string(n - 1);
  auto has = [&](PointSet s) { return std::binary_search(family.begin(), family.end(), s); };
  if (!has(0)) return std::string("missing the empty set");
  if (!has(all)) return "missing the full set {" + format_point_set(all) + "}";
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      auto a = family[i], b = family[j];
      if (!has(a | b))
        return "union of {" + format_point_set(a) + "} and {" + format_point_set(b) + "} is not open";
      if (!has(a & b))
        return "intersection of {" + format_point_set(a) + "} and {" + format_point_set(b) + "} is not open";
    }
  return std::nullopt;
}

FiniteTopology::FiniteTopology(unsigned n, std::vector<PointSet> opens) : n_(n), opens_(normalised(std::move(opens))) {
  if (n > max_finite_points) throw std::invalid_argument("FiniteTopology supports at most 64 points");
  if (auto why = topology_violation(n, opens_)) throw NotATopology(*why);
}

FiniteTopology FiniteTopology::discrete(unsigned n) { return topology_of_preorder(Preorder::equality(n)); }

FiniteTopology FiniteTopology::indiscrete(unsigned n) { return FiniteTopology(n, {0, all_points(n)}); }

PointSet FiniteTopology::full_set() const { return all_points(n_); }

bool FiniteTopology::is_open(PointSet s) const { return std::binary_search(opens_.begin(), opens_.end(), s); }

bool FiniteTopology::contains_family(const FiniteTopology& coarser) const {
  if (coarser.n_ != n_) return false;
  return std::includes(opens_.begin(), opens_.end(), coarser.opens_.begin(), coarser.opens_.end());
}

PointSet FiniteTopology::minimal_neighbourhood(unsigned x) const {
  PointSet nb = full_set();
  for (auto o : opens_)
    if ((o >> x) & 1U) nb &= o;
  return nb;
}

FiniteTopology generate_from_subbasis(unsigned n, const std::vector<PointSet>& sets) {
  // The generated topology is Alexandrov: the minimal neighbourhood of x is
  // the intersection of the subbasic sets containing x.
  PointSet all = all_points(n);
  std::vector<PointSet> up(n, all);
  for (auto s : sets) {
    if ((s & ~all) != 0) throw std::invalid_argument("subbasic set has points outside the ground set");
    for (PointSet m = s; m; m &= m - 1) up[std::countr_zero(m)] &= s;
  }
  auto opens = all_unions(up);
  opens.push_back(all);
  return FiniteTopology(n, std::move(opens));
}

FiniteTopology topology_of_preorder(const Preorder& p) {
  auto opens = all_unions(p.up_sets());
  opens.push_back(all_points(p.size()));
  return FiniteTopology(p.size(), std::move(opens));
}

Preorder preorder_of_topology(const FiniteTopology& t) {
  std::vector<PointSet> up(t.size());
  for (unsigned x = 0; x < t.size(); ++x) up[x] = t.minimal_neighbourhood(x);
  return Preorder(t.size(), std::move(up));
}

FiniteRelation cl_delta(const FiniteTopology& t) {
  std::vector<PointSet> up(t.size());
  for (unsigned x = 0; x < t.size(); ++x) up[x] = t.minimal_neighbourhood(x);
  FiniteRelation r(t.size());
  for (unsigned x = 0; x < t.size(); ++x)
    for (unsigned y = 0; y < t.size(); ++y)
      if (up[x] & up[y]) r.set(x, y);
  return r;
}

FiniteRelation cl_delta_by_open_pairs(const FiniteTopology& t) {
  FiniteRelation r = FiniteRelation::full(t.size());
  const auto& opens = t.opens();
  for (auto a : opens)
    for (auto b : opens) {
      if (a & b) continue;
      for (PointSet mx = a; mx; mx &= mx - 1)
        for (PointSet my = b; my; my &= my - 1) r.set(std::countr_zero(mx), std::countr_zero(my), false);
    }
  return r;
}

bool is_t0(const FiniteTopology& t) {
  std::vector<PointSet> up(t.size());
  for (unsigned x = 0; x < t.size(); ++x) up[x] = t.minimal_neighbourhood(x);
  return normalised(up).size() == up.size();
}

bool is_t1(const FiniteTopology& t) {
  for (unsigned x = 0; x < t.size(); ++x)
    if (!t.is_open(t.full_set() & ~(PointSet{1} << x))) return false;
  return true;
}

bool is_t2(const FiniteTopology& t) { return cl_delta(t) == FiniteRelation::identity(t.size()); }

FiniteTopology tau_r(const FinitePartition& p) {
  std::vector<PointSet> up(p.size());
  for (unsigned x = 0; x < p.size(); ++x) up[x] = p.blocks()[p.block_of(x)];
  return topology_of_preorder(Preorder(p.size(), std::move(up)));
}

FiniteTopology t0_saturation(const FinitePartition& p, const std::vector<unsigned>& rep) {
  if (rep.size() != p.blocks().size())
    throw InvalidRepresentative("need one representative per block");
  for (std::size_t b = 0; b < rep.size(); ++b)
    if (rep[b] >= p.size() || !((p.blocks()[b] >> rep[b]) & 1U))
      throw InvalidRepresentative("representative " + std::to_string(rep[b]) + " is not in block " +
                                  std::to_string(b));
  std::vector<PointSet> up(p.size());
  for (unsigned x = 0; x < p.size(); ++x) up[x] = (PointSet{1} << x) | (PointSet{1} << rep[p.block_of(x)]);
  return topology_of_preorder(Preorder(p.size(), std::move(up)));
}

FiniteTopology t0_saturation(const FinitePartition& p) {
  std::vector<unsigned> rep;
  for (auto b : p.blocks()) rep.push_back(static_cast<unsigned>(std::countr_zero(b)));
  return t0_saturation(p, rep);
}

std::string format_opens(const FiniteTopology& t) {
  std::string out;
  for (auto o : t.opens()) out += format_point_set(o) + "\n";
  return out;
}

FiniteTopology parse_opens(std::string_view text, std::optional<unsigned> n) {
  std::vector<PointSet> sets;
  unsigned max_point_plus_one = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line == "-") {
      sets.push_back(0);
      continue;
    }
    PointSet s = 0;
    std::istringstream items(line);
    std::string item;
    while (std::getline(items, item, ',')) {
      unsigned v = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc{} || ptr != item.data() + item.size() || item.empty() || v >= max_finite_points)
        throw SyntaxError("bad point '" + item + "' in open-set line '" + line + "'");
      s |= PointSet{1} << v;
      max_point_plus_one = std::max(max_point_plus_one, v + 1);
    }
    sets.push_back(s);
  }
  return FiniteTopology(n.value_or(max_point_plus_one), std::move(sets));
}

} // namespace diagcl
