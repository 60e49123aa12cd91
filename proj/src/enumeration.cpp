#include "diagcl/enumeration.hpp"

#include "diagcl/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <iostream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace diagcl {

namespace {

constexpr unsigned max_n = enumeration_hard_limit;

/// Partially assigned relation matrix used by the depth-first search.
struct SearchState {
  std::array<PointSet, max_n> one{};
  std::array<PointSet, max_n> zero{};
};

bool known(const SearchState& s, unsigned i, unsigned j) { return ((s.one[i] | s.zero[i]) >> j) & 1U; }

/// Sets cell (a,b) and every cell it forces by transitivity; false on conflict.
bool assign_one(SearchState& s, unsigned n, unsigned a, unsigned b) {
  // Each cell is pushed at most once, so n*n slots suffice.
  std::array<std::pair<unsigned, unsigned>, max_n * max_n> stack;
  std::array<PointSet, max_n> pushed{};
  std::size_t top = 0;
  auto push = [&](unsigned x, unsigned y) {
    if (((s.one[x] | pushed[x]) >> y) & 1U) return;
    pushed[x] |= PointSet{1} << y;
    stack[top++] = {x, y};
  };
  push(a, b);
  while (top) {
    auto [x, y] = stack[--top];
    if ((s.zero[x] >> y) & 1U) return false;
    s.one[x] |= PointSet{1} << y;
    // x<=y and y<=k force x<=k; k<=x and x<=y force k<=y.
    for (PointSet m = s.one[y]; m; m &= m - 1) push(x, static_cast<unsigned>(std::countr_zero(m)));
    for (unsigned k = 0; k < n; ++k)
      if ((s.one[k] >> x) & 1U) push(k, y);
  }
  return true;
}

SearchState initial_state(unsigned n) {
  SearchState s;
  for (unsigned x = 0; x < n; ++x) s.one[x] = PointSet{1} << x;
  return s;
}

Preorder to_preorder(const SearchState& s, unsigned n) {
  return Preorder(n, std::vector<PointSet>(s.one.begin(), s.one.begin() + n));
}

/// Depth-first search over off-diagonal cells in row-major order from cell
/// position pos up to (excluding) stop; calls leaf on every state reaching stop.
template <typename Leaf>
void search(const SearchState& s, unsigned n, unsigned pos, unsigned stop, Leaf& leaf) {
  while (pos < stop) {
    unsigned i = pos / n, j = pos % n;
    if (i != j && !known(s, i, j)) break;
    ++pos;
  }
  if (pos >= stop) {
    leaf(s);
    return;
  }
  unsigned i = pos / n, j = pos % n;
  SearchState with_zero = s;
  with_zero.zero[i] |= PointSet{1} << j;
  search(with_zero, n, pos + 1, stop, leaf);
  SearchState with_one = s;
  if (assign_one(with_one, n, i, j)) search(with_one, n, pos + 1, stop, leaf);
}

void check_bound(unsigned n) {
  if (n > enumeration_hard_limit)
    throw BoundExceeded("preorder enumeration supports at most " + std::to_string(enumeration_hard_limit) + " points");
  if (n > enumeration_soft_limit)
    std::cerr << "warning: enumerating preorders on " << n << " points is very slow\n";
}

/// States after the first matrix row has been decided, in search order.
std::vector<SearchState> first_row_prefixes(unsigned n) {
  std::vector<SearchState> out;
  auto collect = [&](const SearchState& s) { out.push_back(s); };
  search(initial_state(n), n, 0, n, collect);
  return out;
}

std::uint64_t lex_key(const Preorder& p) {
  unsigned n = p.size();
  std::uint64_t key = 0;
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y)
      if (p.leq(x, y)) key |= std::uint64_t{1} << (n * n - 1 - (x * n + y));
  return key;
}

Preorder relabel(const Preorder& p, const std::vector<unsigned>& perm) {
  std::vector<PointSet> up(p.size(), 0);
  for (unsigned x = 0; x < p.size(); ++x)
    for (PointSet m = p.up(x); m; m &= m - 1) up[perm[x]] |= PointSet{1} << perm[std::countr_zero(m)];
  return Preorder(p.size(), std::move(up));
}

struct Accum {
  std::uint64_t labeled = 0;
  std::uint64_t t0 = 0;
  std::uint64_t example_key = ~std::uint64_t{0};
  std::uint64_t example_bits = 0;
};

using AccumMap = std::unordered_map<std::uint64_t, Accum>;

void merge_into(AccumMap& into, std::uint64_t relation, const Accum& a) {
  auto& slot = into[relation];
  slot.labeled += a.labeled;
  slot.t0 += a.t0;
  if (a.example_key < slot.example_key) {
    slot.example_key = a.example_key;
    slot.example_bits = a.example_bits;
  }
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, '\t')) out.push_back(field);
  if (!line.empty() && line.back() == '\t') out.emplace_back();
  return out;
}

} // namespace

std::uint64_t enumerate_preorders(unsigned n, const PreorderConsumer& consumer) {
  check_bound(n);
  std::uint64_t count = 0;
  auto leaf = [&](const SearchState& s) {
    ++count;
    consumer(to_preorder(s, n));
  };
  search(initial_state(n), n, 0, n * n, leaf);
  return count;
}

std::uint64_t enumerate_preorders_by_extension(unsigned n, const PreorderConsumer& consumer) {
  check_bound(n);
  std::uint64_t count = 0;
  auto extend = [&](auto&& self, const Preorder& p) -> void {
    unsigned k = p.size();
    if (k == n) {
      ++count;
      consumer(p);
      return;
    }
    std::vector<PointSet> ups, downs;
    for (PointSet s = 0; s < (PointSet{1} << k); ++s) {
      bool up_closed = true, down_closed = true;
      for (unsigned x = 0; x < k; ++x) {
        if (((s >> x) & 1U) && (p.up(x) & ~s)) up_closed = false;
        if (!((s >> x) & 1U) && (p.up(x) & s)) down_closed = false;
      }
      if (up_closed) ups.push_back(s);
      if (down_closed) downs.push_back(s);
    }
    for (auto down : downs) {
      PointSet common = (PointSet{1} << k) - 1;
      for (PointSet m = down; m; m &= m - 1) common &= p.up(std::countr_zero(m));
      for (auto up : ups) {
        if (up & ~common) continue;
        std::vector<PointSet> next = p.up_sets();
        for (PointSet m = down; m; m &= m - 1) next[std::countr_zero(m)] |= PointSet{1} << k;
        next.push_back(up | (PointSet{1} << k));
        self(self, Preorder(k + 1, std::move(next)));
      }
    }
  };
  extend(extend, Preorder(0, {}));
  return count;
}

std::uint64_t brute_force_topology_count(unsigned n) {
  if (n > 3) throw BoundExceeded("brute-force topology count is limited to n <= 3");
  const unsigned subsets = 1U << n;
  const unsigned full = subsets - 1;
  std::uint64_t count = 0;
  for (std::uint64_t family = 0; family < (std::uint64_t{1} << subsets); ++family) {
    auto has = [&](unsigned s) { return (family >> s) & 1U; };
    if (!has(0) || !has(full)) continue;
    bool closed = true;
    for (unsigned a = 0; a < subsets && closed; ++a)
      for (unsigned b = 0; b < subsets && closed; ++b)
        if (has(a) && has(b) && (!has(a | b) || !has(a & b))) closed = false;
    if (closed) ++count;
  }
  return count;
}

FiniteRelation closure_of_preorder(const Preorder& p) {
  FiniteRelation r(p.size());
  for (unsigned x = 0; x < p.size(); ++x)
    for (unsigned y = 0; y < p.size(); ++y)
      if (p.up(x) & p.up(y)) r.set(x, y);
  return r;
}

std::uint64_t relation_bits(const FiniteRelation& r) {
  std::uint64_t bits = 0;
  unsigned bit = 0;
  for (unsigned i = 0; i < r.size(); ++i)
    for (unsigned j = i + 1; j < r.size(); ++j, ++bit)
      if (r.get(i, j)) bits |= std::uint64_t{1} << bit;
  return bits;
}

FiniteRelation relation_from_bits(std::uint64_t bits, unsigned n) {
  FiniteRelation r = FiniteRelation::identity(n);
  unsigned bit = 0;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j, ++bit)
      if ((bits >> bit) & 1U) r.set_symmetric(i, j);
  return r;
}

CanonicalForm canonical_form(const FiniteRelation& r) {
  unsigned n = r.size();
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0U);
  CanonicalForm best{relation_bits(r), perm};
  do {
    std::uint64_t bits = 0;
    // Pair (perm[i], perm[j]) of the relabeled relation carries r(i,j).
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j) {
        if (!r.get(i, j)) continue;
        unsigned a = std::min(perm[i], perm[j]), b = std::max(perm[i], perm[j]);
        unsigned bit = a * n - a * (a + 1) / 2 + (b - a - 1);
        bits |= std::uint64_t{1} << bit;
      }
    if (bits < best.bits) best = {bits, perm};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string to_hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

std::uint64_t from_hex(const std::string& s) {
  if (s.empty() || s.size() > 16 ||
      !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || (c >= 'a' && c <= 'f'); }))
    throw SyntaxError("bad hexadecimal code '" + s + "'");
  return std::stoull(s, nullptr, 16);
}

std::string canonical_code(const FiniteRelation& r, bool up_to_iso) {
  return to_hex(up_to_iso ? canonical_form(r).bits : relation_bits(r));
}

FiniteRelation decode(const std::string& code, unsigned n) { return relation_from_bits(from_hex(code), n); }

std::uint64_t preorder_bits(const Preorder& p) {
  std::uint64_t bits = 0;
  for (unsigned x = 0; x < p.size(); ++x)
    for (unsigned y = 0; y < p.size(); ++y)
      if (p.leq(x, y)) bits |= std::uint64_t{1} << (x * p.size() + y);
  return bits;
}

Preorder preorder_from_bits(std::uint64_t bits, unsigned n) {
  std::vector<PointSet> up(n, 0);
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y)
      if ((bits >> (x * n + y)) & 1U) up[x] |= PointSet{1} << y;
  return Preorder(n, std::move(up));
}

std::string preorder_code(const Preorder& p) { return to_hex(preorder_bits(p)); }

Preorder decode_preorder(const std::string& code, unsigned n) {
  try {
    return preorder_from_bits(from_hex(code), n);
  } catch (const std::invalid_argument& e) {
    throw SyntaxError("code '" + code + "' is not a preorder: " + e.what());
  }
}

const CatalogRecord* Catalog::find(const std::string& relation_code) const {
  for (const auto& r : records)
    if (r.relation_code == relation_code) return &r;
  return nullptr;
}

std::size_t Catalog::nontransitive_count() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.transitive; }));
}

Catalog build_catalog(unsigned n, bool t0_only, bool up_to_iso, unsigned workers) {
  check_bound(n);
  if (n == 0) {
    Catalog c{0, t0_only, up_to_iso, {}, 1, 1};
    c.records.push_back({0, "0", 1, 1, true, true, "0"});
    return c;
  }
  auto prefixes = first_row_prefixes(n);
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(prefixes.size()));

  std::vector<AccumMap> partial(workers);
  std::vector<std::uint64_t> totals(workers, 0), totals_t0(workers, 0);
  auto run = [&](unsigned w) {
    auto& acc = partial[w];
    auto leaf = [&](const SearchState& s) {
      Preorder p = to_preorder(s, n);
      bool t0 = p.is_antisymmetric();
      if (t0_only && !t0) return;
      ++totals[w];
      if (t0) ++totals_t0[w];
      Accum a{1, t0 ? 1U : 0U, lex_key(p), preorder_bits(p)};
      merge_into(acc, relation_bits(closure_of_preorder(p)), a);
    };
    for (std::size_t t = w; t < prefixes.size(); t += workers) search(prefixes[t], n, n, n * n, leaf);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  AccumMap labeled;
  Catalog catalog{n, t0_only, up_to_iso, {}, 0, 0};
  for (unsigned w = 0; w < workers; ++w) {
    catalog.total_topologies += totals[w];
    catalog.total_t0 += totals_t0[w];
    for (const auto& [rel, a] : partial[w]) merge_into(labeled, rel, a);
  }

  std::map<std::uint64_t, Accum> merged;
  if (up_to_iso) {
    std::vector<std::uint64_t> keys;
    for (const auto& [rel, a] : labeled) keys.push_back(rel);
    std::sort(keys.begin(), keys.end());
    AccumMap iso;
    for (auto rel : keys) {
      const Accum& a = labeled.at(rel);
      auto form = canonical_form(relation_from_bits(rel, n));
      Preorder example = relabel(preorder_from_bits(a.example_bits, n), form.perm);
      merge_into(iso, form.bits, Accum{a.labeled, a.t0, lex_key(example), preorder_bits(example)});
    }
    merged.insert(iso.begin(), iso.end());
  } else {
    merged.insert(labeled.begin(), labeled.end());
  }

  for (const auto& [rel, a] : merged) {
    FiniteRelation r = relation_from_bits(rel, n);
    catalog.records.push_back(
        {n, to_hex(rel), a.labeled, a.t0, r.is_transitive(), r.is_equivalence(), to_hex(a.example_bits)});
  }
  return catalog;
}

void write_catalog(std::ostream& out, const Catalog& c) {
  out << "n\trelation\tlabeled\tt0\ttransitive\tequivalence\texample\n";
  for (const auto& r : c.records)
    out << r.n << '\t' << r.relation_code << '\t' << r.labeled_topology_count << '\t' << r.t0_topology_count << '\t'
        << (r.transitive ? "true" : "false") << '\t' << (r.equivalence ? "true" : "false") << '\t'
        << r.example_preorder_code << '\n';
  out << "# total_topologies=" << c.total_topologies << " total_t0=" << c.total_t0 << '\n';
}

Catalog read_catalog(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "n\trelation\tlabeled\tt0\ttransitive\tequivalence\texample")
    throw SyntaxError("catalog header missing");
  Catalog c;
  bool footer = false;
  auto parse_bool = [](const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw SyntaxError("bad boolean '" + s + "'");
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.starts_with("# ")) {
      std::istringstream fs(line.substr(2));
      std::string a, b;
      fs >> a >> b;
      if (!a.starts_with("total_topologies=") || !b.starts_with("total_t0="))
        throw SyntaxError("bad catalog footer '" + line + "'");
      c.total_topologies = std::stoull(a.substr(17));
      c.total_t0 = std::stoull(b.substr(9));
      footer = true;
      continue;
    }
    auto f = split_tabs(line);
    if (f.size() != 7) throw SyntaxError("catalog line needs 7 fields: '" + line + "'");
    try {
      CatalogRecord r{static_cast<unsigned>(std::stoul(f[0])), f[1], std::stoull(f[2]), std::stoull(f[3]),
                      parse_bool(f[4]), parse_bool(f[5]), f[6]};
      c.n = r.n;
      c.records.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw SyntaxError("bad number in catalog line '" + line + "'");
    }
  }
  if (!footer) throw SyntaxError("catalog footer missing");
  return c;
}

} // namespace diagcl
