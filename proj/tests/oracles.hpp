#pragma once

// Test-side reference implementations. They share no code with the library
// and favour the most literal reading of each definition over speed.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<bool>>;

inline Matrix identity(unsigned n) {
  Matrix m(n, std::vector<bool>(n, false));
  for (unsigned i = 0; i < n; ++i) m[i][i] = true;
  return m;
}

inline bool transitive(const Matrix& m) {
  auto n = m.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (m[a][b] && m[b][c] && !m[a][c]) return false;
  return true;
}

/// Every reflexive transitive relation, found by scanning all off-diagonal
/// bit patterns.
inline std::vector<Matrix> all_preorders(unsigned n) {
  std::vector<std::pair<unsigned, unsigned>> cells;
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b)
      if (a != b) cells.emplace_back(a, b);
  std::vector<Matrix> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells.size()); ++bits) {
    Matrix m = identity(n);
    for (std::size_t i = 0; i < cells.size(); ++i)
      if ((bits >> i) & 1U) m[cells[i].first][cells[i].second] = true;
    if (transitive(m)) out.push_back(std::move(m));
  }
  return out;
}

/// Families of subsets of {0..n-1} containing both trivial sets and closed
/// under pairwise union and intersection, found by scanning all families.
inline std::uint64_t topology_family_count(unsigned n) {
  unsigned subsets = 1U << n;
  unsigned full = subsets - 1;
  std::uint64_t count = 0;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
    auto has = [&](unsigned s) { return (fam >> s) & 1U; };
    if (!has(0) || !has(full)) continue;
    bool ok = true;
    for (unsigned a = 0; a < subsets && ok; ++a)
      for (unsigned b = 0; b < subsets && ok; ++b)
        if (has(a) && has(b) && (!has(a | b) || !has(a & b))) ok = false;
    if (ok) ++count;
  }
  return count;
}

/// Opens of the topology of a preorder: sets U with x in U and x <= y
/// implying y in U.
inline std::vector<unsigned> up_sets(const Matrix& leq) {
  unsigned n = static_cast<unsigned>(leq.size());
  std::vector<unsigned> out;
  for (unsigned u = 0; u < (1U << n); ++u) {
    bool ok = true;
    for (unsigned x = 0; x < n && ok; ++x)
      for (unsigned y = 0; y < n && ok; ++y)
        if (((u >> x) & 1U) && leq[x][y] && !((u >> y) & 1U)) ok = false;
    if (ok) out.push_back(u);
  }
  return out;
}

/// (x,y) related iff no two disjoint opens hold x and y.
inline Matrix closure(unsigned n, const std::vector<unsigned>& opens) {
  Matrix m(n, std::vector<bool>(n, true));
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y)
      for (auto u : opens)
        for (auto v : opens)
          if (((u >> x) & 1U) && ((v >> y) & 1U) && (u & v) == 0) m[x][y] = false;
  return m;
}

/// Partitions of {0..n-1} as block-label vectors, from all label maps
/// keeping those where each new label is the next unused one.
inline std::vector<std::vector<unsigned>> partitions(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> labels(n, 0);
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= n;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (unsigned i = 0; i < n; ++i) {
      labels[i] = static_cast<unsigned>(c % n);
      c /= n;
    }
    unsigned next = 0;
    bool canonical = true;
    for (unsigned i = 0; i < n && canonical; ++i) {
      if (labels[i] > next) canonical = false;
      if (labels[i] == next) ++next;
    }
    if (canonical) out.push_back(labels);
  }
  return out;
}

/// Stern's diatomic sequence; fusc(k)/fusc(k+1) is the k-th Calkin-Wilf term.
inline std::uint64_t fusc(std::uint64_t k) {
  if (k < 2) return k;
  return k % 2 == 0 ? fusc(k / 2) : fusc(k / 2) + fusc(k / 2 + 1);
}

/// (numerator, denominator) of the index-th rational of the enumeration
/// 0, cw(1), -cw(1), cw(2), -cw(2), ...
inline std::pair<std::int64_t, std::int64_t> rational_at(std::uint64_t index) {
  if (index == 0) return {0, 1};
  std::uint64_t k = (index + 1) / 2;
  auto num = static_cast<std::int64_t>(fusc(k));
  auto den = static_cast<std::int64_t>(fusc(k + 1));
  return {index % 2 == 1 ? num : -num, den};
}

/// Cantor pairing by walking the diagonals a+b = 0, 1, 2, ... with b rising.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> cantor_order(std::uint64_t count) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t s = 0; out.size() < count; ++s)
    for (std::uint64_t b = 0; b <= s && out.size() < count; ++b) out.emplace_back(s - b, b);
  return out;
}

} // namespace oracle
