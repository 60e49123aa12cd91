#include "diagcl/symbolic_sets.hpp"

#include "diagcl/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace diagcl {

namespace {

std::string join(const std::set<std::uint64_t>& xs) {
  std::string out;
  for (auto x : xs) {
    if (!out.empty()) out += ',';
    out += std::to_string(x);
  }
  return out;
}

bool is_subset(const std::set<std::uint64_t>& a, const std::set<std::uint64_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

using u128 = unsigned __int128;

u128 triangle(std::uint64_t w) { return static_cast<u128>(w) * (static_cast<u128>(w) + 1) / 2; }

} // namespace

// --- cofinite subsets ------------------------------------------------------

CofiniteSubset CofiniteSubset::finite(std::string domain, std::set<std::uint64_t> members) {
  return CofiniteSubset(std::move(domain), Mode::Finite, std::move(members));
}

CofiniteSubset CofiniteSubset::cofinite(std::string domain, std::set<std::uint64_t> excluded) {
  return CofiniteSubset(std::move(domain), Mode::Cofinite, std::move(excluded));
}

std::string CofiniteSubset::to_string() const {
  if (mode_ == Mode::Finite) return "fin(" + domain_ + ",[" + join(listed_) + "])";
  return "cof(" + domain_ + ",excl=[" + join(listed_) + "])";
}

bool cof_member(const CofiniteSubset& s, std::uint64_t index) {
  bool listed = s.listed().contains(index);
  return s.mode() == CofiniteSubset::Mode::Finite ? listed : !listed;
}

CofiniteSubset cof_intersect(const CofiniteSubset& s1, const CofiniteSubset& s2) {
  using Mode = CofiniteSubset::Mode;
  if (s1.domain() != s2.domain()) return CofiniteSubset::finite(s1.domain(), {});
  const auto& a = s1.listed();
  const auto& b = s2.listed();
  std::set<std::uint64_t> out;
  if (s1.mode() == Mode::Cofinite && s2.mode() == Mode::Cofinite) {
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return CofiniteSubset::cofinite(s1.domain(), std::move(out));
  }
  if (s1.mode() == Mode::Finite && s2.mode() == Mode::Finite) {
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  } else {
    const auto& members = s1.mode() == Mode::Finite ? a : b;
    const auto& excluded = s1.mode() == Mode::Finite ? b : a;
    std::set_difference(members.begin(), members.end(), excluded.begin(), excluded.end(),
                        std::inserter(out, out.end()));
  }
  return CofiniteSubset::finite(s1.domain(), std::move(out));
}

bool cof_disjoint(const CofiniteSubset& s1, const CofiniteSubset& s2) { return cof_intersect(s1, s2).is_empty(); }

bool cof_subset(const CofiniteSubset& inner, const CofiniteSubset& outer) {
  using Mode = CofiniteSubset::Mode;
  if (inner.is_empty()) return true;
  if (inner.domain() != outer.domain()) return false;
  if (inner.mode() == Mode::Finite) {
    if (outer.mode() == Mode::Finite) return is_subset(inner.listed(), outer.listed());
    return std::none_of(inner.listed().begin(), inner.listed().end(),
                        [&](auto x) { return outer.listed().contains(x); });
  }
  if (outer.mode() == Mode::Finite) return false;
  return is_subset(outer.listed(), inner.listed());
}

// --- residue classes ------------------------------------------------------

ResidueClassSet::ResidueClassSet(std::uint64_t offset, std::uint64_t modulus) : offset(offset), modulus(modulus) {
  if (modulus == 0) throw std::invalid_argument("residue class modulus must be at least 1");
}

std::string ResidueClassSet::to_string() const {
  return "{" + std::to_string(modulus) + "n+" + std::to_string(offset) + "}";
}

bool residues_disjoint(const ResidueClassSet& d1, const ResidueClassSet& d2) {
  // Solutions of x = a1 (mod b1), x = a2 (mod b2) form a class modulo
  // lcm(b1,b2) when a1 = a2 (mod g); that class has arbitrarily large members,
  // in particular ones above both offsets.
  std::uint64_t g = std::gcd(d1.modulus, d2.modulus);
  std::uint64_t diff = d1.offset > d2.offset ? d1.offset - d2.offset : d2.offset - d1.offset;
  return diff % g != 0;
}

// --- rationals ------------------------------------------------------------

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = den < 0 ? Value(-num, -den) : Value(num, den);
}

BigInt Rational::numerator() const { return boost::multiprecision::numerator(value_); }
BigInt Rational::denominator() const { return boost::multiprecision::denominator(value_); }
int Rational::sign() const { return value_.sign(); }

Rational operator/(const Rational& a, const Rational& b) {
  if (b.value_ == 0) throw std::domain_error("rational division by zero");
  return Rational(a.value_ / b.value_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const { return numerator().str() + "/" + denominator().str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  auto parse_int = [&](std::string_view s) {
    std::string_view digits = s.starts_with('-') ? s.substr(1) : s;
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw SyntaxError("bad rational '" + std::string(text) + "'");
    return BigInt(std::string(s));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text), 1);
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw SyntaxError("bad rational '" + std::string(text) + "': zero denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

// --- balls ------------------------------------------------------------------

RationalBall::RationalBall(std::uint64_t x_index, Rational center, Rational radius, std::set<LeveledRational> excluded)
    : x_(x_index), center_(std::move(center)), radius_(std::move(radius)), excluded_(std::move(excluded)) {
  if (radius_.sign() <= 0) throw std::invalid_argument("ball radius must be positive");
  for (const auto& e : excluded_) {
    if (e.level > 1) throw std::invalid_argument("ball exclusion level must be 0 or 1");
    if (!interval_contains(e.q)) throw std::invalid_argument("ball exclusion " + e.q.to_string() + " lies outside the ball");
  }
}

bool RationalBall::interval_contains(const Rational& q) const { return abs(q - center_) < radius_; }

RationalBall RationalBall::excluding(const LeveledRational& p) const {
  if (!interval_contains(p.q)) return *this;
  auto excl = excluded_;
  excl.insert(p);
  return RationalBall(x_, center_, radius_, std::move(excl));
}

std::string RationalBall::to_string() const {
  std::string ex;
  for (const auto& e : excluded_) {
    if (!ex.empty()) ex += ',';
    ex += "(" + e.q.to_string() + "," + std::to_string(e.level) + ")";
  }
  return "ball(x=" + std::to_string(x_) + ",q=" + center_.to_string() + ",d=" + radius_.to_string() + ",excl=[" + ex +
         "])";
}

bool ball_member(const RationalBall& b, const BallPoint& p) {
  return p.x == b.x_index() && p.level <= 1 && b.interval_contains(p.q) &&
         !b.excluded().contains(LeveledRational{p.q, p.level});
}

bool ball_disjoint(const RationalBall& b1, const RationalBall& b2) {
  return b1.x_index() != b2.x_index() || abs(b1.center() - b2.center()) >= b1.radius() + b2.radius();
}

bool ball_subset(const RationalBall& inner, const RationalBall& outer) {
  if (inner.x_index() != outer.x_index()) return false;
  // Open intervals: (c-r, c+r) inside (C-R, C+R) iff |c - C| <= R - r.
  if (abs(inner.center() - outer.center()) > outer.radius() - inner.radius()) return false;
  for (const auto& e : outer.excluded())
    if (inner.interval_contains(e.q) && !inner.excluded().contains(e)) return false;
  return true;
}

// --- enumeration of Q and the pairing ---------------------------------------

Rational rational_at(std::uint64_t index) {
  if (index == 0) return Rational(0);
  std::uint64_t k = index / 2 + index % 2;
  // Walk the Calkin-Wilf tree along the bits of k below the leading one:
  // a 0 bit goes to a/(a+b), a 1 bit to (a+b)/b.
  BigInt a = 1, b = 1;
  int top = 63 - std::countl_zero(k);
  for (int bit = top - 1; bit >= 0; --bit) {
    if ((k >> bit) & 1U)
      a += b;
    else
      b += a;
  }
  Rational cw(a, b);
  return index % 2 == 1 ? cw : -cw;
}

std::uint64_t rational_index(const Rational& q) {
  if (q.sign() == 0) return 0;
  BigInt p = boost::multiprecision::abs(q.numerator());
  BigInt d = q.denominator();
  // Recover the tree path bottom-up as runs of equal bits.
  std::vector<std::pair<bool, BigInt>> runs;
  BigInt length = 0;
  while (!(p == 1 && d == 1)) {
    if (p < d) {
      BigInt c = (d - 1) / p;
      d -= c * p;
      runs.emplace_back(false, c);
      length += c;
    } else {
      BigInt c = (p - 1) / d;
      p -= c * d;
      runs.emplace_back(true, c);
      length += c;
    }
    if (length > 62) throw NotInImage("rational " + q.to_string() + " has an enumeration index beyond 64 bits");
  }
  std::uint64_t k = 1;
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
    auto c = static_cast<unsigned>(it->second);
    k <<= c;
    if (it->first) k |= (std::uint64_t{1} << c) - 1;
  }
  return q.sign() > 0 ? 2 * k - 1 : 2 * k;
}

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
  u128 s = static_cast<u128>(a) + b;
  // Beyond this diagonal the triangle number alone exceeds 64 bits.
  if (s > (u128{1} << 34)) throw NotInImage("Cantor pair exceeds 64 bits");
  u128 z = s * (s + 1) / 2 + b;
  if (z > static_cast<u128>(~std::uint64_t{0})) throw NotInImage("Cantor pair exceeds 64 bits");
  return static_cast<std::uint64_t>(z);
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
  while (w > 0 && triangle(w) > z) --w;
  while (triangle(w + 1) <= z) ++w;
  std::uint64_t b = z - static_cast<std::uint64_t>(triangle(w));
  return {w - b, b};
}

std::pair<std::uint64_t, Rational> pair_encode(std::uint64_t n) {
  auto [a, b] = cantor_unpair(n);
  return {a, rational_at(b)};
}

std::uint64_t pair_decode(std::uint64_t a, const Rational& q) { return cantor_pair(a, rational_index(q)); }

} // namespace diagcl
