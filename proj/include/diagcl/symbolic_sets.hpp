#pragma once

// Decidable representations of the infinite sets the constructions need.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>

namespace diagcl {

/// Finite or cofinite subset of a designated countably infinite family.
/// Elements are positions 0, 1, 2, ... within the family; different
/// families never share elements.
class CofiniteSubset {
public:
  enum class Mode : std::uint8_t { Finite, Cofinite };

  static CofiniteSubset finite(std::string domain, std::set<std::uint64_t> members);
  static CofiniteSubset cofinite(std::string domain, std::set<std::uint64_t> excluded);

  const std::string& domain() const { return domain_; }
  Mode mode() const { return mode_; }
  /// Members in Finite mode, exclusions in Cofinite mode.
  const std::set<std::uint64_t>& listed() const { return listed_; }
  bool is_empty() const { return mode_ == Mode::Finite && listed_.empty(); }

  friend bool operator==(const CofiniteSubset&, const CofiniteSubset&) = default;
  std::string to_string() const;

private:
  CofiniteSubset(std::string domain, Mode mode, std::set<std::uint64_t> listed)
      : domain_(std::move(domain)), mode_(mode), listed_(std::move(listed)) {}

  std::string domain_;
  Mode mode_ = Mode::Finite;
  std::set<std::uint64_t> listed_;
};

bool cof_member(const CofiniteSubset& s, std::uint64_t index);
/// Intersection; for different domains the empty Finite set on s1's domain.
CofiniteSubset cof_intersect(const CofiniteSubset& s1, const CofiniteSubset& s2);
bool cof_disjoint(const CofiniteSubset& s1, const CofiniteSubset& s2);
bool cof_subset(const CofiniteSubset& inner, const CofiniteSubset& outer);

/// {offset + modulus * k : k in N}.
struct ResidueClassSet {
  std::uint64_t offset = 0;
  std::uint64_t modulus = 1;

  ResidueClassSet() = default;
  /// Throws std::invalid_argument for modulus 0.
  ResidueClassSet(std::uint64_t offset, std::uint64_t modulus);

  bool contains(std::uint64_t x) const { return x >= offset && (x - offset) % modulus == 0; }
  std::string to_string() const;

  friend bool operator==(const ResidueClassSet&, const ResidueClassSet&) = default;
};

/// Decided by congruence solvability: a common element exists iff the
/// offsets agree modulo gcd of the moduli.
bool residues_disjoint(const ResidueClassSet& d1, const ResidueClassSet& d2);

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational, always reduced with a positive denominator.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t value) : value_(value) {} // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);

  BigInt numerator() const;
  BigInt denominator() const;
  int sign() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.value_ + b.value_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.value_ - b.value_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.value_ * b.value_); }
  /// Throws std::domain_error on division by zero.
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-value_); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "p/q".
  std::string to_string() const;

private:
  using Value = boost::multiprecision::cpp_rational;
  explicit Rational(Value v) : value_(std::move(v)) {}
  Value value_;
};

Rational abs(const Rational& r);
/// Parses "p/q" or an integer "p"; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// A rational point with a level in {0,1}.
struct LeveledRational {
  Rational q;
  unsigned level = 0;

  friend bool operator==(const LeveledRational&, const LeveledRational&) = default;
  friend auto operator<=>(const LeveledRational& a, const LeveledRational& b) {
    if (auto c = a.q <=> b.q; c != 0) return c;
    return a.level <=> b.level;
  }
};

/// Point (x, q, level) of N x Q x {0,1}.
struct BallPoint {
  std::uint64_t x = 0;
  Rational q;
  unsigned level = 0;
};

/// Cofinite subset of {x} x {q' : |q' - center| < radius} x {0,1}.
class RationalBall {
public:
  /// Throws std::invalid_argument unless radius > 0, levels are 0 or 1 and
  /// every exclusion lies inside the ball.
  RationalBall(std::uint64_t x_index, Rational center, Rational radius, std::set<LeveledRational> excluded = {});

  std::uint64_t x_index() const { return x_; }
  const Rational& center() const { return center_; }
  const Rational& radius() const { return radius_; }
  const std::set<LeveledRational>& excluded() const { return excluded_; }

  /// |q - center| < radius, ignoring exclusions.
  bool interval_contains(const Rational& q) const;
  /// Copy with p added to the exclusions (no-op when p is outside the interval).
  RationalBall excluding(const LeveledRational& p) const;

  friend bool operator==(const RationalBall&, const RationalBall&) = default;
  /// "ball(x=<n>,q=<p/q>,d=<p/q>,excl=[(p/q,l),...])".
  std::string to_string() const;

private:
  std::uint64_t x_ = 0;
  Rational center_;
  Rational radius_;
  std::set<LeveledRational> excluded_;
};

bool ball_member(const RationalBall& b, const BallPoint& p);
/// Different x, or |q1 - q2| >= d1 + d2. Exclusions never matter: two
/// overlapping open rational intervals share infinitely many points.
bool ball_disjoint(const RationalBall& b1, const RationalBall& b2);
/// Exact containment inner ⊆ outer.
bool ball_subset(const RationalBall& inner, const RationalBall& outer);

/// Enumeration of Q: 0, then cw(1), -cw(1), cw(2), -cw(2), ... where cw is
/// the Calkin-Wilf sequence 1/1, 1/2, 2/1, 1/3, 3/2, ...
Rational rational_at(std::uint64_t index);
/// Inverse of rational_at; throws NotInImage when the index exceeds 64 bits.
std::uint64_t rational_index(const Rational& q);

/// Cantor pairing: pair(a, b) = (a+b)(a+b+1)/2 + b.
std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z);

/// Fixed bijection N <-> N x Q: n = pair(a, b) maps to (a, rational_at(b)).
std::pair<std::uint64_t, Rational> pair_encode(std::uint64_t n);
std::uint64_t pair_decode(std::uint64_t a, const Rational& q);

} // namespace diagcl
