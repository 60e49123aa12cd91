#include "model.hpp"

#include <algorithm>

namespace diagcl {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};

std::string join(const std::set<std::uint64_t>& xs, const std::string& prefix = "") {
  std::string out;
  for (auto x : xs) {
    if (!out.empty()) out += ',';
    out += prefix + std::to_string(x);
  }
  return out;
}

} // namespace

std::string variant_name(const BasicOpen& o) {
  static constexpr const char* names[] = {"SingletonPt", "CofInBlock", "FinPt1", "FinPt2",   "Ball",
                                          "ExtPt",       "SatPair",    "BlockOpen", "CofOmega", "CofInD"};
  return names[o.index()];
}

std::string to_string(const BasicOpen& o) {
  return std::visit(
      overloaded{
          [](const SingletonPt& v) { return "SingletonPt(" + v.point.to_string() + ")"; },
          [](const CofInBlock& v) { return "CofInBlock(" + v.block.to_string() + ",excl=[" + join(v.excluded) + "])"; },
          [](const FinPt1& v) {
            return "FinPt1(" + PointAddr::finite(v.block, v.element).to_string() + ",excl=[" + join(v.excluded, "s:") +
                   "])";
          },
          [](const FinPt2& v) {
            return "FinPt2(" + PointAddr::finite(v.block, v.element).to_string() + ",excl=[" +
                   join(v.excluded_blocks, "i:") + "])";
          },
          [](const Ball& v) { return v.ball.to_string(); },
          [](const ExtPt& v) {
            return "ExtPt(" + PointAddr::finite(v.block, v.element).to_string() + "," + v.ball.to_string() + ")";
          },
          [](const SatPair& v) { return "SatPair(" + v.point.to_string() + ")"; },
          [](const BlockOpen& v) { return "BlockOpen(" + v.block.to_string() + ")"; },
          [](const CofOmega& v) { return "CofOmega(excl=[" + join(v.excluded) + "])"; },
          [](const CofInD& v) {
            return "CofInD(" + std::to_string(v.designated) + ",excl=[" + join(v.excluded) + "])";
          },
      },
      o);
}

std::string Certificate::to_string() const { return diagcl::to_string(open_a) + "\n" + diagcl::to_string(open_b); }

namespace detail {

BasicOpen Model::t1_open(const PointAddr&, const PointAddr&) const {
  throw NotT1Construction(kind_name(kind_) + " is not a T1 construction");
}

void Model::require_point(const PointAddr& p) const {
  if (!accepts(p)) throw InvalidAddress("point " + p.to_string() + " is not in the ground set of " + describe());
}

void Model::require_open(const BasicOpen& o) const {
  if (!owns(o)) throw ForeignVariant(variant_name(o) + " does not belong to " + describe());
  check_parameters(o);
}

std::set<std::uint64_t> random_exclusions(Rng& rng, std::uint64_t bound, std::uint64_t keep) {
  std::set<std::uint64_t> out;
  auto count = rng.below(4);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto x = rng.between(0, bound);
    if (x != keep) out.insert(x);
  }
  return out;
}

std::set<std::uint64_t> set_union(const std::set<std::uint64_t>& a, const std::set<std::uint64_t>& b) {
  std::set<std::uint64_t> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

} // namespace detail

} // namespace diagcl
