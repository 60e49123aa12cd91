#include "diagcl/relations.hpp"

#include "diagcl/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace diagcl {

namespace {

std::string join_sizes(const std::vector<std::uint64_t>& sizes) {
  std::string out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sizes[i]);
  }
  return out;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<std::uint64_t> parse_natural(std::string_view s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

Count parse_count(std::string_view s) {
  if (s == "omega") return Count::omega();
  auto v = parse_natural(s);
  if (!v) throw SyntaxError("bad count '" + std::string(s) + "'");
  return Count(*v);
}

std::vector<std::uint64_t> parse_sizes(std::string_view body, bool allow_empty) {
  std::vector<std::uint64_t> sizes;
  if (body.empty()) {
    if (!allow_empty) throw SyntaxError("cycle[] needs at least one size");
    return sizes;
  }
  for (auto part : split(body, ',')) {
    auto v = parse_natural(part);
    if (!v) throw SyntaxError("bad block size '" + std::string(part) + "'");
    if (*v < 2) throw SyntaxError("finite block sizes must be at least 2");
    sizes.push_back(*v);
  }
  return sizes;
}

FiniteBlocks parse_finspec(std::string_view s) {
  FiniteBlocks fb;
  std::string_view body;
  if (s.starts_with("cycle[") && s.ends_with("]")) {
    fb.cycle = true;
    body = s.substr(6, s.size() - 7);
  } else if (s.starts_with("[") && s.ends_with("]")) {
    body = s.substr(1, s.size() - 2);
  } else {
    throw SyntaxError("bad finite-block list '" + std::string(s) + "'");
  }
  fb.sizes = parse_sizes(body, !fb.cycle);
  return fb;
}

char class_letter(PointClass c) {
  switch (c) {
  case PointClass::Singleton: return 's';
  case PointClass::FiniteBlock: return 'f';
  case PointClass::InfiniteBlock: return 'i';
  }
  return '?';
}

} // namespace

std::uint64_t Count::value() const {
  if (omega_) throw std::logic_error("Count::value() on omega");
  return value_;
}

Count operator+(Count a, Count b) {
  if (a.omega_ || b.omega_) return Count::omega();
  return Count(a.value_ + b.value_);
}

std::string Count::to_string() const { return omega_ ? "omega" : std::to_string(value_); }

Count FiniteBlocks::count() const {
  return cycle ? Count::omega() : Count(sizes.size());
}

std::uint64_t FiniteBlocks::size_of(std::uint64_t block) const {
  if (cycle) return sizes[block % sizes.size()];
  return sizes.at(block);
}

PartitionSpec::PartitionSpec(Count singletons, FiniteBlocks finite, Count infinite)
    : singletons_(singletons), finite_(std::move(finite)), infinite_(infinite) {
  if (finite_.cycle && finite_.sizes.empty()) throw SyntaxError("cycle[] needs at least one size");
  for (auto s : finite_.sizes)
    if (s < 2) throw SyntaxError("finite block sizes must be at least 2");
  bool infinite_ground = singletons_.is_omega() || finite_.cycle ||
                         infinite_.is_omega() || infinite_.value() >= 1;
  if (!infinite_ground) throw GroundSetFinite("ground set is finite: " + to_string());
}

bool PartitionSpec::part_finite() const {
  return singletons_.is_finite() && !finite_.cycle && infinite_.is_finite();
}

std::string PartitionSpec::to_string() const {
  std::string fin = finite_.cycle ? "cycle[" + join_sizes(finite_.sizes) + "]"
                                  : "[" + join_sizes(finite_.sizes) + "]";
  return "singletons=" + singletons_.to_string() + ";fin=" + fin + ";inf=" + infinite_.to_string();
}

PartitionSpec parse_spec(std::string_view text) {
  std::optional<Count> singletons, infinite;
  std::optional<FiniteBlocks> finite;
  auto clauses = split(text, ';');
  if (clauses.size() != 3) throw SyntaxError("expected three ';'-separated clauses");
  for (auto clause : clauses) {
    auto eq = clause.find('=');
    if (eq == std::string_view::npos) throw SyntaxError("clause without '=': '" + std::string(clause) + "'");
    auto key = clause.substr(0, eq);
    auto value = clause.substr(eq + 1);
    if (key == "singletons") {
      if (singletons) throw SyntaxError("duplicate clause 'singletons'");
      singletons = parse_count(value);
    } else if (key == "inf") {
      if (infinite) throw SyntaxError("duplicate clause 'inf'");
      infinite = parse_count(value);
    } else if (key == "fin") {
      if (finite) throw SyntaxError("duplicate clause 'fin'");
      finite = parse_finspec(value);
    } else {
      throw SyntaxError("unknown clause '" + std::string(key) + "'");
    }
  }
  return PartitionSpec(*singletons, *finite, *infinite);
}

std::string BlockRef::to_string() const {
  return std::string(1, class_letter(cls)) + ":" + std::to_string(index);
}

std::string PointAddr::to_string() const {
  if (cls == PointClass::Singleton) return "s:" + std::to_string(block);
  return std::string(1, class_letter(cls)) + ":" + std::to_string(block) + ":" + std::to_string(element);
}

PointAddr parse_point(std::string_view text) {
  auto parts = split(text, ':');
  auto bad = [&] { return InvalidAddress("bad point address '" + std::string(text) + "'"); };
  if (parts.empty()) throw bad();
  std::vector<std::uint64_t> nums;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    auto v = parse_natural(parts[i]);
    if (!v) throw bad();
    nums.push_back(*v);
  }
  if (parts[0] == "s" && nums.size() == 1) return PointAddr::singleton(nums[0]);
  if (parts[0] == "f" && nums.size() == 2) return PointAddr::finite(nums[0], nums[1]);
  if (parts[0] == "i" && nums.size() == 2) return PointAddr::infinite(nums[0], nums[1]);
  throw bad();
}

bool is_valid_address(const PartitionSpec& spec, const PointAddr& p) {
  switch (p.cls) {
  case PointClass::Singleton:
    return p.element == 0 && spec.singleton_count().covers(p.block);
  case PointClass::FiniteBlock:
    return spec.finite_block_count().covers(p.block) &&
           p.element < spec.finite_blocks().size_of(p.block);
  case PointClass::InfiniteBlock:
    return spec.infinite_block_count().covers(p.block);
  }
  return false;
}

void require_valid_address(const PartitionSpec& spec, const PointAddr& p) {
  if (!is_valid_address(spec, p))
    throw InvalidAddress("point " + p.to_string() + " does not exist in " + spec.to_string());
}

bool same_block(const PartitionSpec& spec, const PointAddr& p, const PointAddr& q) {
  require_valid_address(spec, p);
  require_valid_address(spec, q);
  return p.cls == q.cls && p.block == q.block;
}

bool is_t1_realisable(const PartitionSpec& spec) {
  return !(spec.part_finite() && !spec.finite_blocks().sizes.empty());
}

// ---------------------------------------------------------------------------

FiniteRelation::FiniteRelation(unsigned n) : n_(n), rows_(n, 0) {
  if (n > max_finite_points) throw std::invalid_argument("FiniteRelation supports at most 64 points");
}

FiniteRelation FiniteRelation::identity(unsigned n) {
  FiniteRelation r(n);
  for (unsigned x = 0; x < n; ++x) r.set(x, x);
  return r;
}

FiniteRelation FiniteRelation::full(unsigned n) {
  FiniteRelation r(n);
  PointSet all = n == 64 ? ~PointSet{0} : (PointSet{1} << n) - 1;
  for (unsigned x = 0; x < n; ++x) r.rows_[x] = all;
  return r;
}

void FiniteRelation::set(unsigned x, unsigned y, bool value) {
  if (value)
    rows_[x] |= PointSet{1} << y;
  else
    rows_[x] &= ~(PointSet{1} << y);
}

void FiniteRelation::set_symmetric(unsigned x, unsigned y, bool value) {
  set(x, y, value);
  set(y, x, value);
}

bool FiniteRelation::is_reflexive() const {
  for (unsigned x = 0; x < n_; ++x)
    if (!get(x, x)) return false;
  return true;
}

bool FiniteRelation::is_symmetric() const {
  for (unsigned x = 0; x < n_; ++x)
    for (unsigned y = x + 1; y < n_; ++y)
      if (get(x, y) != get(y, x)) return false;
  return true;
}

bool FiniteRelation::is_transitive() const {
  for (unsigned x = 0; x < n_; ++x) {
    PointSet reach = rows_[x];
    PointSet via = 0;
    for (PointSet m = reach; m; m &= m - 1) via |= rows_[std::countr_zero(m)];
    if ((via & ~reach) != 0) return false;
  }
  return true;
}

bool FiniteRelation::is_subset_of(const FiniteRelation& other) const {
  if (n_ != other.n_) return false;
  for (unsigned x = 0; x < n_; ++x)
    if ((rows_[x] & ~other.rows_[x]) != 0) return false;
  return true;
}

std::string FiniteRelation::to_matrix_string() const {
  std::string out;
  for (unsigned x = 0; x < n_; ++x) {
    for (unsigned y = 0; y < n_; ++y) out += get(x, y) ? '1' : '0';
    out += '\n';
  }
  return out;
}

FinitePartition::FinitePartition(unsigned n, const std::vector<std::vector<unsigned>>& blocks)
    : n_(n), block_of_(n, 0) {
  if (n > max_finite_points) throw std::invalid_argument("FinitePartition supports at most 64 points");
  PointSet seen = 0;
  for (const auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("empty block");
    PointSet mask = 0;
    for (auto x : b) {
      if (x >= n) throw std::invalid_argument("point out of range: " + std::to_string(x));
      mask |= PointSet{1} << x;
    }
    if (mask & seen) throw std::invalid_argument("blocks overlap");
    seen |= mask;
    blocks_.push_back(mask);
  }
  PointSet all = n == 64 ? ~PointSet{0} : (PointSet{1} << n) - 1;
  if (seen != all) throw std::invalid_argument("blocks do not cover every point");
  std::sort(blocks_.begin(), blocks_.end(),
            [](PointSet a, PointSet b) { return std::countr_zero(a) < std::countr_zero(b); });
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    for (PointSet m = blocks_[i]; m; m &= m - 1) block_of_[std::countr_zero(m)] = i;
}

bool FinitePartition::has_nonsingleton_block() const {
  return std::any_of(blocks_.begin(), blocks_.end(), [](PointSet b) { return std::popcount(b) >= 2; });
}

std::string FinitePartition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += '|';
    bool first = true;
    for (PointSet m = blocks_[i]; m; m &= m - 1) {
      if (!first) out += ',';
      out += std::to_string(std::countr_zero(m));
      first = false;
    }
  }
  return out;
}

FiniteRelation eq_of_partition(const FinitePartition& p) {
  FiniteRelation r(p.size());
  for (auto block : p.blocks())
    for (PointSet m = block; m; m &= m - 1)
      for (PointSet k = block; k; k &= k - 1) r.set(std::countr_zero(m), std::countr_zero(k));
  return r;
}

FinitePartition partition_of_eq(const FiniteRelation& r) {
  if (!r.is_reflexive()) throw NotEquivalence("relation is not reflexive");
  if (!r.is_symmetric()) throw NotEquivalence("relation is not symmetric");
  if (!r.is_transitive()) throw NotEquivalence("relation is not transitive");
  std::vector<std::vector<unsigned>> blocks;
  PointSet done = 0;
  for (unsigned x = 0; x < r.size(); ++x) {
    if ((done >> x) & 1U) continue;
    std::vector<unsigned> block;
    for (PointSet m = r.row(x); m; m &= m - 1) block.push_back(std::countr_zero(m));
    done |= r.row(x);
    blocks.push_back(std::move(block));
  }
  return FinitePartition(r.size(), blocks);
}

std::vector<FinitePartition> all_partitions(unsigned n) {
  std::vector<FinitePartition> out;
  std::vector<unsigned> label(n, 0);
  // Restricted growth strings: label[0] = 0, label[i] <= 1 + max(label[0..i-1]).
  auto emit = [&] {
    unsigned nblocks = n ? *std::max_element(label.begin(), label.end()) + 1 : 0;
    std::vector<std::vector<unsigned>> blocks(nblocks);
    for (unsigned x = 0; x < n; ++x) blocks[label[x]].push_back(x);
    out.emplace_back(n, blocks);
  };
  auto rec = [&](auto&& self, unsigned i, unsigned max_label) -> void {
    if (i == n) {
      emit();
      return;
    }
    for (unsigned l = 0; l <= max_label + 1; ++l) {
      label[i] = l;
      self(self, i + 1, std::max(max_label, l));
    }
  };
  if (n == 0)
    emit();
  else
    rec(rec, 1, 0);
  return out;
}

FinitePartition parse_partition(std::string_view text) {
  std::vector<std::vector<unsigned>> blocks;
  unsigned n = 0;
  if (!text.empty()) {
    for (auto part : split(text, '|')) {
      std::vector<unsigned> block;
      for (auto item : split(part, ',')) {
        auto v = parse_natural(item);
        if (!v || *v >= max_finite_points) throw SyntaxError("bad point '" + std::string(item) + "' in partition");
        block.push_back(static_cast<unsigned>(*v));
        n = std::max(n, static_cast<unsigned>(*v) + 1);
      }
      blocks.push_back(std::move(block));
    }
  }
  try {
    return FinitePartition(n, blocks);
  } catch (const std::invalid_argument& e) {
    throw SyntaxError(std::string("invalid partition: ") + e.what());
  }
}

} // namespace diagcl
