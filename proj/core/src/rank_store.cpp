#include "sns/rank_store.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sns {
namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": value must be finite");
}

}  // namespace

RankStore::RankStore() { root_ = new_leaf(); }

RankStore::RankStore(std::optional<std::size_t> capacity) : capacity_(capacity) {
  if (capacity_ && *capacity_ == 0) throw std::invalid_argument("RankStore: window must be > 0");
  root_ = new_leaf();
}

RankStore::Index RankStore::new_leaf() {
  if (!free_leaves_.empty()) {
    const Index i = free_leaves_.back();
    free_leaves_.pop_back();
    leaves_[i].n = 0;
    return i;
  }
  if (leaves_.size() >= std::numeric_limits<Index>::max()) throw std::length_error("RankStore: too many nodes");
  leaves_.emplace_back();
  return static_cast<Index>(leaves_.size() - 1);
}

RankStore::Index RankStore::new_inner() {
  if (!free_inners_.empty()) {
    const Index i = free_inners_.back();
    free_inners_.pop_back();
    inners_[i].n = 0;
    return i;
  }
  if (inners_.size() >= std::numeric_limits<Index>::max()) throw std::length_error("RankStore: too many nodes");
  inners_.emplace_back();
  return static_cast<Index>(inners_.size() - 1);
}

std::uint64_t RankStore::leaf_total(Index leaf) const noexcept {
  const Leaf& l = leaves_[leaf];
  std::uint64_t s = 0;
  for (std::uint32_t j = 0; j < l.n; ++j) s += l.counts[j];
  return s;
}

std::uint64_t RankStore::inner_total(Index inner) const noexcept {
  const Inner& node = inners_[inner];
  std::uint64_t s = 0;
  for (std::uint32_t j = 0; j < node.n; ++j) s += node.totals[j];
  return s;
}

std::uint32_t RankStore::route(const Inner& node, double x) noexcept {
  const double* pos = std::upper_bound(node.seps + 1, node.seps + node.n, x);
  return static_cast<std::uint32_t>(pos - node.seps) - 1;
}

RankCounts RankStore::counts(double x) const {
  require_finite(x, "RankStore::counts");
  std::size_t less = 0;
  Index node = root_;
  for (int level = height_; level > 0; --level) {
    const Inner& in = inners_[node];
    const std::uint32_t i = route(in, x);
    for (std::uint32_t j = 0; j < i; ++j) less += in.totals[j];
    node = in.child[i];
  }
  const Leaf& leaf = leaves_[node];
  const auto j = static_cast<std::uint32_t>(std::lower_bound(leaf.keys, leaf.keys + leaf.n, x) - leaf.keys);
  for (std::uint32_t k = 0; k < j; ++k) less += leaf.counts[k];
  const std::size_t equal = (j < leaf.n && leaf.keys[j] == x) ? leaf.counts[j] : 0;
  return {less, equal};
}

std::optional<RankStore::Split> RankStore::insert_at(int level, Index node, double x) {
  if (level == 0) {
    Leaf& leaf = leaves_[node];
    const auto j = static_cast<std::uint32_t>(std::lower_bound(leaf.keys, leaf.keys + leaf.n, x) - leaf.keys);
    if (j < leaf.n && leaf.keys[j] == x) {
      ++leaf.counts[j];
      return std::nullopt;
    }
    std::copy_backward(leaf.keys + j, leaf.keys + leaf.n, leaf.keys + leaf.n + 1);
    std::copy_backward(leaf.counts + j, leaf.counts + leaf.n, leaf.counts + leaf.n + 1);
    leaf.keys[j] = x;
    leaf.counts[j] = 1;
    ++leaf.n;
    ++distinct_;
    if (leaf.n < kLeafCap) return std::nullopt;

    const Index right = new_leaf();
    Leaf& l = leaves_[node];
    Leaf& r = leaves_[right];
    const std::uint32_t half = l.n / 2;
    r.n = l.n - half;
    std::copy(l.keys + half, l.keys + l.n, r.keys);
    std::copy(l.counts + half, l.counts + l.n, r.counts);
    l.n = half;
    return Split{right, r.keys[0], leaf_total(right)};
  }

  const std::uint32_t i = route(inners_[node], x);
  const std::optional<Split> below = insert_at(level - 1, inners_[node].child[i], x);
  Inner& in = inners_[node];
  ++in.totals[i];
  if (!below) return std::nullopt;

  in.totals[i] -= below->right_total;
  std::copy_backward(in.seps + i + 1, in.seps + in.n, in.seps + in.n + 1);
  std::copy_backward(in.child + i + 1, in.child + in.n, in.child + in.n + 1);
  std::copy_backward(in.totals + i + 1, in.totals + in.n, in.totals + in.n + 1);
  in.seps[i + 1] = below->sep;
  in.child[i + 1] = below->right;
  in.totals[i + 1] = below->right_total;
  ++in.n;
  if (in.n < kInnerCap) return std::nullopt;

  const Index right = new_inner();
  Inner& l = inners_[node];
  Inner& r = inners_[right];
  const std::uint32_t half = l.n / 2;
  r.n = l.n - half;
  std::copy(l.seps + half, l.seps + l.n, r.seps);
  std::copy(l.child + half, l.child + l.n, r.child);
  std::copy(l.totals + half, l.totals + l.n, r.totals);
  l.n = half;
  return Split{right, r.seps[0], inner_total(right)};
}

void RankStore::rebalance_child(int child_level, Index parent, std::uint32_t i) {
  Inner& p = inners_[parent];
  const std::uint32_t li = (i + 1 < p.n) ? i : i - 1;
  const std::uint32_t ri = li + 1;
  const Index left = p.child[li];
  const Index right = p.child[ri];

  bool merged = false;
  if (child_level == 0) {
    Leaf& l = leaves_[left];
    Leaf& r = leaves_[right];
    const std::uint32_t combined = l.n + r.n;
    if (combined < kLeafCap) {
      std::copy(r.keys, r.keys + r.n, l.keys + l.n);
      std::copy(r.counts, r.counts + r.n, l.counts + l.n);
      l.n = combined;
      free_leaves_.push_back(right);
      merged = true;
    } else {
      double keys[2 * kLeafCap];
      std::uint32_t counts[2 * kLeafCap];
      std::copy(l.keys, l.keys + l.n, keys);
      std::copy(r.keys, r.keys + r.n, keys + l.n);
      std::copy(l.counts, l.counts + l.n, counts);
      std::copy(r.counts, r.counts + r.n, counts + l.n);
      const std::uint32_t half = combined / 2;
      l.n = half;
      r.n = combined - half;
      std::copy(keys, keys + half, l.keys);
      std::copy(counts, counts + half, l.counts);
      std::copy(keys + half, keys + combined, r.keys);
      std::copy(counts + half, counts + combined, r.counts);
      p.seps[ri] = r.keys[0];
      p.totals[li] = leaf_total(left);
      p.totals[ri] = leaf_total(right);
    }
  } else {
    Inner& l = inners_[left];
    Inner& r = inners_[right];
    const std::uint32_t combined = l.n + r.n;
    // The right node's unused first separator becomes the parent's.
    r.seps[0] = p.seps[ri];
    if (combined < kInnerCap) {
      std::copy(r.seps, r.seps + r.n, l.seps + l.n);
      std::copy(r.child, r.child + r.n, l.child + l.n);
      std::copy(r.totals, r.totals + r.n, l.totals + l.n);
      l.n = combined;
      free_inners_.push_back(right);
      merged = true;
    } else {
      double seps[2 * kInnerCap];
      Index child[2 * kInnerCap];
      std::uint64_t totals[2 * kInnerCap];
      std::copy(l.seps, l.seps + l.n, seps);
      std::copy(r.seps, r.seps + r.n, seps + l.n);
      std::copy(l.child, l.child + l.n, child);
      std::copy(r.child, r.child + r.n, child + l.n);
      std::copy(l.totals, l.totals + l.n, totals);
      std::copy(r.totals, r.totals + r.n, totals + l.n);
      const std::uint32_t half = combined / 2;
      l.n = half;
      r.n = combined - half;
      std::copy(seps, seps + half, l.seps);
      std::copy(child, child + half, l.child);
      std::copy(totals, totals + half, l.totals);
      std::copy(seps + half, seps + combined, r.seps);
      std::copy(child + half, child + combined, r.child);
      std::copy(totals + half, totals + combined, r.totals);
      p.seps[ri] = r.seps[0];
      p.totals[li] = inner_total(left);
      p.totals[ri] = inner_total(right);
    }
  }

  if (merged) {
    p.totals[li] += p.totals[ri];
    std::copy(p.seps + ri + 1, p.seps + p.n, p.seps + ri);
    std::copy(p.child + ri + 1, p.child + p.n, p.child + ri);
    std::copy(p.totals + ri + 1, p.totals + p.n, p.totals + ri);
    --p.n;
  }
}

bool RankStore::erase_at(int level, Index node, double x) {
  if (level == 0) {
    Leaf& leaf = leaves_[node];
    const auto j = static_cast<std::uint32_t>(std::lower_bound(leaf.keys, leaf.keys + leaf.n, x) - leaf.keys);
    if (j == leaf.n || leaf.keys[j] != x) return false;
    if (--leaf.counts[j] == 0) {
      std::copy(leaf.keys + j + 1, leaf.keys + leaf.n, leaf.keys + j);
      std::copy(leaf.counts + j + 1, leaf.counts + leaf.n, leaf.counts + j);
      --leaf.n;
      --distinct_;
    }
    return true;
  }
  const std::uint32_t i = route(inners_[node], x);
  const Index child = inners_[node].child[i];
  if (!erase_at(level - 1, child, x)) return false;
  --inners_[node].totals[i];
  const std::uint32_t child_n = level == 1 ? leaves_[child].n : inners_[child].n;
  const std::uint32_t floor = (level == 1 ? kLeafCap : kInnerCap) / 4;
  if (child_n < floor && inners_[node].n > 1) rebalance_child(level - 1, node, i);
  return true;
}

void RankStore::erase_value(double x) {
  if (!erase_at(height_, root_, x)) return;
  --total_;
  while (height_ > 0 && inners_[root_].n == 1) {
    free_inners_.push_back(root_);
    root_ = inners_[root_].child[0];
    --height_;
  }
}

void RankStore::insert(double x) {
  require_finite(x, "RankStore::insert");
  if (capacity_) {
    if (arrivals_.size() == *capacity_) {
      erase_value(arrivals_.front());
      arrivals_.pop_front();
    }
    arrivals_.push_back(x);
  }
  const std::optional<Split> split = insert_at(height_, root_, x);
  ++total_;
  if (split) {
    const std::uint64_t left_total = total_ - split->right_total;
    const Index old_root = root_;
    root_ = new_inner();
    Inner& r = inners_[root_];
    r.n = 2;
    r.child[0] = old_root;
    r.child[1] = split->right;
    r.seps[1] = split->sep;
    r.totals[0] = left_total;
    r.totals[1] = split->right_total;
    ++height_;
  }
}

bool RankStore::erase(double x) {
  require_finite(x, "RankStore::erase");
  if (capacity_) throw std::logic_error("RankStore::erase: not supported on windowed stores");
  const std::size_t before = total_;
  erase_value(x);
  return total_ < before;
}

void RankStore::clear() {
  leaves_.clear();
  inners_.clear();
  free_leaves_.clear();
  free_inners_.clear();
  arrivals_.clear();
  height_ = 0;
  total_ = 0;
  distinct_ = 0;
  root_ = new_leaf();
}

}  // namespace sns
