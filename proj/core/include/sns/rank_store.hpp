#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

namespace sns {

/// Number of stored values below x and equal to x.
struct RankCounts {
  std::size_t less = 0;
  std::size_t equal = 0;
};

/// Ordered multiset of reals answering rank queries in O(log n).
///
/// Backed by a counted B+ tree: leaves hold sorted distinct keys with their
/// multiplicities, inner nodes hold the total multiplicity of each child.
/// Wide nodes keep the tree shallow and each level's data contiguous, so a
/// query touches a handful of cache lines even with millions of values.
///
/// With a capacity W set, the store keeps only the W most recent insertions
/// and evicts in arrival (FIFO) order.
class RankStore {
 public:
  RankStore();
  explicit RankStore(std::optional<std::size_t> capacity);

  /// Inserts x (finite), evicting the oldest value first if the window is full.
  void insert(double x);

  /// Removes one instance of x. Returns false when x is not present.
  /// Only available on unwindowed stores; windowed stores evict on their own.
  bool erase(double x);

  /// Both counts from a single descent.
  RankCounts counts(double x) const;
  std::size_t count_lt(double x) const { return counts(x).less; }
  std::size_t count_le(double x) const {
    const RankCounts c = counts(x);
    return c.less + c.equal;
  }
  std::size_t count_eq(double x) const { return counts(x).equal; }

  std::size_t size() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }
  std::optional<std::size_t> capacity() const noexcept { return capacity_; }

  /// Number of distinct keys currently held.
  std::size_t node_count() const noexcept { return distinct_; }

  void clear();

 private:
  using Index = std::uint32_t;
  static constexpr std::uint32_t kLeafCap = 64;
  static constexpr std::uint32_t kInnerCap = 64;

  struct Leaf {
    std::uint32_t n = 0;
    double keys[kLeafCap];
    std::uint32_t counts[kLeafCap];
  };

  // Invariant: every key under child i-1 < seps[i] <= every key under child i.
  // seps[0] is unused.
  struct Inner {
    std::uint32_t n = 0;
    double seps[kInnerCap];
    Index child[kInnerCap];
    std::uint64_t totals[kInnerCap];
  };

  struct Split {
    Index right;
    double sep;
    std::uint64_t right_total;
  };

  Index new_leaf();
  Index new_inner();
  std::uint64_t leaf_total(Index leaf) const noexcept;
  std::uint64_t inner_total(Index inner) const noexcept;
  static std::uint32_t route(const Inner& node, double x) noexcept;

  std::optional<Split> insert_at(int level, Index node, double x);
  bool erase_at(int level, Index node, double x);
  void rebalance_child(int child_level, Index parent, std::uint32_t i);
  void erase_value(double x);

  std::vector<Leaf> leaves_;
  std::vector<Inner> inners_;
  std::vector<Index> free_leaves_;
  std::vector<Index> free_inners_;
  Index root_ = 0;
  int height_ = 0;  // 0 when the root is a leaf
  std::size_t total_ = 0;
  std::size_t distinct_ = 0;
  std::optional<std::size_t> capacity_;
  std::deque<double> arrivals_;
};

}  // namespace sns
