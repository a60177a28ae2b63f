#pragma once

#include <memory>
#include <vector>

#include "pilekit/group.hpp"

namespace pilekit {

using Point = int;

class GSet;
using GSetPtr = std::shared_ptr<const GSet>;

/// A finite right action of a finite group on points 0..size-1, given by the
/// full action table.  Construction checks the action axioms.  The empty
/// space (size 0) is allowed.
class GSet {
 public:
  static GSetPtr validate(GroupPtr group,
                          const std::vector<std::vector<int>>& action);

  const GroupPtr& group() const { return group_; }
  int size() const { return size_; }
  Point act(Point t, Elem g) const { return action_[t * group_->order() + g]; }

  std::vector<std::vector<Point>> orbits() const;  // sorted by least point
  std::vector<int> orbit_index() const;            // point -> orbit position
  std::vector<std::vector<int>> action_table() const;

 private:
  GSet() = default;

  GroupPtr group_;
  int size_ = 0;
  std::vector<Point> action_;  // flat size x order
};

/// A partition of a GSet's points into disjoint nonempty blocks.  Blocks are
/// kept sorted internally and ordered by least point.
class Partition {
 public:
  Partition(GSetPtr gset, std::vector<std::vector<Point>> blocks);

  const GSetPtr& gset() const { return gset_; }
  const std::vector<std::vector<Point>>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int block_of(Point t) const { return block_of_[t]; }

  static Partition singletons(GSetPtr s);
  static Partition one_block(GSetPtr s);

 private:
  GSetPtr gset_;
  std::vector<std::vector<Point>> blocks_;
  std::vector<int> block_of_;
};

/// True iff p refines q blockwise.
bool refines(const Partition& p, const Partition& q);

/// Blockwise intersection of two partitions of the same gset.
Partition common_refinement(const Partition& a, const Partition& b);

// ---- operations ------------------------------------------------------

Subgroup stabilizer(const GSet& s, Point t);

/// Elements mapping z onto itself.  Throws EmptySet.
Subgroup setwise_stabilizer(const GSet& s, const std::vector<Point>& z);

/// True iff z is mapped by every element onto itself or a disjoint set.
bool is_block(const GSet& s, const std::vector<Point>& z);

bool is_g_partition(const Partition& p);

/// Common refinement of all translates of p; the coarsest G-partition finer
/// than p.  Idempotent on G-partitions.
Partition refine_to_g_partition(const Partition& p);

struct AlignedPartition {
  Partition partition;
  std::vector<Point> witnesses;  // one point per block
};

/// A G-partition finer than p in which every block's setwise stabilizer is
/// the point stabilizer of the returned witness inside it.  Follows the
/// inductive construction: pick a maximal stabilizer, split its constancy
/// locus along its normalizer, translate, recurse on the rest.
AlignedPartition stabilizer_aligned_g_partition(const Partition& p);

}  // namespace pilekit
