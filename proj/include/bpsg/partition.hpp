#pragma once

#include <Eigen/Core>
#include <vector>

namespace bpsg {

// Contiguous split of a length-d vector into n blocks.
struct BlockPartition {
  std::vector<int> dims;
  std::vector<int> offsets;  // offsets[i] = first coordinate of block i
  int total = 0;

  int blocks() const { return static_cast<int>(dims.size()); }
};

// Throws std::invalid_argument on an empty list or a nonpositive dimension.
BlockPartition make_partition(const std::vector<int>& dims);

// Near-equal split: the leading (d mod n) blocks get one extra coordinate.
BlockPartition make_equal_partition(int d, int n);

void check_block_index(const BlockPartition& p, int i);

// Read/write view of block i. Throws on index or length mismatch.
Eigen::VectorBlock<Eigen::VectorXd> block_slice(const BlockPartition& p,
                                                Eigen::VectorXd& x, int i);
Eigen::VectorBlock<const Eigen::VectorXd> block_slice(const BlockPartition& p,
                                                      const Eigen::VectorXd& x,
                                                      int i);

}  // namespace bpsg
