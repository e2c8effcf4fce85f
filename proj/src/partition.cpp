#include "bpsg/partition.hpp"

#include <stdexcept>
#include <string>

namespace bpsg {

BlockPartition make_partition(const std::vector<int>& dims) {
  if (dims.empty())
    throw std::invalid_argument("make_partition: empty dimension list");
  BlockPartition p;
  p.dims = dims;
  p.offsets.resize(dims.size());
  int off = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1)
      throw std::invalid_argument("make_partition: block dimension " +
                                  std::to_string(dims[i]) +
                                  " at index " + std::to_string(i));
    p.offsets[i] = off;
    off += dims[i];
  }
  p.total = off;
  return p;
}

BlockPartition make_equal_partition(int d, int n) {
  if (d < 1 || n < 1 || n > d)
    throw std::invalid_argument("make_equal_partition: need 1 <= n <= d");
  std::vector<int> dims(n, d / n);
  for (int i = 0; i < d % n; ++i) dims[i] += 1;
  return make_partition(dims);
}

void check_block_index(const BlockPartition& p, int i) {
  if (i < 0 || i >= p.blocks())
    throw std::invalid_argument("block index " + std::to_string(i) +
                                " out of range [0," +
                                std::to_string(p.blocks()) + ")");
}

namespace {
void check_length(const BlockPartition& p, const Eigen::VectorXd& x) {
  if (x.size() != p.total)
    throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                " does not match partition total " +
                                std::to_string(p.total));
}
}  // namespace

Eigen::VectorBlock<Eigen::VectorXd> block_slice(const BlockPartition& p,
                                                Eigen::VectorXd& x, int i) {
  check_block_index(p, i);
  check_length(p, x);
  return x.segment(p.offsets[i], p.dims[i]);
}

Eigen::VectorBlock<const Eigen::VectorXd> block_slice(const BlockPartition& p,
                                                      const Eigen::VectorXd& x,
                                                      int i) {
  check_block_index(p, i);
  check_length(p, x);
  return x.segment(p.offsets[i], p.dims[i]);
}

}  // namespace bpsg
