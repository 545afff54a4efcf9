#pragma once

#include <span>
#include <vector>

namespace sidechain {

/// Partition of M binary variables into contiguous residue blocks.
///
/// Block b owns variables [offset(b), offset(b) + size(b)). Variable k maps to
/// qubit k throughout the library.
class BlockLayout {
 public:
  BlockLayout() = default;
  explicit BlockLayout(std::vector<int> sizes);
  static BlockLayout uniform(int num_blocks, int block_size);

  int num_blocks() const { return static_cast<int>(sizes_.size()); }
  int num_variables() const { return total_; }
  int size(int block) const { return sizes_.at(static_cast<std::size_t>(block)); }
  int offset(int block) const { return offsets_.at(static_cast<std::size_t>(block)); }
  std::span<const int> sizes() const { return sizes_; }
  std::span<const int> offsets() const { return offsets_; }
  int block_of(int variable) const;

  bool operator==(const BlockLayout& other) const { return sizes_ == other.sizes_; }

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  std::vector<int> owner_;
  int total_ = 0;
};

}  // namespace sidechain
