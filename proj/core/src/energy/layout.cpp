#include "sidechain/energy/layout.hpp"

#include <stdexcept>
#include <string>

namespace sidechain {

BlockLayout::BlockLayout(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  offsets_.reserve(sizes_.size());
  for (std::size_t b = 0; b < sizes_.size(); ++b) {
    if (sizes_[b] < 1) {
      throw std::invalid_argument("block " + std::to_string(b) + " must hold at least one variable");
    }
    offsets_.push_back(total_);
    total_ += sizes_[b];
    owner_.insert(owner_.end(), static_cast<std::size_t>(sizes_[b]), static_cast<int>(b));
  }
}

BlockLayout BlockLayout::uniform(int num_blocks, int block_size) {
  if (num_blocks < 1) throw std::invalid_argument("layout needs at least one block");
  return BlockLayout(std::vector<int>(static_cast<std::size_t>(num_blocks), block_size));
}

int BlockLayout::block_of(int variable) const {
  if (variable < 0 || variable >= total_) {
    throw std::out_of_range("variable " + std::to_string(variable) + " outside layout of " +
                            std::to_string(total_));
  }
  return owner_[static_cast<std::size_t>(variable)];
}

}  // namespace sidechain
