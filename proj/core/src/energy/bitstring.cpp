#include "sidechain/energy/bitstring.hpp"

#include <stdexcept>

#include "sidechain/energy/problem.hpp"

namespace sidechain {

Bitstring::Bitstring(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw std::invalid_argument("bit values must be 0 or 1");
  }
}

Bitstring Bitstring::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring may only contain '0' and '1'");
    bits.push_back(c == '1' ? 1 : 0);
  }
  return Bitstring(std::move(bits));
}

Bitstring Bitstring::from_index(std::uint64_t index, int size) {
  if (size < 0 || size > 64) throw std::invalid_argument("index form supports at most 64 bits");
  Bitstring out(static_cast<std::size_t>(size));
  for (int k = 0; k < size; ++k) out.bits_[static_cast<std::size_t>(k)] = (index >> k) & 1U;
  return out;
}

int Bitstring::hamming_weight() const {
  int w = 0;
  for (auto b : bits_) w += b;
  return w;
}

std::uint64_t Bitstring::to_index() const {
  if (bits_.size() > 64) throw std::length_error("bitstring longer than 64 bits has no index form");
  std::uint64_t index = 0;
  for (std::size_t k = 0; k < bits_.size(); ++k) index |= static_cast<std::uint64_t>(bits_[k]) << k;
  return index;
}

std::string Bitstring::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<int> block_weights(const Bitstring& bits, const BlockLayout& layout) {
  if (static_cast<int>(bits.size()) != layout.num_variables()) {
    throw std::invalid_argument("bitstring length " + std::to_string(bits.size()) +
                                " does not match layout size " + std::to_string(layout.num_variables()));
  }
  std::vector<int> weights(static_cast<std::size_t>(layout.num_blocks()), 0);
  for (int b = 0; b < layout.num_blocks(); ++b) {
    for (int k = 0; k < layout.size(b); ++k) weights[static_cast<std::size_t>(b)] += bits[static_cast<std::size_t>(layout.offset(b) + k)];
  }
  return weights;
}

bool is_valid(const Bitstring& bits, const BlockLayout& layout) {
  for (int w : block_weights(bits, layout)) {
    if (w != 1) return false;
  }
  return true;
}

DecodeResult decode(const Bitstring& bits, const BlockLayout& layout) {
  const auto weights = block_weights(bits, layout);
  DecodeResult result;
  for (int b = 0; b < layout.num_blocks(); ++b) {
    const int w = weights[static_cast<std::size_t>(b)];
    if (w != 1) {
      result.violations.push_back({b, w});
      continue;
    }
    for (int k = 0; k < layout.size(b); ++k) {
      if (bits[static_cast<std::size_t>(layout.offset(b) + k)]) result.rotamers.push_back(k);
    }
  }
  if (!result.valid()) result.rotamers.clear();
  return result;
}

DecodeResult decode(const Bitstring& bits, const RotamerProblem& problem) {
  return decode(bits, problem.layout());
}

Bitstring encode(const std::vector<int>& rotamers, const BlockLayout& layout) {
  if (static_cast<int>(rotamers.size()) != layout.num_blocks()) {
    throw std::invalid_argument("configuration needs one rotamer per residue");
  }
  Bitstring bits(static_cast<std::size_t>(layout.num_variables()));
  for (int b = 0; b < layout.num_blocks(); ++b) {
    const int r = rotamers[static_cast<std::size_t>(b)];
    if (r < 0 || r >= layout.size(b)) {
      throw std::out_of_range("rotamer " + std::to_string(r) + " out of range for residue " + std::to_string(b));
    }
    bits.set(static_cast<std::size_t>(layout.offset(b) + r), true);
  }
  return bits;
}

}  // namespace sidechain
