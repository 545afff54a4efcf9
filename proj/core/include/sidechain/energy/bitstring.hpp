#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sidechain/energy/layout.hpp"

namespace sidechain {

class RotamerProblem;

/// Fixed-length assignment of the M binary decision variables.
///
/// Textual form lists x_0 first: "0110" means x_1 = x_2 = 1. As a basis-state
/// index, x_k is bit k (qubit 0 is the least significant bit).
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::size_t size) : bits_(size, 0) {}
  explicit Bitstring(std::vector<std::uint8_t> bits);

  static Bitstring from_string(std::string_view text);
  static Bitstring from_index(std::uint64_t index, int size);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t k) const { return bits_[k] != 0; }
  void set(std::size_t k, bool value) { bits_.at(k) = value ? 1 : 0; }
  void flip(std::size_t k) { bits_.at(k) ^= 1; }

  int hamming_weight() const;
  /// Index of the basis state; requires size() <= 64.
  std::uint64_t to_index() const;
  std::string to_string() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  auto operator<=>(const Bitstring&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Hamming weight of each residue block.
std::vector<int> block_weights(const Bitstring& bits, const BlockLayout& layout);

/// True iff every block holds exactly one set bit.
bool is_valid(const Bitstring& bits, const BlockLayout& layout);

struct BlockViolation {
  int block;
  int weight;
};

/// Per-residue rotamer choice, or the blocks that break the one-hot rule.
struct DecodeResult {
  std::vector<int> rotamers;
  std::vector<BlockViolation> violations;

  bool valid() const { return violations.empty(); }
};

DecodeResult decode(const Bitstring& bits, const BlockLayout& layout);
DecodeResult decode(const Bitstring& bits, const RotamerProblem& problem);

/// One-hot encoding of a rotamer configuration.
Bitstring encode(const std::vector<int>& rotamers, const BlockLayout& layout);

}  // namespace sidechain
