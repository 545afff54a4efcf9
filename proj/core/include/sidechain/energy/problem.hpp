#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sidechain/energy/layout.hpp"

namespace sidechain {

/// Self and pair energy tables for a chain of residues.
///
/// Immutable; construct through ProblemBuilder. Pair tables are stored once per
/// unordered residue pair (i < j) as an n_i x n_j matrix.
class RotamerProblem {
 public:
  int num_residues() const { return layout_.num_blocks(); }
  int rotamers(int residue) const { return layout_.size(residue); }
  int num_variables() const { return layout_.num_variables(); }
  const BlockLayout& layout() const { return layout_; }
  bool nearest_neighbor_only() const { return nearest_neighbor_; }

  double self_energy(int residue, int rotamer) const;
  /// Zero when no table exists for the residue pair.
  double pair_energy(int res_i, int rot_i, int res_j, int rot_j) const;
  bool has_pair_table(int res_i, int res_j) const;
  /// Table for i < j, or nullptr.
  const Eigen::MatrixXd* pair_table(int res_i, int res_j) const;
  const std::map<std::pair<int, int>, Eigen::MatrixXd>& pair_tables() const { return pairs_; }

  /// Total energy of one rotamer per residue.
  double energy(const std::vector<int>& config) const;

 private:
  friend class ProblemBuilder;
  BlockLayout layout_;
  bool nearest_neighbor_ = true;
  std::vector<std::vector<double>> self_;
  std::map<std::pair<int, int>, Eigen::MatrixXd> pairs_;
};

class ProblemBuilder {
 public:
  static constexpr double kSymmetryTolerance = 1e-9;

  ProblemBuilder(std::vector<int> rotamers_per_residue, bool nearest_neighbor_only);

  ProblemBuilder& set_self_energy(int residue, int rotamer, double energy);
  /// Accepts either orientation. Setting an entry that was already given,
  /// directly or mirrored, must agree within kSymmetryTolerance.
  ProblemBuilder& set_pair_energy(int res_i, int rot_i, int res_j, int rot_j, double energy);

  /// Throws if any self entry is missing.
  RotamerProblem build() const;

 private:
  void check_index(int residue, int rotamer) const;

  RotamerProblem problem_;
  std::vector<std::vector<bool>> self_set_;
  std::map<std::pair<int, int>, Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>> pair_set_;
};

}  // namespace sidechain
