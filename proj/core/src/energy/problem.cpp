#include "sidechain/energy/problem.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include <fmt/format.h>

namespace sidechain {

double RotamerProblem::self_energy(int residue, int rotamer) const {
  return self_.at(static_cast<std::size_t>(residue)).at(static_cast<std::size_t>(rotamer));
}

const Eigen::MatrixXd* RotamerProblem::pair_table(int res_i, int res_j) const {
  auto it = pairs_.find({res_i, res_j});
  return it == pairs_.end() ? nullptr : &it->second;
}

bool RotamerProblem::has_pair_table(int res_i, int res_j) const {
  if (res_i > res_j) std::swap(res_i, res_j);
  return pairs_.count({res_i, res_j}) != 0;
}

double RotamerProblem::pair_energy(int res_i, int rot_i, int res_j, int rot_j) const {
  if (res_i > res_j) {
    std::swap(res_i, res_j);
    std::swap(rot_i, rot_j);
  }
  const auto* table = pair_table(res_i, res_j);
  return table ? (*table)(rot_i, rot_j) : 0.0;
}

double RotamerProblem::energy(const std::vector<int>& config) const {
  if (static_cast<int>(config.size()) != num_residues()) {
    throw std::invalid_argument(fmt::format("configuration has {} entries, problem has {} residues",
                                            config.size(), num_residues()));
  }
  double total = 0.0;
  for (int i = 0; i < num_residues(); ++i) {
    const int a = config[static_cast<std::size_t>(i)];
    if (a < 0 || a >= rotamers(i)) {
      throw std::out_of_range(fmt::format("rotamer {} out of range for residue {}", a, i));
    }
    total += self_[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
  }
  for (const auto& [key, table] : pairs_) {
    total += table(config[static_cast<std::size_t>(key.first)], config[static_cast<std::size_t>(key.second)]);
  }
  return total;
}

ProblemBuilder::ProblemBuilder(std::vector<int> rotamers_per_residue, bool nearest_neighbor_only) {
  if (rotamers_per_residue.empty()) throw std::invalid_argument("problem needs at least one residue");
  problem_.layout_ = BlockLayout(std::move(rotamers_per_residue));
  problem_.nearest_neighbor_ = nearest_neighbor_only;
  for (int n : problem_.layout_.sizes()) {
    problem_.self_.emplace_back(static_cast<std::size_t>(n), 0.0);
    self_set_.emplace_back(static_cast<std::size_t>(n), false);
  }
}

void ProblemBuilder::check_index(int residue, int rotamer) const {
  if (residue < 0 || residue >= problem_.num_residues()) {
    throw std::out_of_range(fmt::format("residue {} out of range [0, {})", residue, problem_.num_residues()));
  }
  if (rotamer < 0 || rotamer >= problem_.rotamers(residue)) {
    throw std::out_of_range(fmt::format("rotamer {} out of range for residue {} with {} rotamers", rotamer,
                                        residue, problem_.rotamers(residue)));
  }
}

ProblemBuilder& ProblemBuilder::set_self_energy(int residue, int rotamer, double energy) {
  check_index(residue, rotamer);
  auto r = static_cast<std::size_t>(residue);
  auto a = static_cast<std::size_t>(rotamer);
  if (self_set_[r][a] && problem_.self_[r][a] != energy) {
    throw std::invalid_argument(fmt::format("conflicting self energy for ({}, {})", residue, rotamer));
  }
  problem_.self_[r][a] = energy;
  self_set_[r][a] = true;
  return *this;
}

ProblemBuilder& ProblemBuilder::set_pair_energy(int res_i, int rot_i, int res_j, int rot_j, double energy) {
  check_index(res_i, rot_i);
  check_index(res_j, rot_j);
  if (res_i == res_j) {
    throw std::invalid_argument(fmt::format("pair energy within residue {}", res_i));
  }
  if (problem_.nearest_neighbor_ && std::abs(res_i - res_j) != 1) {
    throw std::invalid_argument(fmt::format(
        "pair energy between non-adjacent residues {} and {} in nearest-neighbor mode", res_i, res_j));
  }
  if (res_i > res_j) {
    std::swap(res_i, res_j);
    std::swap(rot_i, rot_j);
  }
  const std::pair<int, int> key{res_i, res_j};
  auto [table, fresh] = problem_.pairs_.try_emplace(
      key, Eigen::MatrixXd::Zero(problem_.rotamers(res_i), problem_.rotamers(res_j)));
  auto& set = pair_set_[key];
  if (fresh) set.setConstant(problem_.rotamers(res_i), problem_.rotamers(res_j), false);
  if (set(rot_i, rot_j)) {
    const double previous = table->second(rot_i, rot_j);
    if (std::abs(previous - energy) > kSymmetryTolerance) {
      throw std::invalid_argument(fmt::format(
          "asymmetric pair energy for ({},{})-({},{}): {} vs {}", res_i, rot_i, res_j, rot_j, previous, energy));
    }
    return *this;
  }
  table->second(rot_i, rot_j) = energy;
  set(rot_i, rot_j) = true;
  return *this;
}

RotamerProblem ProblemBuilder::build() const {
  for (int i = 0; i < problem_.num_residues(); ++i) {
    for (int a = 0; a < problem_.rotamers(i); ++a) {
      if (!self_set_[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]) {
        throw std::invalid_argument(fmt::format("missing self energy for residue {} rotamer {}", i, a));
      }
    }
  }
  return problem_;
}

}  // namespace sidechain
