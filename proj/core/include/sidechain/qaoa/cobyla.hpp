#pragma once

#include <Eigen/Dense>

#include "sidechain/qaoa/optimizer.hpp"

namespace sidechain {

/// Powell's COBYLA restricted to unconstrained problems.
///
/// Keeps a simplex of n + 1 evaluated points, fits the linear interpolant,
/// and alternates trust-region steps of length rho along the negative
/// interpolated gradient with simplex-geometry repair steps. rho halves from
/// initial_step down to final_step when neither makes progress.
class Cobyla final : public Optimizer {
 public:
  explicit Cobyla(OptimizerOptions options = {});

  std::vector<double> start(std::vector<double> x0) override;
  std::optional<std::vector<double>> propose(std::span<const double> params, double value) override;

  bool done() const override { return phase_ == Phase::finished; }
  std::vector<double> best() const override;
  double best_value() const override { return f_best_; }
  int evaluations() const override { return evaluations_; }
  double rho() const { return rho_; }

 private:
  using Vec = Eigen::VectorXd;
  enum class Phase { idle, initial, geometry, trust, finished };

  std::optional<std::vector<double>> iterate();
  std::optional<std::vector<double>> reduce_or_continue();
  std::optional<std::vector<double>> finish();
  std::vector<double> emit(const Vec& x);
  void select_best();

  OptimizerOptions options_;
  Phase phase_ = Phase::idle;
  int n_ = 0;
  int evaluations_ = 0;
  double rho_ = 0.0;

  Vec x_best_;
  double f_best_ = 0.0;
  Eigen::MatrixXd vertices_;  // column j: vertex j
  Vec f_vertices_;

  // Cached per iteration.
  Eigen::MatrixXd sim_;   // column j: vertex j - best
  Eigen::MatrixXd simi_;  // inverse of sim_
  Vec vsig_, veta_;
  bool acceptable_ = false;
  bool trust_branch_ = false;

  int pending_vertex_ = 0;  // initial phase: coordinate being probed
  Vec pending_step_;
  double predicted_ = 0.0;
};

}  // namespace sidechain
