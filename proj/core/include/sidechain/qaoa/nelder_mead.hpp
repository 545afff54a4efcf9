#pragma once

#include <Eigen/Dense>

#include "sidechain/qaoa/optimizer.hpp"

namespace sidechain {

/// Downhill simplex with the standard coefficients (reflect 1, expand 2,
/// contract 1/2, shrink 1/2). Converges when both the simplex extent
/// (infinity norm) and the spread of values fall below final_step.
class NelderMead final : public Optimizer {
 public:
  explicit NelderMead(OptimizerOptions options = {});

  std::vector<double> start(std::vector<double> x0) override;
  std::optional<std::vector<double>> propose(std::span<const double> params, double value) override;

  bool done() const override { return phase_ == Phase::finished; }
  std::vector<double> best() const override;
  double best_value() const override;
  int evaluations() const override { return evaluations_; }

 private:
  using Vec = Eigen::VectorXd;
  enum class Phase { idle, initial, reflect, expand, contract_outside, contract_inside, shrink, finished };

  std::optional<std::vector<double>> next_iteration();
  std::optional<std::vector<double>> begin_shrink();
  std::vector<double> emit(const Vec& x) const;
  void order();

  OptimizerOptions options_;
  Phase phase_ = Phase::idle;
  int n_ = 0;
  int evaluations_ = 0;
  int cursor_ = 0;
  Eigen::MatrixXd points_;  // column per vertex, sorted by value after order()
  Vec values_;
  Vec centroid_;
  Vec reflected_;
  double f_reflected_ = 0.0;
};

}  // namespace sidechain
