#include "sidechain/qaoa/nelder_mead.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sidechain {

NelderMead::NelderMead(OptimizerOptions options) : options_(options) {
  if (!(options.initial_step > 0.0) || !(options.final_step > 0.0)) {
    throw std::invalid_argument("Nelder-Mead needs positive step sizes");
  }
  if (options.max_evaluations < 1) throw std::invalid_argument("max_evaluations must be positive");
}

std::vector<double> NelderMead::emit(const Vec& x) const { return std::vector<double>(x.data(), x.data() + x.size()); }

std::vector<double> NelderMead::best() const {
  const int known = phase_ == Phase::initial ? std::max(1, cursor_) : n_ + 1;
  Eigen::Index i = 0;
  values_.head(known).minCoeff(&i);
  return emit(points_.col(i));
}

double NelderMead::best_value() const {
  const int known = phase_ == Phase::initial ? std::max(1, cursor_) : n_ + 1;
  return values_.head(known).minCoeff();
}

std::vector<double> NelderMead::start(std::vector<double> x0) {
  if (x0.empty()) throw std::invalid_argument("Nelder-Mead needs at least one variable");
  n_ = static_cast<int>(x0.size());
  points_.resize(n_, n_ + 1);
  values_ = Vec::Constant(n_ + 1, std::numeric_limits<double>::infinity());
  const Vec base = Eigen::Map<const Vec>(x0.data(), n_);
  for (int j = 0; j <= n_; ++j) {
    points_.col(j) = base;
    if (j > 0) points_(j - 1, j) += options_.initial_step;
  }
  evaluations_ = 0;
  cursor_ = 0;
  phase_ = Phase::initial;
  return x0;
}

void NelderMead::order() {
  std::vector<int> idx(static_cast<std::size_t>(n_ + 1));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return values_(a) < values_(b); });
  Eigen::MatrixXd p(n_, n_ + 1);
  Vec v(n_ + 1);
  for (int k = 0; k <= n_; ++k) {
    p.col(k) = points_.col(idx[static_cast<std::size_t>(k)]);
    v(k) = values_(idx[static_cast<std::size_t>(k)]);
  }
  points_ = std::move(p);
  values_ = std::move(v);
}

std::optional<std::vector<double>> NelderMead::next_iteration() {
  order();
  const double extent = (points_.rightCols(n_).colwise() - points_.col(0)).cwiseAbs().maxCoeff();
  const double spread = values_(n_) - values_(0);
  if (evaluations_ >= options_.max_evaluations || (extent <= options_.final_step && spread <= options_.final_step)) {
    phase_ = Phase::finished;
    return std::nullopt;
  }
  centroid_ = points_.leftCols(n_).rowwise().mean();
  reflected_ = centroid_ + (centroid_ - points_.col(n_));
  phase_ = Phase::reflect;
  return emit(reflected_);
}

std::optional<std::vector<double>> NelderMead::begin_shrink() {
  for (int j = 1; j <= n_; ++j) points_.col(j) = points_.col(0) + 0.5 * (points_.col(j) - points_.col(0));
  cursor_ = 1;
  phase_ = Phase::shrink;
  return emit(points_.col(1));
}

std::optional<std::vector<double>> NelderMead::propose(std::span<const double> params, double value) {
  if (phase_ == Phase::idle) throw std::logic_error("Nelder-Mead: propose() before start()");
  if (phase_ == Phase::finished) return std::nullopt;
  if (static_cast<int>(params.size()) != n_) throw std::invalid_argument("Nelder-Mead: parameter count changed");
  ++evaluations_;
  const Vec x = Eigen::Map<const Vec>(params.data(), n_);
  auto replace_worst = [&](const Vec& p, double f) {
    points_.col(n_) = p;
    values_(n_) = f;
    return next_iteration();
  };

  switch (phase_) {
    case Phase::initial:
      values_(cursor_) = value;
      if (++cursor_ <= n_ && evaluations_ < options_.max_evaluations) return emit(points_.col(cursor_));
      return next_iteration();
    case Phase::reflect:
      f_reflected_ = value;
      if (value < values_(0)) {
        phase_ = Phase::expand;
        return emit(centroid_ + 2.0 * (centroid_ - points_.col(n_)));
      }
      if (value < values_(n_ - 1)) return replace_worst(reflected_, value);
      if (value < values_(n_)) {
        phase_ = Phase::contract_outside;
        return emit(centroid_ + 0.5 * (reflected_ - centroid_));
      }
      phase_ = Phase::contract_inside;
      return emit(centroid_ + 0.5 * (points_.col(n_) - centroid_));
    case Phase::expand:
      return value < f_reflected_ ? replace_worst(x, value) : replace_worst(reflected_, f_reflected_);
    case Phase::contract_outside:
      if (value <= f_reflected_) return replace_worst(x, value);
      return begin_shrink();
    case Phase::contract_inside:
      if (value < values_(n_)) return replace_worst(x, value);
      return begin_shrink();
    case Phase::shrink:
      values_(cursor_) = value;
      if (++cursor_ <= n_) return emit(points_.col(cursor_));
      return next_iteration();
    default:
      break;
  }
  throw std::logic_error("Nelder-Mead: unexpected state");
}

}  // namespace sidechain
