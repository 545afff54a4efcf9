#include "sidechain/qaoa/cobyla.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace sidechain {
namespace {

constexpr double kAlpha = 0.25;  // simplex acceptability: min height / rho
constexpr double kBeta = 2.1;    // simplex acceptability: max edge / rho
constexpr double kGamma = 0.5;   // geometry step length factor
constexpr double kDelta = 1.1;   // edge threshold when replacing a vertex

}  // namespace

Cobyla::Cobyla(OptimizerOptions options) : options_(options) {
  if (!(options.initial_step > 0.0) || !(options.final_step > 0.0) || options.final_step > options.initial_step) {
    throw std::invalid_argument("COBYLA needs 0 < final_step <= initial_step");
  }
  if (options.max_evaluations < 1) throw std::invalid_argument("max_evaluations must be positive");
}

std::vector<double> Cobyla::emit(const Vec& x) { return std::vector<double>(x.data(), x.data() + x.size()); }

std::vector<double> Cobyla::best() const { return std::vector<double>(x_best_.data(), x_best_.data() + x_best_.size()); }

std::vector<double> Cobyla::start(std::vector<double> x0) {
  if (x0.empty()) throw std::invalid_argument("COBYLA needs at least one variable");
  n_ = static_cast<int>(x0.size());
  x_best_ = Eigen::Map<const Vec>(x0.data(), n_);
  vertices_.resize(n_, n_);
  f_vertices_.resize(n_);
  rho_ = options_.initial_step;
  evaluations_ = 0;
  pending_vertex_ = -1;
  trust_branch_ = false;
  phase_ = Phase::initial;
  return x0;
}

std::optional<std::vector<double>> Cobyla::propose(std::span<const double> params, double value) {
  if (phase_ == Phase::idle) throw std::logic_error("COBYLA: propose() before start()");
  if (phase_ == Phase::finished) return std::nullopt;
  if (static_cast<int>(params.size()) != n_) throw std::invalid_argument("COBYLA: parameter count changed");
  ++evaluations_;
  const Vec x = Eigen::Map<const Vec>(params.data(), n_);

  switch (phase_) {
    case Phase::initial: {
      if (pending_vertex_ < 0) {
        f_best_ = value;
      } else if (value < f_best_) {
        // The probe becomes the best point; the old best takes its slot.
        vertices_.col(pending_vertex_) = x_best_;
        f_vertices_(pending_vertex_) = f_best_;
        x_best_ = x;
        f_best_ = value;
      } else {
        vertices_.col(pending_vertex_) = x;
        f_vertices_(pending_vertex_) = value;
      }
      if (evaluations_ >= options_.max_evaluations) return finish();
      if (++pending_vertex_ < n_) {
        Vec probe = x_best_;
        probe(pending_vertex_) += rho_;
        return emit(probe);
      }
      return iterate();
    }
    case Phase::geometry:
      vertices_.col(pending_vertex_) = x;
      f_vertices_(pending_vertex_) = value;
      if (evaluations_ >= options_.max_evaluations) return finish();
      return iterate();
    case Phase::trust: {
      const Vec& dx = pending_step_;
      double actual = f_best_ - value;
      double predicted = predicted_;
      if (value == f_best_) predicted = actual = 0.0;

      // Pick the vertex to replace by the trial point.
      double ratio = actual <= 0.0 ? 1.0 : 0.0;
      int drop = -1;
      Vec sigbar(n_);
      for (int j = 0; j < n_; ++j) {
        const double t = std::abs(simi_.row(j).dot(dx));
        if (t > ratio) {
          drop = j;
          ratio = t;
        }
        sigbar(j) = t * vsig_(j);
      }
      double edge = kDelta * rho_;
      int far = -1;
      const double parsig = kAlpha * rho_;
      for (int j = 0; j < n_; ++j) {
        if (sigbar(j) >= parsig || sigbar(j) >= vsig_(j)) {
          const double t = actual > 0.0 ? (dx - sim_.col(j)).norm() : veta_(j);
          if (t > edge) {
            far = j;
            edge = t;
          }
        }
      }
      if (far >= 0) drop = far;
      if (drop >= 0) {
        vertices_.col(drop) = x;
        f_vertices_(drop) = value;
      }
      if (evaluations_ >= options_.max_evaluations) return finish();
      if (drop >= 0 && actual > 0.0 && actual >= 0.1 * predicted) return iterate();
      return reduce_or_continue();
    }
    default:
      break;
  }
  throw std::logic_error("COBYLA: unexpected state");
}

void Cobyla::select_best() {
  int best = -1;
  double fmin = f_best_;
  for (int j = 0; j < n_; ++j) {
    if (f_vertices_(j) < fmin) {
      best = j;
      fmin = f_vertices_(j);
    }
  }
  if (best < 0) return;
  Vec old = x_best_;
  const double f_old = f_best_;
  x_best_ = vertices_.col(best);
  f_best_ = f_vertices_(best);
  vertices_.col(best) = old;
  f_vertices_(best) = f_old;
}

std::optional<std::vector<double>> Cobyla::iterate() {
  select_best();
  sim_ = vertices_.colwise() - x_best_;
  simi_ = sim_.inverse();
  // Interpolated gradient: g . sim_j = f_j - f_best.
  const Vec df = f_vertices_.array() - f_best_;
  const Vec g = simi_.transpose() * df;

  const double parsig = kAlpha * rho_;
  const double pareta = kBeta * rho_;
  vsig_.resize(n_);
  veta_.resize(n_);
  acceptable_ = true;
  for (int j = 0; j < n_; ++j) {
    vsig_(j) = 1.0 / simi_.row(j).norm();
    veta_(j) = sim_.col(j).norm();
    if (vsig_(j) < parsig || veta_(j) > pareta) acceptable_ = false;
  }

  if (!trust_branch_ && !acceptable_) {
    int drop = -1;
    double t = pareta;
    for (int j = 0; j < n_; ++j) {
      if (veta_(j) > t) {
        drop = j;
        t = veta_(j);
      }
    }
    if (drop < 0) {
      t = parsig;
      for (int j = 0; j < n_; ++j) {
        if (vsig_(j) < t) {
          drop = j;
          t = vsig_(j);
        }
      }
    }
    Vec dx = (kGamma * rho_ * vsig_(drop)) * simi_.row(drop).transpose();
    if (g.dot(dx) > 0.0) dx = -dx;
    pending_vertex_ = drop;
    phase_ = Phase::geometry;
    return emit(x_best_ + dx);
  }

  const double gnorm = g.norm();
  if (gnorm == 0.0 || !std::isfinite(gnorm)) {
    trust_branch_ = true;
    return reduce_or_continue();
  }
  pending_step_ = (-rho_ / gnorm) * g;
  predicted_ = rho_ * gnorm;
  trust_branch_ = true;
  phase_ = Phase::trust;
  return emit(x_best_ + pending_step_);
}

std::optional<std::vector<double>> Cobyla::reduce_or_continue() {
  if (!acceptable_) {
    trust_branch_ = false;
    return iterate();
  }
  if (rho_ > options_.final_step) {
    rho_ *= 0.5;
    if (rho_ <= 1.5 * options_.final_step) rho_ = options_.final_step;
    return iterate();
  }
  return finish();
}

std::optional<std::vector<double>> Cobyla::finish() {
  select_best();
  phase_ = Phase::finished;
  return std::nullopt;
}

}  // namespace sidechain
