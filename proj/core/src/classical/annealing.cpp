#include "sidechain/classical/annealing.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "sidechain/util/parallel.hpp"
#include "sidechain/util/rng.hpp"

namespace sidechain {
namespace {

constexpr double kTailLimit = 1e8;
constexpr double kMinVisitBound = 1e-10;

class Annealer {
 public:
  Annealer(const ContinuousObjective& f, int dim, const SaConfig& cfg, const StopPredicate& stop)
      : f_(f), dim_(dim), cfg_(cfg), stop_(stop), rng_(cfg.seed) {
    const double qv = cfg.visit;
    factor2_ = std::exp((4.0 - qv) * std::log(qv - 1.0));
    factor3_ = std::exp((2.0 - qv) * std::log(2.0) / (qv - 1.0));
    factor4p_ = std::sqrt(std::numbers::pi) * factor2_ / (factor3_ * (3.0 - qv));
    factor5_ = 1.0 / (qv - 1.0) - 0.5;
    const double d1 = 2.0 - factor5_;
    factor6_ = std::numbers::pi * (1.0 - factor5_) / std::sin(std::numbers::pi * (1.0 - factor5_)) /
               std::exp(std::lgamma(d1));
    k_ = 100LL * dim;
  }

  ContinuousResult run() {
    reset();
    emin_ = cur_e_;
    xmin_ = cur_;
    const double qv = cfg_.visit;
    const double t1 = std::exp((qv - 1.0) * std::log(2.0)) - 1.0;
    const double t_restart = cfg_.initial_temperature * cfg_.restart_temperature_ratio;
    int iteration = 0;
    bool need_stop = halted();
    while (!need_stop) {
      for (int i = 0; i < cfg_.max_iterations; ++i) {
        const double s = static_cast<double>(i) + 2.0;
        const double t2 = std::exp((qv - 1.0) * std::log(s)) - 1.0;
        const double temperature = cfg_.initial_temperature * t1 / t2;
        if (iteration >= cfg_.max_iterations) {
          need_stop = true;
          break;
        }
        if (temperature < t_restart) {
          reset();
          if (halted()) need_stop = true;
          break;
        }
        if (chain(i, temperature)) {
          need_stop = true;
          break;
        }
        if (cfg_.local_search && chain_local_search()) {
          need_stop = true;
          break;
        }
        ++iteration;
      }
    }
    return {best_e_, best_, nfev_, iteration, stopped_};
  }

 private:
  bool halted() const { return stopped_ || nfev_ >= cfg_.max_evaluations; }

  double eval(const std::vector<double>& y) {
    ++nfev_;
    const double e = f_(y);
    if (stop_ && !stopped_ && stop_(e, y)) stopped_ = true;
    return e;
  }

  void reset() {
    for (;;) {
      cur_.resize(static_cast<std::size_t>(dim_));
      for (auto& v : cur_) v = rng_.uniform();
      cur_e_ = eval(cur_);
      if (std::isfinite(cur_e_) || halted()) break;
    }
    if (!has_best_ || cur_e_ < best_e_) {
      best_e_ = cur_e_;
      best_ = cur_;
      has_best_ = true;
    }
  }

  std::vector<double> visit_fn(double temperature, int count) {
    const double qv = cfg_.visit;
    const double factor1 = std::exp(std::log(temperature) / (qv - 1.0));
    const double factor4 = factor4p_ * factor1;
    const double sigma = std::exp(-(qv - 1.0) * std::log(factor6_ / factor4) / (3.0 - qv));
    std::vector<double> out(static_cast<std::size_t>(count));
    for (auto& v : out) {
      const double x = rng_.normal();
      const double y = rng_.normal();
      const double den = std::exp((qv - 1.0) * std::log(std::abs(y)) / (3.0 - qv));
      v = x * sigma / den;
      if (std::isnan(v)) v = 0.0;
    }
    return out;
  }

  static double wrap(double v) {
    const double b = std::fmod(v, 1.0) + 1.0;
    return std::fmod(b, 1.0);
  }

  std::vector<double> visiting(const std::vector<double>& x, int step, double temperature) {
    std::vector<double> out = x;
    if (step < dim_) {
      auto visits = visit_fn(temperature, dim_);
      const double upper = rng_.uniform();
      const double lower = rng_.uniform();
      for (int k = 0; k < dim_; ++k) {
        double v = visits[static_cast<std::size_t>(k)];
        if (v > kTailLimit) {
          v = kTailLimit * upper;
        } else if (v < -kTailLimit) {
          v = -kTailLimit * lower;
        }
        auto& o = out[static_cast<std::size_t>(k)];
        o = wrap(v + x[static_cast<std::size_t>(k)]);
        if (std::abs(o) < kMinVisitBound) o += 1e-10;
      }
      return out;
    }
    double v = visit_fn(temperature, 1)[0];
    if (v > kTailLimit) {
      v = kTailLimit * rng_.uniform();
    } else if (v < -kTailLimit) {
      v = -kTailLimit * rng_.uniform();
    }
    auto& o = out[static_cast<std::size_t>(step - dim_)];
    o = wrap(v + o);
    if (std::abs(o) < kMinVisitBound) o += kMinVisitBound;
    return out;
  }

  void accept_reject(int j, double e, const std::vector<double>& x) {
    const double r = rng_.uniform();
    const double qa = cfg_.accept;
    const double base = 1.0 - ((1.0 - qa) * (e - cur_e_) / temperature_step_);
    const double pqv = base <= 0.0 ? 0.0 : std::exp(std::log(base) / (1.0 - qa));
    if (r <= pqv) {
      cur_ = x;
      cur_e_ = e;
      xmin_ = cur_;
    }
    if (not_improved_ >= not_improved_max_ && (j == 0 || cur_e_ < emin_)) {
      emin_ = cur_e_;
      xmin_ = cur_;
    }
  }

  bool chain(int step, double temperature) {
    temperature_step_ = temperature / static_cast<double>(step + 1);
    ++not_improved_;
    for (int j = 0; j < 2 * dim_; ++j) {
      if (j == 0) improved_ = step == 0;
      auto x = visiting(cur_, j, temperature);
      const double e = eval(x);
      if (e < cur_e_) {
        cur_ = x;
        cur_e_ = e;
        if (e < best_e_) {
          best_e_ = e;
          best_ = x;
          improved_ = true;
          not_improved_ = 0;
        }
      } else {
        accept_reject(j, e, x);
      }
      if (halted()) return true;
    }
    return false;
  }

  // Mirror-flip descent: y_i -> 1 - y_i flips bit i of round(y).
  std::pair<double, std::vector<double>> local_search(const std::vector<double>& x, double e) {
    std::vector<double> y = x;
    double ey = e;
    bool moved = true;
    while (moved && !halted()) {
      moved = false;
      for (int i = 0; i < dim_ && !halted(); ++i) {
        auto trial = y;
        trial[static_cast<std::size_t>(i)] = 1.0 - trial[static_cast<std::size_t>(i)];
        const double et = eval(trial);
        if (et < ey) {
          y = std::move(trial);
          ey = et;
          moved = true;
        }
      }
    }
    if (ey < e) return {ey, y};
    return {e, x};
  }

  bool chain_local_search() {
    if (improved_) {
      auto [e, x] = local_search(best_, best_e_);
      if (e < best_e_) {
        not_improved_ = 0;
        best_e_ = e;
        best_ = x;
        cur_ = x;
        cur_e_ = e;
      }
      if (halted()) return true;
    }
    bool do_ls = false;
    if (k_ < 90LL * dim_) {
      const double pls = std::exp(static_cast<double>(k_) * (best_e_ - cur_e_) / temperature_step_);
      if (pls >= rng_.uniform()) do_ls = true;
    }
    if (not_improved_ >= not_improved_max_) do_ls = true;
    if (do_ls) {
      auto [e, x] = local_search(xmin_, emin_);
      xmin_ = x;
      emin_ = e;
      not_improved_ = 0;
      not_improved_max_ = dim_;
      if (e < best_e_) {
        best_e_ = e;
        best_ = x;
        cur_ = x;
        cur_e_ = e;
      }
      if (halted()) return true;
    }
    return false;
  }

  const ContinuousObjective& f_;
  int dim_;
  const SaConfig& cfg_;
  const StopPredicate& stop_;
  Rng rng_;

  double factor2_ = 0, factor3_ = 0, factor4p_ = 0, factor5_ = 0, factor6_ = 0;
  long long k_ = 0;
  long long nfev_ = 0;
  bool stopped_ = false;

  std::vector<double> cur_, best_, xmin_;
  double cur_e_ = 0, best_e_ = 0, emin_ = 0;
  bool has_best_ = false;
  bool improved_ = false;
  int not_improved_ = 0;
  int not_improved_max_ = 1000;
  double temperature_step_ = 1.0;
};

void check_config(const SaConfig& c) {
  if (!(c.visit > 1.0 && c.visit <= 3.0)) throw std::invalid_argument(fmt::format("visit {} outside (1, 3]", c.visit));
  if (c.accept >= 1.0) throw std::invalid_argument("accept must be below 1");
  if (c.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (!(c.initial_temperature > 0.0)) throw std::invalid_argument("initial temperature must be positive");
  if (c.max_evaluations < 1) throw std::invalid_argument("max_evaluations must be positive");
}

Bitstring round_point(std::span<const double> y) {
  Bitstring bits(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) bits.set(i, y[i] > 0.5);
  return bits;
}

double qubo_value(const QuboMatrix& qubo, std::span<const double> y, std::vector<int>& ones) {
  ones.clear();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > 0.5) ones.push_back(static_cast<int>(i));
  }
  double e = qubo.constant;
  for (int a : ones) {
    for (int b : ones) e += qubo.q(a, b);
  }
  return e;
}

SaResult discrete_anneal(const RotamerProblem& problem, const SaConfig& cfg) {
  if (!(cfg.discrete_start_temperature > 0.0) || !(cfg.discrete_end_temperature > 0.0)) {
    throw std::invalid_argument("discrete temperatures must be positive");
  }
  Rng rng(cfg.seed);
  const int n = problem.num_residues();
  std::vector<int> config(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) config[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(static_cast<std::uint64_t>(problem.rotamers(i))));
  double energy = problem.energy(config);
  SaResult r;
  r.evaluations = 1;
  r.best_energy = energy;
  auto best = config;
  auto at_target = [&](double e) { return cfg.target_energy && std::abs(e - *cfg.target_energy) <= cfg.tolerance; };

  // Energy change from moving residue i to rotamer b.
  auto delta = [&](int i, int b) {
    const int a = config[static_cast<std::size_t>(i)];
    double d = problem.self_energy(i, b) - problem.self_energy(i, a);
    for (int j = 0; j < n; ++j) {
      if (j == i || !problem.has_pair_table(i, j)) continue;
      const int c = config[static_cast<std::size_t>(j)];
      d += problem.pair_energy(i, b, j, c) - problem.pair_energy(i, a, j, c);
    }
    return d;
  };

  const long long steps = static_cast<long long>(cfg.max_iterations) * n;
  const double ratio = std::pow(cfg.discrete_end_temperature / cfg.discrete_start_temperature,
                                1.0 / static_cast<double>(std::max<long long>(1, steps - 1)));
  double temperature = cfg.discrete_start_temperature;
  bool hit = at_target(energy);
  for (long long step = 0; step < steps && !hit && r.evaluations < cfg.max_evaluations; ++step, temperature *= ratio) {
    r.iterations = static_cast<int>(step / n) + 1;
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int ni = problem.rotamers(i);
    if (ni < 2) continue;
    int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(ni - 1)));
    if (b >= config[static_cast<std::size_t>(i)]) ++b;
    const double d = delta(i, b);
    ++r.evaluations;
    if (d <= 0.0 || rng.uniform() < std::exp(-d / temperature)) {
      config[static_cast<std::size_t>(i)] = b;
      energy += d;
      if (energy < r.best_energy) {
        r.best_energy = energy;
        best = config;
      }
      hit = at_target(energy);
    }
  }
  // Re-evaluate to drop accumulated rounding from the running sum.
  r.best_energy = problem.energy(best);
  r.best_bitstring = encode(best, problem.layout());
  r.converged = at_target(r.best_energy);
  return r;
}

}  // namespace

std::string_view to_string(SaMethod method) {
  return method == SaMethod::continuous ? "continuous" : "discrete";
}

ContinuousResult dual_anneal(const ContinuousObjective& f, int dim, const SaConfig& config, const StopPredicate& stop) {
  check_config(config);
  if (dim < 1) throw std::invalid_argument("dual_anneal needs dim >= 1");
  return Annealer(f, dim, config, stop).run();
}

SaResult dual_anneal(const QuboMatrix& qubo, const SaConfig& config) {
  std::vector<int> ones;
  const ContinuousObjective f = [&](std::span<const double> y) { return qubo_value(qubo, y, ones); };
  StopPredicate stop;
  if (config.target_energy) {
    stop = [&](double value, std::span<const double> y) {
      return std::abs(value - *config.target_energy) <= config.tolerance && is_valid(round_point(y), qubo.layout);
    };
  }
  const auto c = dual_anneal(f, qubo.dimension(), config, stop);
  SaResult r;
  r.best_energy = c.best_value;
  r.best_bitstring = round_point(c.best_point);
  r.evaluations = c.evaluations;
  r.iterations = c.iterations;
  r.converged = c.stopped ||
                (config.target_energy && std::abs(c.best_value - *config.target_energy) <= config.tolerance &&
                 is_valid(r.best_bitstring, qubo.layout));
  return r;
}

SaResult dual_anneal(const RotamerProblem& problem, const SaConfig& config) {
  check_config(config);
  if (config.method == SaMethod::discrete) return discrete_anneal(problem, config);
  const Penalty penalty = config.penalty.value_or(Penalty{default_penalty(problem), PenaltyForm::one_hot});
  return dual_anneal(build_qubo(problem, penalty), config);
}

SaEnsemble sa_ensemble(const RotamerProblem& problem, const SaConfig& config, int num_trajectories,
                       std::uint64_t first_id) {
  if (!config.target_energy) throw std::invalid_argument("sa_ensemble needs the ground energy as target_energy");
  if (num_trajectories < 1) throw std::invalid_argument("ensemble needs at least one trajectory");
  check_config(config);
  SaConfig base = config;
  if (base.method == SaMethod::continuous && !base.penalty) {
    base.penalty = Penalty{default_penalty(problem), PenaltyForm::one_hot};
  }
  const QuboMatrix qubo = build_qubo(problem, base.penalty.value_or(Penalty{1.0, PenaltyForm::one_hot}));
  SaEnsemble out;
  out.records.resize(static_cast<std::size_t>(num_trajectories));
  parallel_for(out.records.size(), [&](std::size_t t) {
    const auto t0 = std::chrono::steady_clock::now();
    SaConfig c = base;
    const std::uint64_t id = first_id + t;
    c.seed = derive_seed(config.seed, id);
    const SaResult r = c.method == SaMethod::discrete ? discrete_anneal(problem, c) : dual_anneal(qubo, c);
    RunRecord rec;
    rec.trajectory_id = id;
    rec.seed = c.seed;
    rec.method = c.method == SaMethod::discrete ? "sa-discrete" : "sa";
    rec.iterations_used = r.iterations;
    rec.evaluations = r.evaluations;
    rec.cost = r.evaluations;
    rec.converged = r.converged;
    rec.best_energy = r.best_energy;
    rec.best_bitstring = r.best_bitstring.to_string();
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.records[t] = std::move(rec);
  });
  out.summary = summarize(out.records);
  return out;
}

}  // namespace sidechain
