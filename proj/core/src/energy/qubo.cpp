#include "sidechain/energy/qubo.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace sidechain {

double QuboMatrix::energy(const Bitstring& bits) const {
  if (static_cast<int>(bits.size()) != dimension()) {
    throw std::invalid_argument(
        fmt::format("bitstring length {} does not match QUBO dimension {}", bits.size(), dimension()));
  }
  double e = constant;
  const int m = dimension();
  for (int a = 0; a < m; ++a) {
    if (!bits[static_cast<std::size_t>(a)]) continue;
    for (int b = 0; b < m; ++b) {
      if (bits[static_cast<std::size_t>(b)]) e += q(a, b);
    }
  }
  return e;
}

QuboMatrix build_qubo(const RotamerProblem& problem, std::optional<Penalty> penalty) {
  if (penalty && !(penalty->lambda > 0.0)) {
    throw std::invalid_argument(fmt::format("penalty coefficient must be positive, got {}", penalty->lambda));
  }
  const auto& layout = problem.layout();
  QuboMatrix out{Eigen::MatrixXd::Zero(layout.num_variables(), layout.num_variables()), layout, 0.0};
  for (int i = 0; i < problem.num_residues(); ++i) {
    for (int a = 0; a < problem.rotamers(i); ++a) {
      out.q(layout.offset(i) + a, layout.offset(i) + a) = problem.self_energy(i, a);
    }
  }
  for (const auto& [key, table] : problem.pair_tables()) {
    const int oi = layout.offset(key.first);
    const int oj = layout.offset(key.second);
    for (int a = 0; a < table.rows(); ++a) {
      for (int b = 0; b < table.cols(); ++b) {
        out.q(oi + a, oj + b) = table(a, b) / 2;
        out.q(oj + b, oi + a) = table(a, b) / 2;
      }
    }
  }
  if (!penalty) return out;

  const double lambda = penalty->lambda;
  for (int i = 0; i < layout.num_blocks(); ++i) {
    const int o = layout.offset(i);
    for (int a = 0; a < layout.size(i); ++a) {
      for (int b = 0; b < layout.size(i); ++b) {
        if (a != b) out.q(o + a, o + b) = lambda;
      }
      if (penalty->form == PenaltyForm::one_hot) out.q(o + a, o + a) -= lambda;
    }
    if (penalty->form == PenaltyForm::one_hot) out.constant += lambda;
  }
  return out;
}

double default_penalty(const RotamerProblem& problem) {
  const auto q = build_qubo(problem).q;
  double bound = 0.0;
  for (int a = 0; a < q.rows(); ++a) {
    double row = std::abs(q(a, a));
    for (int b = 0; b < q.cols(); ++b) {
      if (b != a) row += 2 * std::abs(q(a, b));
    }
    bound = std::max(bound, row);
  }
  return bound + 1.0;
}

}  // namespace sidechain
