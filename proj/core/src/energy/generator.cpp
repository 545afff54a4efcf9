#include "sidechain/energy/generator.hpp"

#include <cmath>
#include <stdexcept>

#include "sidechain/util/rng.hpp"

namespace sidechain {

GeneratorOptions GeneratorOptions::uniform(int num_residues, int rotamers, std::uint64_t seed) {
  if (num_residues < 1 || rotamers < 1) throw std::invalid_argument("generator needs N >= 1 and n >= 1");
  GeneratorOptions o;
  o.rotamers_per_residue.assign(static_cast<std::size_t>(num_residues), rotamers);
  o.seed = seed;
  return o;
}

RotamerProblem generate_problem(const GeneratorOptions& options) {
  if (options.self_min > options.self_max || options.pair_min > options.pair_max) {
    throw std::invalid_argument("generator energy range has min > max");
  }
  if (options.decimals < 0 || options.decimals > 12) throw std::invalid_argument("decimals must be in [0, 12]");
  if (options.decay && (*options.decay < 0.0 || *options.decay > 1.0)) {
    throw std::invalid_argument("decay must lie in [0, 1]");
  }
  const double scale = std::pow(10.0, options.decimals);
  auto round = [scale](double v) { return std::round(v * scale) / scale; };

  Rng rng(options.seed);
  const auto& n = options.rotamers_per_residue;
  const int residues = static_cast<int>(n.size());
  ProblemBuilder builder(n, !options.decay.has_value());
  for (int i = 0; i < residues; ++i) {
    for (int a = 0; a < n[static_cast<std::size_t>(i)]; ++a) {
      builder.set_self_energy(i, a, round(rng.uniform(options.self_min, options.self_max)));
    }
  }
  double m1 = 0.0;
  for (int i = 0; i + 1 < residues; ++i) {
    for (int a = 0; a < n[static_cast<std::size_t>(i)]; ++a) {
      for (int b = 0; b < n[static_cast<std::size_t>(i + 1)]; ++b) {
        const double e = round(rng.uniform(options.pair_min, options.pair_max));
        m1 = std::max(m1, std::abs(e));
        builder.set_pair_energy(i, a, i + 1, b, e);
      }
    }
  }
  if (options.decay) {
    for (int d = 2; d < residues; ++d) {
      const double bound = m1 * std::pow(*options.decay, d - 1);
      for (int i = 0; i + d < residues; ++i) {
        for (int a = 0; a < n[static_cast<std::size_t>(i)]; ++a) {
          for (int b = 0; b < n[static_cast<std::size_t>(i + d)]; ++b) {
            const double e = std::trunc(rng.uniform(-1.0, 1.0) * bound * scale) / scale;
            builder.set_pair_energy(i, a, i + d, b, e);
          }
        }
      }
    }
  }
  return builder.build();
}

}  // namespace sidechain
