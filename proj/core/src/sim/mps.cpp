#include "sidechain/sim/mps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace sidechain {
namespace {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

// Local basis index bit(first) + 2 bit(second) re-expressed as
// bit(left) + 2 bit(right) when the gate's first qubit is the right site.
Eigen::Matrix4cd reorient(const Eigen::Matrix4cd& u) {
  const int perm[4] = {0, 2, 1, 3};
  Eigen::Matrix4cd out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out(perm[r], perm[c]) = u(r, c);
  }
  return out;
}

Eigen::Matrix4cd swap_matrix() {
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  s(0, 0) = s(3, 3) = 1;
  s(1, 2) = s(2, 1) = 1;
  return s;
}

}  // namespace

MpsState::MpsState(int num_qubits, MpsOptions options) : options_(options) {
  if (num_qubits < 1) throw std::invalid_argument("MPS needs at least one qubit");
  if (options.max_bond < 0) throw std::invalid_argument("max_bond must be >= 0");
  if (options.cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
  sites_.resize(static_cast<std::size_t>(num_qubits));
  for (auto& s : sites_) {
    s[0] = Mat::Ones(1, 1);
    s[1] = Mat::Zero(1, 1);
  }
}

void MpsState::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits()) {
    throw std::out_of_range(fmt::format("qubit {} out of range for {}-qubit MPS", q, num_qubits()));
  }
}

int MpsState::bond_dimension(int bond) const {
  if (bond < 0 || bond + 1 >= num_qubits()) throw std::out_of_range("bond index out of range");
  return static_cast<int>(sites_[static_cast<std::size_t>(bond)][0].cols());
}

int MpsState::max_bond_dimension() const {
  int m = 1;
  for (const auto& s : sites_) m = std::max(m, static_cast<int>(s[0].cols()));
  return m;
}

void MpsState::move_center(int target) {
  while (center_ < target) {
    auto& a = sites_[static_cast<std::size_t>(center_)];
    auto& b = sites_[static_cast<std::size_t>(center_ + 1)];
    const auto dl = a[0].rows();
    const auto dr = a[0].cols();
    Mat m(2 * dl, dr);
    m << a[0], a[1];
    Eigen::HouseholderQR<Mat> qr(m);
    const auto k = std::min(2 * dl, dr);
    Mat q = qr.householderQ() * Mat::Identity(2 * dl, k);
    Mat r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    a[0] = q.topRows(dl);
    a[1] = q.bottomRows(dl);
    b[0] = r * b[0];
    b[1] = r * b[1];
    ++center_;
  }
  while (center_ > target) {
    auto& a = sites_[static_cast<std::size_t>(center_ - 1)];
    auto& b = sites_[static_cast<std::size_t>(center_)];
    const auto dl = b[0].rows();
    const auto dr = b[0].cols();
    Mat m(dl, 2 * dr);
    m << b[0], b[1];
    // m = L Q via QR of m^dagger.
    Mat md = m.adjoint();
    Eigen::HouseholderQR<Mat> qr(md);
    const auto k = std::min(dl, 2 * dr);
    Mat q = qr.householderQ() * Mat::Identity(2 * dr, k);
    Mat r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    Mat qd = q.adjoint();
    b[0] = qd.leftCols(dr);
    b[1] = qd.rightCols(dr);
    Mat l = r.adjoint();
    a[0] = a[0] * l;
    a[1] = a[1] * l;
    --center_;
  }
}

void MpsState::apply_adjacent(int left, const Eigen::Matrix4cd& u) {
  move_center(left);
  auto& a = sites_[static_cast<std::size_t>(left)];
  auto& b = sites_[static_cast<std::size_t>(left + 1)];
  const auto dl = a[0].rows();
  const auto dr = b[0].cols();

  // theta[s_left + 2 s_right] = A[s_left] B[s_right].
  std::array<Mat, 4> theta;
  for (int sl = 0; sl < 2; ++sl) {
    for (int sr = 0; sr < 2; ++sr) theta[static_cast<std::size_t>(sl + 2 * sr)] = a[static_cast<std::size_t>(sl)] * b[static_cast<std::size_t>(sr)];
  }
  Mat big(2 * dl, 2 * dr);  // rows s_left * dl + l, cols s_right * dr + r
  for (int sl = 0; sl < 2; ++sl) {
    for (int sr = 0; sr < 2; ++sr) {
      Mat block = Mat::Zero(dl, dr);
      for (int t = 0; t < 4; ++t) {
        const cd w = u(sl + 2 * sr, t);
        if (w != cd{0.0, 0.0}) block += w * theta[static_cast<std::size_t>(t)];
      }
      big.block(sl * dl, sr * dr, dl, dr) = block;
    }
  }

  Eigen::BDCSVD<Mat> svd(big, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double total = s.squaredNorm();
  Eigen::Index keep = s.size();
  double dropped = 0.0;
  while (keep > 1) {
    const double next = dropped + s(keep - 1) * s(keep - 1);
    if (next > options_.cutoff * total) break;
    dropped = next;
    --keep;
  }
  if (options_.max_bond > 0 && keep > options_.max_bond) {
    keep = options_.max_bond;
    dropped = total - s.head(keep).squaredNorm();
  }
  discarded_ += total > 0 ? dropped / total : 0.0;

  const double kept_norm = std::sqrt(s.head(keep).squaredNorm());
  Mat uk = svd.matrixU().leftCols(keep);
  Mat sv = (s.head(keep) / kept_norm).asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
  a[0] = uk.topRows(dl);
  a[1] = uk.bottomRows(dl);
  b[0] = sv.leftCols(dr);
  b[1] = sv.rightCols(dr);
  center_ = left + 1;
  max_bond_reached_ = std::max(max_bond_reached_, static_cast<int>(keep));
}

void MpsState::swap_adjacent(int left) { apply_adjacent(left, swap_matrix()); }

void MpsState::apply(const Gate& gate) {
  check_qubit(gate.qubits[0]);
  if (gate.arity() == 1) {
    const Eigen::Matrix2cd u = single_qubit_matrix(gate);
    auto& site = sites_[static_cast<std::size_t>(gate.qubits[0])];
    Mat s0 = u(0, 0) * site[0] + u(0, 1) * site[1];
    Mat s1 = u(1, 0) * site[0] + u(1, 1) * site[1];
    site[0] = std::move(s0);
    site[1] = std::move(s1);
    return;
  }
  check_qubit(gate.qubits[1]);
  const int first = gate.qubits[0];
  const int second = gate.qubits[1];
  Eigen::Matrix4cd u = two_qubit_matrix(gate);
  int lo = std::min(first, second);
  const int hi = std::max(first, second);
  if (first > second) u = reorient(u);
  // Carry the low qubit rightwards until it sits next to the high one.
  for (int k = lo; k < hi - 1; ++k) swap_adjacent(k);
  apply_adjacent(hi - 1, u);
  for (int k = hi - 2; k >= lo; --k) swap_adjacent(k);
}

void MpsState::run(const Circuit& circuit) {
  if (circuit.num_qubits() != num_qubits()) {
    throw std::invalid_argument(fmt::format("{}-qubit circuit on {}-qubit MPS", circuit.num_qubits(), num_qubits()));
  }
  for (const auto& g : circuit.gates()) apply(g);
  if (circuit.global_phase() != 0.0) {
    const cd phase = std::polar(1.0, circuit.global_phase());
    auto& c = sites_[static_cast<std::size_t>(center_)];
    c[0] *= phase;
    c[1] *= phase;
  }
}

double MpsState::norm() const {
  const auto& c = sites_[static_cast<std::size_t>(center_)];
  return std::sqrt(c[0].squaredNorm() + c[1].squaredNorm());
}

std::vector<Bitstring> MpsState::sample(std::size_t shots, Rng& rng) {
  move_center(0);
  const int m = num_qubits();
  std::vector<Bitstring> out;
  out.reserve(shots);
  for (std::size_t shot = 0; shot < shots; ++shot) {
    Bitstring bits(static_cast<std::size_t>(m));
    Eigen::RowVectorXcd env = Eigen::RowVectorXcd::Ones(1);
    for (int q = 0; q < m; ++q) {
      const auto& site = sites_[static_cast<std::size_t>(q)];
      Eigen::RowVectorXcd w0 = env * site[0];
      Eigen::RowVectorXcd w1 = env * site[1];
      const double p0 = w0.squaredNorm();
      const double p1 = w1.squaredNorm();
      const bool one = rng.uniform() * (p0 + p1) >= p0;
      bits.set(static_cast<std::size_t>(q), one);
      env = one ? Eigen::RowVectorXcd(w1 / std::sqrt(p1)) : Eigen::RowVectorXcd(w0 / std::sqrt(p0));
    }
    out.push_back(std::move(bits));
  }
  return out;
}

std::vector<Bitstring> MpsState::sample(std::size_t shots, std::uint64_t seed) {
  Rng rng(seed);
  return sample(shots, rng);
}

Eigen::VectorXcd MpsState::to_statevector() const {
  const int m = num_qubits();
  if (m > 24) throw std::invalid_argument("to_statevector supports at most 24 qubits");
  // rows: basis index of the qubits contracted so far; cols: right bond.
  Mat acc = Mat::Ones(1, 1);
  for (int q = 0; q < m; ++q) {
    const auto& site = sites_[static_cast<std::size_t>(q)];
    const auto rows = acc.rows();
    Mat next(2 * rows, site[0].cols());
    next.topRows(rows) = acc * site[0];
    next.bottomRows(rows) = acc * site[1];
    acc = std::move(next);
  }
  return acc.col(0);
}

}  // namespace sidechain
