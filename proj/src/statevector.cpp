#include "qtda/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include "qtda/errors.hpp"

namespace qtda {

namespace {

using C = std::complex<double>;

Gate single(std::string name, int q, C a, C b, C c, C d) {
  Gate g;
  g.name = std::move(name);
  g.matrix.resize(2, 2);
  g.matrix << a, b, c, d;
  g.targets = {q};
  return g;
}

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace

Gate Gate::hadamard(int q) {
  const double h = (1.0 / std::numbers::sqrt2);
  return single("H", q, h, h, h, -h);
}

Gate Gate::pauli_x(int q) { return single("X", q, 0, 1, 1, 0); }

Gate Gate::s(int q) { return single("S", q, 1, 0, 0, C(0, 1)); }

Gate Gate::rx(int q, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return single("RX", q, c, C(0, -s), C(0, -s), c);
}

Gate Gate::ry(int q, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return single("RY", q, c, -s, s, c);
}

Gate Gate::rz(int q, double angle) {
  return single("RZ", q, std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2));
}

Gate Gate::phase(int q, double angle) { return single("P", q, 1, 0, 0, std::polar(1.0, angle)); }

Gate Gate::global_phase(double angle) {
  Gate g;
  g.name = "GPHASE";
  g.matrix = Eigen::MatrixXcd::Constant(1, 1, std::polar(1.0, angle));
  return g;
}

Gate Gate::cnot(int control, int target) {
  Gate g = pauli_x(target);
  g.name = "CNOT";
  g.controls = {control};
  return g;
}

Gate Gate::controlled_phase(int control, int target, double angle) {
  Gate g = phase(target, angle);
  g.name = "CP";
  g.controls = {control};
  return g;
}

Gate Gate::swap(int a, int b) {
  Gate g;
  g.name = "SWAP";
  g.matrix = Eigen::MatrixXcd::Zero(4, 4);
  g.matrix(0, 0) = g.matrix(1, 2) = g.matrix(2, 1) = g.matrix(3, 3) = 1;
  g.targets = {a, b};
  return g;
}

Gate Gate::dense(Eigen::MatrixXcd matrix, std::vector<int> targets, std::string name) {
  Gate g;
  g.name = std::move(name);
  g.matrix = std::move(matrix);
  g.targets = std::move(targets);
  return g;
}

Gate Gate::measure(std::vector<int> qubits) {
  Gate g;
  g.kind = Kind::Measure;
  g.name = "MEASURE";
  g.targets = std::move(qubits);
  return g;
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0 || num_qubits > 30) throw ResourceError("unsupported qubit count");
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  StateVector s(num_qubits);
  if (index >= s.dim()) throw ArgumentError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amps) {
  if (!is_power_of_two(amps.size())) throw ArgumentError("amplitude count must be a power of two");
  StateVector s(0);
  s.num_qubits_ = std::countr_zero(amps.size());
  s.amps_ = std::move(amps);
  return s;
}

void StateVector::apply(const Gate& gate) {
  if (gate.kind == Gate::Kind::Measure) return;
  kernels::parallel::apply_block(amps_, gate.matrix, {num_qubits_, gate.targets, gate.controls});
}

double StateVector::norm_squared() const { return kernels::parallel::norm_squared(amps_); }

std::vector<double> StateVector::leading_probabilities(int count) const {
  if (count < 0 || count > num_qubits_) throw ArgumentError("register larger than the state");
  return kernels::parallel::leading_marginal(amps_, count);
}

Eigen::MatrixXcd StateVector::reduced_density_matrix(int keep) const {
  if (keep < 0 || keep > num_qubits_) throw ArgumentError("cannot keep more qubits than exist");
  const Eigen::Index rows = Eigen::Index{1} << keep;
  const Eigen::Index cols = static_cast<Eigen::Index>(amps_.size()) / rows;
  Eigen::Map<const Eigen::Matrix<Amplitude, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
      amps_.data(), rows, cols);
  return a * a.adjoint();
}

Circuit& Circuit::add(Gate gate) {
  auto in_range = [this](int q) { return q >= 0 && q < num_qubits_; };
  if (!std::all_of(gate.targets.begin(), gate.targets.end(), in_range) ||
      !std::all_of(gate.controls.begin(), gate.controls.end(), in_range)) {
    throw ArgumentError("gate '" + gate.name + "' addresses a qubit outside the circuit");
  }
  std::vector<int> used(gate.targets);
  used.insert(used.end(), gate.controls.begin(), gate.controls.end());
  std::sort(used.begin(), used.end());
  if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
    throw ArgumentError("gate '" + gate.name + "' uses a qubit twice");
  }
  if (gate.kind == Gate::Kind::Unitary) {
    const auto dim = gate.matrix.rows();
    if (gate.matrix.cols() != dim || dim != (Eigen::Index{1} << gate.targets.size())) {
      throw ArgumentError("gate '" + gate.name + "' has the wrong matrix size");
    }
    const double err = (gate.matrix.adjoint() * gate.matrix - Eigen::MatrixXcd::Identity(dim, dim))
                           .cwiseAbs()
                           .maxCoeff();
    if (err > 1e-9) throw ArgumentError("gate '" + gate.name + "' is not unitary");
  }
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.num_qubits_ != num_qubits_) throw ArgumentError("circuit widths differ");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

Circuit Circuit::embedded(const std::vector<int>& map, int total_qubits,
                          const std::vector<int>& extra_controls) const {
  if (static_cast<int>(map.size()) != num_qubits_) throw ArgumentError("qubit map has the wrong size");
  Circuit out(total_qubits);
  out.gates_.reserve(gates_.size());
  for (Gate g : gates_) {
    for (int& q : g.targets) q = map[q];
    for (int& q : g.controls) q = map[q];
    if (g.kind == Gate::Kind::Unitary) {
      g.controls.insert(g.controls.end(), extra_controls.begin(), extra_controls.end());
    }
    out.gates_.push_back(std::move(g));
  }
  return out;
}

void Circuit::apply(StateVector& state) const {
  if (state.num_qubits() != num_qubits_) throw ArgumentError("state and circuit widths differ");
  for (const auto& g : gates_) state.apply(g);
}

Eigen::MatrixXcd Circuit::unitary() const {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits_;
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    auto s = StateVector::basis(num_qubits_, static_cast<std::size_t>(j));
    apply(s);
    for (Eigen::Index i = 0; i < dim; ++i) u(i, j) = s[static_cast<std::size_t>(i)];
  }
  return u;
}

Circuit inverse_qft(int num_qubits, const std::vector<int>& reg) {
  Circuit c(num_qubits);
  const int p = static_cast<int>(reg.size());
  for (int i = 0; i < p / 2; ++i) c.add(Gate::swap(reg[i], reg[p - 1 - i]));
  for (int i = p - 1; i >= 0; --i) {
    for (int j = p - 1; j > i; --j) {
      c.add(Gate::controlled_phase(reg[j], reg[i], -2.0 * std::numbers::pi / std::ldexp(1.0, j - i + 1)));
    }
    c.add(Gate::hadamard(reg[i]));
  }
  return c;
}

}  // namespace qtda
