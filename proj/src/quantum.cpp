// Copyright 2026 The bellcast authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bellcast/quantum.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace bellcast {

namespace {

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re = gauss(rng);
      double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

LabeledOperator pauli(Pauli p) {
  Matrix m(2, 2);
  switch (p) {
    case Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case Pauli::Y:
      m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
      break;
    case Pauli::Z:
      m << 1, 0, 0, -1;
      break;
    default:
      throw std::invalid_argument("invalid Pauli label");
  }
  return LabeledOperator(std::move(m), {2});
}

LabeledOperator bell_state(int index) {
  if (index < 0 || index > 3) {
    throw std::invalid_argument("Bell state index must be 0..3");
  }
  Vector phi_plus(4);
  phi_plus << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  LabeledOperator ket(Matrix(phi_plus), {2, 2}, {1});
  if (index == 0) return ket;
  LabeledOperator correction =
      kron(pauli(static_cast<Pauli>(index)), pauli(Pauli::I));
  return LabeledOperator(correction.data * ket.data, {2, 2}, {1});
}

LabeledOperator bell_projector(int index) { return projector(bell_state(index)); }

void Povm::validate(double tol) const {
  if (effects.empty()) throw std::invalid_argument("POVM has no settings");
  for (const auto& setting : effects) {
    if (setting.empty()) throw std::invalid_argument("POVM setting has no effects");
    Matrix sum = Matrix::Zero(setting[0].rows(), setting[0].cols());
    for (const auto& e : setting) {
      e.ensure_hermitian(tol);
      Eigen::SelfAdjointEigenSolver<Matrix> solver(
          Matrix((e.data + e.data.adjoint()) / 2.0), Eigen::EigenvaluesOnly);
      if (solver.eigenvalues().minCoeff() < -tol) {
        throw std::invalid_argument("POVM effect has a negative eigenvalue");
      }
      sum += e.data;
    }
    if (max_abs(Matrix(sum - Matrix::Identity(sum.rows(), sum.cols()))) > tol) {
      throw std::invalid_argument("POVM setting does not sum to identity");
    }
  }
}

void Instrument::validate(double tol) const {
  if (branches.empty()) throw std::invalid_argument("instrument has no branches");
  Eigen::Index din = 1;
  for (int d : input_dims) din *= d;
  Matrix sum = Matrix::Zero(din, din);
  for (const auto& branch : branches) {
    for (const auto& k : branch) {
      if (k.cols() != din) {
        throw std::invalid_argument("instrument Kraus input dim mismatch");
      }
      sum += k.data.adjoint() * k.data;
    }
  }
  if (max_abs(Matrix(sum - Matrix::Identity(din, din))) > tol) {
    throw std::invalid_argument("instrument total map is not trace preserving");
  }
}

std::vector<LabeledOperator> Instrument::total_kraus() const {
  std::vector<LabeledOperator> all;
  for (const auto& branch : branches) {
    all.insert(all.end(), branch.begin(), branch.end());
  }
  return all;
}

Povm binary_povm(const LabeledOperator& observable, SubsystemMask acting_on) {
  observable.ensure_hermitian();
  EigResult eig = hermitian_eigs(observable);
  if (eig.values.maxCoeff() > 1.0 + kArithmeticTol ||
      eig.values.minCoeff() < -1.0 - kArithmeticTol) {
    throw std::invalid_argument("binary_povm observable spectrum outside [-1, 1]");
  }
  Matrix id = Matrix::Identity(observable.rows(), observable.rows());
  Povm povm;
  povm.acting_on = std::move(acting_on);
  povm.effects.push_back(
      {LabeledOperator((id + observable.data) / 2.0, observable.dims_out),
       LabeledOperator((id - observable.data) / 2.0, observable.dims_out)});
  return povm;
}

LabeledOperator werner_state(double v) {
  if (v < 0.0 || v > 1.0) {
    throw std::invalid_argument("Werner visibility must be in [0, 1]");
  }
  Vector singlet(4);
  singlet << 0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0;
  Matrix rho = v * (singlet * singlet.adjoint()) +
               (1.0 - v) / 4.0 * Matrix::Identity(4, 4);
  return LabeledOperator(std::move(rho), {2, 2});
}

LabeledOperator ghz_state(int n) {
  if (n < 2) throw std::invalid_argument("GHZ needs at least 2 qubits");
  Eigen::Index d = Eigen::Index(1) << n;
  Vector v = Vector::Zero(d);
  v(0) = 1.0 / std::sqrt(2.0);
  v(d - 1) = 1.0 / std::sqrt(2.0);
  return LabeledOperator(Matrix(v), std::vector<int>(n, 2), {1});
}

LabeledOperator w_state(int n) {
  if (n < 2) throw std::invalid_argument("W state needs at least 2 qubits");
  Eigen::Index d = Eigen::Index(1) << n;
  Vector v = Vector::Zero(d);
  for (int i = 0; i < n; ++i) {
    v(Eigen::Index(1) << (n - 1 - i)) = 1.0 / std::sqrt(double(n));
  }
  return LabeledOperator(Matrix(v), std::vector<int>(n, 2), {1});
}

LabeledOperator maximally_mixed(std::vector<int> dims) {
  Eigen::Index d = 1;
  for (int x : dims) d *= x;
  return LabeledOperator(Matrix::Identity(d, d) / double(d), std::move(dims));
}

LabeledOperator random_pure(std::vector<int> dims, std::uint64_t seed) {
  Eigen::Index d = 1;
  for (int x : dims) d *= x;
  Matrix g = gaussian_matrix(d, 1, seed);
  g /= g.norm();
  return LabeledOperator(std::move(g), std::move(dims), {1});
}

LabeledOperator random_density(std::vector<int> dims, int rank,
                               std::uint64_t seed) {
  Eigen::Index d = 1;
  for (int x : dims) d *= x;
  if (rank < 1 || rank > d) throw std::invalid_argument("invalid density rank");
  Matrix g = gaussian_matrix(d, rank, seed);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return LabeledOperator(std::move(rho), std::move(dims));
}

LabeledOperator random_product(std::vector<int> dims, std::uint64_t seed) {
  std::vector<LabeledOperator> factors;
  factors.reserve(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    factors.push_back(random_pure({dims[i]}, seed + 0x9e3779b97f4a7c15ULL * (i + 1)));
  }
  return kron(factors);
}

LabeledOperator random_unitary(int dim, std::uint64_t seed) {
  Matrix g = gaussian_matrix(dim, dim, seed);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the ensemble is Haar.
  for (int i = 0; i < dim; ++i) {
    Complex diag = r(i, i);
    q.col(i) *= diag / std::abs(diag);
  }
  return LabeledOperator(std::move(q), {dim});
}

LabeledOperator purify(const LabeledOperator& rho) {
  rho.ensure_density();
  EigResult eig = hermitian_eigs(rho);
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > 1e-12) support.push_back(i);
  }
  const Eigen::Index rank = static_cast<Eigen::Index>(support.size());
  const Eigen::Index d = rho.rows();
  Vector psi = Vector::Zero(d * rank);
  for (Eigen::Index k = 0; k < rank; ++k) {
    const double amp = std::sqrt(eig.values(support[k]));
    for (Eigen::Index i = 0; i < d; ++i) {
      psi(i * rank + k) = amp * eig.vectors(i, support[k]);
    }
  }
  std::vector<int> dims = rho.dims_out;
  dims.push_back(static_cast<int>(rank));
  return LabeledOperator(Matrix(psi), std::move(dims), {1});
}

}  // namespace bellcast
