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

#include "bellcast/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bellcast {

namespace {

Eigen::Index dims_product(const std::vector<int>& dims) {
  Eigen::Index p = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("subsystem dimension must be positive");
    p *= d;
  }
  return p;
}

// Row-major strides: the first factor is the most significant index,
// matching the Kronecker-product convention.
std::vector<Eigen::Index> strides_for(const std::vector<int>& dims) {
  std::vector<Eigen::Index> s(dims.size());
  Eigen::Index acc = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    s[i] = acc;
    acc *= dims[i];
  }
  return s;
}

void unflatten(Eigen::Index flat, const std::vector<int>& dims,
               const std::vector<Eigen::Index>& strides, std::vector<int>& out) {
  out.resize(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    out[i] = static_cast<int>(flat / strides[i]);
    flat %= strides[i];
  }
}

Eigen::Index flatten(const std::vector<int>& multi,
                     const std::vector<Eigen::Index>& strides) {
  Eigen::Index flat = 0;
  for (std::size_t i = 0; i < multi.size(); ++i) flat += multi[i] * strides[i];
  return flat;
}

}  // namespace

SubsystemMask::SubsystemMask(std::vector<int> indices)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool SubsystemMask::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

void SubsystemMask::validate(std::size_t n_subsystems) const {
  for (int i : indices_) {
    if (i < 0 || static_cast<std::size_t>(i) >= n_subsystems) {
      throw std::out_of_range("subsystem mask index " + std::to_string(i) +
                              " out of range for " +
                              std::to_string(n_subsystems) + " subsystems");
    }
  }
}

LabeledOperator::LabeledOperator(Matrix m, std::vector<int> dims)
    : LabeledOperator(std::move(m), dims, dims) {}

LabeledOperator::LabeledOperator(Matrix m, std::vector<int> out,
                                 std::vector<int> in)
    : data(std::move(m)), dims_out(std::move(out)), dims_in(std::move(in)) {
  if (data.rows() != dims_product(dims_out) ||
      data.cols() != dims_product(dims_in)) {
    throw std::invalid_argument("matrix shape does not match dims lists");
  }
}

LabeledOperator LabeledOperator::dagger() const {
  return LabeledOperator(data.adjoint(), dims_in, dims_out);
}

LabeledOperator LabeledOperator::conjugate() const {
  return LabeledOperator(data.conjugate(), dims_out, dims_in);
}

LabeledOperator LabeledOperator::transpose() const {
  return LabeledOperator(data.transpose(), dims_in, dims_out);
}

bool LabeledOperator::is_hermitian(double tol) const {
  if (!is_square()) return false;
  return max_abs(Matrix(data - data.adjoint())) <= tol;
}

void LabeledOperator::ensure_hermitian(double tol) const {
  if (!is_hermitian(tol)) {
    throw std::invalid_argument("operator is not hermitian within tolerance");
  }
}

void LabeledOperator::ensure_density(double tol) const {
  ensure_hermitian(tol);
  if (std::abs(trace() - Complex(1.0, 0.0)) > tol) {
    throw std::invalid_argument("density operator trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      Matrix((data + data.adjoint()) / 2.0), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol) {
    throw std::invalid_argument("density operator has a negative eigenvalue");
  }
}

void LabeledOperator::ensure_state_vector(double tol) const {
  if (data.cols() != 1) {
    throw std::invalid_argument("state vector must be a single column");
  }
  if (std::abs(data.norm() - 1.0) > tol) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const LabeledOperator& a, const LabeledOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("shape mismatch in max_abs_diff");
  }
  return max_abs(Matrix(a.data - b.data));
}

LabeledOperator identity_op(std::vector<int> dims) {
  Eigen::Index d = dims_product(dims);
  return LabeledOperator(Matrix::Identity(d, d), std::move(dims));
}

LabeledOperator projector(const LabeledOperator& ket) {
  if (ket.data.cols() != 1) {
    throw std::invalid_argument("projector expects a column vector");
  }
  return LabeledOperator(ket.data * ket.data.adjoint(), ket.dims_out,
                         ket.dims_out);
}

LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b) {
  const LabeledOperator ops[] = {a, b};
  return kron(std::span<const LabeledOperator>(ops));
}

LabeledOperator kron(std::initializer_list<LabeledOperator> ops) {
  return kron(std::span<const LabeledOperator>(ops.begin(), ops.size()));
}

LabeledOperator kron(std::span<const LabeledOperator> ops) {
  if (ops.empty()) throw std::invalid_argument("kron of an empty list");
  Matrix acc = ops[0].data;
  std::vector<int> out = ops[0].dims_out;
  std::vector<int> in = ops[0].dims_in;
  for (std::size_t k = 1; k < ops.size(); ++k) {
    const Matrix& b = ops[k].data;
    Matrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
    for (Eigen::Index i = 0; i < acc.rows(); ++i) {
      for (Eigen::Index j = 0; j < acc.cols(); ++j) {
        next.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
            acc(i, j) * b;
      }
    }
    acc = std::move(next);
    out.insert(out.end(), ops[k].dims_out.begin(), ops[k].dims_out.end());
    in.insert(in.end(), ops[k].dims_in.begin(), ops[k].dims_in.end());
  }
  return LabeledOperator(std::move(acc), std::move(out), std::move(in));
}

LabeledOperator partial_trace(const LabeledOperator& op,
                              const SubsystemMask& discard) {
  if (!op.is_square()) {
    throw std::invalid_argument("partial_trace expects a square operator");
  }
  discard.validate(op.n_subsystems());
  const auto& dims = op.dims_out;

  std::vector<int> kept_dims, traced_dims, kept_pos, traced_pos;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (discard.contains(static_cast<int>(i))) {
      traced_dims.push_back(dims[i]);
      traced_pos.push_back(static_cast<int>(i));
    } else {
      kept_dims.push_back(dims[i]);
      kept_pos.push_back(static_cast<int>(i));
    }
  }

  const auto strides = strides_for(dims);
  const auto kept_strides = strides_for(kept_dims);
  const auto traced_strides = strides_for(traced_dims);
  const Eigen::Index dk = dims_product(kept_dims);
  const Eigen::Index dt = dims_product(traced_dims);

  Matrix result = Matrix::Zero(dk, dk);
  std::vector<int> kmulti, cmulti, tmulti;
  for (Eigen::Index r = 0; r < dk; ++r) {
    unflatten(r, kept_dims, kept_strides, kmulti);
    for (Eigen::Index c = 0; c < dk; ++c) {
      unflatten(c, kept_dims, kept_strides, cmulti);
      Complex sum = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t) {
        unflatten(t, traced_dims, traced_strides, tmulti);
        Eigen::Index row = 0, col = 0;
        for (std::size_t i = 0; i < kept_pos.size(); ++i) {
          row += kmulti[i] * strides[kept_pos[i]];
          col += cmulti[i] * strides[kept_pos[i]];
        }
        for (std::size_t i = 0; i < traced_pos.size(); ++i) {
          row += tmulti[i] * strides[traced_pos[i]];
          col += tmulti[i] * strides[traced_pos[i]];
        }
        sum += op.data(row, col);
      }
      result(r, c) = sum;
    }
  }
  if (kept_dims.empty()) kept_dims = {1};
  return LabeledOperator(std::move(result), std::move(kept_dims));
}

LabeledOperator partial_transpose(const LabeledOperator& op,
                                  const SubsystemMask& mask) {
  if (!op.is_square()) {
    throw std::invalid_argument("partial_transpose expects a square operator");
  }
  mask.validate(op.n_subsystems());
  const auto& dims = op.dims_out;
  const auto strides = strides_for(dims);
  const Eigen::Index d = op.rows();

  Matrix result(d, d);
  std::vector<int> rmulti, cmulti;
  for (Eigen::Index r = 0; r < d; ++r) {
    unflatten(r, dims, strides, rmulti);
    for (Eigen::Index c = 0; c < d; ++c) {
      unflatten(c, dims, strides, cmulti);
      // Swap row and column sub-indices on the masked factors.
      Eigen::Index row = 0, col = 0;
      for (std::size_t i = 0; i < dims.size(); ++i) {
        bool flip = mask.contains(static_cast<int>(i));
        row += (flip ? cmulti[i] : rmulti[i]) * strides[i];
        col += (flip ? rmulti[i] : cmulti[i]) * strides[i];
      }
      result(row, col) = op.data(r, c);
    }
  }
  return LabeledOperator(std::move(result), dims);
}

LabeledOperator permute_subsystems(const LabeledOperator& op,
                                   std::initializer_list<int> order) {
  return permute_subsystems(op, std::span<const int>(order.begin(), order.size()));
}

LabeledOperator permute_subsystems(const LabeledOperator& op,
                                   std::span<const int> order) {
  const std::size_t n = op.n_subsystems();
  if (order.size() != n) {
    throw std::invalid_argument("permutation length mismatch");
  }
  std::vector<bool> seen(n, false);
  for (int o : order) {
    if (o < 0 || static_cast<std::size_t>(o) >= n || seen[o]) {
      throw std::invalid_argument("invalid subsystem permutation");
    }
    seen[o] = true;
  }
  const bool is_ket = op.data.cols() == 1;
  if (!op.is_square() && !is_ket) {
    throw std::invalid_argument(
        "permute_subsystems supports square operators and kets");
  }

  const auto& dims = op.dims_out;
  std::vector<int> new_dims(n);
  for (std::size_t j = 0; j < n; ++j) new_dims[j] = dims[order[j]];
  const auto old_strides = strides_for(dims);
  const auto new_strides = strides_for(new_dims);
  const Eigen::Index d = op.rows();

  // row_map[old] = new
  std::vector<Eigen::Index> row_map(d);
  std::vector<int> multi;
  for (Eigen::Index r = 0; r < d; ++r) {
    unflatten(r, dims, old_strides, multi);
    Eigen::Index nr = 0;
    for (std::size_t j = 0; j < n; ++j) nr += multi[order[j]] * new_strides[j];
    row_map[r] = nr;
  }

  if (is_ket) {
    Matrix result(d, 1);
    for (Eigen::Index r = 0; r < d; ++r) result(row_map[r], 0) = op.data(r, 0);
    return LabeledOperator(std::move(result), std::move(new_dims), op.dims_in);
  }
  Matrix result(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      result(row_map[r], row_map[c]) = op.data(r, c);
    }
  }
  return LabeledOperator(std::move(result), new_dims, new_dims);
}

EigResult hermitian_eigs(const LabeledOperator& op, double tol) {
  op.ensure_hermitian(tol);
  Matrix sym = (op.data + op.data.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian eigensolver failed to converge");
  }
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index d = sym.rows();
  EigResult out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = Matrix(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    out.vectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return out;
}

LabeledOperator apply(const LabeledOperator& isometry,
                      const LabeledOperator& state) {
  if (isometry.cols() != state.rows() || !state.is_square()) {
    throw std::invalid_argument("apply: dimension mismatch");
  }
  Matrix gram = isometry.data.adjoint() * isometry.data;
  if (max_abs(Matrix(gram - Matrix::Identity(gram.rows(), gram.cols()))) >
      kValidationTol) {
    throw std::invalid_argument("apply: map is not an isometry");
  }
  return LabeledOperator(isometry.data * state.data * isometry.data.adjoint(),
                         isometry.dims_out, isometry.dims_out);
}

LabeledOperator apply(std::span<const LabeledOperator> kraus,
                      const LabeledOperator& state, bool require_tp) {
  if (kraus.empty()) throw std::invalid_argument("apply: empty Kraus list");
  if (!state.is_square()) {
    throw std::invalid_argument("apply: state must be square");
  }
  Matrix norm_check =
      Matrix::Zero(kraus[0].data.cols(), kraus[0].data.cols());
  for (const auto& k : kraus) {
    if (k.cols() != state.rows() || k.rows() != kraus[0].rows() ||
        k.cols() != kraus[0].cols()) {
      throw std::invalid_argument("apply: Kraus dimension mismatch");
    }
    norm_check += k.data.adjoint() * k.data;
  }
  Matrix defect = norm_check - Matrix::Identity(norm_check.rows(), norm_check.cols());
  if (require_tp) {
    if (max_abs(defect) > kValidationTol) {
      throw std::invalid_argument("apply: Kraus list is not trace preserving");
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(
        Matrix((defect + defect.adjoint()) / 2.0), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().maxCoeff() > kValidationTol) {
      throw std::invalid_argument("apply: Kraus list is trace increasing");
    }
  }
  Matrix result = Matrix::Zero(kraus[0].rows(), kraus[0].rows());
  for (const auto& k : kraus) {
    result += k.data * state.data * k.data.adjoint();
  }
  return LabeledOperator(std::move(result), kraus[0].dims_out,
                         kraus[0].dims_out);
}

}  // namespace bellcast
