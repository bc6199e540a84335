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

#ifndef BELLCAST_TENSOR_HPP
#define BELLCAST_TENSOR_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bellcast {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Validation tolerances. Construction-time checks use kValidationTol;
// checks on results of floating-point arithmetic use kArithmeticTol.
inline constexpr double kValidationTol = 1e-10;
inline constexpr double kArithmeticTol = 1e-9;

// A set of subsystem positions into a dims list. Stored sorted and
// deduplicated; positions are validated against the dims list length by the
// operations that take a mask.
class SubsystemMask {
 public:
  SubsystemMask() = default;
  explicit SubsystemMask(std::vector<int> indices);
  SubsystemMask(std::initializer_list<int> indices)
      : SubsystemMask(std::vector<int>(indices)) {}

  const std::vector<int>& indices() const { return indices_; }
  bool contains(int i) const;
  bool empty() const { return indices_.empty(); }
  std::size_t size() const { return indices_.size(); }

  // Throws std::out_of_range unless every index is in [0, n_subsystems).
  void validate(std::size_t n_subsystems) const;

 private:
  std::vector<int> indices_;
};

// Dense complex matrix tagged with the tensor-factor dimensions of its row
// and column spaces. Square operators have dims_out == dims_in; isometries
// and state vectors may differ (a ket has dims_in == {1}).
//
// Subsystem order is positional and never reordered implicitly; use
// permute_subsystems to move factors around.
struct LabeledOperator {
  Matrix data;
  std::vector<int> dims_out;
  std::vector<int> dims_in;

  LabeledOperator() = default;
  // Square operator.
  LabeledOperator(Matrix m, std::vector<int> dims);
  LabeledOperator(Matrix m, std::vector<int> out, std::vector<int> in);

  Eigen::Index rows() const { return data.rows(); }
  Eigen::Index cols() const { return data.cols(); }
  bool is_square() const { return dims_out == dims_in; }
  std::size_t n_subsystems() const { return dims_out.size(); }

  Complex trace() const { return data.trace(); }
  LabeledOperator dagger() const;
  // Entrywise complex conjugate (no dims change).
  LabeledOperator conjugate() const;
  LabeledOperator transpose() const;

  bool is_hermitian(double tol = kValidationTol) const;
  // Throws if not hermitian within tol.
  void ensure_hermitian(double tol = kValidationTol) const;
  // Hermitian, trace 1 within tol, min eigenvalue >= -tol. Throws otherwise.
  void ensure_density(double tol = kValidationTol) const;
  // Column vector with unit norm within tol. Throws otherwise.
  void ensure_state_vector(double tol = kValidationTol) const;
};

// Largest entrywise absolute value of the difference. Shapes must match.
double max_abs_diff(const LabeledOperator& a, const LabeledOperator& b);
double max_abs(const Matrix& m);

LabeledOperator identity_op(std::vector<int> dims);
// |v><v| from a ket.
LabeledOperator projector(const LabeledOperator& ket);

// Kronecker product; dims lists concatenate in the given order.
LabeledOperator kron(std::span<const LabeledOperator> ops);
LabeledOperator kron(std::initializer_list<LabeledOperator> ops);
LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b);

// Trace out the subsystems in `discard`; remaining factors keep their
// original order.
LabeledOperator partial_trace(const LabeledOperator& op,
                              const SubsystemMask& discard);

// Transpose the tensor factors in `mask` (computational basis). Involutive,
// trace- and hermiticity-preserving.
LabeledOperator partial_transpose(const LabeledOperator& op,
                                  const SubsystemMask& mask);

// Reorder tensor factors: subsystem j of the result is subsystem order[j]
// of the input (numpy-transpose convention). `order` must be a permutation
// of 0..n-1. Square operators permute rows and columns together; kets
// (dims_in == {1}) permute rows only.
LabeledOperator permute_subsystems(const LabeledOperator& op,
                                   std::span<const int> order);
LabeledOperator permute_subsystems(const LabeledOperator& op,
                                   std::initializer_list<int> order);

struct EigResult {
  RealVector values;  // sorted descending
  Matrix vectors;     // orthonormal columns, matching order
};

// Eigendecomposition of a hermitian operator. The input is symmetrized as
// (M + M^dagger)/2 before solving; inputs farther than tol from hermitian
// are rejected.
EigResult hermitian_eigs(const LabeledOperator& op,
                         double tol = kValidationTol);

// V rho V^dagger for an isometry V (checked V^dagger V = I).
LabeledOperator apply(const LabeledOperator& isometry,
                      const LabeledOperator& state);

// Operator-sum application: sum_K K rho K^dagger. With require_tp the Kraus
// list must satisfy sum K^dagger K = I within kValidationTol; otherwise it
// may be trace-decreasing (instrument branch) but never trace-increasing.
LabeledOperator apply(std::span<const LabeledOperator> kraus,
                      const LabeledOperator& state, bool require_tp = true);

}  // namespace bellcast

#endif  // BELLCAST_TENSOR_HPP
