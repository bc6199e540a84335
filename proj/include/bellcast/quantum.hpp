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

#ifndef BELLCAST_QUANTUM_HPP
#define BELLCAST_QUANTUM_HPP

#include <cstdint>
#include <vector>

#include "bellcast/tensor.hpp"

namespace bellcast {

enum class Pauli : int { I = 0, X = 1, Y = 2, Z = 3 };

// 2x2 Pauli matrix. The computational-basis transpose convention this fixes
// (X^T = X, Z^T = Z, Y^T = -Y) drives every transposition-branch sign in the
// rest of the library.
LabeledOperator pauli(Pauli p);

// Bell-basis ket, indexed so that bell_state(m) = (sigma_m (x) I)|Phi+>,
// sigma_0 = I. Outcome m of a Bell measurement therefore carries the
// teleportation correction sigma_m, and outcome 0 is the Phi+ outcome.
LabeledOperator bell_state(int index);
LabeledOperator bell_projector(int index);

// Per-setting list of POVM effects on a declared subsystem set. Each setting
// sums to the identity and every effect is positive within kValidationTol.
struct Povm {
  std::vector<std::vector<LabeledOperator>> effects;  // [setting][outcome]
  SubsystemMask acting_on;

  int n_settings() const { return static_cast<int>(effects.size()); }
  int n_outcomes(int setting) const {
    return static_cast<int>(effects.at(setting).size());
  }
  void validate(double tol = kValidationTol) const;
};

// Outcome-indexed list of completely positive maps in operator-sum form
// whose total is trace preserving.
struct Instrument {
  std::vector<std::vector<LabeledOperator>> branches;  // [outcome][kraus]
  std::vector<int> input_dims;
  std::vector<int> output_dims;

  int n_outcomes() const { return static_cast<int>(branches.size()); }
  void validate(double tol = kValidationTol) const;
  // All Kraus operators of all branches, for applying the total channel.
  std::vector<LabeledOperator> total_kraus() const;
};

// Two-effect POVM {(I+A)/2, (I-A)/2} from a hermitian observable whose
// spectrum lies in [-1, 1]. Outcome a=0 is the +1 eigenvalue.
Povm binary_povm(const LabeledOperator& observable,
                 SubsystemMask acting_on = SubsystemMask{});

// v |psi-><psi-| + (1-v) I/4.
LabeledOperator werner_state(double v);

LabeledOperator ghz_state(int n);
LabeledOperator w_state(int n);
LabeledOperator maximally_mixed(std::vector<int> dims);

// Seeded Haar-ish random objects (Gaussian ensembles; deterministic for a
// given seed within one build).
LabeledOperator random_pure(std::vector<int> dims, std::uint64_t seed);
// Normalized G G^dagger with G a complex-Gaussian dims x rank matrix.
LabeledOperator random_density(std::vector<int> dims, int rank,
                               std::uint64_t seed);
// Tensor product of independent random pure states, one per factor.
LabeledOperator random_product(std::vector<int> dims, std::uint64_t seed);
LabeledOperator random_unitary(int dim, std::uint64_t seed);

// Purification |Psi> of rho with the environment appended as a final
// subsystem of dimension rank(rho) (eigenvalues above 1e-12).
LabeledOperator purify(const LabeledOperator& rho);

}  // namespace bellcast

#endif  // BELLCAST_QUANTUM_HPP
