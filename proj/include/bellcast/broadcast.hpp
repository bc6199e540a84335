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

#ifndef BELLCAST_BROADCAST_HPP
#define BELLCAST_BROADCAST_HPP

#include <array>
#include <utility>
#include <vector>

#include "bellcast/quantum.hpp"
#include "bellcast/tensor.hpp"

namespace bellcast {

// Register conventions, fixed once for the whole library:
//
//   * Each source party X holds registers (X1_in, X1_aux, X2) in that order
//     after its splitting isometry; parties are concatenated A, B, C, ...
//   * The splitting isometry relays the incoming qubit to X1_in and prepares
//     a fresh EPR pair Phi+ on (X1_aux, X2).
//   * Upper branch X1 measures (X1_in, X1_aux): setting 0 is the Bell-basis
//     measurement (outcome m <-> Bell state (sigma_m (x) I)|Phi+>), settings
//     1..6 are the binary measurements of the six observables
//     (Z+-X)/sqrt2, (Z+-Y)/sqrt2, (X+-Y)/sqrt2 on X1_aux.
//   * Lower branch X2 measures its qubit with the binary Pauli measurements;
//     setting positions 0,1,2 (labels x2 = 1,2,3) measure Z, X, Y.
//
// The lower-branch assignment Z,X,Y is what makes each CHSH block of the
// inner-link Bell expression reach 2*sqrt2 on Phi+ given this library's
// Bell-state indexing; it is deliberately a single configuration constant.
inline constexpr std::array<Pauli, 3> kLowerObservables{Pauli::Z, Pauli::X,
                                                        Pauli::Y};
inline constexpr int kUpperSettings = 7;
inline constexpr int kLowerSettings = 3;

// The six upper-branch observables, index 0..5 = paper-facing labels 1..6.
std::vector<LabeledOperator> bowles_observables();

// One source party's devices.
struct PartyDevices {
  LabeledOperator isometry;  // input qubit -> (X1_in, X1_aux, X2)
  Povm upper;                // settings {0..6} on (X1_in, X1_aux)
  Povm lower;                // setting positions {0,1,2} on X2
  bool transposed = false;   // devices are the transposed variant
};

struct BroadcastModel {
  LabeledOperator source;  // density with one qubit slot per party
  std::vector<PartyDevices> parties;

  int n_parties() const { return static_cast<int>(parties.size()); }
  void validate() const;
};

// Honest broadcast scenario for an N-qubit source (one qubit per party).
BroadcastModel honest_model(const LabeledOperator& source);

// Transposes the source and every effect and conjugates the isometries.
// The resulting model produces the same behavior as the input.
BroadcastModel transpose_model(const BroadcastModel& model);

// Exact outcome-probability table over all measurement parties. Measurement
// parties are ordered A1, A2, B1, B2, ...: party 2i is source party i's
// upper branch, party 2i+1 its lower branch. Settings are positional
// (lower-branch position s denotes the paper-facing label x2 = s+1).
class Behavior {
 public:
  Behavior(std::vector<std::vector<int>> outcome_counts);

  int n_parties() const { return static_cast<int>(outcome_counts_.size()); }
  int n_settings(int party) const {
    return static_cast<int>(outcome_counts_[party].size());
  }
  int n_outcomes(int party, int setting) const {
    return outcome_counts_[party][setting];
  }

  double p(std::span<const int> settings, std::span<const int> outcomes) const;
  double& at(std::span<const int> settings, std::span<const int> outcomes);

  // Probability of the given (party -> outcome) assignments with all other
  // parties' outcomes summed, at the given full settings tuple.
  double marginal(std::span<const int> settings,
                  std::span<const std::pair<int, int>> fixed_outcomes) const;

  // Range and normalization checks; throws on violation.
  void validate() const;

  // Largest deviation of this party's outcome marginal across the other
  // parties' setting choices (0 for a no-signaling behavior).
  double no_signaling_defect(int party) const;

  std::size_t n_setting_tuples() const { return table_.size(); }
  double max_diff(const Behavior& other) const;

  bool same_layout(const Behavior& other) const {
    return outcome_counts_ == other.outcome_counts_;
  }

 private:
  friend Behavior mixture_behavior(
      std::span<const std::pair<double, Behavior>> components);

  std::size_t settings_index(std::span<const int> settings) const;
  std::size_t outcomes_index(std::span<const int> settings,
                             std::span<const int> outcomes) const;

  std::vector<std::vector<int>> outcome_counts_;  // [party][setting]
  std::vector<std::vector<double>> table_;        // [settings][outcomes]
};

// Born-rule evaluation of the full behavior (exact, no sampling).
Behavior behavior(const BroadcastModel& model);

Behavior mixture_behavior(
    std::span<const std::pair<double, Behavior>> components);
Behavior mixture_behavior(
    std::span<const std::pair<double, BroadcastModel>> components);

}  // namespace bellcast

#endif  // BELLCAST_BROADCAST_HPP
