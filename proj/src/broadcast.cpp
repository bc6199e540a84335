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

#include "bellcast/broadcast.hpp"

#include <cmath>
#include <stdexcept>

namespace bellcast {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

LabeledOperator honest_isometry() {
  // |x> -> |x>_in (x) |Phi+>_(aux, X2)
  LabeledOperator phi = bell_state(0);
  Matrix v = Matrix::Zero(8, 2);
  for (int x = 0; x < 2; ++x) {
    v.block(4 * x, x, 4, 1) = phi.data;
  }
  return LabeledOperator(std::move(v), {2, 2, 2}, {2});
}

Povm honest_upper_povm() {
  Povm povm;
  povm.acting_on = SubsystemMask{0, 1};  // (X1_in, X1_aux) within the party
  // Setting 0: Bell basis. Built on (aux, in) register order and permuted
  // into the (in, aux) storage order.
  std::vector<LabeledOperator> bell;
  for (int m = 0; m < 4; ++m) {
    bell.push_back(permute_subsystems(bell_projector(m), {1, 0}));
  }
  povm.effects.push_back(std::move(bell));
  // Settings 1..6: binary measurements of M on the aux qubit.
  for (const auto& m : bowles_observables()) {
    LabeledOperator obs = kron(pauli(Pauli::I), m);
    povm.effects.push_back(binary_povm(obs).effects[0]);
  }
  return povm;
}

Povm honest_lower_povm() {
  Povm povm;
  povm.acting_on = SubsystemMask{2};
  for (Pauli p : kLowerObservables) {
    povm.effects.push_back(binary_povm(pauli(p)).effects[0]);
  }
  return povm;
}

}  // namespace

std::vector<LabeledOperator> bowles_observables() {
  auto x = pauli(Pauli::X).data;
  auto y = pauli(Pauli::Y).data;
  auto z = pauli(Pauli::Z).data;
  std::vector<Matrix> ms = {
      (z + x) * kInvSqrt2, (z - x) * kInvSqrt2, (z + y) * kInvSqrt2,
      (z - y) * kInvSqrt2, (x + y) * kInvSqrt2, (x - y) * kInvSqrt2,
  };
  std::vector<LabeledOperator> out;
  out.reserve(ms.size());
  for (auto& m : ms) out.emplace_back(std::move(m), std::vector<int>{2});
  return out;
}

void BroadcastModel::validate() const {
  if (source.n_subsystems() != parties.size()) {
    throw std::invalid_argument("source dims do not match party count");
  }
  source.ensure_density();
  for (std::size_t i = 0; i < parties.size(); ++i) {
    const auto& party = parties[i];
    if (party.isometry.dims_in != std::vector<int>{source.dims_out[i]}) {
      throw std::invalid_argument("isometry input dim mismatch");
    }
    Matrix gram = party.isometry.data.adjoint() * party.isometry.data;
    if (max_abs(Matrix(gram - Matrix::Identity(gram.rows(), gram.cols()))) >
        kValidationTol) {
      throw std::invalid_argument("party isometry is not an isometry");
    }
    if (party.upper.n_settings() != kUpperSettings ||
        party.lower.n_settings() != kLowerSettings) {
      throw std::invalid_argument("party POVM has wrong setting count");
    }
    party.upper.validate();
    party.lower.validate();
  }
}

BroadcastModel honest_model(const LabeledOperator& source) {
  source.ensure_density();
  for (int d : source.dims_out) {
    if (d != 2) {
      throw std::invalid_argument("honest broadcast model requires qubit parties");
    }
  }
  BroadcastModel model;
  model.source = source;
  PartyDevices devices{honest_isometry(), honest_upper_povm(),
                       honest_lower_povm(), false};
  model.parties.assign(source.n_subsystems(), devices);
  model.validate();
  return model;
}

BroadcastModel transpose_model(const BroadcastModel& model) {
  BroadcastModel out;
  SubsystemMask all_mask([&] {
    std::vector<int> idx(model.source.n_subsystems());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    return idx;
  }());
  out.source = partial_transpose(model.source, all_mask);
  for (const auto& party : model.parties) {
    PartyDevices t;
    t.isometry = party.isometry.conjugate();
    t.upper.acting_on = party.upper.acting_on;
    t.lower.acting_on = party.lower.acting_on;
    for (const auto& setting : party.upper.effects) {
      std::vector<LabeledOperator> transposed;
      for (const auto& e : setting) transposed.push_back(e.transpose());
      t.upper.effects.push_back(std::move(transposed));
    }
    for (const auto& setting : party.lower.effects) {
      std::vector<LabeledOperator> transposed;
      for (const auto& e : setting) transposed.push_back(e.transpose());
      t.lower.effects.push_back(std::move(transposed));
    }
    t.transposed = !party.transposed;
    out.parties.push_back(std::move(t));
  }
  out.validate();
  return out;
}

Behavior::Behavior(std::vector<std::vector<int>> outcome_counts)
    : outcome_counts_(std::move(outcome_counts)) {
  std::size_t n_tuples = 1;
  for (const auto& party : outcome_counts_) n_tuples *= party.size();
  table_.resize(n_tuples);
  std::vector<int> settings(outcome_counts_.size(), 0);
  for (std::size_t t = 0; t < n_tuples; ++t) {
    std::size_t rem = t;
    std::size_t n_out = 1;
    for (std::size_t pidx = outcome_counts_.size(); pidx-- > 0;) {
      settings[pidx] = static_cast<int>(rem % outcome_counts_[pidx].size());
      rem /= outcome_counts_[pidx].size();
    }
    for (std::size_t pidx = 0; pidx < outcome_counts_.size(); ++pidx) {
      n_out *= outcome_counts_[pidx][settings[pidx]];
    }
    table_[t].assign(n_out, 0.0);
  }
}

std::size_t Behavior::settings_index(std::span<const int> settings) const {
  if (settings.size() != outcome_counts_.size()) {
    throw std::invalid_argument("settings tuple has wrong length");
  }
  std::size_t idx = 0;
  for (std::size_t pidx = 0; pidx < settings.size(); ++pidx) {
    const int s = settings[pidx];
    if (s < 0 || static_cast<std::size_t>(s) >= outcome_counts_[pidx].size()) {
      throw std::out_of_range("setting out of range");
    }
    idx = idx * outcome_counts_[pidx].size() + static_cast<std::size_t>(s);
  }
  return idx;
}

std::size_t Behavior::outcomes_index(std::span<const int> settings,
                                     std::span<const int> outcomes) const {
  if (outcomes.size() != outcome_counts_.size()) {
    throw std::invalid_argument("outcomes tuple has wrong length");
  }
  std::size_t idx = 0;
  for (std::size_t pidx = 0; pidx < outcomes.size(); ++pidx) {
    const int count = outcome_counts_[pidx][settings[pidx]];
    const int o = outcomes[pidx];
    if (o < 0 || o >= count) throw std::out_of_range("outcome out of range");
    idx = idx * static_cast<std::size_t>(count) + static_cast<std::size_t>(o);
  }
  return idx;
}

double Behavior::p(std::span<const int> settings,
                   std::span<const int> outcomes) const {
  return table_[settings_index(settings)][outcomes_index(settings, outcomes)];
}

double& Behavior::at(std::span<const int> settings,
                     std::span<const int> outcomes) {
  return table_[settings_index(settings)][outcomes_index(settings, outcomes)];
}

double Behavior::marginal(
    std::span<const int> settings,
    std::span<const std::pair<int, int>> fixed_outcomes) const {
  const int n = n_parties();
  std::vector<int> fixed(n, -1);
  for (const auto& [party, outcome] : fixed_outcomes) {
    if (party < 0 || party >= n) throw std::out_of_range("party out of range");
    fixed[party] = outcome;
  }
  std::vector<int> outcomes(n, 0);
  for (int pidx = 0; pidx < n; ++pidx) {
    if (fixed[pidx] >= 0) outcomes[pidx] = fixed[pidx];
  }
  double total = 0.0;
  // Odometer over the free parties' outcomes.
  while (true) {
    total += p(settings, outcomes);
    int pidx = n - 1;
    for (; pidx >= 0; --pidx) {
      if (fixed[pidx] >= 0) continue;
      if (++outcomes[pidx] < outcome_counts_[pidx][settings[pidx]]) break;
      outcomes[pidx] = 0;
    }
    if (pidx < 0) break;
  }
  return total;
}

void Behavior::validate() const {
  for (const auto& probs : table_) {
    double sum = 0.0;
    for (double v : probs) {
      if (v < -1e-12 || v > 1.0 + 1e-12) {
        throw std::runtime_error("behavior probability out of range");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kArithmeticTol) {
      throw std::runtime_error("behavior outcomes do not sum to 1");
    }
  }
}

double Behavior::no_signaling_defect(int party) const {
  const int n = n_parties();
  double defect = 0.0;
  for (int s = 0; s < n_settings(party); ++s) {
    const int n_out = outcome_counts_[party][s];
    // Reference marginal at the all-zero completion, then scan all others.
    std::vector<double> reference(n_out, -1.0);
    std::vector<int> settings(n, 0);
    settings[party] = s;
    while (true) {
      for (int o = 0; o < n_out; ++o) {
        std::pair<int, int> fix{party, o};
        double m = marginal(settings, std::span<const std::pair<int, int>>(&fix, 1));
        if (reference[o] < 0) {
          reference[o] = m;
        } else {
          defect = std::max(defect, std::abs(m - reference[o]));
        }
      }
      int pidx = n - 1;
      for (; pidx >= 0; --pidx) {
        if (pidx == party) continue;
        if (++settings[pidx] < n_settings(pidx)) break;
        settings[pidx] = 0;
      }
      if (pidx < 0) break;
    }
  }
  return defect;
}

double Behavior::max_diff(const Behavior& other) const {
  if (!same_layout(other)) throw std::invalid_argument("behavior layout mismatch");
  double d = 0.0;
  for (std::size_t t = 0; t < table_.size(); ++t) {
    for (std::size_t o = 0; o < table_[t].size(); ++o) {
      d = std::max(d, std::abs(table_[t][o] - other.table_[t][o]));
    }
  }
  return d;
}

namespace {

// Recursive party-by-party contraction of tr[(F_1 (x) ... (x) F_N) rho_g].
// `op` is the current operator on the remaining parties' 8-dim blocks; at
// each level one party's joint (upper (x) lower) effect is traced in.
class BehaviorBuilder {
 public:
  BehaviorBuilder(const BroadcastModel& model, Behavior& out)
      : out_(out), n_(model.n_parties()) {
    settings_.resize(2 * n_);
    outcomes_.resize(2 * n_);
    joint_effects_.resize(n_);
    upper_settings_.resize(n_);
    lower_settings_.resize(n_);
    lower_outcomes_.resize(n_);
    for (int party = 0; party < n_; ++party) {
      const auto& devices = model.parties[party];
      upper_settings_[party] = devices.upper.n_settings();
      lower_settings_[party] = devices.lower.n_settings();
      for (int xl = 0; xl < devices.lower.n_settings(); ++xl) {
        lower_outcomes_[party].push_back(devices.lower.n_outcomes(xl));
      }
      for (int xu = 0; xu < devices.upper.n_settings(); ++xu) {
        for (int xl = 0; xl < devices.lower.n_settings(); ++xl) {
          std::vector<Matrix> outcome_effects;
          for (int au = 0; au < devices.upper.n_outcomes(xu); ++au) {
            for (int al = 0; al < devices.lower.n_outcomes(xl); ++al) {
              outcome_effects.push_back(kron(devices.upper.effects[xu][au],
                                             devices.lower.effects[xl][al])
                                            .data);
            }
          }
          joint_effects_[party].push_back(std::move(outcome_effects));
        }
      }
    }
  }

  void run(const Matrix& rho_global) { recurse(0, rho_global); }

 private:
  void recurse(int party, const Matrix& op) {
    if (party == n_) {
      if (std::abs(op(0, 0).imag()) > kValidationTol) {
        throw std::runtime_error("Born-rule probability has imaginary part");
      }
      out_.at(settings_, outcomes_) = op(0, 0).real();
      return;
    }
    const Eigen::Index rest = op.rows() / 8;
    for (int xu = 0; xu < upper_settings_[party]; ++xu) {
      settings_[2 * party] = xu;
      for (int xl = 0; xl < lower_settings_[party]; ++xl) {
        settings_[2 * party + 1] = xl;
        const int n_lower_out = lower_outcomes_[party][xl];
        const auto& effects =
            joint_effects_[party][xu * lower_settings_[party] + xl];
        for (std::size_t joint = 0; joint < effects.size(); ++joint) {
          outcomes_[2 * party] = static_cast<int>(joint) / n_lower_out;
          outcomes_[2 * party + 1] = static_cast<int>(joint) % n_lower_out;
          const Matrix& effect = effects[joint];
          Matrix next = Matrix::Zero(rest, rest);
          for (Eigen::Index i = 0; i < 8; ++i) {
            for (Eigen::Index j = 0; j < 8; ++j) {
              const Complex f = effect(i, j);
              if (f == Complex(0.0, 0.0)) continue;
              next.noalias() += f * op.block(j * rest, i * rest, rest, rest);
            }
          }
          recurse(party + 1, next);
        }
      }
    }
  }

  Behavior& out_;
  int n_;
  std::vector<int> settings_;
  std::vector<int> outcomes_;
  std::vector<int> upper_settings_;
  std::vector<int> lower_settings_;
  std::vector<std::vector<int>> lower_outcomes_;  // [party][xl]
  // [party][xu * n_lower_settings + xl][au * n_lower_out + al]
  std::vector<std::vector<std::vector<Matrix>>> joint_effects_;
};

}  // namespace

Behavior behavior(const BroadcastModel& model) {
  model.validate();
  const int n = model.n_parties();

  std::vector<LabeledOperator> isometries;
  isometries.reserve(n);
  for (const auto& party : model.parties) isometries.push_back(party.isometry);
  LabeledOperator global_state = apply(kron(isometries), model.source);

  std::vector<std::vector<int>> outcome_counts;
  for (const auto& party : model.parties) {
    std::vector<int> upper_counts, lower_counts;
    for (int s = 0; s < party.upper.n_settings(); ++s) {
      upper_counts.push_back(party.upper.n_outcomes(s));
    }
    for (int s = 0; s < party.lower.n_settings(); ++s) {
      lower_counts.push_back(party.lower.n_outcomes(s));
    }
    outcome_counts.push_back(std::move(upper_counts));
    outcome_counts.push_back(std::move(lower_counts));
  }

  Behavior result(std::move(outcome_counts));
  BehaviorBuilder builder(model, result);
  builder.run(global_state.data);
  result.validate();
  return result;
}

Behavior mixture_behavior(
    std::span<const std::pair<double, Behavior>> components) {
  if (components.empty()) {
    throw std::invalid_argument("mixture of zero behaviors");
  }
  double weight_sum = 0.0;
  for (const auto& [w, b] : components) {
    if (w < 0.0) throw std::invalid_argument("mixture weight is negative");
    if (!components[0].second.same_layout(b)) {
      throw std::invalid_argument("mixture components have different layouts");
    }
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > kValidationTol) {
    throw std::invalid_argument("mixture weights do not sum to 1");
  }
  Behavior out = components[0].second;
  for (std::size_t t = 0; t < out.table_.size(); ++t) {
    for (std::size_t o = 0; o < out.table_[t].size(); ++o) {
      double acc = 0.0;
      for (const auto& [w, b] : components) acc += w * b.table_[t][o];
      out.table_[t][o] = acc;
    }
  }
  return out;
}

Behavior mixture_behavior(
    std::span<const std::pair<double, BroadcastModel>> components) {
  std::vector<std::pair<double, Behavior>> behaviors;
  behaviors.reserve(components.size());
  for (const auto& [w, model] : components) {
    behaviors.emplace_back(w, behavior(model));
  }
  return mixture_behavior(
      std::span<const std::pair<double, Behavior>>(behaviors));
}

}  // namespace bellcast
