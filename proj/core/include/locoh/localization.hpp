// Copyright 2026 The locoh Authors
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

#ifndef LOCOH_LOCALIZATION_HPP
#define LOCOH_LOCALIZATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "locoh/coherence.hpp"
#include "locoh/tensor.hpp"

namespace locoh {

/// Outcomes with Born probability below this are dropped and the remaining
/// mass renormalized.
inline constexpr double kOutcomeCutoff = 1e-12;
/// Bound on ||[rho_i, rho_j]||_2 for an ensemble to count as commuting.
inline constexpr double kCommuteTol = 1e-8;

enum class Protocol { kTraceOut, kNonSelective, kPostSelected };

const char *to_string(Protocol p);
Protocol protocol_from_string(const std::string &s);

struct Outcome {
    double probability = 0.0;
    DensityMatrix state;  // post-selected state on S
    long label = 0;       // index of the B_A element
};

/// Post-selected S states with their Born probabilities.
class MeasurementEnsemble {
   public:
    MeasurementEnsemble() = default;
    explicit MeasurementEnsemble(std::vector<Outcome> outcomes, double discarded_mass = 0.0);

    const std::vector<Outcome> &outcomes() const { return outcomes_; }
    size_t size() const { return outcomes_.size(); }
    double discarded_mass() const { return discarded_mass_; }
    long dim_s() const;

    /// sum_i p_i rho'_{S,i}
    ComplexMatrix average_state() const;

   private:
    std::vector<Outcome> outcomes_;
    double discarded_mass_ = 0.0;
};

struct ProtocolResult {
    double value = 0.0;
    Protocol protocol = Protocol::kTraceOut;
    Measure measure = Measure::kC2;
    std::string bs_label;
    std::string ba_label;
};

/// C_Tr: measure of Tr_A(rho) in bs.
double c_trace(const DensityMatrix &rho, const Basis &bs, Measure m);

/// Measure A in ba; returns renormalized conditional S states.
MeasurementEnsemble measure_outcomes(const DensityMatrix &rho, const Basis &ba);

/// C_B: measure of D_{B_A}(rho) in B = B_S (x) B_A.
double c_nonselective(const DensityMatrix &rho, const FactorizedBasis &b, Measure m);

/// C_ave: sum_i p_i measure(rho'_{S,i}, B_S).
double c_postselected(const DensityMatrix &rho, const FactorizedBasis &b, Measure m);
double c_postselected(const MeasurementEnsemble &ensemble, const Basis &bs, Measure m);

ProtocolResult evaluate(Protocol p, const DensityMatrix &rho, const FactorizedBasis &b, Measure m);

/// Both sides of C_B = sum_i p_i^2 c2(rho'_{S,i}, B_S) for the c2 measure.
struct IdentityPair {
    double lhs = 0.0;  // c_nonselective
    double rhs = 0.0;  // sum_i p_i^2 c2(rho'_{S,i})
};
IdentityPair nonselective_identity(const DensityMatrix &rho, const FactorizedBasis &b);

/// All protocol values for a pure state, computed from amplitudes without
/// forming density matrices. `full` is the coherence of the whole state in B.
struct ProtocolValues {
    double trace_out = 0.0;
    double nonselective = 0.0;
    double postselected = 0.0;
    double full = 0.0;
};
ProtocolValues evaluate_pure(const StateVector &psi, const TensorStructure &s,
                             const FactorizedBasis &b, Measure m);

struct PureOutcome {
    double probability = 0.0;
    StateVector state;  // normalized, S computational coordinates
    long label = 0;
};
std::vector<PureOutcome> measure_outcomes_pure(const StateVector &psi, const TensorStructure &s,
                                               const Basis &ba);

/// Largest ||[rho_i, rho_j]||_2 over the ensemble.
double max_commutator_norm(const MeasurementEnsemble &ensemble);

struct OptimalBasis {
    Basis common_eigenbasis;  // B'_S, diagonalizes every rho'_{S,i}
    Basis optimal;            // Fourier partner of B'_S
    double max_commutator = 0.0;
};

/// Optimal B_S for a commuting ensemble: any basis unbiased to a common
/// eigenbasis. The eigenbasis comes from a generic convex combination of the
/// members and is checked against each of them.
OptimalBasis optimal_basis_commuting(const MeasurementEnsemble &ensemble,
                                     double tol = kCommuteTol);

struct BasisSearchResult {
    Basis best;
    double value = 0.0;
    long best_index = -1;
    std::vector<double> values;  // per candidate
};

/// Random-restart maximizer of a protocol over Haar-random B_S candidates.
/// Candidate k uses stream k of `seed`; ties go to the lowest index.
BasisSearchResult random_basis_search(const DensityMatrix &rho, const Basis &ba, Protocol p,
                                      Measure m, long candidates, std::uint64_t seed,
                                      int threads = 1);

}  // namespace locoh

#endif
