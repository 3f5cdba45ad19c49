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

#ifndef LOCOH_COHERENCE_HPP
#define LOCOH_COHERENCE_HPP

#include <string>
#include <vector>

#include "locoh/tensor.hpp"

namespace locoh {

/// Default tolerance on overlap moduli for mutual unbiasedness.
inline constexpr double kMubTol = 1e-8;

/// Orthonormal basis stored as a unitary whose columns are the basis states.
class Basis {
   public:
    Basis() = default;
    explicit Basis(ComplexMatrix vectors, std::string label = "");

    static Basis computational(long dim);

    long dim() const { return vectors_.rows(); }
    const ComplexMatrix &vectors() const { return vectors_; }
    const std::string &label() const { return label_; }

    /// |k><k| for the k-th basis state.
    ComplexMatrix projector(long k) const;
    /// V^dagger X V: operator expressed in this basis.
    ComplexMatrix to_frame(const ComplexMatrix &op) const;
    ComplexMatrix from_frame(const ComplexMatrix &op) const;
    bool is_computational() const { return computational_; }

   private:
    ComplexMatrix vectors_;
    std::string label_;
    bool computational_ = false;
};

/// B = B_S (x) B_A, with B_S on the S factors and B_A on the A factors.
struct FactorizedBasis {
    Basis bs;
    Basis ba;

    static FactorizedBasis computational(long d_s, long d_a);
    /// Product basis in S-first ordering.
    Basis full() const;
};

enum class Measure { kC1, kC2 };

const char *to_string(Measure m);
Measure measure_from_string(const std::string &s);

/// Kronecker product of two bases (first one most significant).
Basis kron(const Basis &a, const Basis &b);

/// sum_k chi_k rho chi_k
DensityMatrix dephase(const DensityMatrix &rho, const Basis &basis);
ComplexMatrix dephase(const ComplexMatrix &rho, const Basis &basis);

/// sum_i (I_S (x) omega_i) rho (I_S (x) omega_i); structure must declare S.
DensityMatrix partial_dephase(const DensityMatrix &rho, const Basis &basis_a);
/// Same, acting on the S factors.
DensityMatrix partial_dephase_s(const DensityMatrix &rho, const Basis &basis_s);

/// Squared 2-norm coherence: Pur(rho) - Pur(D_B rho).
double c2(const ComplexMatrix &rho, const Basis &basis);
double c2(const DensityMatrix &rho, const Basis &basis);
/// l1 coherence: off-diagonal modulus sum in the basis frame.
double c1(const ComplexMatrix &rho, const Basis &basis);
double c1(const DensityMatrix &rho, const Basis &basis);
double coherence(const ComplexMatrix &rho, const Basis &basis, Measure m);
double coherence(const DensityMatrix &rho, const Basis &basis, Measure m);

/// Coherence of the operator |v><v| for amplitudes v already expressed in the
/// basis frame. v need not be normalized; the result scales as |v|^4 (c2) or
/// |v|^2 (c1 scales as the operator does).
double pure_coherence_in_frame(const StateVector &amplitudes, Measure m);

/// Discrete Fourier basis: columns F_jk = exp(2 pi i jk / d) / sqrt(d).
Basis fourier_basis(long dim);
/// V F: a basis unbiased to `b`.
Basis fourier_partner(const Basis &b);

/// True iff every |<b1_j|b2_k>| equals d^{-1/2} within tol.
bool mub_check(const Basis &b1, const Basis &b2, double tol = kMubTol);

/// Coherence of rho_S = sum_a |c_a|^2 |xi_a><xi_a| evaluated from Schmidt data.
///
/// `coeffs` are the Schmidt coefficients c_a (need sum |c_a|^2 = 1); the
/// first coeffs.size() columns of `xi` are the Schmidt vectors on S.
double schmidt_coherence(const std::vector<Complex> &coeffs, const Basis &xi,
                         const Basis &target, Measure m);

}  // namespace locoh

#endif
