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

#ifndef LOCOH_TENSOR_HPP
#define LOCOH_TENSOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "locoh/error.hpp"

namespace locoh {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerance for Hermiticity, unit trace and eigenvalue negativity of states.
inline constexpr double kStateTol = 1e-9;

/// Largest total dimension the dense kernels accept.
inline constexpr long kMaxDenseDim = 1L << 13;

/// Ordered list of subsystem dimensions with a mask marking the S factors.
///
/// Index flattening is big-endian: factor 0 is the most significant digit.
/// The mask may be all-false (no bipartition declared) or all-true (A is
/// trivial, d_A = 1); protocols need at least one S factor.
class TensorStructure {
   public:
    TensorStructure() = default;
    explicit TensorStructure(std::vector<int> dims);
    TensorStructure(std::vector<int> dims, std::vector<bool> s_mask);

    /// Two factors, S first.
    static TensorStructure bipartite(int d_s, int d_a);
    /// `n` identical factors of dimension `d`, no bipartition.
    static TensorStructure uniform(int n, int d);

    const std::vector<int> &dims() const { return dims_; }
    const std::vector<bool> &s_mask() const { return s_mask_; }
    int num_factors() const { return static_cast<int>(dims_.size()); }
    long total_dim() const { return total_; }

    bool has_s() const;
    /// S nonempty and a proper subset.
    bool has_proper_bipartition() const;
    std::vector<int> s_factors() const;
    std::vector<int> a_factors() const;
    long dim_s() const;
    long dim_a() const;

    std::vector<int> unflatten(long index) const;
    long flatten(std::span<const int> digits) const;

    /// Structure of the kept factors, in the given order, mask carried along.
    TensorStructure restrict_to(std::span<const int> factors) const;
    TensorStructure with_mask(std::vector<bool> s_mask) const;

    bool operator==(const TensorStructure &) const = default;

   private:
    std::vector<int> dims_;
    std::vector<bool> s_mask_;
    long total_ = 1;
};

/// Hermitian, unit-trace, positive semidefinite matrix on a TensorStructure.
class DensityMatrix {
   public:
    enum class Check { kFull, kNone };

    DensityMatrix() = default;
    /// Validates the state unless `check == Check::kNone`; kNone is for
    /// results of operations already known to preserve validity.
    DensityMatrix(ComplexMatrix mat, TensorStructure structure, Check check = Check::kFull);

    /// |psi><psi| for a normalized psi.
    static DensityMatrix from_pure(const StateVector &psi, TensorStructure structure);
    static DensityMatrix maximally_mixed(TensorStructure structure);

    const ComplexMatrix &mat() const { return mat_; }
    const TensorStructure &structure() const { return structure_; }
    long dim() const { return mat_.rows(); }

   private:
    ComplexMatrix mat_;
    TensorStructure structure_;
};

/// Kronecker product, leftmost factor most significant.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
StateVector kron(const StateVector &a, const StateVector &b);

/// Reorders tensor factors: new factor k is old factor `order[k]`.
ComplexMatrix permute_factors(const ComplexMatrix &m, const TensorStructure &s,
                              std::span<const int> order);
StateVector permute_factors(const StateVector &v, const TensorStructure &s,
                            std::span<const int> order);

/// op acting on the factors `support` (in that order), identity elsewhere.
ComplexMatrix embed_operator(const ComplexMatrix &op, const TensorStructure &s,
                             std::span<const int> support);

/// Factor order that puts S factors first (in original order), then A.
std::vector<int> s_first_order(const TensorStructure &s);

/// Trace over the complement of `keep`; kept factors retain their order.
ComplexMatrix partial_trace(const ComplexMatrix &m, const TensorStructure &s,
                            std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep);

/// Tr_A(rho) on the S factors.
DensityMatrix reduce_to_s(const DensityMatrix &rho);

/// Reduced density matrix of a pure state on `keep`.
ComplexMatrix reduced_from_pure(const StateVector &psi, const TensorStructure &s,
                                std::span<const int> keep);

double purity(const ComplexMatrix &m);
double purity(const DensityMatrix &rho);

/// Schatten-2 distance.
double hs_distance(const ComplexMatrix &a, const ComplexMatrix &b);
double hs_distance(const DensityMatrix &a, const DensityMatrix &b);

/// Max |M - M^dagger| entry.
double hermiticity_residual(const ComplexMatrix &m);
/// Frobenius norm of U^dagger U - I.
double unitarity_residual(const ComplexMatrix &u);

}  // namespace locoh

#endif
