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

#include "locoh/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace locoh {

namespace {

// map[new_index] = old_index for a factor permutation.
std::vector<long> permutation_map(const TensorStructure &s, std::span<const int> order) {
    const int n = s.num_factors();
    require(static_cast<int>(order.size()) == n, ErrorKind::kInvalidArgument,
            "factor order has wrong length");
    std::vector<bool> seen(n, false);
    for (int f : order) {
        require(f >= 0 && f < n && !seen[f], ErrorKind::kInvalidArgument,
                "factor order is not a permutation");
        seen[f] = true;
    }
    // Strides of the old factors, big-endian.
    std::vector<long> old_stride(n, 1);
    for (int k = n - 2; k >= 0; --k) old_stride[k] = old_stride[k + 1] * s.dims()[k + 1];

    std::vector<long> map(static_cast<size_t>(s.total_dim()));
    std::vector<int> digit(n, 0);  // odometer over new digits
    long old_index = 0;
    for (long i = 0; i < s.total_dim(); ++i) {
        map[i] = old_index;
        for (int k = n - 1; k >= 0; --k) {
            const int f = order[k];
            if (++digit[k] < s.dims()[f]) {
                old_index += old_stride[f];
                break;
            }
            old_index -= old_stride[f] * (s.dims()[f] - 1);
            digit[k] = 0;
        }
    }
    return map;
}

std::vector<int> complement(int n, std::span<const int> keep) {
    std::vector<bool> kept(n, false);
    for (int f : keep) {
        require(f >= 0 && f < n, ErrorKind::kInvalidArgument, "factor index out of range");
        require(!kept[f], ErrorKind::kInvalidArgument, "duplicate factor in keep set");
        kept[f] = true;
    }
    std::vector<int> out;
    for (int f = 0; f < n; ++f)
        if (!kept[f]) out.push_back(f);
    return out;
}

void check_square(const ComplexMatrix &m, const TensorStructure &s) {
    require(m.rows() == m.cols(), ErrorKind::kDimensionMismatch, "matrix is not square");
    require(m.rows() == s.total_dim(), ErrorKind::kDimensionMismatch,
            "matrix dimension " + std::to_string(m.rows()) + " != structure dimension " +
                std::to_string(s.total_dim()));
}

}  // namespace

TensorStructure::TensorStructure(std::vector<int> dims)
    : TensorStructure(dims, std::vector<bool>(dims.size(), false)) {}

TensorStructure::TensorStructure(std::vector<int> dims, std::vector<bool> s_mask)
    : dims_(std::move(dims)), s_mask_(std::move(s_mask)) {
    require(!dims_.empty(), ErrorKind::kInvalidArgument, "structure needs at least one factor");
    require(s_mask_.size() == dims_.size(), ErrorKind::kInvalidArgument,
            "s_mask length differs from dims length");
    total_ = 1;
    for (int d : dims_) {
        require(d >= 1, ErrorKind::kInvalidArgument, "subsystem dimensions must be positive");
        require(total_ <= kMaxDenseDim * 64 / d, ErrorKind::kDimensionOverflow,
                "total dimension too large");
        total_ *= d;
    }
}

TensorStructure TensorStructure::bipartite(int d_s, int d_a) {
    return TensorStructure({d_s, d_a}, {true, false});
}

TensorStructure TensorStructure::uniform(int n, int d) {
    require(n >= 1, ErrorKind::kInvalidArgument, "need at least one factor");
    return TensorStructure(std::vector<int>(n, d));
}

bool TensorStructure::has_s() const {
    return std::find(s_mask_.begin(), s_mask_.end(), true) != s_mask_.end();
}

bool TensorStructure::has_proper_bipartition() const {
    return has_s() && std::find(s_mask_.begin(), s_mask_.end(), false) != s_mask_.end();
}

std::vector<int> TensorStructure::s_factors() const {
    std::vector<int> out;
    for (int f = 0; f < num_factors(); ++f)
        if (s_mask_[f]) out.push_back(f);
    return out;
}

std::vector<int> TensorStructure::a_factors() const {
    std::vector<int> out;
    for (int f = 0; f < num_factors(); ++f)
        if (!s_mask_[f]) out.push_back(f);
    return out;
}

long TensorStructure::dim_s() const {
    long d = 1;
    for (int f : s_factors()) d *= dims_[f];
    return d;
}

long TensorStructure::dim_a() const {
    long d = 1;
    for (int f : a_factors()) d *= dims_[f];
    return d;
}

std::vector<int> TensorStructure::unflatten(long index) const {
    require(index >= 0 && index < total_, ErrorKind::kInvalidArgument, "index out of range");
    std::vector<int> digits(dims_.size());
    for (int k = num_factors() - 1; k >= 0; --k) {
        digits[k] = static_cast<int>(index % dims_[k]);
        index /= dims_[k];
    }
    return digits;
}

long TensorStructure::flatten(std::span<const int> digits) const {
    require(digits.size() == dims_.size(), ErrorKind::kInvalidArgument, "digit count mismatch");
    long index = 0;
    for (int k = 0; k < num_factors(); ++k) {
        require(digits[k] >= 0 && digits[k] < dims_[k], ErrorKind::kInvalidArgument,
                "digit out of range");
        index = index * dims_[k] + digits[k];
    }
    return index;
}

TensorStructure TensorStructure::restrict_to(std::span<const int> factors) const {
    require(!factors.empty(), ErrorKind::kInvalidArgument, "empty factor subset");
    std::vector<int> dims;
    std::vector<bool> mask;
    for (int f : factors) {
        require(f >= 0 && f < num_factors(), ErrorKind::kInvalidArgument,
                "factor index out of range");
        dims.push_back(dims_[f]);
        mask.push_back(s_mask_[f]);
    }
    return TensorStructure(std::move(dims), std::move(mask));
}

TensorStructure TensorStructure::with_mask(std::vector<bool> s_mask) const {
    return TensorStructure(dims_, std::move(s_mask));
}

DensityMatrix::DensityMatrix(ComplexMatrix mat, TensorStructure structure, Check check)
    : mat_(std::move(mat)), structure_(std::move(structure)) {
    check_square(mat_, structure_);
    if (check == Check::kNone) return;
    require(mat_.allFinite(), ErrorKind::kInvalidArgument, "density matrix has non-finite entries");
    require(hermiticity_residual(mat_) <= kStateTol, ErrorKind::kInvalidArgument,
            "density matrix is not Hermitian");
    require(std::abs(mat_.trace() - Complex(1.0, 0.0)) <= kStateTol, ErrorKind::kInvalidArgument,
            "density matrix trace differs from one");
    const ComplexMatrix herm = 0.5 * (mat_ + mat_.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -kStateTol, ErrorKind::kInvalidArgument,
            "density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::from_pure(const StateVector &psi, TensorStructure structure) {
    require(psi.size() == structure.total_dim(), ErrorKind::kDimensionMismatch,
            "state vector dimension differs from structure");
    require(std::abs(psi.squaredNorm() - 1.0) <= kStateTol, ErrorKind::kInvalidArgument,
            "state vector is not normalized");
    return DensityMatrix(psi * psi.adjoint(), std::move(structure), Check::kNone);
}

DensityMatrix DensityMatrix::maximally_mixed(TensorStructure structure) {
    const long d = structure.total_dim();
    return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d),
                         std::move(structure), Check::kNone);
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

StateVector kron(const StateVector &a, const StateVector &b) {
    StateVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

ComplexMatrix permute_factors(const ComplexMatrix &m, const TensorStructure &s,
                              std::span<const int> order) {
    check_square(m, s);
    const auto map = permutation_map(s, order);
    const long d = s.total_dim();
    ComplexMatrix out(d, d);
    for (long j = 0; j < d; ++j)
        for (long i = 0; i < d; ++i) out(i, j) = m(map[i], map[j]);
    return out;
}

StateVector permute_factors(const StateVector &v, const TensorStructure &s,
                            std::span<const int> order) {
    require(v.size() == s.total_dim(), ErrorKind::kDimensionMismatch,
            "vector dimension differs from structure");
    const auto map = permutation_map(s, order);
    StateVector out(v.size());
    for (long i = 0; i < v.size(); ++i) out(i) = v(map[i]);
    return out;
}

ComplexMatrix embed_operator(const ComplexMatrix &op, const TensorStructure &s,
                             std::span<const int> support) {
    require(!support.empty(), ErrorKind::kInvalidArgument, "operator support is empty");
    const auto rest = complement(s.num_factors(), support);
    std::vector<int> order(support.begin(), support.end());
    order.insert(order.end(), rest.begin(), rest.end());
    long d_sup = 1;
    for (int f : support) d_sup *= s.dims()[f];
    require(op.rows() == d_sup && op.cols() == d_sup, ErrorKind::kDimensionMismatch,
            "operator dimension differs from its support");
    const long d_rest = s.total_dim() / d_sup;
    const ComplexMatrix grouped = kron(op, ComplexMatrix::Identity(d_rest, d_rest));
    std::vector<int> inv(order.size());
    for (size_t k = 0; k < order.size(); ++k) inv[order[k]] = static_cast<int>(k);
    return permute_factors(grouped, s.restrict_to(order), inv);
}

std::vector<int> s_first_order(const TensorStructure &s) {
    auto order = s.s_factors();
    const auto rest = s.a_factors();
    order.insert(order.end(), rest.begin(), rest.end());
    return order;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const TensorStructure &s,
                            std::span<const int> keep) {
    check_square(m, s);
    require(!keep.empty(), ErrorKind::kInvalidArgument, "partial trace needs a nonempty keep set");
    const auto traced = complement(s.num_factors(), keep);
    std::vector<int> order(keep.begin(), keep.end());
    order.insert(order.end(), traced.begin(), traced.end());
    const auto map = permutation_map(s, order);

    long d_keep = 1;
    for (int f : keep) d_keep *= s.dims()[f];
    const long d_tr = s.total_dim() / d_keep;

    ComplexMatrix out = ComplexMatrix::Zero(d_keep, d_keep);
    for (long j = 0; j < d_keep; ++j)
        for (long i = 0; i < d_keep; ++i) {
            Complex acc = 0.0;
            for (long t = 0; t < d_tr; ++t) acc += m(map[i * d_tr + t], map[j * d_tr + t]);
            out(i, j) = acc;
        }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep) {
    ComplexMatrix reduced = partial_trace(rho.mat(), rho.structure(), keep);
    return DensityMatrix(std::move(reduced), rho.structure().restrict_to(keep),
                         DensityMatrix::Check::kNone);
}

DensityMatrix reduce_to_s(const DensityMatrix &rho) {
    require(rho.structure().has_s(), ErrorKind::kInvalidArgument,
            "state has no S factors declared");
    const auto keep = rho.structure().s_factors();
    return partial_trace(rho, keep);
}

ComplexMatrix reduced_from_pure(const StateVector &psi, const TensorStructure &s,
                                std::span<const int> keep) {
    require(!keep.empty(), ErrorKind::kInvalidArgument, "reduction needs a nonempty keep set");
    const auto traced = complement(s.num_factors(), keep);
    std::vector<int> order(keep.begin(), keep.end());
    order.insert(order.end(), traced.begin(), traced.end());
    const StateVector grouped = permute_factors(psi, s, order);
    long d_keep = 1;
    for (int f : keep) d_keep *= s.dims()[f];
    const long d_tr = s.total_dim() / d_keep;
    // Row-major reshape: grouped(k * d_tr + t) -> M(k, t).
    const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        mat(grouped.data(), d_keep, d_tr);
    return mat * mat.adjoint();
}

double purity(const ComplexMatrix &m) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return m.squaredNorm();
}

double purity(const DensityMatrix &rho) { return purity(rho.mat()); }

double hs_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::kDimensionMismatch,
            "hs_distance: dimension mismatch");
    return (a - b).norm();
}

double hs_distance(const DensityMatrix &a, const DensityMatrix &b) {
    return hs_distance(a.mat(), b.mat());
}

double hermiticity_residual(const ComplexMatrix &m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_residual(const ComplexMatrix &u) {
    return (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).norm();
}

}  // namespace locoh
