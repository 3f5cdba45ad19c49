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

#include "locoh/coherence.hpp"

#include <cmath>
#include <numbers>

namespace locoh {

namespace {

constexpr double kOrthonormalTol = 1e-9;

void check_dims(long a, long b, const char *what) {
    require(a == b, ErrorKind::kDimensionMismatch,
            std::string(what) + ": dimension " + std::to_string(a) + " vs " + std::to_string(b));
}

// Zeroes everything off the A-diagonal of a matrix grouped as (s, a) with
// d_a the fastest index, after rotating A into the basis frame.
ComplexMatrix dephase_grouped_fast(const ComplexMatrix &grouped, long d_slow, long d_fast,
                                   const Basis &basis_fast) {
    ComplexMatrix work = grouped;
    if (!basis_fast.is_computational()) {
        const ComplexMatrix rot = kron(ComplexMatrix::Identity(d_slow, d_slow), basis_fast.vectors());
        work = rot.adjoint() * work * rot;
        for (long j = 0; j < work.cols(); ++j)
            for (long i = 0; i < work.rows(); ++i)
                if (i % d_fast != j % d_fast) work(i, j) = 0.0;
        return rot * work * rot.adjoint();
    }
    for (long j = 0; j < work.cols(); ++j)
        for (long i = 0; i < work.rows(); ++i)
            if (i % d_fast != j % d_fast) work(i, j) = 0.0;
    return work;
}

std::vector<int> inverse(const std::vector<int> &order) {
    std::vector<int> inv(order.size());
    for (size_t k = 0; k < order.size(); ++k) inv[order[k]] = static_cast<int>(k);
    return inv;
}

}  // namespace

Basis::Basis(ComplexMatrix vectors, std::string label)
    : vectors_(std::move(vectors)), label_(std::move(label)) {
    require(vectors_.rows() >= 1 && vectors_.rows() == vectors_.cols(),
            ErrorKind::kInvalidArgument, "basis matrix must be square and nonempty");
    require(vectors_.allFinite(), ErrorKind::kInvalidArgument, "basis has non-finite entries");
    const double res =
        (vectors_.adjoint() * vectors_ - ComplexMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
    require(res <= kOrthonormalTol, ErrorKind::kInvalidArgument,
            "basis columns are not orthonormal (residual " + std::to_string(res) + ")");
    computational_ = vectors_.isIdentity(0.0);
}

Basis Basis::computational(long dim) {
    require(dim >= 1, ErrorKind::kInvalidArgument, "basis dimension must be positive");
    return Basis(ComplexMatrix::Identity(dim, dim), "z");
}

ComplexMatrix Basis::projector(long k) const {
    require(k >= 0 && k < dim(), ErrorKind::kInvalidArgument, "projector index out of range");
    return vectors_.col(k) * vectors_.col(k).adjoint();
}

ComplexMatrix Basis::to_frame(const ComplexMatrix &op) const {
    check_dims(op.rows(), dim(), "to_frame");
    if (computational_) return op;
    return vectors_.adjoint() * op * vectors_;
}

ComplexMatrix Basis::from_frame(const ComplexMatrix &op) const {
    check_dims(op.rows(), dim(), "from_frame");
    if (computational_) return op;
    return vectors_ * op * vectors_.adjoint();
}

FactorizedBasis FactorizedBasis::computational(long d_s, long d_a) {
    return {Basis::computational(d_s), Basis::computational(d_a)};
}

Basis FactorizedBasis::full() const { return kron(bs, ba); }

const char *to_string(Measure m) { return m == Measure::kC1 ? "c1" : "c2"; }

Measure measure_from_string(const std::string &s) {
    if (s == "c1") return Measure::kC1;
    if (s == "c2") return Measure::kC2;
    fail(ErrorKind::kInvalidArgument, "unknown coherence measure '" + s + "'");
}

Basis kron(const Basis &a, const Basis &b) {
    std::string label = a.label() + "(x)" + b.label();
    if (a.label() == "z" && b.label() == "z") label = "z";
    return Basis(kron(a.vectors(), b.vectors()), label);
}

ComplexMatrix dephase(const ComplexMatrix &rho, const Basis &basis) {
    check_dims(rho.rows(), basis.dim(), "dephase");
    const ComplexMatrix diag = basis.to_frame(rho).diagonal().asDiagonal();
    return basis.from_frame(diag);
}

DensityMatrix dephase(const DensityMatrix &rho, const Basis &basis) {
    return DensityMatrix(dephase(rho.mat(), basis), rho.structure(), DensityMatrix::Check::kNone);
}

DensityMatrix partial_dephase(const DensityMatrix &rho, const Basis &basis_a) {
    const auto &s = rho.structure();
    require(s.has_s(), ErrorKind::kInvalidArgument, "partial_dephase needs a declared bipartition");
    check_dims(basis_a.dim(), s.dim_a(), "partial_dephase");
    const auto order = s_first_order(s);
    const ComplexMatrix grouped = permute_factors(rho.mat(), s, order);
    const ComplexMatrix out = dephase_grouped_fast(grouped, s.dim_s(), s.dim_a(), basis_a);
    const auto inv = inverse(order);
    return DensityMatrix(permute_factors(out, s.restrict_to(order), inv), s,
                         DensityMatrix::Check::kNone);
}

DensityMatrix partial_dephase_s(const DensityMatrix &rho, const Basis &basis_s) {
    const auto &s = rho.structure();
    require(s.has_s(), ErrorKind::kInvalidArgument, "partial_dephase_s needs a declared bipartition");
    check_dims(basis_s.dim(), s.dim_s(), "partial_dephase_s");
    // A first, S fastest.
    auto order = s.a_factors();
    const auto sf = s.s_factors();
    order.insert(order.end(), sf.begin(), sf.end());
    const ComplexMatrix grouped = permute_factors(rho.mat(), s, order);
    const ComplexMatrix out = dephase_grouped_fast(grouped, s.dim_a(), s.dim_s(), basis_s);
    const auto inv = inverse(order);
    return DensityMatrix(permute_factors(out, s.restrict_to(order), inv), s,
                         DensityMatrix::Check::kNone);
}

double c2(const ComplexMatrix &rho, const Basis &basis) {
    check_dims(rho.rows(), basis.dim(), "c2");
    const ComplexMatrix frame = basis.to_frame(rho);
    const double diag = frame.diagonal().squaredNorm();
    return std::max(0.0, frame.squaredNorm() - diag);
}

double c2(const DensityMatrix &rho, const Basis &basis) { return c2(rho.mat(), basis); }

double c1(const ComplexMatrix &rho, const Basis &basis) {
    check_dims(rho.rows(), basis.dim(), "c1");
    const ComplexMatrix frame = basis.to_frame(rho);
    double sum = 0.0;
    for (long j = 0; j < frame.cols(); ++j)
        for (long i = 0; i < frame.rows(); ++i)
            if (i != j) sum += std::abs(frame(i, j));
    return sum;
}

double c1(const DensityMatrix &rho, const Basis &basis) { return c1(rho.mat(), basis); }

double coherence(const ComplexMatrix &rho, const Basis &basis, Measure m) {
    return m == Measure::kC1 ? c1(rho, basis) : c2(rho, basis);
}

double coherence(const DensityMatrix &rho, const Basis &basis, Measure m) {
    return coherence(rho.mat(), basis, m);
}

double pure_coherence_in_frame(const StateVector &amplitudes, Measure m) {
    if (m == Measure::kC2) {
        // 1 - sum |a_k|^4, computed as sum_{k != l} |a_k|^2 |a_l|^2 for accuracy.
        const double n2 = amplitudes.squaredNorm();
        const double q = amplitudes.cwiseAbs2().squaredNorm();
        return std::max(0.0, n2 * n2 - q);
    }
    const double l1 = amplitudes.cwiseAbs().sum();
    return std::max(0.0, l1 * l1 - amplitudes.squaredNorm());
}

Basis fourier_basis(long dim) {
    require(dim >= 1, ErrorKind::kInvalidArgument, "fourier_basis needs dim >= 1");
    ComplexMatrix f(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    for (long j = 0; j < dim; ++j)
        for (long k = 0; k < dim; ++k) {
            // Reduce jk mod d before scaling to keep the phase exact.
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>((j * k) % dim) / static_cast<double>(dim);
            f(j, k) = std::polar(norm, angle);
        }
    return Basis(f, "fourier");
}

Basis fourier_partner(const Basis &b) {
    const std::string label = b.label().empty() ? "fourier" : "fourier[" + b.label() + "]";
    return Basis(b.vectors() * fourier_basis(b.dim()).vectors(), label);
}

bool mub_check(const Basis &b1, const Basis &b2, double tol) {
    check_dims(b1.dim(), b2.dim(), "mub_check");
    const double target = 1.0 / std::sqrt(static_cast<double>(b1.dim()));
    const ComplexMatrix overlaps = b1.vectors().adjoint() * b2.vectors();
    return ((overlaps.cwiseAbs().array() - target).abs() <= tol).all();
}

double schmidt_coherence(const std::vector<Complex> &coeffs, const Basis &xi,
                         const Basis &target, Measure m) {
    check_dims(xi.dim(), target.dim(), "schmidt_coherence");
    require(!coeffs.empty() && static_cast<long>(coeffs.size()) <= xi.dim(),
            ErrorKind::kInvalidArgument, "Schmidt rank must lie in [1, d_S]");
    double norm = 0.0;
    std::vector<double> weight;
    for (const Complex &c : coeffs) {
        weight.push_back(std::norm(c));
        norm += weight.back();
    }
    require(std::abs(norm - 1.0) <= kStateTol, ErrorKind::kInvalidArgument,
            "Schmidt coefficients are not normalized");

    const long d = xi.dim();
    const long rank = static_cast<long>(coeffs.size());
    // overlap(a, k) = <xi_a|k>
    const ComplexMatrix overlap = xi.vectors().leftCols(rank).adjoint() * target.vectors();

    if (m == Measure::kC2) {
        double fourth = 0.0;
        for (double w : weight) fourth += w * w;
        double dephased = 0.0;
        for (long k = 0; k < d; ++k) {
            double pk = 0.0;
            for (long a = 0; a < rank; ++a) pk += weight[a] * std::norm(overlap(a, k));
            dephased += pk * pk;
        }
        return std::max(0.0, fourth - dephased);
    }
    double sum = 0.0;
    for (long k = 0; k < d; ++k)
        for (long kp = 0; kp < d; ++kp) {
            if (k == kp) continue;
            Complex acc = 0.0;
            for (long a = 0; a < rank; ++a)
                acc += weight[a] * overlap(a, k) * std::conj(overlap(a, kp));
            sum += std::abs(acc);
        }
    return sum;
}

}  // namespace locoh
