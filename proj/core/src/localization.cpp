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

#include "locoh/localization.hpp"

#include <algorithm>
#include <cmath>

#include "locoh/parallel.hpp"
#include "locoh/rng.hpp"

namespace locoh {

namespace {

using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_bipartition(const TensorStructure &s) {
    require(s.has_s(), ErrorKind::kInvalidArgument,
            "protocol needs a bipartition with at least one S factor");
}

void check_bases(const TensorStructure &s, const FactorizedBasis &b) {
    require(b.bs.dim() == s.dim_s(), ErrorKind::kDimensionMismatch,
            "B_S dimension " + std::to_string(b.bs.dim()) + " != d_S " + std::to_string(s.dim_s()));
    require(b.ba.dim() == s.dim_a(), ErrorKind::kDimensionMismatch,
            "B_A dimension " + std::to_string(b.ba.dim()) + " != d_A " + std::to_string(s.dim_a()));
}

// rho with S factors first, A second.
ComplexMatrix group_s_first(const DensityMatrix &rho) {
    const auto &s = rho.structure();
    const auto order = s_first_order(s);
    return permute_factors(rho.mat(), s, order);
}

double coherence_in_frame(const ComplexMatrix &frame, Measure m) {
    if (m == Measure::kC2)
        return std::max(0.0, frame.squaredNorm() - frame.diagonal().squaredNorm());
    double sum = 0.0;
    for (long j = 0; j < frame.cols(); ++j)
        for (long i = 0; i < frame.rows(); ++i)
            if (i != j) sum += std::abs(frame(i, j));
    return sum;
}

// Amplitudes <k_S, i_A|psi> as a d_S x d_A matrix.
ComplexMatrix amplitudes_in_frame(const StateVector &psi, const TensorStructure &s,
                                  const FactorizedBasis &b) {
    const StateVector grouped = permute_factors(psi, s, s_first_order(s));
    const Eigen::Map<const RowMajor> mat(grouped.data(), s.dim_s(), s.dim_a());
    ComplexMatrix out = mat;
    if (!b.bs.is_computational()) out = b.bs.vectors().adjoint() * out;
    if (!b.ba.is_computational()) out = out * b.ba.vectors().conjugate();
    return out;
}

}  // namespace

const char *to_string(Protocol p) {
    switch (p) {
        case Protocol::kTraceOut: return "trace";
        case Protocol::kNonSelective: return "nonselective";
        case Protocol::kPostSelected: return "postselected";
    }
    return "?";
}

Protocol protocol_from_string(const std::string &s) {
    if (s == "trace" || s == "TraceOut") return Protocol::kTraceOut;
    if (s == "nonselective" || s == "NonSelective") return Protocol::kNonSelective;
    if (s == "postselected" || s == "PostSelected") return Protocol::kPostSelected;
    fail(ErrorKind::kInvalidArgument, "unknown protocol '" + s + "'");
}

MeasurementEnsemble::MeasurementEnsemble(std::vector<Outcome> outcomes, double discarded_mass)
    : outcomes_(std::move(outcomes)), discarded_mass_(discarded_mass) {
    require(!outcomes_.empty(), ErrorKind::kDegenerateInput, "measurement ensemble is empty");
    double total = 0.0;
    for (const auto &o : outcomes_) {
        require(o.probability >= 0.0, ErrorKind::kInvalidArgument, "negative outcome probability");
        require(o.state.dim() == outcomes_.front().state.dim(), ErrorKind::kDimensionMismatch,
                "ensemble states live on different spaces");
        total += o.probability;
    }
    require(std::abs(total - 1.0) <= kStateTol, ErrorKind::kInvalidArgument,
            "ensemble probabilities do not sum to one");
}

long MeasurementEnsemble::dim_s() const { return outcomes_.front().state.dim(); }

ComplexMatrix MeasurementEnsemble::average_state() const {
    ComplexMatrix avg = ComplexMatrix::Zero(dim_s(), dim_s());
    for (const auto &o : outcomes_) avg += o.probability * o.state.mat();
    return avg;
}

double c_trace(const DensityMatrix &rho, const Basis &bs, Measure m) {
    require_bipartition(rho.structure());
    const DensityMatrix reduced = reduce_to_s(rho);
    require(bs.dim() == reduced.dim(), ErrorKind::kDimensionMismatch,
            "B_S dimension differs from d_S");
    return coherence(reduced, bs, m);
}

MeasurementEnsemble measure_outcomes(const DensityMatrix &rho, const Basis &ba) {
    const auto &s = rho.structure();
    require_bipartition(s);
    require(ba.dim() == s.dim_a(), ErrorKind::kDimensionMismatch, "B_A dimension differs from d_A");
    const long ds = s.dim_s();
    const long da = s.dim_a();
    ComplexMatrix grouped = group_s_first(rho);
    if (!ba.is_computational()) {
        const ComplexMatrix rot = kron(ComplexMatrix::Identity(ds, ds), ba.vectors());
        grouped = rot.adjoint() * grouped * rot;
    }
    const auto sf = s.s_factors();
    const TensorStructure s_structure = s.restrict_to(sf);

    std::vector<Outcome> kept;
    double dropped = 0.0;
    for (long i = 0; i < da; ++i) {
        ComplexMatrix block(ds, ds);
        for (long c = 0; c < ds; ++c)
            for (long r = 0; r < ds; ++r) block(r, c) = grouped(r * da + i, c * da + i);
        const double p = block.trace().real();
        if (p < kOutcomeCutoff) {
            dropped += std::max(p, 0.0);
            continue;
        }
        block /= p;
        block = 0.5 * (block + block.adjoint());
        kept.push_back({p, DensityMatrix(std::move(block), s_structure, DensityMatrix::Check::kNone), i});
    }
    require(!kept.empty(), ErrorKind::kDegenerateInput,
            "every measurement outcome has probability below the cutoff");
    double total = 0.0;
    for (const auto &o : kept) total += o.probability;
    for (auto &o : kept) o.probability /= total;
    return MeasurementEnsemble(std::move(kept), dropped);
}

double c_nonselective(const DensityMatrix &rho, const FactorizedBasis &b, Measure m) {
    const auto &s = rho.structure();
    require_bipartition(s);
    check_bases(s, b);
    const long da = s.dim_a();
    // Rotate into B = B_S (x) B_A, drop A-off-diagonal blocks, read off the measure.
    ComplexMatrix frame = group_s_first(rho);
    const Basis full = b.full();
    frame = full.to_frame(frame);
    for (long j = 0; j < frame.cols(); ++j)
        for (long i = 0; i < frame.rows(); ++i)
            if (i % da != j % da) frame(i, j) = 0.0;
    return coherence_in_frame(frame, m);
}

double c_postselected(const MeasurementEnsemble &ensemble, const Basis &bs, Measure m) {
    require(bs.dim() == ensemble.dim_s(), ErrorKind::kDimensionMismatch,
            "B_S dimension differs from ensemble dimension");
    double sum = 0.0;
    for (const auto &o : ensemble.outcomes()) sum += o.probability * coherence(o.state, bs, m);
    return sum;
}

double c_postselected(const DensityMatrix &rho, const FactorizedBasis &b, Measure m) {
    check_bases(rho.structure(), b);
    return c_postselected(measure_outcomes(rho, b.ba), b.bs, m);
}

ProtocolResult evaluate(Protocol p, const DensityMatrix &rho, const FactorizedBasis &b, Measure m) {
    ProtocolResult r;
    r.protocol = p;
    r.measure = m;
    r.bs_label = b.bs.label();
    r.ba_label = b.ba.label();
    switch (p) {
        case Protocol::kTraceOut: r.value = c_trace(rho, b.bs, m); break;
        case Protocol::kNonSelective: r.value = c_nonselective(rho, b, m); break;
        case Protocol::kPostSelected: r.value = c_postselected(rho, b, m); break;
    }
    return r;
}

IdentityPair nonselective_identity(const DensityMatrix &rho, const FactorizedBasis &b) {
    IdentityPair out;
    out.lhs = c_nonselective(rho, b, Measure::kC2);
    const auto ensemble = measure_outcomes(rho, b.ba);
    // Probabilities before renormalization: scale back by the kept mass.
    const double kept = 1.0 - ensemble.discarded_mass();
    for (const auto &o : ensemble.outcomes()) {
        const double p = o.probability * kept;
        out.rhs += p * p * c2(o.state, b.bs);
    }
    return out;
}

ProtocolValues evaluate_pure(const StateVector &psi, const TensorStructure &s,
                             const FactorizedBasis &b, Measure m) {
    require_bipartition(s);
    check_bases(s, b);
    require(psi.size() == s.total_dim(), ErrorKind::kDimensionMismatch,
            "state vector dimension differs from structure");
    const ComplexMatrix amp = amplitudes_in_frame(psi, s, b);

    ProtocolValues v;
    v.trace_out = coherence_in_frame(amp * amp.adjoint(), m);

    const StateVector flat = Eigen::Map<const StateVector>(amp.data(), amp.size());
    v.full = pure_coherence_in_frame(flat, m);

    double kept = 0.0;
    double post = 0.0;
    for (long i = 0; i < amp.cols(); ++i) {
        const StateVector col = amp.col(i);
        const double p = col.squaredNorm();
        const double unnormalized = pure_coherence_in_frame(col, m);
        v.nonselective += unnormalized;
        if (p < kOutcomeCutoff) continue;
        kept += p;
        // p * coh(col/|col|): c2 scales as p^2, c1 as p.
        post += m == Measure::kC2 ? unnormalized / p : unnormalized;
    }
    require(kept > 0.0, ErrorKind::kDegenerateInput,
            "every measurement outcome has probability below the cutoff");
    v.postselected = post / kept;
    return v;
}

std::vector<PureOutcome> measure_outcomes_pure(const StateVector &psi, const TensorStructure &s,
                                               const Basis &ba) {
    require_bipartition(s);
    require(ba.dim() == s.dim_a(), ErrorKind::kDimensionMismatch, "B_A dimension differs from d_A");
    const ComplexMatrix amp =
        amplitudes_in_frame(psi, s, FactorizedBasis{Basis::computational(s.dim_s()), ba});
    std::vector<PureOutcome> out;
    double total = 0.0;
    for (long i = 0; i < amp.cols(); ++i) {
        const double p = amp.col(i).squaredNorm();
        if (p < kOutcomeCutoff) continue;
        out.push_back({p, amp.col(i) / std::sqrt(p), i});
        total += p;
    }
    require(!out.empty(), ErrorKind::kDegenerateInput,
            "every measurement outcome has probability below the cutoff");
    for (auto &o : out) o.probability /= total;
    return out;
}

double max_commutator_norm(const MeasurementEnsemble &ensemble) {
    const auto &o = ensemble.outcomes();
    double worst = 0.0;
    for (size_t i = 0; i < o.size(); ++i)
        for (size_t j = i + 1; j < o.size(); ++j) {
            const ComplexMatrix comm =
                o[i].state.mat() * o[j].state.mat() - o[j].state.mat() * o[i].state.mat();
            worst = std::max(worst, comm.norm());
        }
    return worst;
}

OptimalBasis optimal_basis_commuting(const MeasurementEnsemble &ensemble, double tol) {
    const double worst = max_commutator_norm(ensemble);
    require(worst <= tol, ErrorKind::kNonCommuting,
            "post-selected states do not commute (max commutator norm " + std::to_string(worst) + ")");
    const long d = ensemble.dim_s();
    Rng rng = stream_rng(0x9e3779b97f4a7c15ULL, ensemble.size());
    std::uniform_real_distribution<double> unif(0.5, 1.5);
    constexpr int kAttempts = 8;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        ComplexMatrix mix = ComplexMatrix::Zero(d, d);
        for (const auto &o : ensemble.outcomes()) mix += unif(rng) * o.state.mat();
        mix = 0.5 * (mix + mix.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mix);
        const ComplexMatrix &v = es.eigenvectors();
        bool diagonalizes = true;
        for (const auto &o : ensemble.outcomes()) {
            ComplexMatrix f = v.adjoint() * o.state.mat() * v;
            f.diagonal().setZero();
            if (f.norm() > std::max(tol, 1e-10)) {
                diagonalizes = false;
                break;
            }
        }
        if (!diagonalizes) continue;
        Basis common(v, "common-eigenbasis");
        Basis optimal = fourier_partner(common);
        return {std::move(common), std::move(optimal), worst};
    }
    fail(ErrorKind::kNonCommuting, "could not find a common eigenbasis for the ensemble");
}

BasisSearchResult random_basis_search(const DensityMatrix &rho, const Basis &ba, Protocol p,
                                      Measure m, long candidates, std::uint64_t seed, int threads) {
    require(candidates >= 1, ErrorKind::kInvalidArgument, "need at least one candidate basis");
    const auto &s = rho.structure();
    require_bipartition(s);
    const long ds = s.dim_s();
    // Pre-measure once for the post-selected protocol.
    const bool post = p == Protocol::kPostSelected;
    const MeasurementEnsemble ensemble = post ? measure_outcomes(rho, ba) : MeasurementEnsemble();

    BasisSearchResult out;
    out.values.assign(static_cast<size_t>(candidates), 0.0);
    parallel_for(candidates, threads, [&](long k) {
        Rng rng = stream_rng(seed, static_cast<std::uint64_t>(k));
        const Basis bs(haar_unitary(ds, rng), "random");
        out.values[k] = post ? c_postselected(ensemble, bs, m)
                             : evaluate(p, rho, FactorizedBasis{bs, ba}, m).value;
    });
    long best = 0;
    for (long k = 1; k < candidates; ++k)
        if (out.values[k] > out.values[best]) best = k;
    Rng rng = stream_rng(seed, static_cast<std::uint64_t>(best));
    out.best = Basis(haar_unitary(ds, rng), "random[" + std::to_string(best) + "]");
    out.best_index = best;
    out.value = out.values[best];
    return out;
}

}  // namespace locoh
