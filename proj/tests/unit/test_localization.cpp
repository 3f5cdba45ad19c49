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

#include <gtest/gtest.h>

#include "locoh/localization.hpp"
#include "locoh/rng.hpp"
#include "oracles.hpp"

using namespace locoh;

namespace {

DensityMatrix bell() {
    StateVector v = StateVector::Zero(4);
    v(0) = v(3) = M_SQRT1_2;
    return DensityMatrix::from_pure(v, TensorStructure::bipartite(2, 2));
}

Basis hadamard() { return fourier_basis(2); }

Basis random_basis(long d, Rng &rng) { return Basis(haar_unitary(d, rng), "haar"); }

DensityMatrix random_bipartite(long ds, long da, Rng &rng) {
    return DensityMatrix(oracle::random_state(ds * da, rng), TensorStructure::bipartite(ds, da));
}

// Conditional-state oracle for C_ave and sum p^2 c2.
double cave_oracle(const DensityMatrix &rho, const FactorizedBasis &b, Measure m) {
    double v = 0.0;
    for (const auto &br : oracle::branches(rho.mat(), b.bs.dim(), b.ba.dim(), b.ba.vectors()))
        v += br.p * (m == Measure::kC2 ? oracle::c2(br.state, b.bs.vectors())
                                       : oracle::c1(br.state, b.bs.vectors()));
    return v;
}

// Classical-quantum state sum_i q_i sigma_i (x) |b_i><b_i| with every sigma_i
// diagonal in one random basis: its measurement ensemble commutes.
DensityMatrix commuting_state(long ds, long da, const Basis &ba, Rng &rng) {
    const ComplexMatrix w = haar_unitary(ds, rng);
    ComplexMatrix rho = ComplexMatrix::Zero(ds * da, ds * da);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    double total = 0.0;
    std::vector<double> q(da);
    for (auto &x : q) total += (x = u(rng));
    for (long i = 0; i < da; ++i) {
        RealVector spec(ds);
        for (long k = 0; k < ds; ++k) spec(k) = u(rng);
        spec /= spec.sum();
        const ComplexMatrix sigma = w * spec.cast<Complex>().asDiagonal() * w.adjoint();
        rho += (q[i] / total) * kron(sigma, ba.projector(i));
    }
    return DensityMatrix(rho, TensorStructure::bipartite(ds, da));
}

}  // namespace

TEST(CTrace, Examples) {
    Rng rng = stream_rng(51, 0);
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(c_trace(bell(), random_basis(2, rng), Measure::kC2), 0.0, 1e-15);
    StateVector v = StateVector::Zero(4);
    v(0) = v(2) = M_SQRT1_2;  // |+>|0>
    const auto rho = DensityMatrix::from_pure(v, TensorStructure::bipartite(2, 2));
    EXPECT_NEAR(c_trace(rho, Basis::computational(2), Measure::kC2), 0.5, 1e-15);
    EXPECT_THROW(c_trace(rho, Basis::computational(3), Measure::kC2), Error);
}

TEST(CTrace, C2BoundedByPurityGap) {
    Rng rng = stream_rng(52, 0);
    for (int rep = 0; rep < 300; ++rep) {
        const long ds = 2 + rep % 3, da = 2 + rep % 2;
        const auto rho = random_bipartite(ds, da, rng);
        const double bound = purity(reduce_to_s(rho)) - 1.0 / ds;
        EXPECT_LE(c_trace(rho, random_basis(ds, rng), Measure::kC2), bound + 1e-12);
    }
}

TEST(MeasureOutcomes, Product) {
    Rng rng = stream_rng(53, 0);
    const ComplexMatrix rs = oracle::random_state(3, rng);
    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    const DensityMatrix rho(kron(rs, p0), TensorStructure::bipartite(3, 2));
    const auto ens = measure_outcomes(rho, Basis::computational(2));
    ASSERT_EQ(ens.size(), 1u);
    EXPECT_NEAR(ens.outcomes()[0].probability, 1.0, 1e-15);
    EXPECT_EQ(ens.outcomes()[0].label, 0);
    EXPECT_LT((ens.outcomes()[0].state.mat() - rs).norm(), 1e-14);
}

TEST(MeasureOutcomes, Bell) {
    const auto ens = measure_outcomes(bell(), Basis::computational(2));
    ASSERT_EQ(ens.size(), 2u);
    for (long i = 0; i < 2; ++i) {
        EXPECT_NEAR(ens.outcomes()[i].probability, 0.5, 1e-15);
        ComplexMatrix p = ComplexMatrix::Zero(2, 2);
        p(i, i) = 1.0;
        EXPECT_LT((ens.outcomes()[i].state.mat() - p).norm(), 1e-15);
    }
}

TEST(MeasureOutcomes, MarginalConsistency) {
    Rng rng = stream_rng(54, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const long ds = 2 + rep % 3, da = 2 + rep % 4;
        const auto rho = random_bipartite(ds, da, rng);
        const auto ens = measure_outcomes(rho, random_basis(da, rng));
        double total = 0.0;
        for (const auto &o : ens.outcomes()) total += o.probability;
        EXPECT_NEAR(total, 1.0, 1e-10);
        EXPECT_LT((ens.average_state() - reduce_to_s(rho).mat()).norm(), 1e-10);
    }
}

TEST(MeasureOutcomes, DegenerateWhenNothingSurvives) {
    const DensityMatrix zero(ComplexMatrix::Zero(4, 4), TensorStructure::bipartite(2, 2),
                             DensityMatrix::Check::kNone);
    try {
        measure_outcomes(zero, Basis::computational(2));
        ADD_FAILURE() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kDegenerateInput);
    }
}

TEST(MeasureOutcomes, DropsNegligibleOutcomes) {
    // Outcome 1 has p = 1e-14 < p_cut: dropped and the rest renormalized.
    StateVector v = StateVector::Zero(4);
    v(0) = std::sqrt(1.0 - 1e-14);
    v(3) = std::sqrt(1e-14);
    const auto rho = DensityMatrix::from_pure(v, TensorStructure::bipartite(2, 2));
    const auto ens = measure_outcomes(rho, Basis::computational(2));
    ASSERT_EQ(ens.size(), 1u);
    EXPECT_NEAR(ens.outcomes()[0].probability, 1.0, 1e-15);
    EXPECT_NEAR(ens.discarded_mass(), 1e-14, 1e-20);
}

TEST(CNonSelective, Examples) {
    const FactorizedBasis b{hadamard(), Basis::computational(2)};
    EXPECT_NEAR(c_nonselective(bell(), b, Measure::kC2), 0.25, 1e-15);
    ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
    diag.diagonal() << 0.1, 0.2, 0.3, 0.4;
    const DensityMatrix incoherent(diag, TensorStructure::bipartite(2, 2));
    EXPECT_EQ(c_nonselective(incoherent, FactorizedBasis::computational(2, 2), Measure::kC2), 0.0);
    EXPECT_EQ(c_nonselective(incoherent, FactorizedBasis::computational(2, 2), Measure::kC1), 0.0);
}

TEST(CNonSelective, MatchesDephasedFullBasis) {
    Rng rng = stream_rng(55, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const long ds = 2 + rep % 2, da = 2 + rep % 3;
        const auto rho = random_bipartite(ds, da, rng);
        const FactorizedBasis b{random_basis(ds, rng), random_basis(da, rng)};
        // Dephase A with projectors, then take the coherence in B_S (x) B_A.
        ComplexMatrix dephased = ComplexMatrix::Zero(ds * da, ds * da);
        for (long i = 0; i < da; ++i) {
            const ComplexMatrix p = kron(ComplexMatrix::Identity(ds, ds), b.ba.projector(i));
            dephased += p * rho.mat() * p;
        }
        const ComplexMatrix full = kron(b.bs.vectors(), b.ba.vectors());
        EXPECT_NEAR(c_nonselective(rho, b, Measure::kC2), oracle::c2(dephased, full), 1e-12);
        EXPECT_NEAR(c_nonselective(rho, b, Measure::kC1), oracle::c1(dephased, full), 1e-12);
    }
}

TEST(CPostSelected, Examples) {
    Rng rng = stream_rng(56, 0);
    const FactorizedBasis b{hadamard(), Basis::computational(2)};
    EXPECT_NEAR(c_postselected(bell(), b, Measure::kC2), 0.5, 1e-15);
    const ComplexMatrix rs = oracle::random_state(2, rng), ra = oracle::random_state(3, rng);
    const DensityMatrix product(kron(rs, ra), TensorStructure::bipartite(2, 3));
    const auto bs = random_basis(2, rng);
    for (Measure m : {Measure::kC1, Measure::kC2}) {
        const FactorizedBasis fb{bs, random_basis(3, rng)};
        EXPECT_NEAR(c_postselected(product, fb, m), coherence(rs, bs, m), 1e-12);
    }
}

TEST(CPostSelected, MatchesBranchOracle) {
    Rng rng = stream_rng(57, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const long ds = 2 + rep % 3, da = 2 + rep % 2;
        const auto rho = random_bipartite(ds, da, rng);
        const FactorizedBasis b{random_basis(ds, rng), random_basis(da, rng)};
        for (Measure m : {Measure::kC1, Measure::kC2})
            EXPECT_NEAR(c_postselected(rho, b, m), cave_oracle(rho, b, m), 1e-12);
    }
}

TEST(Identity, ExamplesAndSweep) {
    Rng rng = stream_rng(58, 0);
    const auto bell_pair = nonselective_identity(bell(), {hadamard(), Basis::computational(2)});
    EXPECT_NEAR(bell_pair.lhs, 0.25, 1e-15);
    EXPECT_NEAR(bell_pair.rhs, 0.25, 1e-15);
    const ComplexMatrix rs = oracle::random_state(2, rng), ra = oracle::random_state(2, rng);
    const DensityMatrix product(kron(rs, ra), TensorStructure::bipartite(2, 2));
    const auto bs = random_basis(2, rng);
    const auto prod_pair = nonselective_identity(product, {bs, random_basis(2, rng)});
    // Product input: sum_i p_i^2 = Pur(D rho_A), so both sides equal
    // c2(rho_S) times that purity.
    EXPECT_NEAR(prod_pair.lhs, prod_pair.rhs, 1e-12);
    double worst = 0.0;
    for (int rep = 0; rep < 500; ++rep) {
        const long ds = rep % 2 ? 2 : 4, da = 8 / ds;
        const auto rho = random_bipartite(ds, da, rng);
        const auto pair = nonselective_identity(rho, {random_basis(ds, rng), random_basis(da, rng)});
        worst = std::max(worst, std::abs(pair.lhs - pair.rhs));
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(Inequalities, RandomSuite) {
    Rng rng = stream_rng(59, 0);
    for (int rep = 0; rep < 400; ++rep) {
        const long d = rep % 2 ? 4 : 8;
        const long ds = 2, da = d / ds;
        const auto rho = random_bipartite(ds, da, rng);
        const FactorizedBasis b{random_basis(ds, rng), random_basis(da, rng)};
        for (Measure m : {Measure::kC1, Measure::kC2})
            EXPECT_LE(c_nonselective(rho, b, m), c_postselected(rho, b, m) + 1e-10);
        const double cb1 = c_nonselective(rho, b, Measure::kC1);
        EXPECT_LE(c_trace(rho, b.bs, Measure::kC1), cb1 + 1e-10);
        EXPECT_LE(cb1, coherence(rho, b.full(), Measure::kC1) + 1e-10);
    }
}

TEST(EvaluatePure, MatchesDensityMatrixProtocols) {
    Rng rng = stream_rng(60, 0);
    for (int rep = 0; rep < 60; ++rep) {
        const TensorStructure s({2, 3, 2}, {rep % 2 == 0, true, rep % 3 == 0});
        const StateVector psi = haar_state(12, rng);
        const auto rho = DensityMatrix::from_pure(psi, s);
        const FactorizedBasis b{random_basis(s.dim_s(), rng), random_basis(s.dim_a(), rng)};
        for (Measure m : {Measure::kC1, Measure::kC2}) {
            const auto v = evaluate_pure(psi, s, b, m);
            EXPECT_NEAR(v.trace_out, c_trace(rho, b.bs, m), 1e-12);
            EXPECT_NEAR(v.nonselective, c_nonselective(rho, b, m), 1e-12);
            EXPECT_NEAR(v.postselected, c_postselected(rho, b, m), 1e-12);
        }
    }
}

TEST(EvaluatePure, TrivialA) {
    Rng rng = stream_rng(61, 0);
    const TensorStructure s({2, 2}, {true, true});
    const StateVector psi = haar_state(4, rng);
    const auto z = FactorizedBasis::computational(4, 1);
    const auto v = evaluate_pure(psi, s, z, Measure::kC2);
    const double full = pure_coherence_in_frame(psi, Measure::kC2);
    EXPECT_NEAR(v.trace_out, full, 1e-12);
    EXPECT_NEAR(v.nonselective, full, 1e-12);
    EXPECT_NEAR(v.postselected, full, 1e-12);
}

TEST(Evaluate, ReportsBases) {
    const auto r = evaluate(Protocol::kNonSelective, bell(), {hadamard(), Basis::computational(2)}, Measure::kC2);
    EXPECT_NEAR(r.value, 0.25, 1e-15);
    EXPECT_EQ(r.protocol, Protocol::kNonSelective);
    EXPECT_EQ(r.ba_label, "z");
    EXPECT_EQ(protocol_from_string(to_string(Protocol::kPostSelected)), Protocol::kPostSelected);
    EXPECT_THROW(protocol_from_string("nope"), Error);
}

TEST(OptimalBasis, SeparablePure) {
    Rng rng = stream_rng(62, 0);
    const StateVector xi = haar_state(3, rng), eta = haar_state(2, rng);
    const auto rho = DensityMatrix::from_pure(kron(xi, eta), TensorStructure::bipartite(3, 2));
    const auto ens = measure_outcomes(rho, random_basis(2, rng));
    const auto opt = optimal_basis_commuting(ens);
    // Unbiased to |xi>: every overlap has modulus^2 = 1/3.
    for (long k = 0; k < 3; ++k)
        EXPECT_NEAR(std::norm(opt.optimal.vectors().col(k).dot(xi)), 1.0 / 3.0, 1e-10);
    EXPECT_TRUE(mub_check(opt.optimal, opt.common_eigenbasis));
}

TEST(OptimalBasis, MaximallyEntangledGivesSchmidtBasis) {
    Rng rng = stream_rng(63, 0);
    const long d = 3;
    const Basis xi(haar_unitary(d, rng), "xi"), eta(haar_unitary(d, rng), "eta");
    StateVector phi = StateVector::Zero(d * d);
    for (long a = 0; a < d; ++a) phi += kron(StateVector(xi.vectors().col(a)), StateVector(eta.vectors().col(a)));
    phi /= std::sqrt(static_cast<double>(d));
    const auto rho = DensityMatrix::from_pure(phi, TensorStructure::bipartite(d, d));
    const Basis ba = fourier_partner(eta);
    const auto ens = measure_outcomes(rho, ba);
    const auto opt = optimal_basis_commuting(ens);
    EXPECT_TRUE(mub_check(xi, opt.common_eigenbasis));
    const FactorizedBasis with_schmidt{xi, ba}, with_opt{opt.optimal, ba};
    EXPECT_NEAR(c_nonselective(rho, with_schmidt, Measure::kC2), c_nonselective(rho, with_opt, Measure::kC2), 1e-10);
    EXPECT_NEAR(c_postselected(rho, with_schmidt, Measure::kC2), c_postselected(rho, with_opt, Measure::kC2), 1e-10);
    EXPECT_NEAR(c_postselected(rho, with_schmidt, Measure::kC2), 1.0 - 1.0 / d, 1e-10);
}

TEST(OptimalBasis, BeatsRandomBases) {
    Rng rng = stream_rng(64, 0);
    for (int rep = 0; rep < 5; ++rep) {
        const long ds = 3, da = 2 + rep % 2;
        const Basis ba = random_basis(da, rng);
        const auto rho = commuting_state(ds, da, ba, rng);
        const auto ens = measure_outcomes(rho, ba);
        EXPECT_LT(max_commutator_norm(ens), kCommuteTol);
        const auto opt = optimal_basis_commuting(ens);
        EXPECT_TRUE(mub_check(opt.optimal, opt.common_eigenbasis));
        const double cb = c_nonselective(rho, {opt.optimal, ba}, Measure::kC2);
        const double cave = c_postselected(rho, {opt.optimal, ba}, Measure::kC2);
        for (int k = 0; k < 500; ++k) {
            const FactorizedBasis cand{random_basis(ds, rng), ba};
            EXPECT_GE(cb + 1e-10, c_nonselective(rho, cand, Measure::kC2));
            EXPECT_GE(cave + 1e-10, c_postselected(rho, cand, Measure::kC2));
        }
    }
}

TEST(OptimalBasis, RejectsNonCommuting) {
    Rng rng = stream_rng(65, 0);
    const auto rho = random_bipartite(2, 2, rng);
    const auto ens = measure_outcomes(rho, Basis::computational(2));
    ASSERT_GT(max_commutator_norm(ens), 1e-3);
    try {
        optimal_basis_commuting(ens);
        ADD_FAILURE() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kNonCommuting);
    }
}

TEST(BasisSearch, DeterministicAcrossThreads) {
    Rng rng = stream_rng(66, 0);
    const auto rho = random_bipartite(2, 3, rng);
    const Basis ba = random_basis(3, rng);
    const auto one = random_basis_search(rho, ba, Protocol::kPostSelected, Measure::kC2, 64, 9, 1);
    const auto four = random_basis_search(rho, ba, Protocol::kPostSelected, Measure::kC2, 64, 9, 4);
    ASSERT_EQ(one.values.size(), 64u);
    EXPECT_EQ(one.values, four.values);
    EXPECT_EQ(one.best_index, four.best_index);
    EXPECT_EQ(one.value, *std::max_element(one.values.begin(), one.values.end()));
    EXPECT_EQ(one.values[one.best_index], one.value);
}
