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

#include "locoh/coherence.hpp"
#include "locoh/rng.hpp"
#include "oracles.hpp"

using namespace locoh;

namespace {

StateVector plus_state() {
    StateVector v(2);
    v << M_SQRT1_2, M_SQRT1_2;
    return v;
}

DensityMatrix random_rho(long d, Rng &rng) {
    return DensityMatrix(oracle::random_state(d, rng), TensorStructure::bipartite(d, 1));
}

Basis random_basis(long d, Rng &rng) { return Basis(haar_unitary(d, rng), "haar"); }

}  // namespace

TEST(Basis, RejectsNonOrthonormal) {
    ComplexMatrix m(2, 2);
    m << 1, 1, 0, 1;
    EXPECT_THROW(Basis(m, "bad"), Error);
}

TEST(Dephase, FixedPointsAndPlus) {
    const auto s = TensorStructure::bipartite(2, 1);
    const auto z = Basis::computational(2);
    ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
    diag(0, 0) = 0.3;
    diag(1, 1) = 0.7;
    const DensityMatrix d(diag, s);
    EXPECT_EQ(dephase(d, z).mat(), diag);
    const auto plus = DensityMatrix::from_pure(plus_state(), s);
    EXPECT_LT((dephase(plus, z).mat() - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 1e-15);
}

TEST(Dephase, MatchesProjectorSum) {
    Rng rng = stream_rng(31, 0);
    for (long d : {2, 3, 4, 6}) {
        for (int rep = 0; rep < 10; ++rep) {
            const auto rho = random_rho(d, rng);
            const auto b = random_basis(d, rng);
            EXPECT_LT((dephase(rho, b).mat() - oracle::dephase(rho.mat(), b.vectors())).norm(), 1e-12);
        }
    }
}

TEST(Dephase, IdempotentTracePreservingPurityNonIncreasing) {
    Rng rng = stream_rng(32, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const auto rho = random_rho(4, rng);
        const auto b = random_basis(4, rng);
        const auto once = dephase(rho, b);
        EXPECT_LT((dephase(once, b).mat() - once.mat()).norm(), 1e-10);
        EXPECT_NEAR(once.mat().trace().real(), 1.0, 1e-10);
        EXPECT_LE(purity(once), purity(rho) + 1e-10);
    }
}

TEST(PartialDephase, ProductWithZeroUnchanged) {
    Rng rng = stream_rng(33, 0);
    const ComplexMatrix rs = oracle::random_state(2, rng);
    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    const DensityMatrix rho(kron(rs, p0), TensorStructure::bipartite(2, 2));
    EXPECT_LT((partial_dephase(rho, Basis::computational(2)).mat() - rho.mat()).norm(), 1e-15);
}

TEST(PartialDephase, Bell) {
    StateVector bell = StateVector::Zero(4);
    bell(0) = bell(3) = M_SQRT1_2;
    const auto rho = DensityMatrix::from_pure(bell, TensorStructure::bipartite(2, 2));
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = 0.5;
    EXPECT_LT((partial_dephase(rho, Basis::computational(2)).mat() - expect).norm(), 1e-15);
}

TEST(PartialDephase, EqualsBlockFormula) {
    // sum_i Tr_A(rho I (x) w_i) (x) w_i
    Rng rng = stream_rng(34, 0);
    const long ds = 2, da = 3;
    const auto s = TensorStructure::bipartite(ds, da);
    const DensityMatrix rho(oracle::random_state(ds * da, rng), s);
    const auto ba = random_basis(da, rng);
    ComplexMatrix expect = ComplexMatrix::Zero(ds * da, ds * da);
    for (long i = 0; i < da; ++i) {
        const ComplexMatrix w = ba.projector(i);
        const ComplexMatrix proj = kron(ComplexMatrix::Identity(ds, ds), w);
        const std::vector<int> keep{0};
        const ComplexMatrix block = oracle::partial_trace(rho.mat() * proj, {2, 3}, keep);
        expect += kron(block, w);
    }
    EXPECT_LT((partial_dephase(rho, ba).mat() - expect).norm(), 1e-12);
}

TEST(PartialDephase, FactorizesTotalDephasing) {
    Rng rng = stream_rng(35, 0);
    for (int rep = 0; rep < 50; ++rep) {
        const long ds = 2 + rep % 2, da = 2 + rep % 3;
        const DensityMatrix rho(oracle::random_state(ds * da, rng), TensorStructure::bipartite(ds, da));
        const auto bs = random_basis(ds, rng), ba = random_basis(da, rng);
        const auto total = dephase(rho, kron(bs, ba));
        const auto composed = partial_dephase_s(partial_dephase(rho, ba), bs);
        const auto other_order = partial_dephase(partial_dephase_s(rho, bs), ba);
        EXPECT_LT((total.mat() - composed.mat()).norm(), 1e-12);
        EXPECT_LT((total.mat() - other_order.mat()).norm(), 1e-12);
    }
}

TEST(PartialDephase, NeedsBipartition) {
    const auto rho = DensityMatrix::maximally_mixed(TensorStructure({2, 2}));
    EXPECT_THROW(partial_dephase(rho, Basis::computational(2)), Error);
}

TEST(C2, Examples) {
    const auto s = TensorStructure::bipartite(2, 1);
    const auto z = Basis::computational(2);
    EXPECT_NEAR(c2(DensityMatrix::from_pure(plus_state(), s), z), 0.5, 1e-15);
    ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
    diag(0, 0) = 0.25;
    diag(1, 1) = 0.75;
    EXPECT_EQ(c2(DensityMatrix(diag, s), z), 0.0);
}

TEST(C2, DefinitionAndOracle) {
    Rng rng = stream_rng(36, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const long d = 2 + rep % 5;
        const auto rho = random_rho(d, rng);
        const auto b = random_basis(d, rng);
        const double v = c2(rho, b);
        EXPECT_NEAR(v, purity(rho) - purity(dephase(rho, b)), 1e-12);
        EXPECT_NEAR(v, (rho.mat() - dephase(rho, b).mat()).squaredNorm(), 1e-12);
        EXPECT_NEAR(v, oracle::c2(rho.mat(), b.vectors()), 1e-12);
    }
}

TEST(C2, ZeroIffDephasingFixed) {
    Rng rng = stream_rng(37, 0);
    for (int rep = 0; rep < 50; ++rep) {
        const auto b = random_basis(3, rng);
        // Diagonal in b: fixed point, c2 = 0.
        RealVector w = RealVector::Random(3).cwiseAbs();
        w /= w.sum();
        const ComplexMatrix diag_in_b = b.vectors() * w.cast<Complex>().asDiagonal() * b.vectors().adjoint();
        const DensityMatrix fixed(diag_in_b, TensorStructure::bipartite(3, 1));
        EXPECT_LT(c2(fixed, b), 1e-12);
        EXPECT_LT((dephase(fixed, b).mat() - fixed.mat()).norm(), 1e-12);
        // Generic state: not fixed, c2 > 0.
        const auto rho = random_rho(3, rng);
        EXPECT_GT(c2(rho, b), 1e-8);
        EXPECT_GT((dephase(rho, b).mat() - rho.mat()).norm(), 1e-6);
    }
}

TEST(C2, HaarPureMean) {
    const long d = 4, n = 20000;
    std::vector<double> v(n);
    const auto s = TensorStructure::bipartite(4, 1);
    const auto z = Basis::computational(d);
    for (long i = 0; i < n; ++i) {
        Rng rng = stream_rng(38, i);
        v[i] = c2(DensityMatrix::from_pure(haar_state(d, rng), s), z);
    }
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double se = std::sqrt(var / (n - 1) / n);
    EXPECT_LT(std::abs(mean - 0.6), 3.0 * se);
}

TEST(C2, LipschitzInHsDistance) {
    Rng rng = stream_rng(39, 0);
    for (int rep = 0; rep < 1000; ++rep) {
        const long d = 2 + rep % 7;
        const auto a = random_rho(d, rng), b = random_rho(d, rng);
        const auto basis = random_basis(d, rng);
        EXPECT_LE(std::abs(c2(a, basis) - c2(b, basis)), 2.0 * hs_distance(a, b) + 1e-12);
    }
}

TEST(C2, UnbiasedToEigenbasisIsMaximal) {
    Rng rng = stream_rng(40, 0);
    for (int rep = 0; rep < 5; ++rep) {
        const long d = 3 + rep % 2;
        const auto rho = random_rho(d, rng);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho.mat());
        const Basis best = fourier_partner(Basis(eig.eigenvectors(), "eig"));
        const double top = c2(rho, best);
        for (int k = 0; k < 200; ++k) EXPECT_GE(top + 1e-12, c2(rho, random_basis(d, rng)));
    }
}

TEST(C1, Examples) {
    const auto z = Basis::computational(2);
    EXPECT_NEAR(c1(DensityMatrix::from_pure(plus_state(), TensorStructure::bipartite(2, 1)), z), 1.0, 1e-15);
    for (long d : {2, 3, 5, 8}) {
        const StateVector flat = StateVector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
        const auto rho = DensityMatrix::from_pure(flat, TensorStructure::bipartite(d, 1));
        EXPECT_NEAR(c1(rho, Basis::computational(d)), d - 1.0, 1e-12);
    }
}

TEST(C1, MatchesEntrySum) {
    Rng rng = stream_rng(41, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const long d = 2 + rep % 5;
        const auto rho = random_rho(d, rng);
        const auto b = random_basis(d, rng);
        EXPECT_NEAR(c1(rho, b), oracle::c1(rho.mat(), b.vectors()), 1e-12);
    }
}

TEST(Coherence, DimensionMismatch) {
    const auto rho = DensityMatrix::maximally_mixed(TensorStructure::bipartite(2, 1));
    EXPECT_THROW(c2(rho, Basis::computational(3)), Error);
    EXPECT_THROW(c1(rho, Basis::computational(3)), Error);
    EXPECT_THROW(dephase(rho, Basis::computational(3)), Error);
}

TEST(PureCoherence, MatchesDensityMatrixForm) {
    Rng rng = stream_rng(42, 0);
    for (int rep = 0; rep < 50; ++rep) {
        const long d = 2 + rep % 6;
        StateVector v = haar_state(d, rng) * (0.3 + rep * 0.01);  // unnormalized on purpose
        const ComplexMatrix rho = v * v.adjoint();
        const ComplexMatrix id = ComplexMatrix::Identity(d, d);
        EXPECT_NEAR(pure_coherence_in_frame(v, Measure::kC2), oracle::c2(rho, id), 1e-12);
        EXPECT_NEAR(pure_coherence_in_frame(v, Measure::kC1), oracle::c1(rho, id), 1e-12);
    }
}

TEST(Fourier, DimTwoIsHadamard) {
    const auto f = fourier_basis(2);
    ComplexMatrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    EXPECT_LT((f.vectors() - h).norm(), 1e-15);
}

TEST(Fourier, FlatModulusAndUnbiased) {
    for (long d : {1, 2, 3, 4, 5, 8, 16}) {
        const auto f = fourier_basis(d);
        for (long j = 0; j < d; ++j)
            for (long k = 0; k < d; ++k) EXPECT_NEAR(std::norm(f.vectors()(j, k)), 1.0 / d, 1e-14);
    }
    for (long d : {2, 3, 4, 8}) EXPECT_TRUE(mub_check(Basis::computational(d), fourier_basis(d)));
}

TEST(MubCheck, Examples) {
    Rng rng = stream_rng(43, 0);
    EXPECT_FALSE(mub_check(Basis::computational(2), Basis::computational(2)));
    EXPECT_TRUE(mub_check(Basis::computational(2), fourier_basis(2)));
    for (int rep = 0; rep < 20; ++rep)
        EXPECT_FALSE(mub_check(Basis::computational(3), random_basis(3, rng)));
    EXPECT_THROW(mub_check(Basis::computational(2), Basis::computational(3)), Error);
    const auto b = random_basis(4, rng);
    EXPECT_TRUE(mub_check(b, fourier_partner(b)));
}

TEST(Schmidt, SingleTermUnbiasedTarget) {
    for (long d : {2, 3, 4}) {
        const auto xi = Basis::computational(d);
        const std::vector<Complex> c{1.0};
        EXPECT_NEAR(schmidt_coherence(c, xi, fourier_basis(d), Measure::kC2), 1.0 - 1.0 / d, 1e-14);
    }
}

TEST(Schmidt, FlatSpectrumInMub) {
    Rng rng = stream_rng(44, 0);
    for (long d : {2, 4, 6}) {
        const auto xi = random_basis(d, rng);
        for (long r = 1; r <= d; ++r) {
            const std::vector<Complex> c(r, 1.0 / std::sqrt(static_cast<double>(r)));
            EXPECT_NEAR(schmidt_coherence(c, xi, fourier_partner(xi), Measure::kC2),
                        1.0 / r - 1.0 / d, 1e-12);
        }
    }
}

TEST(Schmidt, MatchesAssembledMatrix) {
    Rng rng = stream_rng(45, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const long d = 2 + rep % 5;
        const long r = 1 + rep % d;
        const auto xi = random_basis(d, rng);
        const auto target = random_basis(d, rng);
        std::vector<Complex> c(r);
        double norm = 0.0;
        for (auto &x : c) {
            x = complex_gaussian(rng);
            norm += std::norm(x);
        }
        for (auto &x : c) x /= std::sqrt(norm);
        ComplexMatrix rho = ComplexMatrix::Zero(d, d);
        for (long a = 0; a < r; ++a) rho += std::norm(c[a]) * xi.vectors().col(a) * xi.vectors().col(a).adjoint();
        EXPECT_NEAR(schmidt_coherence(c, xi, target, Measure::kC2), oracle::c2(rho, target.vectors()), 1e-12);
        EXPECT_NEAR(schmidt_coherence(c, xi, target, Measure::kC1), oracle::c1(rho, target.vectors()), 1e-12);
    }
}

TEST(Schmidt, RejectsUnnormalized) {
    const std::vector<Complex> c{0.5, 0.5};
    EXPECT_THROW(schmidt_coherence(c, Basis::computational(2), fourier_basis(2), Measure::kC2), Error);
}
