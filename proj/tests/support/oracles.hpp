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

#ifndef LOCOH_TESTS_ORACLES_HPP
#define LOCOH_TESTS_ORACLES_HPP

// Reference implementations written directly from the definitions, used to
// check the optimized library kernels.

#include <cmath>
#include <vector>

#include "locoh/rng.hpp"
#include "locoh/tensor.hpp"

namespace oracle {

using locoh::Complex;
using locoh::ComplexMatrix;
using locoh::StateVector;

inline std::vector<int> digits(long idx, const std::vector<int> &dims) {
    std::vector<int> d(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        d[k] = static_cast<int>(idx % dims[k]);
        idx /= dims[k];
    }
    return d;
}

inline long index(const std::vector<int> &d, const std::vector<int> &dims) {
    long idx = 0;
    for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + d[k];
    return idx;
}

/// Explicit sum over traced indices.
inline ComplexMatrix partial_trace(const ComplexMatrix &rho, const std::vector<int> &dims,
                                   const std::vector<int> &keep) {
    long dk = 1;
    std::vector<int> kdims;
    for (int f : keep) {
        dk *= dims[f];
        kdims.push_back(dims[f]);
    }
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    const long d = rho.rows();
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
            const auto di = digits(i, dims), dj = digits(j, dims);
            bool traced_equal = true;
            for (size_t f = 0; f < dims.size(); ++f) {
                bool kept = false;
                for (int k : keep) kept |= (k == static_cast<int>(f));
                if (!kept && di[f] != dj[f]) traced_equal = false;
            }
            if (!traced_equal) continue;
            std::vector<int> ki, kj;
            for (int k : keep) {
                ki.push_back(di[k]);
                kj.push_back(dj[k]);
            }
            out(index(ki, kdims), index(kj, kdims)) += rho(i, j);
        }
    return out;
}

/// sum_k P_k rho P_k with P_k = |v_k><v_k|.
inline ComplexMatrix dephase(const ComplexMatrix &rho, const ComplexMatrix &basis) {
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (long k = 0; k < basis.cols(); ++k) {
        const ComplexMatrix p = basis.col(k) * basis.col(k).adjoint();
        out += p * rho * p;
    }
    return out;
}

inline double c2(const ComplexMatrix &rho, const ComplexMatrix &basis) {
    const ComplexMatrix f = basis.adjoint() * rho * basis;
    double s = 0.0;
    for (long i = 0; i < f.rows(); ++i)
        for (long j = 0; j < f.cols(); ++j)
            if (i != j) s += std::norm(f(i, j));
    return s;
}

inline double c1(const ComplexMatrix &rho, const ComplexMatrix &basis) {
    const ComplexMatrix f = basis.adjoint() * rho * basis;
    double s = 0.0;
    for (long i = 0; i < f.rows(); ++i)
        for (long j = 0; j < f.cols(); ++j)
            if (i != j) s += std::abs(f(i, j));
    return s;
}

/// Conditional S states of rho (S factor first, A second) for outcomes
/// |b_i> of B_A, via <b_i|_A rho |b_i>_A written out with indices.
struct Branch {
    double p;
    ComplexMatrix state;
};
inline std::vector<Branch> branches(const ComplexMatrix &rho, long ds, long da,
                                    const ComplexMatrix &ba) {
    std::vector<Branch> out;
    for (long i = 0; i < da; ++i) {
        ComplexMatrix m = ComplexMatrix::Zero(ds, ds);
        for (long s1 = 0; s1 < ds; ++s1)
            for (long s2 = 0; s2 < ds; ++s2)
                for (long a1 = 0; a1 < da; ++a1)
                    for (long a2 = 0; a2 < da; ++a2)
                        m(s1, s2) += std::conj(ba(a1, i)) * rho(s1 * da + a1, s2 * da + a2) * ba(a2, i);
        const double p = m.trace().real();
        if (p < 1e-12) continue;
        out.push_back({p, m / p});
    }
    return out;
}

inline ComplexMatrix random_matrix(long r, long c, locoh::Rng &rng) {
    ComplexMatrix m(r, c);
    for (long j = 0; j < c; ++j)
        for (long i = 0; i < r; ++i) m(i, j) = locoh::complex_gaussian(rng);
    return m;
}

inline ComplexMatrix random_state(long d, locoh::Rng &rng) {
    std::uniform_int_distribution<long> rank(1, d);
    return locoh::random_density_matrix(d, rank(rng), rng);
}

}  // namespace oracle

#endif
