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

#include "locoh/rng.hpp"

#include <cmath>

namespace locoh {

Rng stream_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32), 0x6c6f636fU};
    return Rng(seq);
}

Complex complex_gaussian(Rng &rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

ComplexMatrix haar_unitary(long dim, Rng &rng) {
    require(dim >= 1, ErrorKind::kInvalidArgument, "haar_unitary needs dim >= 1");
    ComplexMatrix z(dim, dim);
    for (long j = 0; j < dim; ++j)
        for (long i = 0; i < dim; ++i) z(i, j) = complex_gaussian(rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (long j = 0; j < dim; ++j) {
        const Complex rjj = r(j, j);
        const double mod = std::abs(rjj);
        const Complex phase = mod > 0.0 ? rjj / mod : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    return q;
}

StateVector haar_state(long dim, Rng &rng) { return haar_unitary(dim, rng).col(0); }

ComplexMatrix random_density_matrix(long dim, long rank, Rng &rng) {
    require(rank >= 1, ErrorKind::kInvalidArgument, "rank must be positive");
    // A normalized Ginibre block has the law of a Haar vector on C^dim (x) C^rank.
    ComplexMatrix g(dim, rank);
    for (long j = 0; j < rank; ++j)
        for (long i = 0; i < dim; ++i) g(i, j) = complex_gaussian(rng);
    g /= g.norm();
    ComplexMatrix rho = g * g.adjoint();
    return 0.5 * (rho + rho.adjoint());
}

}  // namespace locoh
