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

#ifndef LOCOH_RNG_HPP
#define LOCOH_RNG_HPP

#include <cstdint>
#include <random>

#include "locoh/tensor.hpp"

namespace locoh {

using Rng = std::mt19937_64;

/// Independent generator for sample `stream` of a run seeded with `seed`.
///
/// The stream depends only on (seed, stream), so a sample draws the same
/// numbers whichever worker evaluates it.
Rng stream_rng(std::uint64_t seed, std::uint64_t stream);

/// Complex Ginibre entry with E|z|^2 = 1.
Complex complex_gaussian(Rng &rng);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with column j of
/// Q multiplied by r_jj/|r_jj|, i.e. the QR factor whose R has a positive
/// diagonal.
ComplexMatrix haar_unitary(long dim, Rng &rng);

/// U|0>, U Haar.
StateVector haar_state(long dim, Rng &rng);

/// Tr_E |psi><psi| for Haar psi on C^dim (x) C^rank: a random state of rank <= rank.
ComplexMatrix random_density_matrix(long dim, long rank, Rng &rng);

}  // namespace locoh

#endif
