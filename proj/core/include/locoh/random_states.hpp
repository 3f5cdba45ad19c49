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

#ifndef LOCOH_RANDOM_STATES_HPP
#define LOCOH_RANDOM_STATES_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <string>

#include "locoh/coherence.hpp"
#include "locoh/localization.hpp"
#include "locoh/rng.hpp"

namespace locoh {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

double to_double(const Rational &r);

enum class SamplerKind { kGlobalHaar, kFactorizedSA, kFullyFactorized, kBubbles };
enum class BubbleCase { kA, kB };

const char *to_string(SamplerKind k);

/// What to sample and how it splits into S and A.
///
/// `dims` lists the constituents with their S mask. For bubbles, the
/// constituents form `n` consecutive blocks of `xi` sites of dimension
/// `d_loc`; each block gets its own Haar unitary.
struct SamplerSpec {
    SamplerKind kind = SamplerKind::kGlobalHaar;
    TensorStructure dims;
    int n = 0;
    int xi = 0;
    int d_loc = 0;
    std::uint64_t seed = 0;

    static SamplerSpec global_haar(int d_s, int d_a, std::uint64_t seed);
    static SamplerSpec factorized(int d_s, int d_a, std::uint64_t seed);
    /// First n_s constituents form S.
    static SamplerSpec fully_factorized(int n_s, int n_a, int d_loc, std::uint64_t seed);
    /// Case a: S is two sites of the first bubble. Case b: S is the first
    /// site of each of the first two bubbles.
    static SamplerSpec bubbles(BubbleCase c, int n, int xi, int d_loc, std::uint64_t seed);

    void validate() const;
};

/// Pure state with the independence structure of `spec`, in `spec.dims` order.
StateVector sample_state(const SamplerSpec &spec, Rng &rng);

enum class Functional { kTraceOut, kNonSelective, kPostSelected, kFullCoherence };

const char *to_string(Functional f);
Functional functional_from_string(const std::string &s);

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;  // sample standard deviation / sqrt(samples)
    long samples = 0;
    std::uint64_t seed = 0;

    /// |mean - reference| / stderr
    double sigma_distance(double reference) const;
};

inline constexpr long kMinSamples = 100;

/// Seeded Monte Carlo mean of a functional over `samples` draws of `spec`.
/// Sample i uses stream i of spec.seed; the result is bit-identical for
/// every `threads` value.
McEstimate mc_estimate(const SamplerSpec &spec, Functional f, const FactorizedBasis &b,
                       long samples, int threads = 1, Measure m = Measure::kC2);

/// Same, with computational bases on S and A.
McEstimate mc_estimate(const SamplerSpec &spec, Functional f, long samples, int threads = 1,
                       Measure m = Measure::kC2);

/// Mean and unbiased variance of `values` with pairwise summation.
McEstimate summarize(std::span<const double> values, std::uint64_t seed);

enum class AnalyticProtocol {
    kTraceOut,               // (d_S - 1)/(d + 1)
    kNonSelective,           // (d_S - 1)/(d + 1)
    kPostSelectedMeanField,  // (d_S - 1)/(d_S + 1/d_A)
    kFactorizedNonSelective, // 2 (d_S - 1)/((d_S + 1)(d_A + 1))
};

const char *to_string(AnalyticProtocol p);

/// Closed-form Haar averages of the c2 protocols, exact.
Rational analytic_average_exact(AnalyticProtocol p, long d_s, long d_a);
double analytic_average(AnalyticProtocol p, long d_s, long d_a);

/// Average C_B over fully factorized states with n_s sites in S and n_a in A:
/// (d+1)^{-n} (sum_k sum_l C(n_s,l) C(n_a,k-l) d^l - 2^n).
Rational fully_factorized_average_exact(int n_s, int n_a, int d_loc);
double fully_factorized_average(int n_s, int n_a, int d_loc);

/// Average C_B over bubble states, S = two constituents.
Rational bubble_average_exact(BubbleCase c, int n, int xi, int d_loc);
double bubble_average(BubbleCase c, int n, int xi, int d_loc);

/// Statistics of the Born probability p_0 = Tr(rho I_S (x) omega_0) over
/// Haar states on C^{d_s} (x) C^{d_a}.
struct ConcentrationProbe {
    double mean = 0.0;
    double variance = 0.0;
    double stderr_mean = 0.0;
    long samples = 0;
};
ConcentrationProbe concentration_probe(long d_s, long d_a, long samples, std::uint64_t seed,
                                       int threads = 1);

}  // namespace locoh

#endif
