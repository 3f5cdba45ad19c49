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

#include "locoh/random_states.hpp"

#include <cmath>
#include <vector>

#include "locoh/parallel.hpp"

namespace locoh {

namespace {

constexpr int kMaxCombinatorialSites = 64;

double pairwise_sum(std::span<const double> x) {
    if (x.size() <= 8) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    const size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

BigInt ipow(long base, int exp) {
    BigInt r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

Rational pow_rational(const Rational &x, int exp) {
    Rational r = 1;
    for (int i = 0; i < exp; ++i) r *= x;
    return r;
}

TensorStructure constituents(int count, int d_loc, const std::vector<int> &s_sites) {
    std::vector<bool> mask(count, false);
    for (int k : s_sites) mask[k] = true;
    return TensorStructure(std::vector<int>(count, d_loc), std::move(mask));
}

}  // namespace

double to_double(const Rational &r) { return r.convert_to<double>(); }

const char *to_string(SamplerKind k) {
    switch (k) {
        case SamplerKind::kGlobalHaar: return "GlobalHaar";
        case SamplerKind::kFactorizedSA: return "FactorizedSA";
        case SamplerKind::kFullyFactorized: return "FullyFactorized";
        case SamplerKind::kBubbles: return "Bubbles";
    }
    return "?";
}

SamplerSpec SamplerSpec::global_haar(int d_s, int d_a, std::uint64_t seed) {
    SamplerSpec s;
    s.kind = SamplerKind::kGlobalHaar;
    s.dims = TensorStructure::bipartite(d_s, d_a);
    s.seed = seed;
    s.validate();
    return s;
}

SamplerSpec SamplerSpec::factorized(int d_s, int d_a, std::uint64_t seed) {
    SamplerSpec s = global_haar(d_s, d_a, seed);
    s.kind = SamplerKind::kFactorizedSA;
    return s;
}

SamplerSpec SamplerSpec::fully_factorized(int n_s, int n_a, int d_loc, std::uint64_t seed) {
    require(n_s >= 1 && n_a >= 0, ErrorKind::kInvalidArgument, "need n_s >= 1 and n_a >= 0");
    SamplerSpec s;
    s.kind = SamplerKind::kFullyFactorized;
    std::vector<int> s_sites;
    for (int k = 0; k < n_s; ++k) s_sites.push_back(k);
    s.dims = constituents(n_s + n_a, d_loc, s_sites);
    s.n = n_s + n_a;
    s.xi = 1;
    s.d_loc = d_loc;
    s.seed = seed;
    s.validate();
    return s;
}

SamplerSpec SamplerSpec::bubbles(BubbleCase c, int n, int xi, int d_loc, std::uint64_t seed) {
    if (c == BubbleCase::kA)
        require(xi >= 2 && n >= 1, ErrorKind::kInvalidArgument,
                "bubble case a needs xi >= 2 and n >= 1");
    else
        require(xi >= 1 && n >= 2, ErrorKind::kInvalidArgument,
                "bubble case b needs xi >= 1 and n >= 2");
    SamplerSpec s;
    s.kind = SamplerKind::kBubbles;
    s.n = n;
    s.xi = xi;
    s.d_loc = d_loc;
    s.seed = seed;
    const std::vector<int> s_sites = c == BubbleCase::kA ? std::vector<int>{0, 1}
                                                         : std::vector<int>{0, xi};
    s.dims = constituents(n * xi, d_loc, s_sites);
    s.validate();
    return s;
}

void SamplerSpec::validate() const {
    require(dims.has_s(), ErrorKind::kInvalidArgument, "sampler needs at least one S factor");
    require(dims.total_dim() <= kMaxDenseDim, ErrorKind::kDimensionOverflow,
            "sampler dimension exceeds the dense limit");
    if (kind == SamplerKind::kFullyFactorized || kind == SamplerKind::kBubbles) {
        require(d_loc >= 1 && n >= 1 && xi >= 1, ErrorKind::kInvalidArgument,
                "constituent parameters must be positive");
        require(dims.num_factors() == n * xi, ErrorKind::kInvalidArgument,
                "dims must list n * xi constituents");
        for (int d : dims.dims())
            require(d == d_loc, ErrorKind::kInvalidArgument, "constituent dimension differs from d_loc");
    }
}

StateVector sample_state(const SamplerSpec &spec, Rng &rng) {
    const auto &s = spec.dims;
    switch (spec.kind) {
        case SamplerKind::kGlobalHaar: return haar_state(s.total_dim(), rng);
        case SamplerKind::kFactorizedSA: {
            const StateVector vs = haar_state(s.dim_s(), rng);
            const StateVector va = haar_state(s.dim_a(), rng);
            // Built S-first; map back to the declared factor order.
            const auto order = s_first_order(s);
            std::vector<int> inv(order.size());
            for (size_t k = 0; k < order.size(); ++k) inv[order[k]] = static_cast<int>(k);
            return permute_factors(kron(vs, va), s.restrict_to(order), inv);
        }
        case SamplerKind::kFullyFactorized:
        case SamplerKind::kBubbles: {
            long block_dim = 1;
            for (int k = 0; k < spec.xi; ++k) block_dim *= spec.d_loc;
            StateVector psi = haar_state(block_dim, rng);
            for (int b = 1; b < spec.n; ++b) psi = kron(psi, haar_state(block_dim, rng));
            return psi;
        }
    }
    fail(ErrorKind::kInvalidArgument, "unknown sampler kind");
}

const char *to_string(Functional f) {
    switch (f) {
        case Functional::kTraceOut: return "C_Tr";
        case Functional::kNonSelective: return "C_B";
        case Functional::kPostSelected: return "C_ave";
        case Functional::kFullCoherence: return "c_full";
    }
    return "?";
}

Functional functional_from_string(const std::string &s) {
    if (s == "C_Tr" || s == "trace") return Functional::kTraceOut;
    if (s == "C_B" || s == "nonselective") return Functional::kNonSelective;
    if (s == "C_ave" || s == "postselected") return Functional::kPostSelected;
    if (s == "c_full" || s == "full") return Functional::kFullCoherence;
    fail(ErrorKind::kInvalidArgument, "unknown functional '" + s + "'");
}

double McEstimate::sigma_distance(double reference) const {
    const double diff = std::abs(mean - reference);
    if (stderr_ == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return diff / stderr_;
}

McEstimate summarize(std::span<const double> values, std::uint64_t seed) {
    require(values.size() >= 2, ErrorKind::kInvalidArgument, "need at least two samples");
    const double n = static_cast<double>(values.size());
    McEstimate e;
    e.samples = static_cast<long>(values.size());
    e.seed = seed;
    e.mean = pairwise_sum(values) / n;
    std::vector<double> sq(values.size());
    for (size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - e.mean) * (values[i] - e.mean);
    const double var = pairwise_sum(sq) / (n - 1.0);
    e.stderr_ = std::sqrt(var / n);
    return e;
}

McEstimate mc_estimate(const SamplerSpec &spec, Functional f, const FactorizedBasis &b,
                       long samples, int threads, Measure m) {
    spec.validate();
    require(samples >= kMinSamples, ErrorKind::kInvalidArgument,
            "need at least " + std::to_string(kMinSamples) + " samples");
    std::vector<double> values(static_cast<size_t>(samples));
    parallel_for(samples, threads, [&](long i) {
        Rng rng = stream_rng(spec.seed, static_cast<std::uint64_t>(i));
        const StateVector psi = sample_state(spec, rng);
        const ProtocolValues v = evaluate_pure(psi, spec.dims, b, m);
        switch (f) {
            case Functional::kTraceOut: values[i] = v.trace_out; break;
            case Functional::kNonSelective: values[i] = v.nonselective; break;
            case Functional::kPostSelected: values[i] = v.postselected; break;
            case Functional::kFullCoherence: values[i] = v.full; break;
        }
    });
    return summarize(values, spec.seed);
}

McEstimate mc_estimate(const SamplerSpec &spec, Functional f, long samples, int threads,
                       Measure m) {
    return mc_estimate(spec, f,
                       FactorizedBasis::computational(spec.dims.dim_s(), spec.dims.dim_a()),
                       samples, threads, m);
}

const char *to_string(AnalyticProtocol p) {
    switch (p) {
        case AnalyticProtocol::kTraceOut: return "TraceOut";
        case AnalyticProtocol::kNonSelective: return "NonSelective";
        case AnalyticProtocol::kPostSelectedMeanField: return "PostSelectedMeanField";
        case AnalyticProtocol::kFactorizedNonSelective: return "FactorizedNonSelective";
    }
    return "?";
}

Rational analytic_average_exact(AnalyticProtocol p, long d_s, long d_a) {
    require(d_s >= 1 && d_a >= 1, ErrorKind::kInvalidArgument, "dimensions must be positive");
    const Rational ds = d_s;
    const Rational da = d_a;
    switch (p) {
        case AnalyticProtocol::kTraceOut:
        case AnalyticProtocol::kNonSelective: return (ds - 1) / (ds * da + 1);
        case AnalyticProtocol::kPostSelectedMeanField: return da * (ds - 1) / (ds * da + 1);
        case AnalyticProtocol::kFactorizedNonSelective:
            return 2 * (ds - 1) / ((ds + 1) * (da + 1));
    }
    fail(ErrorKind::kInvalidArgument, "unknown protocol");
}

double analytic_average(AnalyticProtocol p, long d_s, long d_a) {
    return to_double(analytic_average_exact(p, d_s, d_a));
}

Rational fully_factorized_average_exact(int n_s, int n_a, int d_loc) {
    require(n_s >= 1 && n_a >= 0 && d_loc >= 1, ErrorKind::kInvalidArgument,
            "need n_s >= 1, n_a >= 0, d_loc >= 1");
    const int n = n_s + n_a;
    require(n <= kMaxCombinatorialSites, ErrorKind::kDimensionOverflow,
            "fully factorized average limited to n <= 64 sites");
    BigInt numerator = 0;
    for (int k = 0; k <= n; ++k)
        for (int l = 0; l <= k; ++l)
            numerator += binomial(n_s, l) * binomial(n_a, k - l) * ipow(d_loc, l);
    numerator -= ipow(2, n);
    return Rational(numerator, ipow(d_loc + 1, n));
}

double fully_factorized_average(int n_s, int n_a, int d_loc) {
    return to_double(fully_factorized_average_exact(n_s, n_a, d_loc));
}

Rational bubble_average_exact(BubbleCase c, int n, int xi, int d_loc) {
    require(d_loc >= 1, ErrorKind::kInvalidArgument, "d_loc must be positive");
    if (c == BubbleCase::kA)
        require(xi >= 2 && n >= 1, ErrorKind::kInvalidArgument,
                "bubble case a needs xi >= 2 and n >= 1");
    else
        require(xi >= 1 && n >= 2, ErrorKind::kInvalidArgument,
                "bubble case b needs xi >= 1 and n >= 2");
    require(static_cast<long>(n) * xi <= kMaxCombinatorialSites, ErrorKind::kDimensionOverflow,
            "bubble average limited to n * xi <= 64 sites");
    const BigInt block = ipow(d_loc, xi);
    const Rational prefactor = pow_rational(Rational(BigInt(2), block + 1), n);
    const BigInt d = d_loc;
    if (c == BubbleCase::kA) return prefactor * Rational(d * d - 1, 2);
    return prefactor * Rational(d * d + 2 * d - 3, 4);
}

double bubble_average(BubbleCase c, int n, int xi, int d_loc) {
    return to_double(bubble_average_exact(c, n, xi, d_loc));
}

ConcentrationProbe concentration_probe(long d_s, long d_a, long samples, std::uint64_t seed,
                                       int threads) {
    require(d_s >= 1 && d_a >= 1, ErrorKind::kInvalidArgument, "dimensions must be positive");
    require(samples >= 2, ErrorKind::kInvalidArgument, "need at least two samples");
    const TensorStructure s = TensorStructure::bipartite(static_cast<int>(d_s), static_cast<int>(d_a));
    std::vector<double> p(static_cast<size_t>(samples));
    parallel_for(samples, threads, [&](long i) {
        Rng rng = stream_rng(seed, static_cast<std::uint64_t>(i));
        const StateVector psi = haar_state(s.total_dim(), rng);
        double acc = 0.0;
        for (long k = 0; k < d_s; ++k) acc += std::norm(psi(k * d_a));  // outcome a = 0
        p[i] = acc;
    });
    const McEstimate e = summarize(p, seed);
    ConcentrationProbe out;
    out.mean = e.mean;
    out.stderr_mean = e.stderr_;
    out.variance = e.stderr_ * e.stderr_ * static_cast<double>(samples);
    out.samples = samples;
    return out;
}

}  // namespace locoh
