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

#include "locoh/spreading.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "locoh/localization.hpp"
#include "locoh/parallel.hpp"

namespace locoh {

namespace {

// Arrival threshold used to place the light cone for the fit.
constexpr double kFrontThreshold = 1e-3;

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

// The single-site S bipartition on a chain state.
DensityMatrix with_s_site(const DensityMatrix &rho, int s_site) {
    const auto &s = rho.structure();
    require(s_site >= 0 && s_site < s.num_factors(), ErrorKind::kInvalidArgument,
            "S site outside the chain");
    std::vector<bool> mask(s.num_factors(), false);
    mask[s_site] = true;
    return DensityMatrix(rho.mat(), s.with_mask(mask), DensityMatrix::Check::kNone);
}

struct Values {
    double ctr, cb, cave;
};

Values protocol_values(const DensityMatrix &rho, const Basis &bs) {
    const FactorizedBasis b{bs, Basis::computational(rho.structure().dim_a())};
    return {c_trace(rho, bs, Measure::kC2), c_nonselective(rho, b, Measure::kC2),
            rho.structure().dim_a() == 1 ? c_trace(rho, bs, Measure::kC2)
                                         : c_postselected(rho, b, Measure::kC2)};
}

int distance_to(const std::vector<int> &support, int site) {
    int l = -1;
    for (int x : support) {
        const int d = std::abs(x - site);
        if (l < 0 || d < l) l = d;
    }
    return l;
}

}  // namespace

ChainHamiltonian::ChainHamiltonian(int n_sites, int d_loc, std::vector<LocalTerm> terms,
                                   int max_support, int max_diameter)
    : n_sites_(n_sites), d_loc_(d_loc), terms_(std::move(terms)) {
    require(n_sites >= 1 && d_loc >= 2, ErrorKind::kInvalidArgument, "chain needs n >= 1, d >= 2");
    for (const auto &term : terms_) {
        require(!term.sites.empty(), ErrorKind::kInvalidArgument, "term with empty support");
        require(static_cast<int>(term.sites.size()) <= max_support, ErrorKind::kInvalidArgument,
                "term support exceeds the locality bound");
        const auto [lo, hi] = std::minmax_element(term.sites.begin(), term.sites.end());
        require(*lo >= 0 && *hi < n_sites, ErrorKind::kInvalidArgument, "term site off the chain");
        require(*hi - *lo <= max_diameter, ErrorKind::kInvalidArgument,
                "term diameter exceeds the locality bound");
        long dim = 1;
        for (size_t k = 0; k < term.sites.size(); ++k) dim *= d_loc;
        require(term.op.rows() == dim && term.op.cols() == dim, ErrorKind::kDimensionMismatch,
                "term operator does not match its support");
        require(hermiticity_residual(term.op) <= kStateTol, ErrorKind::kInvalidArgument,
                "term operator is not Hermitian");
    }
    // Overflow check happens here rather than at dense() time.
    (void)structure();
}

ComplexMatrix ChainHamiltonian::dense() const {
    const auto s = structure();
    ComplexMatrix h = ComplexMatrix::Zero(s.total_dim(), s.total_dim());
    for (const auto &term : terms_) h += embed_operator(term.op, s, term.sites);
    return h;
}

ChainHamiltonian build_tfim(int n_sites, double j, double g, double h) {
    require(n_sites >= 2, ErrorKind::kInvalidArgument, "TFIM chain needs at least two sites");
    std::vector<LocalTerm> terms;
    const ComplexMatrix x = pauli_x();
    const ComplexMatrix z = pauli_z();
    for (int i = 0; i + 1 < n_sites; ++i) terms.push_back({{i, i + 1}, -j * kron(z, z)});
    for (int i = 0; i < n_sites; ++i) {
        if (g != 0.0) terms.push_back({{i}, -g * x});
        if (h != 0.0) terms.push_back({{i}, -h * z});
    }
    return ChainHamiltonian(n_sites, 2, std::move(terms));
}

Evolver::Evolver(const ChainHamiltonian &ham) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(ham.dense());
    require(eig.info() == Eigen::Success, ErrorKind::kDegenerateInput,
            "Hamiltonian diagonalization failed");
    energies_ = eig.eigenvalues();
    vectors_ = eig.eigenvectors();
}

ComplexMatrix Evolver::evolve(const ComplexMatrix &rho, double t) const {
    require(rho.rows() == vectors_.rows(), ErrorKind::kDimensionMismatch,
            "state dimension differs from the Hamiltonian");
    ComplexMatrix m = vectors_.adjoint() * rho * vectors_;
    const long n = m.rows();
    for (long c = 0; c < n; ++c)
        for (long r = 0; r < n; ++r)
            m(r, c) *= std::polar(1.0, -(energies_(r) - energies_(c)) * t);
    return vectors_ * m * vectors_.adjoint();
}

DensityMatrix Evolver::evolve(const DensityMatrix &rho, double t) const {
    return DensityMatrix(evolve(rho.mat(), t), rho.structure(), DensityMatrix::Check::kNone);
}

DensityMatrix evolve(const DensityMatrix &rho, const ChainHamiltonian &ham, double t) {
    require(rho.structure().dims() == ham.structure().dims(), ErrorKind::kDimensionMismatch,
            "state and Hamiltonian live on different chains");
    return Evolver(ham).evolve(rho, t);
}

LocalChannel::LocalChannel(std::vector<int> support, std::vector<ComplexMatrix> kraus,
                           std::string label)
    : support_(std::move(support)), kraus_(std::move(kraus)), label_(std::move(label)) {
    require(!support_.empty(), ErrorKind::kInvalidArgument, "channel support is empty");
    require(!kraus_.empty(), ErrorKind::kInvalidArgument, "channel has no Kraus operators");
    const long d = kraus_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto &k : kraus_) {
        require(k.rows() == d && k.cols() == d, ErrorKind::kDimensionMismatch,
                "Kraus operators differ in shape");
        sum += k.adjoint() * k;
    }
    require((sum - ComplexMatrix::Identity(d, d)).norm() <= kStateTol,
            ErrorKind::kInvalidArgument, "Kraus operators are not trace preserving");
}

LocalChannel LocalChannel::identity(int site, int d_loc) {
    return LocalChannel({site}, {ComplexMatrix::Identity(d_loc, d_loc)}, "identity");
}

LocalChannel LocalChannel::unitary(int site, const ComplexMatrix &u, std::string label) {
    require(unitarity_residual(u) <= kStateTol, ErrorKind::kInvalidArgument,
            "operator is not unitary");
    return LocalChannel({site}, {u}, std::move(label));
}

LocalChannel LocalChannel::depolarizing(int site, int d_loc, double p) {
    require(p >= 0.0 && p <= 1.0, ErrorKind::kInvalidArgument, "depolarizing p outside [0, 1]");
    // (1-p) rho + p I/d through the d^2 matrix units.
    std::vector<ComplexMatrix> kraus;
    const double d = d_loc;
    kraus.push_back(std::sqrt(1.0 - p) * ComplexMatrix::Identity(d_loc, d_loc));
    if (p > 0.0)
        for (int a = 0; a < d_loc; ++a)
            for (int b = 0; b < d_loc; ++b) {
                ComplexMatrix e = ComplexMatrix::Zero(d_loc, d_loc);
                e(a, b) = std::sqrt(p / d);
                kraus.push_back(e);
            }
    return LocalChannel({site}, std::move(kraus), "depolarizing");
}

LocalChannel LocalChannel::reset(int site, int d_loc) {
    std::vector<ComplexMatrix> kraus;
    for (int b = 0; b < d_loc; ++b) {
        ComplexMatrix e = ComplexMatrix::Zero(d_loc, d_loc);
        e(0, b) = 1.0;
        kraus.push_back(e);
    }
    return LocalChannel({site}, std::move(kraus), "reset");
}

DensityMatrix apply_channel(const DensityMatrix &rho, const LocalChannel &ch) {
    const auto &s = rho.structure();
    for (int x : ch.support())
        require(x >= 0 && x < s.num_factors(), ErrorKind::kInvalidArgument,
                "channel support outside the system");
    ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (const auto &k : ch.kraus()) {
        const ComplexMatrix big = embed_operator(k, s, ch.support());
        out += big * rho.mat() * big.adjoint();
    }
    return DensityMatrix(std::move(out), s, DensityMatrix::Check::kNone);
}

std::vector<SpreadRow> spread_rows(const DensityMatrix &rho0, const LocalChannel &ch,
                                   const Evolver &evolver, const Basis &bs, int s_site,
                                   std::span<const double> times, int threads) {
    const DensityMatrix base = with_s_site(rho0, s_site);
    const DensityMatrix perturbed = apply_channel(base, ch);
    const int l = distance_to(ch.support(), s_site);
    std::vector<SpreadRow> rows(times.size());
    parallel_for(static_cast<long>(times.size()), threads, [&](long k) {
        const double t = times[k];
        require(t >= 0.0, ErrorKind::kInvalidArgument, "negative evolution time");
        const DensityMatrix a = evolver.evolve(base, t);
        const DensityMatrix b = evolver.evolve(perturbed, t);
        const Values va = protocol_values(a, bs);
        const Values vb = protocol_values(b, bs);
        SpreadRow &row = rows[k];
        row.l = l;
        row.t = t;
        row.delta_ctr = std::abs(va.ctr - vb.ctr);
        row.delta_cb = std::abs(va.cb - vb.cb);
        row.delta_cave = std::abs(va.cave - vb.cave);
        row.ctr_perturbed = vb.ctr;
        row.lipschitz_cap = 2.0 * hs_distance(reduce_to_s(a), reduce_to_s(b));
    });
    return rows;
}

SpreadProfile spreading_profile(const DensityMatrix &rho0,
                                const std::vector<ComplexMatrix> &site_kraus,
                                const ChainHamiltonian &ham, const Basis &bs, int s_site,
                                std::span<const int> a_sites, std::span<const double> times,
                                int threads) {
    require(rho0.structure().dims() == ham.structure().dims(), ErrorKind::kDimensionMismatch,
            "state and Hamiltonian live on different chains");
    require(!a_sites.empty() && !times.empty(), ErrorKind::kInvalidArgument,
            "empty site or time grid");
    const Evolver evolver(ham);
    SpreadProfile profile;
    for (int a : a_sites) {
        require(a != s_site, ErrorKind::kInvalidArgument, "A site coincides with the S site");
        const LocalChannel ch({a}, site_kraus);
        auto rows = spread_rows(rho0, ch, evolver, bs, s_site, times, threads);
        profile.rows.insert(profile.rows.end(), rows.begin(), rows.end());
    }
    std::stable_sort(profile.rows.begin(), profile.rows.end(), [](const auto &x, const auto &y) {
        return x.l != y.l ? x.l < y.l : x.t < y.t;
    });
    try {
        profile.fit = fit_spread(profile.rows);
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::kUnderDetermined) throw;
    }
    return profile;
}

SpreadProfile spreading_profile(const DensityMatrix &rho0, const LocalChannel &ch,
                                const ChainHamiltonian &ham, const Basis &bs, int s_site,
                                std::span<const double> times, int threads) {
    require(rho0.structure().dims() == ham.structure().dims(), ErrorKind::kDimensionMismatch,
            "state and Hamiltonian live on different chains");
    for (int a : ch.support())
        require(a != s_site, ErrorKind::kInvalidArgument, "channel acts on the S site");
    const Evolver evolver(ham);
    SpreadProfile profile;
    profile.rows = spread_rows(rho0, ch, evolver, bs, s_site, times, threads);
    std::stable_sort(profile.rows.begin(), profile.rows.end(),
                     [](const auto &x, const auto &y) { return x.t < y.t; });
    try {
        profile.fit = fit_spread(profile.rows);
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::kUnderDetermined) throw;
    }
    return profile;
}

SpreadFit fit_spread(std::span<const SpreadRow> rows) {
    // Cone velocity: least squares l = v t* over first arrival times t*(l).
    std::vector<int> ls;
    for (const auto &r : rows) ls.push_back(r.l);
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    double num = 0.0, den = 0.0;
    for (int l : ls) {
        double arrival = -1.0;
        for (const auto &r : rows)
            if (r.l == l && r.t > 0.0 && r.delta_ctr >= kFrontThreshold &&
                (arrival < 0.0 || r.t < arrival))
                arrival = r.t;
        if (arrival > 0.0) {
            num += l * arrival;
            den += arrival * arrival;
        }
    }
    SpreadFit fit;
    fit.v_fit = den > 0.0 ? num / den : 0.0;

    std::vector<const SpreadRow *> use;
    for (const auto &r : rows)
        if (r.delta_ctr > kNoiseFloor && r.l > fit.v_fit * r.t) use.push_back(&r);
    require(use.size() >= 4, ErrorKind::kUnderDetermined,
            "fewer than 4 points outside the light cone");
    Eigen::MatrixXd a(use.size(), 3);
    Eigen::VectorXd y(use.size());
    for (size_t k = 0; k < use.size(); ++k) {
        a(k, 0) = 1.0;
        a(k, 1) = -use[k]->l;
        a(k, 2) = use[k]->t;
        y(k) = std::log(use[k]->delta_ctr);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    require(qr.rank() == 3, ErrorKind::kUnderDetermined,
            "fit points do not vary in both l and t");
    const Eigen::VectorXd coef = qr.solve(y);
    fit.c = std::exp(coef(0));
    fit.mu = coef(1);
    fit.s = coef(2);
    fit.n_points = static_cast<int>(use.size());
    fit.rms_residual = std::sqrt((a * coef - y).squaredNorm() / static_cast<double>(use.size()));
    return fit;
}

ProtocolDeltas protocol_deltas(const DensityMatrix &rho, const LocalChannel &ch, const Basis &bs,
                               int s_site) {
    for (int a : ch.support())
        require(a != s_site, ErrorKind::kInvalidArgument, "channel acts on the S site");
    const DensityMatrix base = with_s_site(rho, s_site);
    const Values before = protocol_values(base, bs);
    const Values after = protocol_values(apply_channel(base, ch), bs);
    return {std::abs(before.ctr - after.ctr), std::abs(before.cb - after.cb),
            std::abs(before.cave - after.cave)};
}

Counterexample counterexample_measure_protocols(const DensityMatrix &rho0, const Basis &bs,
                                                int s_site, int a_site) {
    const DensityMatrix base = with_s_site(rho0, s_site);
    const auto &s = base.structure();
    require(s.has_proper_bipartition(), ErrorKind::kInvalidArgument,
            "counterexample needs at least one site outside S");
    require(a_site != s_site && a_site >= 0 && a_site < s.num_factors(),
            ErrorKind::kInvalidArgument, "A site must be a chain site other than S");
    // Product precondition rho0 = rho_S (x) rho_rest.
    const std::vector<int> s_only{s_site};
    const auto rest = s.a_factors();
    const ComplexMatrix rho_s = partial_trace(base.mat(), s, s_only);
    const ComplexMatrix rho_rest = partial_trace(base.mat(), s, rest);
    const ComplexMatrix grouped = permute_factors(base.mat(), s, s_first_order(s));
    require((grouped - kron(rho_s, rho_rest)).norm() <= 1e-8, ErrorKind::kInvalidArgument,
            "input is not a product across S and its complement");

    const int d = s.dims()[a_site];
    std::vector<std::pair<std::string, ComplexMatrix>> candidates;
    candidates.emplace_back("fourier", fourier_basis(d).vectors());
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            for (int k = 1; k <= 4; ++k) {
                const double th = k * std::numbers::pi / 8.0;
                ComplexMatrix ry = ComplexMatrix::Identity(d, d);
                ry(a, a) = std::cos(th);
                ry(b, b) = std::cos(th);
                ry(a, b) = -std::sin(th);
                ry(b, a) = std::sin(th);
                candidates.emplace_back(
                    "ry(" + std::to_string(a) + "," + std::to_string(b) + ",pi*" +
                        std::to_string(k) + "/8)",
                    ry);
            }
    Counterexample best;
    best.l = std::abs(a_site - s_site);
    bool first = true;
    for (const auto &[label, u] : candidates) {
        const auto deltas = protocol_deltas(base, LocalChannel::unitary(a_site, u, label), bs,
                                            s_site);
        if (first || deltas.delta_cb > best.deltas.delta_cb + 1e-12) {
            best.deltas = deltas;
            best.channel = label;
            first = false;
        }
    }
    return best;
}

}  // namespace locoh
