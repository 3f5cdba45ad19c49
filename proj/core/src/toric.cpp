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

#include "locoh/toric.hpp"

#include <bit>
#include <cmath>

namespace locoh {

namespace {

using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Edge e is factor e, so it is bit (E - 1 - e) of the flat index.
long to_index(EdgeSet config, int num_edges) {
    long idx = 0;
    for (int e = 0; e < num_edges; ++e)
        if ((config >> e) & 1U) idx |= 1L << (num_edges - 1 - e);
    return idx;
}

TensorStructure region_structure(const ToricGroundState &gs, EdgeSet s_edges) {
    std::vector<bool> mask(gs.lattice.num_edges());
    for (int e = 0; e < gs.lattice.num_edges(); ++e) mask[e] = (s_edges >> e) & 1U;
    return gs.structure.with_mask(mask);
}

// Amplitudes as a d_S x d_A matrix; column i is the unnormalized S state
// for A outcome i.
ComplexMatrix amplitude_matrix(const ToricGroundState &gs, const Region &region) {
    validate_region(gs.lattice, region);
    const auto s = region_structure(gs, region.s_edges);
    const StateVector grouped = permute_factors(gs.state, s, s_first_order(s));
    return Eigen::Map<const RowMajor>(grouped.data(), s.dim_s(), s.dim_a());
}

}  // namespace

int popcount(EdgeSet e) { return std::popcount(e); }

TorusLattice::TorusLattice(int n) : n_(n) {
    require(n >= 2 && 2 * n * n <= 64, ErrorKind::kInvalidArgument,
            "torus size must satisfy 2 <= n and 2n^2 <= 64");
}

int TorusLattice::h(int x, int y) const {
    x = ((x % n_) + n_) % n_;
    y = ((y % n_) + n_) % n_;
    return y * n_ + x;
}

int TorusLattice::v(int x, int y) const { return n_ * n_ + h(x, y); }

EdgeSet TorusLattice::star(int x, int y) const {
    return (EdgeSet{1} << h(x, y)) | (EdgeSet{1} << h(x - 1, y)) | (EdgeSet{1} << v(x, y)) |
           (EdgeSet{1} << v(x, y - 1));
}

EdgeSet TorusLattice::plaquette(int x, int y) const {
    return (EdgeSet{1} << h(x, y)) | (EdgeSet{1} << h(x, y + 1)) | (EdgeSet{1} << v(x, y)) |
           (EdgeSet{1} << v(x + 1, y));
}

std::vector<EdgeSet> TorusLattice::stars() const {
    std::vector<EdgeSet> out;
    for (int y = 0; y < n_; ++y)
        for (int x = 0; x < n_; ++x) out.push_back(star(x, y));
    return out;
}

std::vector<EdgeSet> TorusLattice::plaquettes() const {
    std::vector<EdgeSet> out;
    for (int y = 0; y < n_; ++y)
        for (int x = 0; x < n_; ++x) out.push_back(plaquette(x, y));
    return out;
}

EdgeSet TorusLattice::loop_w1() const {
    EdgeSet w = 0;
    for (int x = 0; x < n_; ++x) w |= EdgeSet{1} << v(x, 0);
    return w;
}

EdgeSet TorusLattice::loop_w2() const {
    EdgeSet w = 0;
    for (int y = 0; y < n_; ++y) w |= EdgeSet{1} << h(0, y);
    return w;
}

EdgeSet TorusLattice::all_edges() const {
    return num_edges() == 64 ? ~EdgeSet{0} : (EdgeSet{1} << num_edges()) - 1;
}

GF2Group::GF2Group(const std::vector<EdgeSet> &generators) {
    for (EdgeSet g : generators) {
        g = reduce(g);
        if (g == 0) continue;
        const EdgeSet lead = std::bit_floor(g);
        for (auto &b : basis_)
            if (b & lead) b ^= g;
        basis_.push_back(g);
    }
}

EdgeSet GF2Group::reduce(EdgeSet e) const {
    for (EdgeSet b : basis_)
        if (e & std::bit_floor(b)) e ^= b;
    return e;
}

bool GF2Group::contains(EdgeSet e) const { return reduce(e) == 0; }

std::vector<EdgeSet> GF2Group::elements() const {
    require(basis_.size() <= 24, ErrorKind::kDimensionOverflow, "group too large to enumerate");
    std::vector<EdgeSet> out(order());
    for (std::uint64_t k = 0; k < out.size(); ++k) {
        EdgeSet e = 0;
        for (size_t b = 0; b < basis_.size(); ++b)
            if ((k >> b) & 1U) e ^= basis_[b];
        out[k] = e;
    }
    return out;
}

GF2Group star_group(const TorusLattice &lattice) { return GF2Group(lattice.stars()); }

const char *to_string(Topology t) {
    switch (t) {
        case Topology::kContractible: return "Contractible";
        case Topology::kNonContractibleBoth: return "NonContractibleBoth";
        case Topology::kNonContractibleH: return "NonContractibleH";
        case Topology::kNonContractibleV: return "NonContractibleV";
    }
    return "?";
}

Topology topology_from_string(const std::string &s) {
    if (s == "Contractible" || s == "contractible") return Topology::kContractible;
    if (s == "NonContractibleBoth" || s == "noncontractible") return Topology::kNonContractibleBoth;
    if (s == "NonContractibleH") return Topology::kNonContractibleH;
    if (s == "NonContractibleV") return Topology::kNonContractibleV;
    fail(ErrorKind::kInvalidArgument, "unknown topology '" + s + "'");
}

void validate_region(const TorusLattice &lattice, const Region &region) {
    require(region.s_edges != 0, ErrorKind::kInvalidArgument, "region is empty");
    require((region.s_edges & ~lattice.all_edges()) == 0, ErrorKind::kInvalidArgument,
            "region has edges outside the lattice");
    require(region.s_edges != lattice.all_edges(), ErrorKind::kInvalidArgument,
            "region must be a proper subset of the edges");
}

Region make_region(const TorusLattice &lattice, const std::vector<int> &edges, Topology declared) {
    Region r{0, declared};
    for (int e : edges) {
        require(e >= 0 && e < lattice.num_edges(), ErrorKind::kInvalidArgument,
                "edge index " + std::to_string(e) + " outside the lattice");
        r.s_edges |= EdgeSet{1} << e;
    }
    validate_region(lattice, r);
    return r;
}

GF2Group subgroup_gs(const GF2Group &group, const TorusLattice &lattice, EdgeSet s_edges) {
    const EdgeSet a_edges = lattice.all_edges() & ~s_edges;
    std::vector<EdgeSet> inside;
    for (EdgeSet g : group.elements())
        if ((g & a_edges) == 0) inside.push_back(g);
    return GF2Group(inside);
}

LoopAnalysis analyze_loops(const TorusLattice &lattice, EdgeSet s_edges) {
    const EdgeSet a_edges = lattice.all_edges() & ~s_edges;
    std::vector<EdgeSet> restricted;
    for (EdgeSet st : lattice.stars()) restricted.push_back(st & a_edges);
    const GF2Group g_a(restricted);
    LoopAnalysis out;
    const EdgeSet w1 = lattice.loop_w1();
    const EdgeSet w2 = lattice.loop_w2();
    out.w1_hidden = g_a.contains(w1 & a_edges);
    out.w2_hidden = g_a.contains(w2 & a_edges);
    out.w12_hidden = g_a.contains((w1 ^ w2) & a_edges);
    if (out.w1_hidden && out.w2_hidden)
        out.topology = Topology::kNonContractibleBoth;
    else if (out.w1_hidden)
        out.topology = Topology::kNonContractibleH;
    else if (out.w2_hidden)
        out.topology = Topology::kNonContractibleV;
    else if (out.w12_hidden)
        out.consistent = false;
    else
        out.topology = Topology::kContractible;
    return out;
}

Alpha alpha_one_hot(int i, int j) {
    require(i >= 0 && i < 2 && j >= 0 && j < 2, ErrorKind::kInvalidArgument,
            "alpha index out of range");
    Alpha a{};
    a[i][j] = 1.0;
    return a;
}

Alpha alpha_uniform() {
    Alpha a{};
    for (auto &row : a)
        for (auto &x : row) x = 0.5;
    return a;
}

ToricGroundState build_ground_state(int n, const Alpha &alpha) {
    require(n == 2 || n == 3, ErrorKind::kDimensionOverflow,
            "ground states are built for n = 2 or 3 only");
    double norm = 0.0;
    for (const auto &row : alpha)
        for (const auto &x : row) {
            require(std::isfinite(x.real()) && std::isfinite(x.imag()),
                    ErrorKind::kInvalidArgument, "alpha has non-finite entries");
            norm += std::norm(x);
        }
    require(std::abs(norm - 1.0) <= kStateTol, ErrorKind::kInvalidArgument,
            "alpha is not normalized");

    ToricGroundState gs;
    gs.lattice = TorusLattice(n);
    gs.alpha = alpha;
    const int e = gs.lattice.num_edges();
    gs.structure = TensorStructure::uniform(e, 2);
    gs.state = StateVector::Zero(gs.structure.total_dim());
    const auto elements = star_group(gs.lattice).elements();
    const double amp = 1.0 / std::sqrt(static_cast<double>(elements.size()));
    const EdgeSet w[2] = {gs.lattice.loop_w1(), gs.lattice.loop_w2()};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (alpha[i][j] == Complex{}) continue;
            const EdgeSet shift = (i ? w[0] : 0) ^ (j ? w[1] : 0);
            for (EdgeSet g : elements) gs.state(to_index(g ^ shift, e)) += alpha[i][j] * amp;
        }
    return gs;
}

double stabilizer_residual(const ToricGroundState &gs) {
    const int e = gs.lattice.num_edges();
    const long dim = gs.state.size();
    double worst = 0.0;
    for (EdgeSet st : gs.lattice.stars()) {
        const long flip = to_index(st, e);
        double r = 0.0;
        for (long k = 0; k < dim; ++k) r += std::norm(gs.state(k ^ flip) - gs.state(k));
        worst = std::max(worst, std::sqrt(r));
    }
    for (EdgeSet p : gs.lattice.plaquettes()) {
        const long mask = to_index(p, e);
        double r = 0.0;
        for (long k = 0; k < dim; ++k)
            if (std::popcount(static_cast<unsigned long>(k & mask)) & 1) r += std::norm(2.0 * gs.state(k));
        worst = std::max(worst, std::sqrt(r));
    }
    return worst;
}

std::vector<double> toric_outcome_c2(const ToricGroundState &gs, const Region &region) {
    const ComplexMatrix amps = amplitude_matrix(gs, region);
    std::vector<double> out;
    for (long i = 0; i < amps.cols(); ++i) {
        const double p = amps.col(i).squaredNorm();
        if (p < kOutcomeCutoff) continue;
        out.push_back(pure_coherence_in_frame(amps.col(i) / std::sqrt(p), Measure::kC2));
    }
    return out;
}

double toric_cave(const ToricGroundState &gs, const Region &region) {
    const ComplexMatrix amps = amplitude_matrix(gs, region);
    double kept = 0.0, sum = 0.0;
    for (long i = 0; i < amps.cols(); ++i) {
        const double p = amps.col(i).squaredNorm();
        if (p < kOutcomeCutoff) continue;
        kept += p;
        // p * c2(v/|v|) = c2(v)/p for the unnormalized column v.
        sum += pure_coherence_in_frame(amps.col(i), Measure::kC2) / p;
    }
    require(kept > 0.0, ErrorKind::kDegenerateInput, "no measurement outcome survived");
    return sum / kept;
}

double toric_prediction(const ToricGroundState &gs, const Region &region) {
    validate_region(gs.lattice, region);
    const LoopAnalysis loops = analyze_loops(gs.lattice, region.s_edges);
    require(loops.consistent, ErrorKind::kInvalidArgument,
            "region hides only the product loop W1 W2; no topology label applies");
    require(loops.topology == region.declared, ErrorKind::kInvalidArgument,
            std::string("declared topology ") + to_string(region.declared) +
                " but loop analysis gives " + to_string(loops.topology));
    const double gs_order =
        static_cast<double>(subgroup_gs(star_group(gs.lattice), gs.lattice, region.s_edges).order());
    // Cosets of K in {0,1}^2, as lists of (i, j).
    std::vector<std::vector<std::pair<int, int>>> cosets;
    switch (loops.topology) {
        case Topology::kContractible:
            cosets = {{{0, 0}}, {{0, 1}}, {{1, 0}}, {{1, 1}}};
            break;
        case Topology::kNonContractibleBoth:
            cosets = {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
            break;
        case Topology::kNonContractibleH:  // i is hidden, superposition over i survives
            cosets = {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}};
            break;
        case Topology::kNonContractibleV:
            cosets = {{{0, 0}, {0, 1}}, {{1, 0}, {1, 1}}};
            break;
    }
    double collapse = 0.0;
    for (const auto &c : cosets) {
        double p2 = 0.0, p4 = 0.0;
        for (auto [i, j] : c) {
            const double q = std::norm(gs.alpha[i][j]);
            p2 += q;
            p4 += q * q;
        }
        if (p2 > 0.0) collapse += p4 / p2;
    }
    return 1.0 - collapse / gs_order;
}

double flat_spectrum_c2(int rank, long d_s) {
    require(rank >= 1 && d_s >= 1, ErrorKind::kInvalidArgument, "rank and d_S must be positive");
    require(rank <= d_s, ErrorKind::kInvalidArgument, "rank exceeds d_S");
    return 1.0 / rank - 1.0 / static_cast<double>(d_s);
}

double flat_spectrum_c2(int rank, const Basis &xi, const Basis &target) {
    require(rank >= 1 && rank <= xi.dim(), ErrorKind::kInvalidArgument, "rank exceeds d_S");
    const std::vector<Complex> coeffs(rank, Complex(1.0 / std::sqrt(static_cast<double>(rank))));
    return schmidt_coherence(coeffs, xi, target, Measure::kC2);
}

ComplexMatrix toric_reduced_state(const ToricGroundState &gs, EdgeSet s_edges) {
    const Region region{s_edges, Topology::kContractible};
    const ComplexMatrix amps = amplitude_matrix(gs, region);
    return amps * amps.adjoint();
}

int numerical_rank(const ComplexMatrix &rho, double tol) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho, Eigen::EigenvaluesOnly);
    int r = 0;
    for (long k = 0; k < eig.eigenvalues().size(); ++k)
        if (eig.eigenvalues()(k) > tol) ++r;
    return r;
}

}  // namespace locoh
