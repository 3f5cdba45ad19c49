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

#ifndef LOCOH_TORIC_HPP
#define LOCOH_TORIC_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "locoh/coherence.hpp"
#include "locoh/localization.hpp"
#include "locoh/tensor.hpp"

namespace locoh {

/// Bit e set <=> edge e is in the set. Edge e is tensor factor e.
using EdgeSet = std::uint64_t;

int popcount(EdgeSet e);

/// N x N periodic square lattice, spins on the 2N^2 edges.
///
/// h(x, y) = y N + x joins vertex (x, y) to (x+1, y); v(x, y) = N^2 + y N + x
/// joins (x, y) to (x, y+1).
class TorusLattice {
   public:
    explicit TorusLattice(int n);

    int n() const { return n_; }
    int num_edges() const { return 2 * n_ * n_; }
    int h(int x, int y) const;
    int v(int x, int y) const;

    /// Edges touching vertex (x, y).
    EdgeSet star(int x, int y) const;
    /// Edges bounding the face with lower-left corner (x, y).
    EdgeSet plaquette(int x, int y) const;
    std::vector<EdgeSet> stars() const;
    std::vector<EdgeSet> plaquettes() const;
    /// Non-contractible sigma^x loops: W1 horizontal, W2 vertical.
    EdgeSet loop_w1() const;
    EdgeSet loop_w2() const;
    EdgeSet all_edges() const;

   private:
    int n_;
};

/// Subgroup of (Z_2)^E spanned by bit vectors, kept in reduced echelon form.
class GF2Group {
   public:
    GF2Group() = default;
    explicit GF2Group(const std::vector<EdgeSet> &generators);

    int rank() const { return static_cast<int>(basis_.size()); }
    std::uint64_t order() const { return std::uint64_t{1} << basis_.size(); }
    const std::vector<EdgeSet> &basis() const { return basis_; }
    bool contains(EdgeSet e) const;
    /// Reduction of e modulo the group (zero iff e is an element).
    EdgeSet reduce(EdgeSet e) const;
    /// All elements, ordered by the binary counter over the basis.
    std::vector<EdgeSet> elements() const;

   private:
    std::vector<EdgeSet> basis_;  // distinct leading bits, fully reduced
};

GF2Group star_group(const TorusLattice &lattice);

enum class Topology { kContractible, kNonContractibleBoth, kNonContractibleH, kNonContractibleV };
const char *to_string(Topology t);
Topology topology_from_string(const std::string &s);

struct Region {
    EdgeSet s_edges = 0;
    Topology declared = Topology::kContractible;
};

/// Nonempty proper subset of the lattice edges.
void validate_region(const TorusLattice &lattice, const Region &region);
Region make_region(const TorusLattice &lattice, const std::vector<int> &edges, Topology declared);

/// G_S = {g in G : g has no support outside s_edges}.
GF2Group subgroup_gs(const GF2Group &group, const TorusLattice &lattice, EdgeSet s_edges);

/// Which loop operators the A-part of a z-configuration cannot detect:
/// K = {w in <W1, W2> : w restricted to A lies in G restricted to A}.
struct LoopAnalysis {
    bool w1_hidden = false;
    bool w2_hidden = false;
    bool w12_hidden = false;
    /// Unset when K = {0, W1 W2}, which no declared label describes.
    bool consistent = true;
    Topology topology = Topology::kContractible;
};
LoopAnalysis analyze_loops(const TorusLattice &lattice, EdgeSet s_edges);

using Alpha = std::array<std::array<Complex, 2>, 2>;

struct ToricGroundState {
    TorusLattice lattice{2};
    Alpha alpha{};
    StateVector state;
    TensorStructure structure;  // 2N^2 qubits, no bipartition
};

ToricGroundState build_ground_state(int n, const Alpha &alpha);
/// alpha = (1, 0, 0, 0) and all entries 1/2.
Alpha alpha_one_hot(int i = 0, int j = 0);
Alpha alpha_uniform();

/// Largest ||(A - I) psi|| over all stars and plaquettes.
double stabilizer_residual(const ToricGroundState &gs);

/// C_ave with z-product bases on S and A, from the full state vector.
double toric_cave(const ToricGroundState &gs, const Region &region);
/// c2 of each post-selected S state, in outcome order.
std::vector<double> toric_outcome_c2(const ToricGroundState &gs, const Region &region);

/// 1 - (1/|G_S|) sum over cosets c of K of (sum_c |a|^4) / (sum_c |a|^2).
/// Throws kInvalidArgument when the declared topology disagrees with the
/// loop analysis.
double toric_prediction(const ToricGroundState &gs, const Region &region);

/// 1/r - 1/d_s, the c2 of a rank-r flat state in a basis unbiased to its
/// eigenbasis.
double flat_spectrum_c2(int rank, long d_s);
/// Flat Schmidt coefficients on the first `rank` columns of xi, measured in
/// `target`.
double flat_spectrum_c2(int rank, const Basis &xi, const Basis &target);

/// Exact rho_S of the ground state.
ComplexMatrix toric_reduced_state(const ToricGroundState &gs, EdgeSet s_edges);
/// Number of eigenvalues of rho_S above `tol`.
int numerical_rank(const ComplexMatrix &rho, double tol = 1e-10);

}  // namespace locoh

#endif
