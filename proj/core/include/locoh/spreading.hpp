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

#ifndef LOCOH_SPREADING_HPP
#define LOCOH_SPREADING_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locoh/coherence.hpp"
#include "locoh/tensor.hpp"

namespace locoh {

/// Deltas at or below this are treated as zero.
inline constexpr double kNoiseFloor = 1e-12;

struct LocalTerm {
    std::vector<int> sites;
    ComplexMatrix op;  // Hermitian, on the listed sites in order
};

/// H = sum_X Phi_X on an open chain of identical sites.
class ChainHamiltonian {
   public:
    /// Every term must satisfy |X| <= max_support and diam(X) <= max_diameter.
    ChainHamiltonian(int n_sites, int d_loc, std::vector<LocalTerm> terms, int max_support = 2,
                     int max_diameter = 1);

    int n_sites() const { return n_sites_; }
    int d_loc() const { return d_loc_; }
    const std::vector<LocalTerm> &terms() const { return terms_; }
    TensorStructure structure() const { return TensorStructure::uniform(n_sites_, d_loc_); }
    ComplexMatrix dense() const;

   private:
    int n_sites_;
    int d_loc_;
    std::vector<LocalTerm> terms_;
};

/// Open-boundary Ising chain H = -J sum Z_i Z_{i+1} - g sum X_i - h sum Z_i.
ChainHamiltonian build_tfim(int n_sites, double j, double g, double h);

/// Exact propagation through one eigendecomposition of H.
class Evolver {
   public:
    explicit Evolver(const ChainHamiltonian &ham);
    /// e^{-iHt} rho e^{iHt}
    ComplexMatrix evolve(const ComplexMatrix &rho, double t) const;
    DensityMatrix evolve(const DensityMatrix &rho, double t) const;
    const RealVector &energies() const { return energies_; }
    const ComplexMatrix &eigenvectors() const { return vectors_; }

   private:
    RealVector energies_;
    ComplexMatrix vectors_;
};

DensityMatrix evolve(const DensityMatrix &rho, const ChainHamiltonian &ham, double t);

/// CPTP map with Kraus operators acting on `support`.
class LocalChannel {
   public:
    LocalChannel(std::vector<int> support, std::vector<ComplexMatrix> kraus, std::string label = "");

    static LocalChannel identity(int site, int d_loc);
    static LocalChannel unitary(int site, const ComplexMatrix &u, std::string label = "unitary");
    /// rho -> (1-p) rho + p I/d on one site.
    static LocalChannel depolarizing(int site, int d_loc, double p);
    /// Replaces the site with |0><0|.
    static LocalChannel reset(int site, int d_loc);

    const std::vector<int> &support() const { return support_; }
    const std::vector<ComplexMatrix> &kraus() const { return kraus_; }
    const std::string &label() const { return label_; }

   private:
    std::vector<int> support_;
    std::vector<ComplexMatrix> kraus_;
    std::string label_;
};

DensityMatrix apply_channel(const DensityMatrix &rho, const LocalChannel &ch);

/// One (l, t) point. Deltas compare the unperturbed and perturbed evolutions.
struct SpreadRow {
    int l = 0;
    double t = 0.0;
    double delta_ctr = 0.0;
    double delta_cb = 0.0;
    double delta_cave = 0.0;
    double ctr_perturbed = 0.0;   // C_Tr of the perturbed state alone
    double lipschitz_cap = 0.0;   // 2 ||Tr_{not S}(rho_t - rho'_t)||_2
};

/// log delta ~ log c - mu l + s t over points outside the estimated cone.
struct SpreadFit {
    double mu = 0.0;
    double s = 0.0;
    double c = 0.0;
    double v_fit = 0.0;
    int n_points = 0;
    double rms_residual = 0.0;
};

struct SpreadProfile {
    std::vector<SpreadRow> rows;  // ordered by (l, t)
    std::optional<SpreadFit> fit;
};

/// Deltas for one perturbation channel over `times`. S is the single site
/// `s_site`; the measurement protocols measure every other site in z.
std::vector<SpreadRow> spread_rows(const DensityMatrix &rho0, const LocalChannel &ch,
                                   const Evolver &evolver, const Basis &bs, int s_site,
                                   std::span<const double> times, int threads = 1);

/// Profile for `site_kraus` placed on each of `a_sites`, plus the fit when
/// it is determined.
SpreadProfile spreading_profile(const DensityMatrix &rho0,
                                const std::vector<ComplexMatrix> &site_kraus,
                                const ChainHamiltonian &ham, const Basis &bs, int s_site,
                                std::span<const int> a_sites, std::span<const double> times,
                                int threads = 1);

/// Single-channel form: A is the channel support.
SpreadProfile spreading_profile(const DensityMatrix &rho0, const LocalChannel &ch,
                                const ChainHamiltonian &ham, const Basis &bs, int s_site,
                                std::span<const double> times, int threads = 1);

/// Throws ErrorKind::kUnderDetermined with fewer than 4 usable points.
SpreadFit fit_spread(std::span<const SpreadRow> rows);

/// Measurement-protocol deltas |C(rho) - C(T_A(rho))| with S = s_site.
struct ProtocolDeltas {
    double delta_ctr = 0.0;
    double delta_cb = 0.0;
    double delta_cave = 0.0;
};
ProtocolDeltas protocol_deltas(const DensityMatrix &rho, const LocalChannel &ch, const Basis &bs,
                               int s_site);

struct Counterexample {
    ProtocolDeltas deltas;
    std::string channel;
    int l = 0;
};

/// For rho0 = rho_S (x) rho_rest, searches single-site unitaries on a_site
/// for the largest C_B change at t = 0.
Counterexample counterexample_measure_protocols(const DensityMatrix &rho0, const Basis &bs,
                                                int s_site, int a_site);

}  // namespace locoh

#endif
