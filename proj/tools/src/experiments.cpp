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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <numeric>

#include "locoh/random_states.hpp"
#include "locoh/rng.hpp"
#include "locoh_cli/cli.hpp"

namespace locoh::cli {

namespace {

using K = ParamKind;

const std::map<std::string, std::vector<ParamDef>> &param_table() {
    static const std::map<std::string, std::vector<ParamDef>> table = [] {
        const ParamDef seed{"seed", K::kInt, nullptr, "master seed (default: $LOCOH_SEED or 0)"};
        const ParamDef samples{"samples", K::kInt, 10000, "Monte Carlo samples (>= 100)"};
        const ParamDef measure{"measure", K::kString, "c2", "c1 | c2"};
        const ParamDef bs{"bs", K::kJson, "z", "B_S: z | fourier | basis object"};
        const ParamDef ba{"ba", K::kJson, "z", "B_A: z | fourier | basis object"};
        std::map<std::string, std::vector<ParamDef>> t;
        t["haar"] = {{"ds", K::kInt, 2, "d_S"},
                     {"da", K::kInt, 2, "d_A"},
                     samples,
                     {"protocol", K::kString, "trace", "trace | nonselective | postselected | full"},
                     measure, bs, ba, seed};
        t["factorized"] = {{"ds", K::kInt, 2, "d_S (U_S x U_A sampler)"},
                           {"da", K::kInt, 2, "d_A (U_S x U_A sampler)"},
                           {"ns", K::kInt, nullptr, "S sites; selects the fully factorized sampler"},
                           {"na", K::kInt, 0, "A sites (fully factorized)"},
                           {"dloc", K::kInt, 2, "site dimension (fully factorized)"},
                           samples,
                           {"protocol", K::kString, "nonselective", "trace | nonselective | postselected | full"},
                           measure, seed};
        t["bubbles"] = {{"case", K::kString, "a", "a: S inside one bubble | b: S across two"},
                        {"n", K::kInt, 1, "number of bubbles"},
                        {"xi", K::kInt, 2, "sites per bubble"},
                        {"dloc", K::kInt, 2, "site dimension"},
                        samples,
                        {"protocol", K::kString, "nonselective", "trace | nonselective | postselected | full"},
                        measure, seed};
        t["spread"] = {{"sites", K::kInt, 8, "chain length"},
                       {"j", K::kDouble, 1.0, "ZZ coupling"},
                       {"g", K::kDouble, 1.05, "transverse field"},
                       {"h", K::kDouble, 0.5, "longitudinal field"},
                       {"ssite", K::kInt, 0, "S site"},
                       {"l", K::kInt, nullptr, "single distance; default: every site"},
                       {"times", K::kDoubleList, Json::array({0.2, 0.4, 0.6, 0.8, 1.0}), "evolution times"},
                       {"init", K::kString, "zero", "zero | plus | mixed"},
                       {"channel", K::kString, "hadamard", "hadamard | x | reset | depolarizing"},
                       {"p", K::kDouble, 1.0, "depolarizing strength"},
                       {"bs", K::kJson, "fourier", "B_S on the S site"},
                       {"counterexample", K::kBool, false, "also run the t = 0 measurement counterexample"}};
        t["toric"] = {{"n", K::kInt, 2, "torus size"},
                      {"alpha", K::kJson, "uniform", "uniform | one-hot | 2x2 array"},
                      {"region", K::kString, nullptr, "region JSON file"},
                      {"edges", K::kIntList, nullptr, "S edges (instead of --region)"},
                      {"topology", K::kString, "Contractible", "declared topology for --edges"}};
        t["coherence"] = {{"state", K::kString, nullptr, "state JSON file; default: random"},
                          {"ds", K::kInt, 2, "d_S of the random state"},
                          {"da", K::kInt, 2, "d_A of the random state"},
                          {"rank", K::kInt, 1, "rank of the random state"},
                          measure, bs, ba, seed};
        t["optimal-basis"] = {{"state", K::kString, nullptr, "state JSON file; default: random"},
                              {"ds", K::kInt, 2, "d_S of the random state"},
                              {"da", K::kInt, 2, "d_A of the random state"},
                              {"rank", K::kInt, 1, "rank of the random state"},
                              {"candidates", K::kInt, 500, "random bases when the ensemble does not commute"},
                              {"protocol", K::kString, "postselected", "nonselective | postselected"},
                              measure, ba, seed};
        return t;
    }();
    return table;
}

std::uint64_t default_seed() {
    if (const char *env = std::getenv("LOCOH_SEED")) {
        char *end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        require(end != env && *end == '\0', ErrorKind::kInvalidArgument,
                "LOCOH_SEED must be a non-negative integer");
        return v;
    }
    return 0;
}

Json check_type(const ParamDef &def, const Json &v) {
    const auto bad = [&] {
        fail(ErrorKind::kInvalidArgument, "parameter '" + def.name + "' has the wrong type");
    };
    switch (def.kind) {
        case K::kInt:
            if (!v.is_number_integer()) bad();
            break;
        case K::kDouble:
            if (!v.is_number()) bad();
            return v.get<double>();
        case K::kString:
            if (!v.is_string()) bad();
            break;
        case K::kBool:
            if (!v.is_boolean()) bad();
            break;
        case K::kIntList:
            if (!v.is_array()) bad();
            for (const auto &x : v)
                if (!x.is_number_integer()) bad();
            break;
        case K::kDoubleList:
            if (!v.is_array()) bad();
            for (const auto &x : v)
                if (!x.is_number()) bad();
            break;
        case K::kJson: break;
    }
    return v;
}

long get_long(const Json &p, const char *key) { return p.at(key).get<long>(); }
int get_int(const Json &p, const char *key) {
    const long v = get_long(p, key);
    require(v >= std::numeric_limits<int>::min() && v <= std::numeric_limits<int>::max(),
            ErrorKind::kInvalidArgument, std::string("parameter '") + key + "' out of range");
    return static_cast<int>(v);
}

Basis basis_param(const Json &v, long dim) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "z") return Basis::computational(dim);
        if (s == "fourier" || s == "x") return fourier_basis(dim);
        fail(ErrorKind::kInvalidArgument, "unknown basis '" + s + "'");
    }
    require(v.is_object(), ErrorKind::kInvalidArgument, "basis must be a name or a basis object");
    Basis b = basis_from_json(v);
    require(b.dim() == dim, ErrorKind::kDimensionMismatch, "basis dimension does not match");
    return b;
}

Functional functional_param(const std::string &s) {
    if (s == "trace") return Functional::kTraceOut;
    if (s == "nonselective") return Functional::kNonSelective;
    if (s == "postselected") return Functional::kPostSelected;
    if (s == "full") return Functional::kFullCoherence;
    return functional_from_string(s);
}

Json nullable(double v, bool present) { return present ? Json(v) : Json(nullptr); }

Json mc_payload(const SamplerSpec &spec, const McEstimate &est, Functional f, Measure m,
                std::optional<double> analytic) {
    Json out = to_json(est);
    out["kind"] = to_string(spec.kind);
    out["functional"] = to_string(f);
    out["measure"] = to_string(m);
    out["dims"] = spec.dims.dims();
    std::vector<int> s_mask;
    for (bool b : spec.dims.s_mask()) s_mask.push_back(b ? 1 : 0);
    out["s_mask"] = s_mask;
    out["analytic"] = nullable(analytic.value_or(0.0), analytic.has_value());
    out["sigma_distance"] =
        nullable(analytic ? est.sigma_distance(*analytic) : 0.0, analytic.has_value());
    out["deviation"] =
        nullable(analytic ? std::abs(est.mean - *analytic) : 0.0, analytic.has_value());
    return out;
}

Json run_haar(const Json &p, int threads) {
    const int ds = get_int(p, "ds"), da = get_int(p, "da");
    const auto spec = SamplerSpec::global_haar(ds, da, p.at("seed").get<std::uint64_t>());
    const Functional f = functional_param(p.at("protocol").get<std::string>());
    const Measure m = measure_from_string(p.at("measure").get<std::string>());
    spec.validate();
    const FactorizedBasis b{basis_param(p.at("bs"), ds), basis_param(p.at("ba"), da)};
    const auto est = mc_estimate(spec, f, b, get_long(p, "samples"), threads, m);
    std::optional<double> analytic;
    if (m == Measure::kC2) {
        switch (f) {
            case Functional::kTraceOut:
                analytic = analytic_average(AnalyticProtocol::kTraceOut, ds, da);
                break;
            case Functional::kNonSelective:
                analytic = analytic_average(AnalyticProtocol::kNonSelective, ds, da);
                break;
            case Functional::kPostSelected:
                analytic = analytic_average(AnalyticProtocol::kPostSelectedMeanField, ds, da);
                break;
            case Functional::kFullCoherence: {
                const double d = static_cast<double>(ds) * da;
                analytic = (d - 1.0) / (d + 1.0);
                break;
            }
        }
    }
    Json out = mc_payload(spec, est, f, m, analytic);
    if (f == Functional::kPostSelected && m == Measure::kC2)
        out["exact_postselected"] = (ds - 1.0) / (ds + 1.0);
    return out;
}

Json run_factorized(const Json &p, int threads) {
    const std::uint64_t seed = p.at("seed").get<std::uint64_t>();
    const Functional f = functional_param(p.at("protocol").get<std::string>());
    const Measure m = measure_from_string(p.at("measure").get<std::string>());
    std::optional<double> analytic;
    SamplerSpec spec;
    if (!p.at("ns").is_null()) {
        const int ns = get_int(p, "ns"), na = get_int(p, "na"), dloc = get_int(p, "dloc");
        spec = SamplerSpec::fully_factorized(ns, na, dloc, seed);
        if (f == Functional::kNonSelective && m == Measure::kC2)
            analytic = fully_factorized_average(ns, na, dloc);
    } else {
        const int ds = get_int(p, "ds"), da = get_int(p, "da");
        spec = SamplerSpec::factorized(ds, da, seed);
        if (f == Functional::kNonSelective && m == Measure::kC2)
            analytic = analytic_average(AnalyticProtocol::kFactorizedNonSelective, ds, da);
    }
    spec.validate();
    const auto est = mc_estimate(spec, f, get_long(p, "samples"), threads, m);
    return mc_payload(spec, est, f, m, analytic);
}

Json run_bubbles(const Json &p, int threads) {
    const auto cs = p.at("case").get<std::string>();
    require(cs == "a" || cs == "b", ErrorKind::kInvalidArgument, "bubble case must be a or b");
    const BubbleCase c = cs == "a" ? BubbleCase::kA : BubbleCase::kB;
    const int n = get_int(p, "n"), xi = get_int(p, "xi"), dloc = get_int(p, "dloc");
    const Functional f = functional_param(p.at("protocol").get<std::string>());
    const Measure m = measure_from_string(p.at("measure").get<std::string>());
    const auto spec = SamplerSpec::bubbles(c, n, xi, dloc, p.at("seed").get<std::uint64_t>());
    spec.validate();
    std::optional<double> analytic;
    if (f == Functional::kNonSelective && m == Measure::kC2)
        analytic = bubble_average(c, n, xi, dloc);
    const auto est = mc_estimate(spec, f, get_long(p, "samples"), threads, m);
    Json out = mc_payload(spec, est, f, m, analytic);
    out["case"] = cs;
    return out;
}

DensityMatrix chain_state(const std::string &init, int sites) {
    const auto s = TensorStructure::uniform(sites, 2);
    if (init == "mixed") return DensityMatrix::maximally_mixed(s);
    StateVector site(2);
    if (init == "zero")
        site << 1.0, 0.0;
    else if (init == "plus")
        site << M_SQRT1_2, M_SQRT1_2;
    else
        fail(ErrorKind::kInvalidArgument, "unknown initial state '" + init + "'");
    StateVector psi = site;
    for (int k = 1; k < sites; ++k) psi = kron(psi, site);
    return DensityMatrix::from_pure(psi, s);
}

std::vector<ComplexMatrix> site_kraus(const std::string &channel, double p) {
    if (channel == "hadamard") return LocalChannel::unitary(0, fourier_basis(2).vectors()).kraus();
    if (channel == "x") {
        ComplexMatrix x(2, 2);
        x << 0, 1, 1, 0;
        return {x};
    }
    if (channel == "reset") return LocalChannel::reset(0, 2).kraus();
    if (channel == "depolarizing") return LocalChannel::depolarizing(0, 2, p).kraus();
    fail(ErrorKind::kInvalidArgument, "unknown channel '" + channel + "'");
}

Json run_spread(const Json &p, int threads) {
    const int sites = get_int(p, "sites");
    require(sites >= 2 && sites <= 10, ErrorKind::kDimensionOverflow,
            "spread runs on 2 to 10 sites");
    const int s_site = get_int(p, "ssite");
    require(s_site >= 0 && s_site < sites, ErrorKind::kInvalidArgument, "S site off the chain");
    const auto ham = build_tfim(sites, p.at("j").get<double>(), p.at("g").get<double>(),
                                p.at("h").get<double>());
    const DensityMatrix rho0 = chain_state(p.at("init").get<std::string>(), sites);
    const Basis bs = basis_param(p.at("bs"), 2);
    const auto kraus = site_kraus(p.at("channel").get<std::string>(), p.at("p").get<double>());
    std::vector<int> a_sites;
    if (!p.at("l").is_null()) {
        const int l = get_int(p, "l");
        require(l >= 1 && s_site + l < sites, ErrorKind::kInvalidArgument,
                "distance l puts A off the chain");
        a_sites.push_back(s_site + l);
    } else {
        for (int a = 0; a < sites; ++a)
            if (a != s_site) a_sites.push_back(a);
    }
    const auto times = p.at("times").get<std::vector<double>>();
    require(!times.empty(), ErrorKind::kInvalidArgument, "times must not be empty");
    const auto profile = spreading_profile(rho0, kraus, ham, bs, s_site, a_sites, times, threads);
    Json out = to_json(profile);
    long violations = 0;
    for (const auto &r : profile.rows)
        if (r.delta_ctr > r.lipschitz_cap + 1e-12) ++violations;
    out["lipschitz_violations"] = violations;
    if (p.at("counterexample").get<bool>()) {
        const int a_site = s_site + 1 < sites ? s_site + 1 : s_site - 1;
        const auto cx = counterexample_measure_protocols(rho0, bs, s_site, a_site);
        out["counterexample"] = {{"channel", cx.channel},
                                 {"l", cx.l},
                                 {"delta_ctr", cx.deltas.delta_ctr},
                                 {"delta_cb", cx.deltas.delta_cb},
                                 {"delta_cave", cx.deltas.delta_cave}};
    }
    return out;
}

Json run_toric(const Json &p, int) {
    int n = get_int(p, "n");
    require(n >= 2, ErrorKind::kInvalidArgument, "torus size n must be at least 2");
    require(n <= 3, ErrorKind::kDimensionOverflow, "dense toric simulation supports n <= 3");
    std::vector<int> edges;
    Topology declared = topology_from_string(p.at("topology").get<std::string>());
    if (!p.at("region").is_null()) {
        require(p.at("edges").is_null(), ErrorKind::kInvalidArgument,
                "give either region or edges, not both");
        std::ifstream in(p.at("region").get<std::string>());
        require(in.good(), ErrorKind::kInvalidArgument,
                "cannot open region file " + p.at("region").get<std::string>());
        const RegionFile rf = region_file_from_json(Json::parse(in));
        require(rf.n == n, ErrorKind::kInvalidArgument, "region file n differs from --n");
        edges = rf.edges;
        declared = rf.declared;
    } else {
        require(!p.at("edges").is_null(), ErrorKind::kInvalidArgument, "toric needs a region");
        edges = p.at("edges").get<std::vector<int>>();
    }
    Alpha alpha;
    const Json &a = p.at("alpha");
    if (a.is_string()) {
        const auto s = a.get<std::string>();
        if (s == "uniform")
            alpha = alpha_uniform();
        else if (s == "one-hot")
            alpha = alpha_one_hot();
        else
            fail(ErrorKind::kInvalidArgument, "unknown alpha '" + s + "'");
    } else {
        alpha = alpha_from_json(a);
    }
    const auto gs = build_ground_state(n, alpha);
    const Region region = make_region(gs.lattice, edges, declared);
    ToricResult r;
    r.alpha = alpha;
    r.cave_simulated = toric_cave(gs, region);
    r.cave_predicted = toric_prediction(gs, region);
    const auto group = star_group(gs.lattice);
    r.g_order = group.order();
    r.gs_order = subgroup_gs(group, gs.lattice, region.s_edges).order();
    Json out = to_json(r);
    const auto per = toric_outcome_c2(gs, region);
    const double mean = std::accumulate(per.begin(), per.end(), 0.0) / per.size();
    double var = 0.0;
    for (double x : per) var += (x - mean) * (x - mean);
    out["outcomes"] = per.size();
    out["outcome_c2_variance"] = var / per.size();
    out["declared_topology"] = to_string(declared);
    out["n"] = n;
    out["s_edges"] = edges;
    return out;
}

DensityMatrix state_param(const Json &p) {
    if (p.at("state").is_null()) {
        const int ds = get_int(p, "ds"), da = get_int(p, "da"), rank = get_int(p, "rank");
        require(ds >= 1 && da >= 1 && rank >= 1, ErrorKind::kInvalidArgument,
                "ds, da and rank must be positive");
        require(static_cast<long>(ds) * da <= kMaxDenseDim, ErrorKind::kDimensionOverflow,
                "state too large");
        Rng rng = stream_rng(p.at("seed").get<std::uint64_t>(), 0);
        return DensityMatrix(random_density_matrix(static_cast<long>(ds) * da, rank, rng),
                             TensorStructure::bipartite(ds, da));
    }
    const auto path = p.at("state").get<std::string>();
    std::ifstream in(path);
    require(in.good(), ErrorKind::kInvalidArgument, "cannot open state file " + path);
    const Json j = Json::parse(in);
    const auto dims = j.at("dims").get<std::vector<int>>();
    const auto mask = j.at("s_mask").get<std::vector<bool>>();
    const TensorStructure s(dims, mask);
    if (j.contains("vector")) {
        const ComplexMatrix v = matrix_from_json(j["vector"], s.total_dim(), 1);
        require(std::abs(v.norm() - 1.0) <= kStateTol, ErrorKind::kInvalidArgument,
                "state vector is not normalized");
        return DensityMatrix::from_pure(v.col(0), s);
    }
    return DensityMatrix(matrix_from_json(j.at("matrix"), s.total_dim(), s.total_dim()), s);
}

Json run_coherence(const Json &p, int) {
    const DensityMatrix rho = state_param(p);
    const auto &s = rho.structure();
    const Measure m = measure_from_string(p.at("measure").get<std::string>());
    const FactorizedBasis b{basis_param(p.at("bs"), s.dim_s()), basis_param(p.at("ba"), s.dim_a())};
    Json out;
    out["dims"] = s.dims();
    out["measure"] = to_string(m);
    out["trace"] = c_trace(rho, b.bs, m);
    out["nonselective"] = c_nonselective(rho, b, m);
    out["postselected"] = c_postselected(rho, b, m);
    out["full"] = coherence(rho, b.full(), m);
    if (m == Measure::kC2) {
        const auto id = nonselective_identity(rho, b);
        out["identity_rhs"] = id.rhs;
    }
    return out;
}

Json run_optimal_basis(const Json &p, int threads) {
    const DensityMatrix rho = state_param(p);
    const auto &s = rho.structure();
    const Measure m = measure_from_string(p.at("measure").get<std::string>());
    const Basis ba = basis_param(p.at("ba"), s.dim_a());
    const auto ensemble = measure_outcomes(rho, ba);
    Json out;
    const double comm = max_commutator_norm(ensemble);
    out["max_commutator"] = comm;
    Basis best;
    if (comm <= kCommuteTol) {
        const auto opt = optimal_basis_commuting(ensemble);
        best = opt.optimal;
        out["method"] = "commuting";
        out["common_eigenbasis"] = basis_to_json(opt.common_eigenbasis);
    } else {
        const Protocol proto = protocol_from_string(p.at("protocol").get<std::string>());
        const auto res = random_basis_search(rho, ba, proto, m, get_long(p, "candidates"),
                                             p.at("seed").get<std::uint64_t>(), threads);
        best = res.best;
        out["method"] = "search";
        out["best_index"] = res.best_index;
    }
    const FactorizedBasis b{best, ba};
    out["basis"] = basis_to_json(best);
    out["nonselective"] = c_nonselective(rho, b, m);
    out["postselected"] = c_postselected(rho, b, m);
    out["measure"] = to_string(m);
    return out;
}

std::string hex64(std::uint64_t v) {
    static const char *digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int k = 15; k >= 0; --k, v >>= 4) s[k] = digits[v & 0xF];
    return s;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kInvalidArgument:
        case ErrorKind::kDimensionMismatch: return kExitInvalid;
        case ErrorKind::kDimensionOverflow: return kExitOverflow;
        case ErrorKind::kDegenerateInput:
        case ErrorKind::kNonCommuting:
        case ErrorKind::kUnderDetermined: return kExitDegenerate;
    }
    return kExitFailure;
}

const std::vector<std::string> &experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &[k, v] : param_table()) out.push_back(k);
        return out;
    }();
    return names;
}

const std::vector<ParamDef> &experiment_params(const std::string &experiment) {
    const auto it = param_table().find(experiment);
    require(it != param_table().end(), ErrorKind::kInvalidArgument,
            "unknown experiment '" + experiment + "'");
    return it->second;
}

Json resolve_params(const std::string &experiment, const Json &given) {
    const auto &defs = experiment_params(experiment);
    require(given.is_null() || given.is_object(), ErrorKind::kInvalidArgument,
            "parameters must be a JSON object");
    if (given.is_object())
        for (const auto &[key, value] : given.items()) {
            const bool known = std::any_of(defs.begin(), defs.end(),
                                           [&](const ParamDef &d) { return d.name == key; });
            require(known, ErrorKind::kInvalidArgument,
                    "unknown parameter '" + key + "' for " + experiment);
        }
    Json out = Json::object();
    for (const auto &def : defs) {
        if (given.is_object() && given.contains(def.name) && !given[def.name].is_null())
            out[def.name] = check_type(def, given[def.name]);
        else if (def.name == "seed")
            out[def.name] = default_seed();
        else
            out[def.name] = def.fallback;
    }
    if (out.contains("seed"))
        require(out["seed"].is_number_unsigned() || out["seed"].get<long long>() >= 0,
                ErrorKind::kInvalidArgument, "seed must be non-negative");
    return out;
}

Json run_experiment(const std::string &experiment, const Json &params, int threads) {
    require(threads >= 1, ErrorKind::kInvalidArgument, "threads must be at least 1");
    if (experiment == "haar") return run_haar(params, threads);
    if (experiment == "factorized") return run_factorized(params, threads);
    if (experiment == "bubbles") return run_bubbles(params, threads);
    if (experiment == "spread") return run_spread(params, threads);
    if (experiment == "toric") return run_toric(params, threads);
    if (experiment == "coherence") return run_coherence(params, threads);
    if (experiment == "optimal-basis") return run_optimal_basis(params, threads);
    fail(ErrorKind::kInvalidArgument, "unknown experiment '" + experiment + "'");
}

Json make_record(const std::string &experiment, const Json &params, int threads, Json payload) {
    // FNV-1a over the experiment name and canonical config text.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : experiment + params.dump()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return {{"experiment", experiment},
            {"id", experiment + "-" + hex64(h)},
            {"timestamp", stamp},
            {"version", LOCOH_VERSION},
            {"threads", threads},
            {"config", params},
            {"payload", std::move(payload)}};
}

Json run_sweep(const std::string &experiment, const Json &params, int threads) {
    require(params.is_object(), ErrorKind::kInvalidArgument, "sweep needs a parameter object");
    std::string ranged;
    Json values;
    for (const auto &[key, value] : params.items())
        if (value.is_object() && value.contains("range")) {
            require(ranged.empty(), ErrorKind::kInvalidArgument,
                    "sweep needs exactly one ranged parameter, found several");
            ranged = key;
            values = value["range"];
        }
    require(!ranged.empty(), ErrorKind::kInvalidArgument, "sweep needs one ranged parameter");
    require(values.is_array() && !values.empty(), ErrorKind::kInvalidArgument,
            "range of '" + ranged + "' is empty");
    Json rows = Json::array();
    Json base = params;
    for (const auto &v : values) {
        base[ranged] = v;
        const Json resolved = resolve_params(experiment, base);
        Json payload = run_experiment(experiment, resolved, threads);
        rows.push_back({{"value", v}, {"payload", std::move(payload)}});
    }
    Json echo = resolve_params(experiment, [&] {
        Json b = params;
        b[ranged] = values.front();
        return b;
    }());
    echo[ranged] = {{"range", values}};
    Json payload = {{"parameter", ranged}, {"rows", rows}};
    return make_record("sweep:" + experiment, echo, threads, std::move(payload));
}

}  // namespace locoh::cli
