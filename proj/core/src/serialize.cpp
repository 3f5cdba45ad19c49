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

#include "locoh/serialize.hpp"

namespace locoh {

Json matrix_to_json(const ComplexMatrix &m) {
    Json out = Json::array();
    for (long c = 0; c < m.cols(); ++c)
        for (long r = 0; r < m.rows(); ++r) out.push_back({m(r, c).real(), m(r, c).imag()});
    return out;
}

ComplexMatrix matrix_from_json(const Json &j, long rows, long cols) {
    require(j.is_array() && static_cast<long>(j.size()) == rows * cols,
            ErrorKind::kDimensionMismatch, "matrix entry count does not match its shape");
    ComplexMatrix m(rows, cols);
    long k = 0;
    for (long c = 0; c < cols; ++c)
        for (long r = 0; r < rows; ++r, ++k) {
            const auto &e = j[k];
            require(e.is_array() && e.size() == 2, ErrorKind::kInvalidArgument,
                    "complex entries must be [re, im] pairs");
            m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    return m;
}

Json basis_to_json(const Basis &b) {
    return {{"dim", b.dim()}, {"label", b.label()}, {"vectors", matrix_to_json(b.vectors())}};
}

Basis basis_from_json(const Json &j) {
    const long dim = j.at("dim").get<long>();
    require(dim >= 1, ErrorKind::kInvalidArgument, "basis dimension must be positive");
    return Basis(matrix_from_json(j.at("vectors"), dim, dim), j.value("label", std::string{}));
}

Json to_json(const ProtocolResult &r) {
    return {{"value", r.value},
            {"protocol", to_string(r.protocol)},
            {"measure", to_string(r.measure)},
            {"bs", r.bs_label},
            {"ba", r.ba_label}};
}

Json to_json(const McEstimate &e) {
    return {{"mean", e.mean}, {"stderr", e.stderr_}, {"samples", e.samples}, {"seed", e.seed}};
}

Json to_json(const SpreadRow &r) {
    return {{"l", r.l},
            {"t", r.t},
            {"delta_ctr", r.delta_ctr},
            {"delta_cb", r.delta_cb},
            {"delta_cave", r.delta_cave},
            {"lipschitz_cap", r.lipschitz_cap}};
}

Json to_json(const SpreadFit &f) {
    return {{"mu", f.mu},       {"s", f.s},
            {"c", f.c},         {"v_fit", f.v_fit},
            {"n_points", f.n_points}, {"rms_residual", f.rms_residual}};
}

Json to_json(const SpreadProfile &p) {
    Json rows = Json::array();
    for (const auto &r : p.rows) rows.push_back(to_json(r));
    return {{"rows", rows}, {"fit", p.fit ? to_json(*p.fit) : Json(nullptr)}};
}

Json alpha_to_json(const Alpha &a) {
    Json out = Json::array();
    for (const auto &row : a) {
        Json r = Json::array();
        for (const auto &x : row) r.push_back({x.real(), x.imag()});
        out.push_back(r);
    }
    return out;
}

Alpha alpha_from_json(const Json &j) {
    require(j.is_array() && j.size() == 2, ErrorKind::kInvalidArgument, "alpha must be 2x2");
    Alpha a{};
    for (int i = 0; i < 2; ++i) {
        require(j[i].is_array() && j[i].size() == 2, ErrorKind::kInvalidArgument,
                "alpha must be 2x2");
        for (int k = 0; k < 2; ++k) {
            const auto &e = j[i][k];
            a[i][k] = e.is_array() ? Complex(e.at(0).get<double>(), e.at(1).get<double>())
                                   : Complex(e.get<double>(), 0.0);
        }
    }
    return a;
}

RegionFile region_file_from_json(const Json &j) {
    RegionFile r;
    r.n = j.value("n", 2);
    require(j.contains("s_edges") && j["s_edges"].is_array(), ErrorKind::kInvalidArgument,
            "region file needs an s_edges array");
    r.edges = j["s_edges"].get<std::vector<int>>();
    r.declared = topology_from_string(j.value("declared_topology", std::string("Contractible")));
    return r;
}

Json to_json(const RegionFile &r) {
    return {{"n", r.n}, {"s_edges", r.edges}, {"declared_topology", to_string(r.declared)}};
}

Json to_json(const ToricResult &r) {
    return {{"cave_simulated", r.cave_simulated},
            {"cave_predicted", r.cave_predicted},
            {"g_order", r.g_order},
            {"gs_order", r.gs_order},
            {"alpha", alpha_to_json(r.alpha)}};
}

}  // namespace locoh
