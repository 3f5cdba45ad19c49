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

#ifndef LOCOH_SERIALIZE_HPP
#define LOCOH_SERIALIZE_HPP

#include <nlohmann/json.hpp>

#include "locoh/coherence.hpp"
#include "locoh/localization.hpp"
#include "locoh/random_states.hpp"
#include "locoh/spreading.hpp"
#include "locoh/toric.hpp"

namespace locoh {

using Json = nlohmann::json;

/// Complex entries as [re, im] pairs, column-major.
Json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const Json &j, long rows, long cols);

/// {dim, label, vectors}
Json basis_to_json(const Basis &b);
Basis basis_from_json(const Json &j);

Json to_json(const ProtocolResult &r);
Json to_json(const McEstimate &e);
Json to_json(const SpreadRow &r);
Json to_json(const SpreadFit &f);
Json to_json(const SpreadProfile &p);
Json alpha_to_json(const Alpha &a);
Alpha alpha_from_json(const Json &j);

/// {n, s_edges: [int], declared_topology}
struct RegionFile {
    int n = 2;
    std::vector<int> edges;
    Topology declared = Topology::kContractible;
};
RegionFile region_file_from_json(const Json &j);
Json to_json(const RegionFile &r);

struct ToricResult {
    double cave_simulated = 0.0;
    double cave_predicted = 0.0;
    std::uint64_t g_order = 0;
    std::uint64_t gs_order = 0;
    Alpha alpha{};
};
Json to_json(const ToricResult &r);

}  // namespace locoh

#endif
