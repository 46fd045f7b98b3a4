// SPDX-License-Identifier: Apache-2.0
//
// bfmimo: statistical block fading channel simulator for multiuser massive MIMO
// Copyright (C) 2026 The bfmimo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef bfmimo_config_H
#define bfmimo_config_H

#include "bfmimo/model.hpp"
#include "bfmimo/stochastic.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bfmimo
{
    // Configuration problem: syntax (with line/column) or a semantic
    // violation naming the offending field.
    class config_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    enum class Artifact
    {
        histogram,          // histogram.csv
        cross_correlation,  // xcorr_hist.csv
        eigencdf,           // eigencdf.csv
        power_profile,      // power_profile.csv
        correlation_matrix, // correlation_matrix.csv
        raw_channel,        // raw_channel.csv
    };

    std::string to_string(Artifact a);
    std::optional<Artifact> artifact_from_string(std::string_view name);

    struct ScenarioConfig
    {
        std::uint64_t seed = 1;
        ArrayGeometry geometry;
        std::vector<UserSpec> users;
        ResourceGrid grid;
        CorrelationSpec correlation; // length follows the grid
        std::uint64_t realizations = 1;
        std::vector<Artifact> outputs;
        arma::uword bins = 64;           // per axis for the coefficient histogram, total for xcorr
        arma::uword histogram_user = 0;  // user whose coefficients are histogrammed

        arma::uword n_users() const { return users.size(); }

        // Throws config_error naming the field and constraint.
        void validate() const;

        bool operator==(const ScenarioConfig &) const = default;
    };

    // Parses a JSON configuration document; see docs/config_schema.md.
    // A document may name a preset and override selected fields of it.
    ScenarioConfig parse_config(std::string_view text);

    // Canonical JSON rendering, re-parseable by parse_config.
    std::string emit_config(const ScenarioConfig &config);

    std::vector<std::string> preset_names();

    // Throws config_error for unknown names.
    ScenarioConfig expand_preset(std::string_view name);
}

#endif
