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

// Scenario presets.
//
// Conventions shared by the three-cluster presets:
//   cluster power split   {0.5, 0.3, 0.2} of a unit total per link
//   NLOS spread fractions {0.6, 0.8, 1.0}
//   LOS spread fractions  {0.05, 0.1, 0.15}
//   directions            uniform on [0, pi), redrawn every realization
// paper-A/B/C/D differ only in the antenna count and the spread fractions.

#include "bfmimo/config.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace bfmimo
{
    namespace
    {
        constexpr std::array<double, 3> cluster_power = {0.5, 0.3, 0.2};
        constexpr std::array<double, 3> nlos_spread = {0.6, 0.8, 1.0};
        constexpr std::array<double, 3> los_spread = {0.05, 0.1, 0.15};

        constexpr std::uint64_t preset_seed = 1;
        constexpr std::uint64_t preset_realizations = 1000;

        UserSpec three_cluster_user(const std::array<double, 3> &spread)
        {
            UserSpec u;
            for (std::size_t c = 0; c < 3; ++c)
                u.clusters.push_back(ClusterSpec{std::nullopt, spread[c], MeanPower(cluster_power[c])});
            return u;
        }

        UserSpec single_cluster_user(double spread)
        {
            return UserSpec{{ClusterSpec{std::nullopt, spread, MeanPower(1.0)}}};
        }

        ScenarioConfig base(arma::uword n_antennas, std::vector<UserSpec> users, std::vector<Artifact> outputs,
                            std::uint64_t realizations = preset_realizations)
        {
            ScenarioConfig c;
            c.seed = preset_seed;
            c.geometry = ArrayGeometry{n_antennas, 0.25};
            c.users = std::move(users);
            c.realizations = realizations;
            c.outputs = std::move(outputs);
            return c;
        }

        std::vector<UserSpec> repeat(const UserSpec &u, std::size_t k)
        {
            return std::vector<UserSpec>(k, u);
        }

        // Per-antenna power profiles along the array, no shadowing involved:
        // the dominant cluster ramps linearly 0.5 -> 1.5 (reversed for odd
        // users), the second ramps the other way, the third ripples once
        // over the aperture with a user-dependent phase.
        std::vector<UserSpec> fig6_users(arma::uword n, std::size_t k)
        {
            std::vector<UserSpec> users;
            const double span = n > 1 ? static_cast<double>(n - 1) : 1.0;
            for (std::size_t j = 0; j < k; ++j)
            {
                std::array<std::vector<double>, 3> profile;
                for (arma::uword i = 0; i < n; ++i)
                {
                    const double x = static_cast<double>(i) / span;
                    const double up = 0.5 + x;
                    const double down = 1.5 - x;
                    const double ripple = 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * x +
                                                               2.0 * std::numbers::pi * static_cast<double>(j) /
                                                                   static_cast<double>(k));
                    profile[0].push_back(cluster_power[0] * (j % 2 == 0 ? up : down));
                    profile[1].push_back(cluster_power[1] * (j % 2 == 0 ? down : up));
                    profile[2].push_back(cluster_power[2] * ripple);
                }
                UserSpec u;
                for (std::size_t c = 0; c < 3; ++c)
                    u.clusters.push_back(ClusterSpec{std::nullopt, nlos_spread[c], MeanPower(std::move(profile[c]))});
                users.push_back(std::move(u));
            }
            return users;
        }
    }

    std::vector<std::string> preset_names()
    {
        return {"iid", "nlos", "los", "paper-A", "paper-B", "paper-C", "paper-D",
                "fig2", "fig3", "fig4", "fig5", "fig6"};
    }

    ScenarioConfig expand_preset(std::string_view name)
    {
        using A = Artifact;
        const std::vector<Artifact> matrix_outputs = {A::correlation_matrix, A::eigencdf, A::cross_correlation};

        ScenarioConfig c;
        if (name == "iid")
            c = base(128, repeat(single_cluster_user(1.0), 6),
                     {A::eigencdf, A::cross_correlation, A::correlation_matrix, A::histogram, A::power_profile});
        else if (name == "nlos")
            c = base(128, repeat(three_cluster_user(nlos_spread), 6), {A::eigencdf, A::correlation_matrix, A::cross_correlation});
        else if (name == "los")
            c = base(128, repeat(three_cluster_user(los_spread), 6), {A::eigencdf, A::correlation_matrix, A::cross_correlation});
        else if (name == "paper-A")
            c = base(128, repeat(three_cluster_user(nlos_spread), 3), matrix_outputs);
        else if (name == "paper-B")
            c = base(128, repeat(three_cluster_user(los_spread), 3), matrix_outputs);
        else if (name == "paper-C")
            c = base(20, repeat(three_cluster_user(nlos_spread), 3), matrix_outputs);
        else if (name == "paper-D")
            c = base(20, repeat(three_cluster_user(los_spread), 3), matrix_outputs);
        else if (name == "fig2")
            c = base(128, {single_cluster_user(0.1)}, {A::histogram});
        else if (name == "fig3")
            c = base(128, {single_cluster_user(0.5)}, {A::histogram});
        else if (name == "fig4")
            c = base(128, repeat(single_cluster_user(0.1), 2), {A::cross_correlation}, 2000);
        else if (name == "fig5")
            c = base(20, repeat(three_cluster_user(nlos_spread), 6), {A::eigencdf});
        else if (name == "fig6")
            c = base(128, fig6_users(128, 6), {A::power_profile});
        else
        {
            std::string known;
            for (const auto &n : preset_names())
                known += (known.empty() ? "" : ", ") + n;
            throw config_error("preset: unknown preset '" + std::string(name) + "' (known: " + known + ")");
        }
        return c;
    }
}
