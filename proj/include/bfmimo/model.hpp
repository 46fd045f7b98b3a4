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

#ifndef bfmimo_model_H
#define bfmimo_model_H

#include "bfmimo/rng.hpp"

#include <armadillo>
#include <cstddef>
#include <optional>
#include <vector>

namespace bfmimo
{
    // Uniform linear array at the base station.
    struct ArrayGeometry
    {
        arma::uword n_antennas = 1; // N
        double spacing_ratio = 0.25; // element spacing in wavelengths (d / lambda)

        void validate() const; // throws std::invalid_argument
        bool operator==(const ArrayGeometry &) const = default;
    };

    // Average received power of one cluster on one BS-MT link. Either one
    // value shared by every antenna, or a per-antenna profile of length N.
    class MeanPower
    {
    public:
        MeanPower() = default;
        MeanPower(double scalar);                     // NOLINT: implicit by intent
        explicit MeanPower(std::vector<double> profile);

        bool is_profile() const { return values_.size() != 1; }
        double at(arma::uword antenna) const;
        const std::vector<double> &values() const { return values_; }

        bool operator==(const MeanPower &) const = default;

    private:
        std::vector<double> values_ = {1.0};
    };

    // One scatterer cluster as seen from the BS for a single user.
    struct ClusterSpec
    {
        std::optional<double> direction; // radians in [0, pi) from the array axis; empty = random
        double spread_fraction = 1.0;    // 0 = point source, 1 = isotropic
        MeanPower mean_power;

        void validate(arma::uword n_antennas) const;
        bool operator==(const ClusterSpec &) const = default;
    };

    struct UserSpec
    {
        std::vector<ClusterSpec> clusters;

        void validate(arma::uword n_antennas) const;
        double total_power(arma::uword antenna) const; // beta_ij = sum_c beta_ijc
        bool operator==(const UserSpec &) const = default;
    };

    // Time-frequency resources: t_max x f_max resource blocks, T symbols each.
    struct ResourceGrid
    {
        arma::uword t_max = 1;
        arma::uword f_max = 1;
        arma::uword symbols_per_rb = 1;

        void validate() const;
        arma::uword n_blocks() const { return t_max * f_max; }
        bool operator==(const ResourceGrid &) const = default;
    };

    // Column of (P_c, R_c) for one user and one cluster.
    struct SpatialPair
    {
        arma::cx_vec p; // spatial mean per antenna
        arma::vec r;    // spatial standard deviation per antenna, >= 0
        double theta = 0.0; // direction used for the phase ramp
    };

    // Deterministic antenna phase relation: phi_i = 2*pi*(d/lambda)*cos(theta)*i mod 2*pi,
    // i = 0..N-1, mapped into [0, 2*pi).
    arma::vec phase_ramp(double theta, const ArrayGeometry &geometry);

    // Slope of the phase ramp in radians per antenna, before wrapping.
    double phase_slope(double theta, double spacing_ratio);

    // Spatial standard deviation for a spread fraction: r = s * sqrt(beta).
    double spread_to_std(double beta, double spread_fraction);

    // Builds the spatial mean / deviation pair of one cluster. A random
    // direction is drawn uniformly on [0, pi) from direction_rng; fixed
    // directions leave the stream untouched.
    SpatialPair build_spatial_pair(const ClusterSpec &cluster, const ArrayGeometry &geometry,
                                   RandomStream &direction_rng);
}

#endif
