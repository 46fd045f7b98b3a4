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

#include "bfmimo/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bfmimo
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
    }

    void ArrayGeometry::validate() const
    {
        if (n_antennas < 1)
            throw std::invalid_argument("n_antennas must be at least 1.");
        if (!(spacing_ratio > 0.0) || !std::isfinite(spacing_ratio))
            throw std::invalid_argument("spacing_ratio must be a positive finite number.");
    }

    MeanPower::MeanPower(double scalar) : values_{scalar} {}

    MeanPower::MeanPower(std::vector<double> profile) : values_(std::move(profile))
    {
        if (values_.empty())
            throw std::invalid_argument("mean_power profile cannot be empty.");
    }

    double MeanPower::at(arma::uword antenna) const
    {
        return values_.size() == 1 ? values_[0] : values_.at(antenna);
    }

    void ClusterSpec::validate(arma::uword n_antennas) const
    {
        if (direction)
        {
            const double th = *direction;
            if (!std::isfinite(th) || th < 0.0 || th >= std::numbers::pi)
                throw std::invalid_argument("direction must lie in [0, pi), got " + std::to_string(th) + ".");
        }
        if (!(spread_fraction >= 0.0 && spread_fraction <= 1.0))
            throw std::invalid_argument("spread_fraction must lie in [0, 1], got " + std::to_string(spread_fraction) + ".");

        const auto &pw = mean_power.values();
        if (pw.size() != 1 && pw.size() != n_antennas)
            throw std::invalid_argument("mean_power must be a scalar or a vector of length n_antennas (" +
                                        std::to_string(n_antennas) + "), got length " + std::to_string(pw.size()) + ".");
        for (double b : pw)
            if (!(b > 0.0) || !std::isfinite(b))
                throw std::invalid_argument("mean_power entries must be positive and finite.");
    }

    void UserSpec::validate(arma::uword n_antennas) const
    {
        if (clusters.empty())
            throw std::invalid_argument("a user needs at least one cluster.");
        for (const auto &c : clusters)
            c.validate(n_antennas);
    }

    double UserSpec::total_power(arma::uword antenna) const
    {
        double total = 0.0;
        for (const auto &c : clusters)
            total += c.mean_power.at(antenna);
        return total;
    }

    void ResourceGrid::validate() const
    {
        if (t_max < 1 || f_max < 1 || symbols_per_rb < 1)
            throw std::invalid_argument("t_max, f_max and symbols_per_rb must all be at least 1.");
    }

    double phase_slope(double theta, double spacing_ratio)
    {
        return two_pi * spacing_ratio * std::cos(theta);
    }

    arma::vec phase_ramp(double theta, const ArrayGeometry &geometry)
    {
        geometry.validate();
        const double slope = phase_slope(theta, geometry.spacing_ratio);

        arma::vec phi(geometry.n_antennas);
        for (arma::uword i = 0; i < geometry.n_antennas; ++i)
        {
            double v = std::fmod(slope * static_cast<double>(i), two_pi);
            if (v < 0.0)
                v += two_pi;
            if (v >= two_pi) // -tiny + 2*pi can round up to 2*pi
                v = 0.0;
            phi[i] = v;
        }
        return phi;
    }

    double spread_to_std(double beta, double spread_fraction)
    {
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw std::invalid_argument("beta must be positive and finite.");
        if (!(spread_fraction >= 0.0 && spread_fraction <= 1.0))
            throw std::invalid_argument("spread_fraction must lie in [0, 1].");
        return spread_fraction * std::sqrt(beta);
    }

    SpatialPair build_spatial_pair(const ClusterSpec &cluster, const ArrayGeometry &geometry,
                                   RandomStream &direction_rng)
    {
        geometry.validate();
        cluster.validate(geometry.n_antennas);

        const double theta = cluster.direction ? *cluster.direction
                                               : std::numbers::pi * direction_rng.uniform();
        const arma::vec phi = phase_ramp(theta, geometry);

        const arma::uword n = geometry.n_antennas;
        SpatialPair pair;
        pair.theta = theta;
        pair.p.set_size(n);
        pair.r.set_size(n);
        for (arma::uword i = 0; i < n; ++i)
        {
            const double beta = cluster.mean_power.at(i);
            const double r = spread_to_std(beta, cluster.spread_fraction);
            const double mag = std::sqrt(std::max(beta - r * r, 0.0));
            pair.r[i] = r;
            pair.p[i] = std::polar(mag, phi[i]);
        }
        return pair;
    }
}
