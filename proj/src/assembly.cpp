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

#include "bfmimo/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bfmimo
{
    LinkGrids::LinkGrids(arma::uword n_antennas, const std::vector<arma::uword> &clusters_per_user)
        : n_antennas_(n_antennas), clusters_(clusters_per_user)
    {
        arma::uword total = 0;
        offsets_.reserve(clusters_.size());
        for (arma::uword c : clusters_)
        {
            offsets_.push_back(total);
            total += c;
        }
        grids_.resize(total * n_antennas_);
    }

    arma::uword LinkGrids::index(arma::uword antenna, arma::uword user, arma::uword cluster) const
    {
        if (antenna >= n_antennas_ || user >= clusters_.size() || cluster >= clusters_[user])
            throw std::out_of_range("LinkGrids: link index out of range.");
        return (offsets_[user] + cluster) * n_antennas_ + antenna;
    }

    QGrid &LinkGrids::at(arma::uword antenna, arma::uword user, arma::uword cluster)
    {
        return grids_[index(antenna, user, cluster)];
    }

    const QGrid &LinkGrids::at(arma::uword antenna, arma::uword user, arma::uword cluster) const
    {
        return grids_[index(antenna, user, cluster)];
    }

    ChannelBlock assemble_channel(const ClusterPairs &pairs, const LinkGrids &grids, arma::uword t, arma::uword f)
    {
        const arma::uword n = grids.n_antennas();
        const arma::uword k = grids.n_users();
        if (pairs.size() != k)
            throw std::invalid_argument("assemble_channel: " + std::to_string(pairs.size()) + " users in pairs, " +
                                        std::to_string(k) + " in grids.");

        ChannelBlock block{arma::cx_mat(n, k, arma::fill::zeros)};
        for (arma::uword j = 0; j < k; ++j)
        {
            if (pairs[j].size() != grids.n_clusters(j))
                throw std::invalid_argument("assemble_channel: cluster count mismatch for user " + std::to_string(j) + ".");
            for (arma::uword c = 0; c < pairs[j].size(); ++c)
            {
                const SpatialPair &sp = pairs[j][c];
                if (sp.p.n_elem != n || sp.r.n_elem != n)
                    throw std::invalid_argument("assemble_channel: spatial pair length does not match n_antennas.");
                for (arma::uword i = 0; i < n; ++i)
                {
                    const arma::cx_mat &q = grids.at(i, j, c).values;
                    if (t >= q.n_rows || f >= q.n_cols)
                        throw std::invalid_argument("assemble_channel: resource block outside the grid.");
                    block.h(i, j) += sp.p[i] + sp.r[i] * q(t, f);
                }
            }
        }
        return block;
    }

    UplinkFrame::UplinkFrame(arma::cx_mat y, arma::cx_mat x, double noise_var)
        : y_(std::move(y)), x_(std::move(x)), noise_var_(noise_var)
    {
        if (!(noise_var_ >= 0.0))
            throw std::invalid_argument("noise variance must be nonnegative.");
        if (y_.n_cols != x_.n_cols)
            throw std::invalid_argument("UplinkFrame: y and x must have the same number of symbols.");

        bool unit_modulus = true;
        double power = 0.0;
        for (const auto &s : x_)
        {
            const double m = std::norm(s);
            unit_modulus = unit_modulus && std::abs(m - 1.0) <= 1e-12;
            power += m;
        }
        if (!unit_modulus && x_.n_cols >= 100 && x_.n_elem > 0)
        {
            power /= static_cast<double>(x_.n_elem);
            if (std::abs(power - 1.0) > 0.01)
                throw std::invalid_argument("UplinkFrame: symbol energy " + std::to_string(power) +
                                            " deviates from 1 by more than 1%.");
        }
    }

    UplinkFrame synthesize_uplink(const ChannelBlock &h, const arma::cx_mat &x, double noise_var, RandomStream &rng)
    {
        if (!(noise_var >= 0.0))
            throw std::invalid_argument("synthesize_uplink: noise variance must be nonnegative.");
        if (x.n_rows != h.n_users())
            throw std::invalid_argument("synthesize_uplink: x has " + std::to_string(x.n_rows) + " rows, channel has " +
                                        std::to_string(h.n_users()) + " users.");
        if (x.n_cols < 1)
            throw std::invalid_argument("synthesize_uplink: at least one symbol is required.");

        const arma::uword n = h.n_antennas();
        const arma::uword k = h.n_users();
        arma::cx_mat y(n, x.n_cols);
        for (arma::uword t = 0; t < x.n_cols; ++t)
            for (arma::uword i = 0; i < n; ++i)
            {
                std::complex<double> acc = 0.0;
                for (arma::uword j = 0; j < k; ++j)
                    acc += h.h(i, j) * x(j, t);
                if (noise_var > 0.0)
                    acc += rng.complex_normal(noise_var);
                y(i, t) = acc;
            }
        return UplinkFrame(std::move(y), x, noise_var);
    }

    arma::cx_mat qpsk_symbols(arma::uword n_users, arma::uword n_symbols, RandomStream &rng)
    {
        const double a = 1.0 / std::sqrt(2.0);
        arma::cx_mat x(n_users, n_symbols);
        for (arma::uword k = 0; k < x.n_elem; ++k)
        {
            const std::uint64_t bits = rng.next_u64();
            x[k] = {(bits & 1u) ? -a : a, (bits & 2u) ? -a : a};
        }
        return x;
    }

    ChannelModel::ChannelModel(ArrayGeometry geometry, std::vector<UserSpec> users, ResourceGrid grid,
                               const CorrelationSpec &correlation, std::uint64_t seed)
        : geometry_(geometry), users_(std::move(users)), grid_(grid), sampler_(correlation, grid), root_(seed)
    {
        geometry_.validate();
        if (users_.empty())
            throw std::invalid_argument("at least one user is required.");
        for (const auto &u : users_)
            u.validate(geometry_.n_antennas);
    }

    Realization ChannelModel::realize(std::uint64_t index) const
    {
        const RandomStream stream = root_.substream(index);
        const RandomStream directions = stream.substream(stream_tag::direction);
        const RandomStream fading = stream.substream(stream_tag::fading);

        const arma::uword n = geometry_.n_antennas;
        Realization out;
        out.f_max = grid_.f_max;
        out.pairs.resize(users_.size());

        std::vector<arma::uword> cluster_counts;
        for (arma::uword j = 0; j < users_.size(); ++j)
        {
            const auto &clusters = users_[j].clusters;
            cluster_counts.push_back(clusters.size());
            const RandomStream user_dirs = directions.substream(j);
            for (arma::uword c = 0; c < clusters.size(); ++c)
            {
                RandomStream s = user_dirs.substream(c);
                out.pairs[j].push_back(build_spatial_pair(clusters[c], geometry_, s));
            }
        }

        LinkGrids grids(n, cluster_counts);
        for (arma::uword j = 0; j < users_.size(); ++j)
        {
            const RandomStream user_fading = fading.substream(j);
            for (arma::uword c = 0; c < cluster_counts[j]; ++c)
            {
                const RandomStream cluster_fading = user_fading.substream(c);
                for (arma::uword i = 0; i < n; ++i)
                {
                    RandomStream s = cluster_fading.substream(i);
                    grids.at(i, j, c) = sampler_.sample(s);
                }
            }
        }

        out.blocks.reserve(grid_.n_blocks());
        for (arma::uword t = 0; t < grid_.t_max; ++t)
            for (arma::uword f = 0; f < grid_.f_max; ++f)
                out.blocks.push_back(assemble_channel(out.pairs, grids, t, f));
        return out;
    }

    UplinkFrame ChannelModel::uplink(const Realization &realization, std::uint64_t index, arma::uword t,
                                     arma::uword f, double noise_var) const
    {
        const RandomStream stream = root_.substream(index);
        const std::uint64_t rb = t * grid_.f_max + f;
        RandomStream sym = stream.substream(stream_tag::symbols).substream(rb);
        RandomStream noise = stream.substream(stream_tag::noise).substream(rb);
        const arma::cx_mat x = qpsk_symbols(users_.size(), grid_.symbols_per_rb, sym);
        return synthesize_uplink(realization.block(t, f), x, noise_var, noise);
    }
}
