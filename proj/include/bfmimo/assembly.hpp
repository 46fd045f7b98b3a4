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

#ifndef bfmimo_assembly_H
#define bfmimo_assembly_H

#include "bfmimo/model.hpp"
#include "bfmimo/rng.hpp"
#include "bfmimo/stochastic.hpp"

#include <armadillo>
#include <cstdint>
#include <vector>

namespace bfmimo
{
    // N x K channel of one resource block. Constant over the block.
    struct ChannelBlock
    {
        arma::cx_mat h;

        arma::uword n_antennas() const { return h.n_rows; }
        arma::uword n_users() const { return h.n_cols; }
    };

    // Spatial pairs indexed [user][cluster].
    using ClusterPairs = std::vector<std::vector<SpatialPair>>;

    // Q grids of every (antenna, user, cluster) link. Users may have
    // different cluster counts.
    class LinkGrids
    {
    public:
        LinkGrids(arma::uword n_antennas, const std::vector<arma::uword> &clusters_per_user);

        QGrid &at(arma::uword antenna, arma::uword user, arma::uword cluster);
        const QGrid &at(arma::uword antenna, arma::uword user, arma::uword cluster) const;

        arma::uword n_antennas() const { return n_antennas_; }
        arma::uword n_users() const { return clusters_.size(); }
        arma::uword n_clusters(arma::uword user) const { return clusters_.at(user); }

    private:
        arma::uword index(arma::uword antenna, arma::uword user, arma::uword cluster) const;

        arma::uword n_antennas_;
        std::vector<arma::uword> clusters_;
        std::vector<arma::uword> offsets_;
        std::vector<QGrid> grids_;
    };

    // h_ij(t, f) = sum_c [ p_ijc + r_ijc * q_ijc(t, f) ]. No normalization.
    ChannelBlock assemble_channel(const ClusterPairs &pairs, const LinkGrids &grids,
                                  arma::uword t, arma::uword f);

    // Received frame Y = H X + W of one resource block.
    class UplinkFrame
    {
    public:
        // Checks the symbol energy of x: unit-modulus alphabets pass exactly;
        // otherwise, for T >= 100 the sample mean power must be within 1% of one.
        UplinkFrame(arma::cx_mat y, arma::cx_mat x, double noise_var);

        const arma::cx_mat &y() const { return y_; }
        const arma::cx_mat &x() const { return x_; }
        double noise_var() const { return noise_var_; }

    private:
        arma::cx_mat y_;
        arma::cx_mat x_;
        double noise_var_;
    };

    // y = h * x + w, w i.i.d. CN(0, noise_var), drawn column by column.
    UplinkFrame synthesize_uplink(const ChannelBlock &h, const arma::cx_mat &x, double noise_var,
                                  RandomStream &rng);

    // K x T unit-modulus QPSK symbols, (+-1 +-j)/sqrt(2).
    arma::cx_mat qpsk_symbols(arma::uword n_users, arma::uword n_symbols, RandomStream &rng);

    // Substream tags under a realization stream.
    namespace stream_tag
    {
        inline constexpr std::uint64_t direction = 1;
        inline constexpr std::uint64_t fading = 2;
        inline constexpr std::uint64_t noise = 3;
        inline constexpr std::uint64_t symbols = 4;
    }

    struct Realization
    {
        ClusterPairs pairs;
        std::vector<ChannelBlock> blocks; // t-major: index t * f_max + f
        arma::uword f_max = 1;

        const ChannelBlock &block(arma::uword t, arma::uword f) const { return blocks.at(t * f_max + f); }
    };

    // Generates channel realizations of a fixed scenario.
    //
    // Realization r uses the stream root.substream(r); directions of user j,
    // cluster c come from .substream(direction).substream(j).substream(c) and
    // the Q grid of link (i, j, c) from .substream(fading).substream(j)
    // .substream(c).substream(i). Draws therefore do not depend on N, on the
    // spread fractions, or on which thread produced the realization.
    class ChannelModel
    {
    public:
        ChannelModel(ArrayGeometry geometry, std::vector<UserSpec> users, ResourceGrid grid,
                     const CorrelationSpec &correlation, std::uint64_t seed);

        Realization realize(std::uint64_t index) const;

        // Uplink frame of one block, with QPSK symbols and noise drawn from
        // the realization's symbol/noise substreams.
        UplinkFrame uplink(const Realization &realization, std::uint64_t index, arma::uword t, arma::uword f,
                           double noise_var) const;

        const ArrayGeometry &geometry() const { return geometry_; }
        const std::vector<UserSpec> &users() const { return users_; }
        const ResourceGrid &grid() const { return grid_; }

    private:
        ArrayGeometry geometry_;
        std::vector<UserSpec> users_;
        ResourceGrid grid_;
        QSampler sampler_;
        RandomStream root_;
    };
}

#endif
