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

#ifndef bfmimo_analytics_H
#define bfmimo_analytics_H

#include "bfmimo/assembly.hpp"

#include <armadillo>
#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace bfmimo
{
    // G = (1/N) H^H H and its partition into user cross-correlations
    // (off-diagonal magnitudes, one per unordered user pair i < j, row-major)
    // and per-user gains (diagonal).
    struct GramStats
    {
        arma::cx_mat g;
        std::vector<double> offdiag_mags;
        arma::vec diag;
    };

    GramStats gram(const ChannelBlock &block);

    // Eigenvalues of a Hermitian matrix in ascending order, by cyclic Jacobi
    // rotations. Stops once the off-diagonal Frobenius norm is below
    // 1e-12 * ||G||_F; throws numerical_error after 100 sweeps and
    // std::invalid_argument on non-Hermitian input (tolerance 1e-10).
    arma::vec eigenvalues_hermitian(const arma::cx_mat &g);

    // Right-continuous empirical distribution function.
    class EmpiricalCDF
    {
    public:
        explicit EmpiricalCDF(std::vector<double> samples);

        // (#samples <= x) / n
        double operator()(double x) const;

        // Smallest sample x with F(x) >= p, p in (0, 1].
        double quantile(double p) const;
        double iqr() const { return quantile(0.75) - quantile(0.25); }

        // One (value, F(value)) pair per distinct sample value.
        std::vector<std::pair<double, double>> steps() const;

        std::size_t size() const { return sorted_.size(); }
        const std::vector<double> &sorted() const { return sorted_; }

    private:
        std::vector<double> sorted_;
    };

    EmpiricalCDF empirical_cdf(std::vector<double> samples);

    // rho_ij = mean over blocks of |h_i^H h_j| / (||h_i|| ||h_j||), unit diagonal.
    struct UserCorrelationMatrix
    {
        arma::mat rho;

        double mean_offdiag() const;
    };

    // Running sum of normalized inner products; add() throws on a zero-norm
    // channel column.
    class UserCorrelationAccumulator
    {
    public:
        void add(const ChannelBlock &block);
        std::size_t count() const { return count_; }
        UserCorrelationMatrix result() const;

    private:
        arma::mat sum_;
        std::size_t count_ = 0;
    };

    UserCorrelationMatrix user_correlation(std::span<const ChannelBlock> blocks);

    // Uniform square bins symmetric about the origin, spanning the largest
    // |re| or |im| of the samples. counts(a, b) covers re bin a, im bin b.
    struct Histogram2D
    {
        arma::vec re_edges;
        arma::vec im_edges;
        arma::umat counts;

        arma::uword bins() const { return counts.n_rows; }
        double re_center(arma::uword a) const { return 0.5 * (re_edges[a] + re_edges[a + 1]); }
        double im_center(arma::uword b) const { return 0.5 * (im_edges[b] + im_edges[b + 1]); }
        arma::uword total() const { return arma::accu(counts); }
    };

    Histogram2D coefficient_histogram(std::span<const std::complex<double>> values, arma::uword bins_per_axis);

    struct Histogram1D
    {
        arma::vec edges;
        arma::uvec counts;

        double center(arma::uword a) const { return 0.5 * (edges[a] + edges[a + 1]); }
    };

    // Bins [0, hi] uniformly with hi = max(1, largest sample).
    Histogram1D magnitude_histogram(std::span<const double> values, arma::uword bins);

    class PowerProfileAccumulator
    {
    public:
        void add(const ChannelBlock &block);
        std::size_t count() const { return count_; }
        arma::mat result() const;

    private:
        arma::mat sum_;
        std::size_t count_ = 0;
    };

    // Per-antenna, per-user mean of |h_ij|^2 over all blocks (N x K).
    arma::mat power_profile(std::span<const ChannelBlock> blocks);

    // Fraction of off-diagonal Gram magnitudes above the threshold.
    double offdiag_exceedance(std::span<const GramStats> stats, double threshold);

    // RMS deviation of channel coefficients from their spatial mean,
    // sqrt(mean_i |h_i - p_i|^2); estimates the spatial standard deviation.
    double spatial_spread(const arma::cx_vec &h, const arma::cx_vec &p);
}

#endif
