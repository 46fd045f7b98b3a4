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

#ifndef bfmimo_stochastic_H
#define bfmimo_stochastic_H

#include "bfmimo/model.hpp"
#include "bfmimo/rng.hpp"

#include <armadillo>
#include <stdexcept>
#include <string>
#include <variant>

namespace bfmimo
{
    // Thrown when a factorization or eigen iteration cannot complete.
    class numerical_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    enum class CorrelationMode
    {
        none,      // entries i.i.d. across resource blocks
        time,      // columns of the (t, f) grid ~ CN(0, Sigma_col), Doppler spread
        frequency, // rows of the (t, f) grid ~ CN(0, Sigma_row), delay spread
    };

    struct ExponentialCorrelation
    {
        double rho = 0.0; // Sigma[a, b] = rho^|a - b|, rho in [0, 1)
        bool operator==(const ExponentialCorrelation &) const = default;
    };

    struct CustomCorrelation
    {
        arma::cx_mat matrix;
        bool operator==(const CustomCorrelation &o) const;
    };

    struct CorrelationSpec
    {
        CorrelationMode mode = CorrelationMode::none;
        std::variant<ExponentialCorrelation, CustomCorrelation> model = ExponentialCorrelation{};
        arma::uword length = 1; // t_max for time, f_max for frequency

        void validate() const;
        bool operator==(const CorrelationSpec &) const = default;
    };

    std::string to_string(CorrelationMode mode);

    // Correlated zero-mean, unit-variance complex Gaussian values of one
    // (antenna, user, cluster) link across the resource grid.
    struct QGrid
    {
        arma::cx_mat values; // t_max x f_max
    };

    // Hermitian PSD covariance with unit diagonal. A custom matrix is
    // rejected when it is not Hermitian, not unit-diagonal, or has an
    // eigenvalue below -1e-10.
    arma::cx_mat build_covariance(const CorrelationSpec &spec);

    // Lower Cholesky factor with a 1e-12 diagonal jitter. Pivots in
    // [-1e-10, 0] are clamped to zero; anything lower throws numerical_error.
    arma::cx_mat cholesky(const arma::cx_mat &sigma);

    // Reusable sampler: factorizes the covariance once.
    class QSampler
    {
    public:
        QSampler(const CorrelationSpec &spec, const ResourceGrid &grid);

        QGrid sample(RandomStream &rng) const;

        const arma::cx_mat &factor() const { return factor_; }

    private:
        CorrelationMode mode_;
        arma::uword t_max_;
        arma::uword f_max_;
        arma::cx_mat factor_;
    };

    QGrid sample_q_grid(const CorrelationSpec &spec, const ResourceGrid &grid, RandomStream &rng);
}

#endif
