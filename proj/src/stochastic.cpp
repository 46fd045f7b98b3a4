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

#include "bfmimo/stochastic.hpp"

#include <cmath>

namespace bfmimo
{
    namespace
    {
        constexpr double hermitian_tol = 1e-12;
        constexpr double psd_tol = 1e-10;
        constexpr double cholesky_jitter = 1e-12;

        bool is_hermitian(const arma::cx_mat &a, double tol)
        {
            if (a.n_rows != a.n_cols)
                return false;
            for (arma::uword j = 0; j < a.n_cols; ++j)
                for (arma::uword i = j; i < a.n_rows; ++i)
                    if (std::abs(a(i, j) - std::conj(a(j, i))) > tol)
                        return false;
            return true;
        }

        // y = L * z for lower-triangular L
        void lower_times(const arma::cx_mat &L, const arma::cx_vec &z, arma::cx_vec &y)
        {
            const arma::uword n = L.n_rows;
            for (arma::uword i = 0; i < n; ++i)
            {
                std::complex<double> acc = 0.0;
                for (arma::uword k = 0; k <= i; ++k)
                    acc += L(i, k) * z[k];
                y[i] = acc;
            }
        }
    }

    bool CustomCorrelation::operator==(const CustomCorrelation &o) const
    {
        if (matrix.n_rows != o.matrix.n_rows || matrix.n_cols != o.matrix.n_cols)
            return false;
        for (arma::uword k = 0; k < matrix.n_elem; ++k)
            if (matrix[k] != o.matrix[k])
                return false;
        return true;
    }

    std::string to_string(CorrelationMode mode)
    {
        switch (mode)
        {
        case CorrelationMode::none:
            return "none";
        case CorrelationMode::time:
            return "time";
        case CorrelationMode::frequency:
            return "frequency";
        }
        return "none";
    }

    void CorrelationSpec::validate() const
    {
        if (length < 1)
            throw std::invalid_argument("correlation length must be at least 1.");

        if (const auto *e = std::get_if<ExponentialCorrelation>(&model))
        {
            if (!(e->rho >= 0.0 && e->rho < 1.0))
                throw std::invalid_argument("exponential rho must lie in [0, 1), got " + std::to_string(e->rho) + ".");
            return;
        }

        const arma::cx_mat &m = std::get<CustomCorrelation>(model).matrix;
        if (m.n_rows != length || m.n_cols != length)
            throw std::invalid_argument("custom correlation matrix must be " + std::to_string(length) + "x" +
                                        std::to_string(length) + ".");
        if (!m.is_finite())
            throw std::invalid_argument("custom correlation matrix has non-finite entries.");
        if (!is_hermitian(m, hermitian_tol))
            throw std::invalid_argument("custom correlation matrix is not Hermitian.");
        for (arma::uword i = 0; i < length; ++i)
            if (std::abs(m(i, i) - 1.0) > hermitian_tol)
                throw std::invalid_argument("custom correlation matrix must have a unit diagonal.");

        arma::vec eigval;
        if (!arma::eig_sym(eigval, m))
            throw std::invalid_argument("custom correlation matrix: eigen decomposition failed.");
        if (eigval.min() < -psd_tol)
            throw std::invalid_argument("custom correlation matrix is not positive semidefinite (min eigenvalue " +
                                        std::to_string(eigval.min()) + ").");
    }

    arma::cx_mat build_covariance(const CorrelationSpec &spec)
    {
        spec.validate();
        if (const auto *e = std::get_if<ExponentialCorrelation>(&spec.model))
        {
            arma::cx_mat sigma(spec.length, spec.length);
            for (arma::uword b = 0; b < spec.length; ++b)
                for (arma::uword a = 0; a < spec.length; ++a)
                {
                    const arma::uword lag = a > b ? a - b : b - a;
                    sigma(a, b) = lag == 0 ? 1.0 : std::pow(e->rho, static_cast<double>(lag));
                }
            return sigma;
        }
        return std::get<CustomCorrelation>(spec.model).matrix;
    }

    arma::cx_mat cholesky(const arma::cx_mat &sigma)
    {
        if (sigma.n_rows != sigma.n_cols)
            throw std::invalid_argument("cholesky: matrix must be square.");
        const double scale = std::max(1.0, arma::abs(sigma).max());
        if (!is_hermitian(sigma, psd_tol * scale))
            throw std::invalid_argument("cholesky: matrix must be Hermitian.");

        const arma::uword n = sigma.n_rows;
        arma::cx_mat L(n, n, arma::fill::zeros);
        for (arma::uword j = 0; j < n; ++j)
        {
            double pivot = sigma(j, j).real() + cholesky_jitter;
            for (arma::uword k = 0; k < j; ++k)
                pivot -= std::norm(L(j, k));

            if (pivot < -psd_tol)
                throw numerical_error("cholesky: negative pivot " + std::to_string(pivot) + " at row " +
                                      std::to_string(j) + "; matrix is not positive semidefinite.");
            if (pivot <= 0.0)
                continue; // column stays zero

            const double d = std::sqrt(pivot);
            L(j, j) = d;
            for (arma::uword i = j + 1; i < n; ++i)
            {
                std::complex<double> acc = sigma(i, j);
                for (arma::uword k = 0; k < j; ++k)
                    acc -= L(i, k) * std::conj(L(j, k));
                L(i, j) = acc / d;
            }
        }
        return L;
    }

    QSampler::QSampler(const CorrelationSpec &spec, const ResourceGrid &grid)
        : mode_(spec.mode), t_max_(grid.t_max), f_max_(grid.f_max)
    {
        grid.validate();
        if (mode_ == CorrelationMode::none)
            return;

        const arma::uword expected = mode_ == CorrelationMode::time ? grid.t_max : grid.f_max;
        if (spec.length != expected)
            throw std::invalid_argument("correlation length " + std::to_string(spec.length) + " does not match " +
                                        (mode_ == CorrelationMode::time ? "t_max " : "f_max ") +
                                        std::to_string(expected) + ".");
        factor_ = cholesky(build_covariance(spec));
    }

    QGrid QSampler::sample(RandomStream &rng) const
    {
        QGrid q;
        q.values.set_size(t_max_, f_max_);

        switch (mode_)
        {
        case CorrelationMode::none:
            for (arma::uword k = 0; k < q.values.n_elem; ++k)
                q.values[k] = rng.complex_normal();
            break;

        case CorrelationMode::time:
        {
            arma::cx_vec z(t_max_), y(t_max_);
            for (arma::uword f = 0; f < f_max_; ++f)
            {
                for (auto &v : z)
                    v = rng.complex_normal();
                lower_times(factor_, z, y);
                q.values.col(f) = y;
            }
            break;
        }

        case CorrelationMode::frequency:
        {
            arma::cx_vec z(f_max_), y(f_max_);
            for (arma::uword t = 0; t < t_max_; ++t)
            {
                for (auto &v : z)
                    v = rng.complex_normal();
                lower_times(factor_, z, y);
                q.values.row(t) = y.st();
            }
            break;
        }
        }
        return q;
    }

    QGrid sample_q_grid(const CorrelationSpec &spec, const ResourceGrid &grid, RandomStream &rng)
    {
        return QSampler(spec, grid).sample(rng);
    }
}
