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


#include <catch2/catch_amalgamated.hpp>
#include "bfmimo/stochastic.hpp"

#include <cmath>

using namespace bfmimo;

namespace
{
    CorrelationSpec exponential(CorrelationMode mode, double rho, arma::uword length)
    {
        return CorrelationSpec{mode, ExponentialCorrelation{rho}, length};
    }

    arma::cx_mat real_matrix(const arma::mat &m)
    {
        return arma::conv_to<arma::cx_mat>::from(m);
    }

    double max_abs(const arma::cx_mat &a)
    {
        return arma::abs(a).max();
    }

    // Sample covariance of columns (time) or rows (frequency) over many draws
    arma::cx_mat sample_covariance(const CorrelationSpec &spec, const ResourceGrid &grid, int draws,
                                   std::uint64_t seed)
    {
        const arma::uword n = spec.length;
        arma::cx_mat acc(n, n, arma::fill::zeros);
        std::size_t count = 0;
        QSampler sampler(spec, grid);
        RandomStream root(seed);
        for (int k = 0; k < draws; ++k)
        {
            RandomStream rng = root.substream(k);
            const QGrid q = sampler.sample(rng);
            if (spec.mode == CorrelationMode::time)
                for (arma::uword f = 0; f < grid.f_max; ++f, ++count)
                    acc += q.values.col(f) * q.values.col(f).t();
            else
                for (arma::uword t = 0; t < grid.t_max; ++t, ++count)
                    acc += q.values.row(t).st() * arma::conj(q.values.row(t));
        }
        return acc / double(count);
    }
}

TEST_CASE("build_covariance - Exponential and custom models")
{
    const arma::cx_mat i3 = build_covariance(exponential(CorrelationMode::time, 0.0, 3));
    CHECK(max_abs(i3 - arma::eye<arma::cx_mat>(3, 3)) == 0.0);

    const arma::cx_mat s = build_covariance(exponential(CorrelationMode::time, 0.5, 3));
    const arma::mat expect = {{1, .5, .25}, {.5, 1, .5}, {.25, .5, 1}};
    CHECK(arma::abs(arma::real(s) - expect).max() < 1e-15);
    CHECK(arma::abs(arma::imag(s)).max() == 0.0);

    CorrelationSpec bad{CorrelationMode::time, CustomCorrelation{real_matrix({{1, 2}, {2, 1}})}, 2};
    CHECK_THROWS_AS(build_covariance(bad), std::invalid_argument);

    CorrelationSpec diag2{CorrelationMode::time, CustomCorrelation{real_matrix({{2, 0}, {0, 1}})}, 2};
    CHECK_THROWS_AS(build_covariance(diag2), std::invalid_argument);

    arma::cx_mat nonherm = {{1, {0.2, 0.1}}, {{0.2, 0.1}, 1}};
    CHECK_THROWS_AS(build_covariance(CorrelationSpec{CorrelationMode::time, CustomCorrelation{nonherm}, 2}),
                    std::invalid_argument);

    arma::cx_mat herm = {{1, {0.2, 0.1}}, {{0.2, -0.1}, 1}};
    const arma::cx_mat h = build_covariance(CorrelationSpec{CorrelationMode::time, CustomCorrelation{herm}, 2});
    CHECK(max_abs(h - herm) == 0.0);

    CHECK_THROWS_AS(exponential(CorrelationMode::time, 1.0, 3).validate(), std::invalid_argument);
    CHECK_THROWS_AS(exponential(CorrelationMode::time, -0.1, 3).validate(), std::invalid_argument);
}

TEST_CASE("cholesky - Examples")
{
    const arma::cx_mat i3 = arma::eye<arma::cx_mat>(3, 3);
    CHECK(max_abs(cholesky(i3) - i3) < 1e-11);

    const arma::cx_mat a = real_matrix({{4, 2}, {2, 5}});
    const arma::cx_mat l = cholesky(a);
    const arma::cx_mat expect = real_matrix({{2, 0}, {1, 2}});
    CHECK(max_abs(l - expect) < 1e-11);
    CHECK(max_abs(l * l.t() - a) <= 1e-10 * 5.0);

    const arma::cx_mat ones(2, 2, arma::fill::ones);
    const arma::cx_mat lo = cholesky(ones);
    CHECK(std::abs(lo(0, 0) - 1.0) < 1e-11);
    CHECK(std::abs(lo(1, 0) - 1.0) < 1e-11);
    CHECK(std::abs(lo(0, 1)) == 0.0);
    CHECK(lo(1, 1).real() >= 0.0);
    CHECK(lo(1, 1).real() < 1e-5);
    CHECK(max_abs(lo * lo.t() - ones) <= 1e-10);

    const arma::cx_mat indefinite = real_matrix({{1, 2}, {2, 1}});
    CHECK_THROWS_AS(cholesky(indefinite), numerical_error);
}

TEST_CASE("cholesky - Factor correctness on random PSD matrices")
{
    RandomStream rng(77);
    for (int k = 0; k < 30; ++k)
    {
        const arma::uword n = 1 + arma::uword(rng.uniform() * 10);
        const arma::uword rank = 1 + arma::uword(rng.uniform() * n);
        arma::cx_mat b(n, rank);
        for (auto &v : b)
            v = rng.complex_normal();
        const arma::cx_mat sigma = b * b.t();
        const arma::cx_mat l = cholesky(sigma);
        CHECK(arma::trimatl(l).is_empty() == false);
        CHECK(max_abs(l - arma::trimatl(l)) == 0.0);
        for (arma::uword i = 0; i < n; ++i)
        {
            CHECK(l(i, i).imag() == 0.0);
            CHECK(l(i, i).real() >= 0.0);
        }
        CHECK(max_abs(l * l.t() - sigma) <= 1e-10 * max_abs(sigma));
    }
}

TEST_CASE("sample_q_grid - Dimension checks")
{
    RandomStream rng(1);
    CHECK_THROWS_AS(sample_q_grid(exponential(CorrelationMode::time, 0.5, 3), ResourceGrid{4, 2, 1}, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_q_grid(exponential(CorrelationMode::frequency, 0.5, 3), ResourceGrid{3, 2, 1}, rng),
                    std::invalid_argument);
    const QGrid q = sample_q_grid(exponential(CorrelationMode::frequency, 0.5, 2), ResourceGrid{3, 2, 1}, rng);
    CHECK(q.values.n_rows == 3);
    CHECK(q.values.n_cols == 2);
}

TEST_CASE("sample_q_grid - Uncorrelated marginal moments")
{
    RandomStream rng(123);
    const QGrid q = sample_q_grid(CorrelationSpec{}, ResourceGrid{100, 1000, 1}, rng);
    const double n = double(q.values.n_elem);
    const std::complex<double> mean = arma::accu(q.values) / n;
    const double power = arma::accu(arma::square(arma::abs(q.values))) / n;
    const std::complex<double> pseudo = arma::accu(q.values % q.values) / n;
    const double re2 = arma::accu(arma::square(arma::real(q.values))) / n;
    CHECK(std::abs(mean.real()) < 5.0 / std::sqrt(n));
    CHECK(std::abs(mean.imag()) < 5.0 / std::sqrt(n));
    CHECK(std::abs(power - 1.0) < 0.02);
    CHECK(std::abs(re2 - 0.5) < 0.01);
    CHECK(std::abs(pseudo) < 0.02);
}

TEST_CASE("sample_q_grid - Lag-one autocorrelation along time")
{
    const auto spec = exponential(CorrelationMode::time, 0.9, 64);
    const ResourceGrid grid{64, 100, 1};
    RandomStream root(5);
    std::complex<double> lag = 0.0;
    double power = 0.0;
    for (int k = 0; k < 100; ++k) // 100 x 100 = 1e4 columns
    {
        RandomStream rng = root.substream(k);
        const QGrid q = sample_q_grid(spec, grid, rng);
        for (arma::uword f = 0; f < grid.f_max; ++f)
            for (arma::uword t = 0; t + 1 < grid.t_max; ++t)
            {
                lag += q.values(t + 1, f) * std::conj(q.values(t, f));
                power += std::norm(q.values(t, f));
            }
    }
    const double rho = lag.real() / power;
    CHECK(rho >= 0.87);
    CHECK(rho <= 0.93);
}

TEST_CASE("sample_q_grid - Covariance recovery")
{
    for (double rho : {0.0, 0.5, 0.9})
    {
        const auto t_spec = exponential(CorrelationMode::time, rho, 4);
        const arma::cx_mat target = build_covariance(t_spec);
        const arma::cx_mat est_t = sample_covariance(t_spec, ResourceGrid{4, 10, 1}, 1000, 9);
        CHECK(max_abs(est_t - target) <= 0.05);

        const auto f_spec = exponential(CorrelationMode::frequency, rho, 4);
        const arma::cx_mat est_f = sample_covariance(f_spec, ResourceGrid{10, 4, 1}, 1000, 10);
        CHECK(max_abs(est_f - target) <= 0.05);
    }

    arma::cx_mat custom = {{1, {0.3, 0.4}}, {{0.3, -0.4}, 1}};
    const CorrelationSpec spec{CorrelationMode::time, CustomCorrelation{custom}, 2};
    CHECK(max_abs(sample_covariance(spec, ResourceGrid{2, 10, 1}, 1000, 11) - custom) <= 0.05);
}

TEST_CASE("sample_q_grid - Single block time mode matches uncorrelated mode")
{
    const ResourceGrid grid{1, 7, 1};
    RandomStream a(4), b(4);
    const QGrid qt = sample_q_grid(exponential(CorrelationMode::time, 0.9, 1), grid, a);
    const QGrid qn = sample_q_grid(CorrelationSpec{}, grid, b);
    CHECK(max_abs(qt.values - qn.values) < 1e-5);
}

TEST_CASE("sample_q_grid - Independence across substreams")
{
    RandomStream root(31);
    RandomStream a = root.substream(1).substream(0);
    RandomStream b = root.substream(1).substream(1);
    const ResourceGrid grid{1, 10000, 1};
    const QGrid qa = sample_q_grid(CorrelationSpec{}, grid, a);
    const QGrid qb = sample_q_grid(CorrelationSpec{}, grid, b);
    const std::complex<double> cross = arma::accu(qa.values % arma::conj(qb.values)) / 10000.0;
    CHECK(std::abs(cross) <= 0.05);
}
