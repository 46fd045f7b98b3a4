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

#include "bfmimo/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bfmimo
{
    GramStats gram(const ChannelBlock &block)
    {
        const arma::cx_mat &h = block.h;
        const arma::uword n = h.n_rows;
        const arma::uword k = h.n_cols;
        if (n < 1)
            throw std::invalid_argument("gram: channel needs at least one antenna.");
        const double inv_n = 1.0 / static_cast<double>(n);

        GramStats out;
        out.g.set_size(k, k);
        out.diag.set_size(k);
        for (arma::uword a = 0; a < k; ++a)
        {
            double d = 0.0;
            for (arma::uword i = 0; i < n; ++i)
                d += std::norm(h(i, a));
            out.g(a, a) = d * inv_n;
            out.diag[a] = d * inv_n;

            for (arma::uword b = a + 1; b < k; ++b)
            {
                std::complex<double> acc = 0.0;
                for (arma::uword i = 0; i < n; ++i)
                    acc += std::conj(h(i, a)) * h(i, b);
                acc *= inv_n;
                out.g(a, b) = acc;
                out.g(b, a) = std::conj(acc);
            }
        }
        for (arma::uword a = 0; a < k; ++a)
            for (arma::uword b = a + 1; b < k; ++b)
                out.offdiag_mags.push_back(std::abs(out.g(a, b)));
        return out;
    }

    arma::vec eigenvalues_hermitian(const arma::cx_mat &g)
    {
        if (g.n_rows != g.n_cols)
            throw std::invalid_argument("eigenvalues_hermitian: matrix must be square.");
        const arma::uword k = g.n_rows;
        if (k == 0)
            return {};

        const double scale = std::max(1.0, arma::abs(g).max());
        for (arma::uword j = 0; j < k; ++j)
            for (arma::uword i = j; i < k; ++i)
                if (std::abs(g(i, j) - std::conj(g(j, i))) > 1e-10 * scale)
                    throw std::invalid_argument("eigenvalues_hermitian: matrix is not Hermitian.");

        arma::cx_mat a = g;
        for (arma::uword i = 0; i < k; ++i)
            a(i, i) = a(i, i).real();

        const double tol = 1e-12 * arma::norm(g, "fro");
        auto off_norm = [&]() {
            double s = 0.0;
            for (arma::uword j = 0; j < k; ++j)
                for (arma::uword i = 0; i < k; ++i)
                    if (i != j)
                        s += std::norm(a(i, j));
            return std::sqrt(s);
        };

        int sweep = 0;
        while (off_norm() > tol)
        {
            if (++sweep > 100)
                throw numerical_error("eigenvalues_hermitian: no convergence after 100 sweeps.");

            for (arma::uword p = 0; p + 1 < k; ++p)
                for (arma::uword q = p + 1; q < k; ++q)
                {
                    const std::complex<double> b = a(p, q);
                    const double mag = std::abs(b);
                    if (mag == 0.0)
                        continue;

                    // Unitary J with J_pp = J_qq = c, J_pq = s e, J_qp = -s conj(e)
                    // annihilates a(p, q) in J^H A J.
                    const std::complex<double> e = b / mag;
                    const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    const std::complex<double> se = s * e;

                    for (arma::uword r = 0; r < k; ++r)
                    {
                        const std::complex<double> arp = a(r, p);
                        const std::complex<double> arq = a(r, q);
                        a(r, p) = c * arp - std::conj(se) * arq;
                        a(r, q) = se * arp + c * arq;
                    }
                    for (arma::uword r = 0; r < k; ++r)
                    {
                        const std::complex<double> apr = a(p, r);
                        const std::complex<double> aqr = a(q, r);
                        a(p, r) = c * apr - se * aqr;
                        a(q, r) = std::conj(se) * apr + c * aqr;
                    }
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    a(p, p) = a(p, p).real();
                    a(q, q) = a(q, q).real();
                }
        }

        arma::vec ev(k);
        for (arma::uword i = 0; i < k; ++i)
            ev[i] = a(i, i).real();
        std::sort(ev.begin(), ev.end());
        return ev;
    }

    EmpiricalCDF::EmpiricalCDF(std::vector<double> samples) : sorted_(std::move(samples))
    {
        if (sorted_.empty())
            throw std::invalid_argument("empirical_cdf: no samples.");
        for (double v : sorted_)
            if (std::isnan(v))
                throw std::invalid_argument("empirical_cdf: NaN sample.");
        std::sort(sorted_.begin(), sorted_.end());
    }

    double EmpiricalCDF::operator()(double x) const
    {
        const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
        return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
    }

    double EmpiricalCDF::quantile(double p) const
    {
        if (!(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("quantile: p must lie in (0, 1].");
        const double n = static_cast<double>(sorted_.size());
        auto idx = static_cast<std::size_t>(std::ceil(p * n));
        idx = std::clamp<std::size_t>(idx, 1, sorted_.size());
        return sorted_[idx - 1];
    }

    std::vector<std::pair<double, double>> EmpiricalCDF::steps() const
    {
        std::vector<std::pair<double, double>> out;
        const double n = static_cast<double>(sorted_.size());
        for (std::size_t i = 0; i < sorted_.size(); ++i)
        {
            if (i + 1 < sorted_.size() && sorted_[i + 1] == sorted_[i])
                continue;
            out.emplace_back(sorted_[i], static_cast<double>(i + 1) / n);
        }
        return out;
    }

    EmpiricalCDF empirical_cdf(std::vector<double> samples)
    {
        return EmpiricalCDF(std::move(samples));
    }

    double UserCorrelationMatrix::mean_offdiag() const
    {
        const arma::uword k = rho.n_rows;
        if (k < 2)
            return 0.0;
        double s = 0.0;
        for (arma::uword a = 0; a < k; ++a)
            for (arma::uword b = a + 1; b < k; ++b)
                s += rho(a, b);
        return s / static_cast<double>(k * (k - 1) / 2);
    }

    void UserCorrelationAccumulator::add(const ChannelBlock &block)
    {
        const arma::cx_mat &h = block.h;
        const arma::uword k = h.n_cols;
        if (k < 2)
            throw std::invalid_argument("user_correlation: at least two users are required.");
        if (count_ == 0)
            sum_.zeros(k, k);
        else if (sum_.n_rows != k)
            throw std::invalid_argument("user_correlation: user count changed between blocks.");

        arma::vec norms(k);
        for (arma::uword a = 0; a < k; ++a)
        {
            double s = 0.0;
            for (arma::uword i = 0; i < h.n_rows; ++i)
                s += std::norm(h(i, a));
            norms[a] = std::sqrt(s);
            if (norms[a] == 0.0)
                throw std::invalid_argument("user_correlation: user " + std::to_string(a) + " has a zero-norm channel.");
        }
        for (arma::uword a = 0; a < k; ++a)
            for (arma::uword b = a + 1; b < k; ++b)
            {
                std::complex<double> ip = 0.0;
                for (arma::uword i = 0; i < h.n_rows; ++i)
                    ip += std::conj(h(i, a)) * h(i, b);
                sum_(a, b) += std::min(1.0, std::abs(ip) / (norms[a] * norms[b]));
            }
        ++count_;
    }

    UserCorrelationMatrix UserCorrelationAccumulator::result() const
    {
        if (count_ == 0)
            throw std::invalid_argument("user_correlation: no realizations.");
        const arma::uword k = sum_.n_rows;
        UserCorrelationMatrix out{arma::mat(k, k, arma::fill::eye)};
        for (arma::uword a = 0; a < k; ++a)
            for (arma::uword b = a + 1; b < k; ++b)
            {
                const double v = sum_(a, b) / static_cast<double>(count_);
                out.rho(a, b) = v;
                out.rho(b, a) = v;
            }
        return out;
    }

    UserCorrelationMatrix user_correlation(std::span<const ChannelBlock> blocks)
    {
        UserCorrelationAccumulator acc;
        for (const auto &b : blocks)
            acc.add(b);
        return acc.result();
    }

    Histogram2D coefficient_histogram(std::span<const std::complex<double>> values, arma::uword bins_per_axis)
    {
        if (values.empty())
            throw std::invalid_argument("coefficient_histogram: no samples.");
        if (bins_per_axis < 1)
            throw std::invalid_argument("coefficient_histogram: bins must be at least 1.");

        double half = 0.0;
        for (const auto &v : values)
            half = std::max({half, std::abs(v.real()), std::abs(v.imag())});
        if (half == 0.0)
            half = 1.0;

        const double nb = static_cast<double>(bins_per_axis);
        Histogram2D hist;
        hist.re_edges.set_size(bins_per_axis + 1);
        for (arma::uword e = 0; e <= bins_per_axis; ++e)
            hist.re_edges[e] = -half + 2.0 * half * static_cast<double>(e) / nb;
        hist.re_edges[bins_per_axis] = half;
        hist.im_edges = hist.re_edges;
        hist.counts.zeros(bins_per_axis, bins_per_axis);

        auto bin_of = [&](double x) {
            const double pos = std::floor((x + half) / (2.0 * half) * nb);
            return static_cast<arma::uword>(std::clamp(pos, 0.0, nb - 1.0));
        };
        for (const auto &v : values)
            ++hist.counts(bin_of(v.real()), bin_of(v.imag()));
        return hist;
    }

    Histogram1D magnitude_histogram(std::span<const double> values, arma::uword bins)
    {
        if (values.empty())
            throw std::invalid_argument("magnitude_histogram: no samples.");
        if (bins < 1)
            throw std::invalid_argument("magnitude_histogram: bins must be at least 1.");

        double hi = 1.0;
        for (double v : values)
        {
            if (!(v >= 0.0))
                throw std::invalid_argument("magnitude_histogram: magnitudes must be nonnegative.");
            hi = std::max(hi, v);
        }
        const double nb = static_cast<double>(bins);
        Histogram1D hist;
        hist.edges.set_size(bins + 1);
        for (arma::uword e = 0; e <= bins; ++e)
            hist.edges[e] = hi * static_cast<double>(e) / nb;
        hist.edges[bins] = hi;
        hist.counts.zeros(bins);
        for (double v : values)
        {
            const double pos = std::floor(v / hi * nb);
            ++hist.counts[static_cast<arma::uword>(std::clamp(pos, 0.0, nb - 1.0))];
        }
        return hist;
    }

    void PowerProfileAccumulator::add(const ChannelBlock &block)
    {
        if (count_ == 0)
            sum_.zeros(block.h.n_rows, block.h.n_cols);
        else if (sum_.n_rows != block.h.n_rows || sum_.n_cols != block.h.n_cols)
            throw std::invalid_argument("power_profile: channel dimensions changed between blocks.");
        for (arma::uword k = 0; k < block.h.n_elem; ++k)
            sum_[k] += std::norm(block.h[k]);
        ++count_;
    }

    arma::mat PowerProfileAccumulator::result() const
    {
        if (count_ == 0)
            throw std::invalid_argument("power_profile: no realizations.");
        return sum_ / static_cast<double>(count_);
    }

    arma::mat power_profile(std::span<const ChannelBlock> blocks)
    {
        PowerProfileAccumulator acc;
        for (const auto &b : blocks)
            acc.add(b);
        return acc.result();
    }

    double offdiag_exceedance(std::span<const GramStats> stats, double threshold)
    {
        if (!(threshold >= 0.0))
            throw std::invalid_argument("offdiag_exceedance: threshold must be nonnegative.");
        std::size_t total = 0, above = 0;
        for (const auto &s : stats)
            for (double m : s.offdiag_mags)
            {
                ++total;
                above += m > threshold ? 1 : 0;
            }
        return total == 0 ? 0.0 : static_cast<double>(above) / static_cast<double>(total);
    }

    double spatial_spread(const arma::cx_vec &h, const arma::cx_vec &p)
    {
        if (h.n_elem != p.n_elem || h.n_elem == 0)
            throw std::invalid_argument("spatial_spread: vectors must be nonempty and of equal length.");
        double s = 0.0;
        for (arma::uword i = 0; i < h.n_elem; ++i)
            s += std::norm(h[i] - p[i]);
        return std::sqrt(s / static_cast<double>(h.n_elem));
    }
}
