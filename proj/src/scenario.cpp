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

#include "bfmimo/scenario.hpp"
#include "bfmimo/emit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace bfmimo
{
    namespace
    {
        constexpr std::size_t batch_size = 128;

        template <typename Fn>
        void parallel_for(std::size_t n, unsigned threads, Fn &&fn)
        {
            if (threads <= 1 || n <= 1)
            {
                for (std::size_t k = 0; k < n; ++k)
                    fn(k);
                return;
            }

            std::atomic<std::size_t> next{0};
            std::exception_ptr error;
            std::mutex error_mutex;
            {
                std::vector<std::jthread> pool;
                const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
                for (unsigned w = 0; w < workers; ++w)
                    pool.emplace_back([&] {
                        for (std::size_t k = next++; k < n; k = next++)
                        {
                            try
                            {
                                fn(k);
                            }
                            catch (...)
                            {
                                std::lock_guard lock(error_mutex);
                                if (!error)
                                    error = std::current_exception();
                            }
                        }
                    });
            }
            if (error)
                std::rethrow_exception(error);
        }

        struct BlockOut
        {
            GramStats gram;
            arma::vec eigenvalues;
        };

        struct RealizationOut
        {
            Realization realization;
            std::vector<BlockOut> blocks;
            arma::cx_vec histogram_mean; // sum_c p_ijc of the histogram user
        };

        bool wants(const ScenarioConfig &c, Artifact a)
        {
            return std::find(c.outputs.begin(), c.outputs.end(), a) != c.outputs.end();
        }
    }

    ScenarioResults simulate(const ScenarioConfig &config, unsigned threads)
    {
        config.validate();
        const ChannelModel model(config.geometry, config.users, config.grid, config.correlation, config.seed);

        const bool want_hist = wants(config, Artifact::histogram);
        const bool want_xcorr = wants(config, Artifact::cross_correlation);
        const bool want_eig = wants(config, Artifact::eigencdf);
        const bool want_power = wants(config, Artifact::power_profile);
        const bool want_corr = wants(config, Artifact::correlation_matrix);
        const bool want_raw = wants(config, Artifact::raw_channel);
        const bool need_gram = want_xcorr || want_eig;

        const arma::uword n = config.geometry.n_antennas;
        const arma::uword hu = config.histogram_user;

        ScenarioResults res;
        UserCorrelationAccumulator corr;
        PowerProfileAccumulator power;
        std::vector<double> eigenvalues;
        double spread_sum = 0.0;

        if (want_raw)
            res.raw_channel_csv = "realization,t,f,antenna,user,re,im\n";

        for (std::uint64_t start = 0; start < config.realizations; start += batch_size)
        {
            const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(batch_size, config.realizations - start));
            std::vector<RealizationOut> outs(count);

            parallel_for(count, threads, [&](std::size_t k) {
                RealizationOut &o = outs[k];
                o.realization = model.realize(start + k);
                if (need_gram)
                    for (const auto &b : o.realization.blocks)
                    {
                        BlockOut bo{gram(b), {}};
                        if (want_eig)
                            bo.eigenvalues = eigenvalues_hermitian(bo.gram.g);
                        o.blocks.push_back(std::move(bo));
                    }
                if (want_hist)
                {
                    o.histogram_mean.zeros(n);
                    for (const auto &pair : o.realization.pairs[hu])
                        o.histogram_mean += pair.p;
                }
            });

            // Fold in realization order; the result is independent of threads.
            for (std::size_t k = 0; k < count; ++k)
            {
                const RealizationOut &o = outs[k];
                const auto &blocks = o.realization.blocks;
                for (std::size_t b = 0; b < blocks.size(); ++b)
                {
                    const arma::cx_mat &h = blocks[b].h;
                    if (want_corr)
                        corr.add(blocks[b]);
                    if (want_power)
                        power.add(blocks[b]);
                    if (want_hist)
                        for (arma::uword i = 0; i < n; ++i)
                        {
                            res.coefficients.push_back(h(i, hu));
                            spread_sum += std::norm(h(i, hu) - o.histogram_mean[i]);
                        }
                    if (need_gram)
                    {
                        const BlockOut &bo = o.blocks[b];
                        if (want_xcorr)
                            res.offdiag_mags.insert(res.offdiag_mags.end(), bo.gram.offdiag_mags.begin(),
                                                    bo.gram.offdiag_mags.end());
                        if (want_eig)
                            eigenvalues.insert(eigenvalues.end(), bo.eigenvalues.begin(), bo.eigenvalues.end());
                    }
                    if (want_raw)
                    {
                        const arma::uword t = b / config.grid.f_max, f = b % config.grid.f_max;
                        const std::string prefix = std::to_string(start + k) + "," + std::to_string(t) + "," +
                                                   std::to_string(f) + ",";
                        for (arma::uword i = 0; i < h.n_rows; ++i)
                            for (arma::uword j = 0; j < h.n_cols; ++j)
                            {
                                res.raw_channel_csv += prefix + std::to_string(i) + "," + std::to_string(j) + "," +
                                                       format_real(h(i, j).real()) + "," +
                                                       format_real(h(i, j).imag()) + "\n";
                                ++res.raw_channel_rows;
                            }
                    }
                }
            }
        }

        if (want_hist)
        {
            res.histogram = coefficient_histogram(res.coefficients, config.bins);
            res.spatial_spread = std::sqrt(spread_sum / static_cast<double>(res.coefficients.size()));
        }
        if (want_xcorr)
            res.xcorr = magnitude_histogram(res.offdiag_mags, config.bins);
        if (want_eig)
            res.eigencdf = empirical_cdf(std::move(eigenvalues));
        if (want_power)
            res.power = power.result();
        if (want_corr)
            res.correlation = corr.result();
        return res;
    }

    std::string ReportBundle::manifest() const
    {
        std::string out = "artifact,rows,sha256\n";
        for (const auto &f : files)
            out += f.name + "," + std::to_string(f.rows) + "," + sha256_hex(f.content) + "\n";
        return out;
    }

    const ArtifactFile *ReportBundle::find(const std::string &name) const
    {
        for (const auto &f : files)
            if (f.name == name)
                return &f;
        return nullptr;
    }

    ReportBundle render(const ScenarioConfig &config, const ScenarioResults &res)
    {
        ReportBundle bundle;
        auto add = [&](const std::string &name, Rendered r) {
            bundle.files.push_back({name, std::move(r.text), r.rows});
        };

        for (Artifact a : config.outputs)
        {
            switch (a)
            {
            case Artifact::histogram:
                add("histogram.csv", csv_histogram(*res.histogram));
                add("histogram.svg", svg_histogram(*res.histogram));
                break;
            case Artifact::cross_correlation:
                add("xcorr_hist.csv", csv_xcorr(*res.xcorr));
                add("xcorr_hist.svg", svg_xcorr(*res.xcorr));
                break;
            case Artifact::eigencdf:
                add("eigencdf.csv", csv_eigencdf(*res.eigencdf));
                add("eigencdf.svg", svg_eigencdf(*res.eigencdf));
                break;
            case Artifact::power_profile:
                add("power_profile.csv", csv_power_profile(*res.power));
                add("power_profile.svg", svg_power_profile(*res.power));
                break;
            case Artifact::correlation_matrix:
                add("correlation_matrix.csv", csv_correlation_matrix(*res.correlation));
                add("correlation_matrix.svg", svg_correlation_matrix(*res.correlation));
                break;
            case Artifact::raw_channel:
                bundle.files.push_back({"raw_channel.csv", res.raw_channel_csv, res.raw_channel_rows});
                break;
            }
        }

        std::string echo = emit_config(config);
        const auto lines = static_cast<std::size_t>(std::count(echo.begin(), echo.end(), '\n'));
        bundle.files.push_back({"config.json", std::move(echo), lines});
        return bundle;
    }

    ReportBundle run_scenario(const ScenarioConfig &config, unsigned threads)
    {
        return render(config, simulate(config, threads));
    }
}
