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

#ifndef bfmimo_scenario_H
#define bfmimo_scenario_H

#include "bfmimo/analytics.hpp"
#include "bfmimo/config.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace bfmimo
{
    // Everything a scenario run measured. Only the fields needed by the
    // requested outputs are filled.
    struct ScenarioResults
    {
        // Coefficients h_ij of the histogram user, all antennas, blocks and
        // realizations, in realization order.
        std::vector<std::complex<double>> coefficients;
        double spatial_spread = 0.0; // RMS of h_ij - sum_c p_ijc over the same samples
        std::optional<Histogram2D> histogram;

        std::vector<double> offdiag_mags; // |g_ij|, i < j, per block
        std::optional<Histogram1D> xcorr;

        std::optional<EmpiricalCDF> eigencdf;
        std::optional<arma::mat> power;
        std::optional<UserCorrelationMatrix> correlation;

        std::string raw_channel_csv;
        std::size_t raw_channel_rows = 0;
    };

    // Runs all realizations. Realizations may be spread over worker threads;
    // reductions are applied in realization order so the result does not
    // depend on the thread count.
    ScenarioResults simulate(const ScenarioConfig &config, unsigned threads = 1);

    struct ArtifactFile
    {
        std::string name;    // file name, e.g. "eigencdf.csv"
        std::string content;
        std::size_t rows = 0; // data rows for CSV, plotted marks for SVG, lines for JSON
    };

    struct ReportBundle
    {
        std::vector<ArtifactFile> files; // manifest excluded

        // "artifact,rows,sha256" plus one line per file.
        std::string manifest() const;
        const ArtifactFile *find(const std::string &name) const;
    };

    ReportBundle render(const ScenarioConfig &config, const ScenarioResults &results);

    ReportBundle run_scenario(const ScenarioConfig &config, unsigned threads = 1);
}

#endif
