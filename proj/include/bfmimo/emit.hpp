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

#ifndef bfmimo_emit_H
#define bfmimo_emit_H

#include "bfmimo/analytics.hpp"
#include "bfmimo/scenario.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace bfmimo
{
    class io_error : public std::runtime_error
    {
    public:
        io_error(const std::string &artifact, const std::string &what)
            : std::runtime_error(artifact + ": " + what), artifact_(artifact) {}

        const std::string &artifact() const { return artifact_; }

    private:
        std::string artifact_;
    };

    // 17 significant digits, shortest exponent form ("0.5", "1", "1e-07").
    std::string format_real(double v);

    // As format_real, but integral values keep a decimal point ("1.0").
    std::string format_probability(double v);

    std::string sha256_hex(const std::string &data);

    struct Rendered
    {
        std::string text;
        std::size_t rows = 0; // CSV data lines or SVG marks
    };

    Rendered csv_histogram(const Histogram2D &h);      // re_center,im_center,count
    Rendered csv_xcorr(const Histogram1D &h);          // magnitude_center,count
    Rendered csv_eigencdf(const EmpiricalCDF &cdf);    // eigenvalue,cdf
    Rendered csv_power_profile(const arma::mat &p);    // antenna_index,user_index,mean_power
    Rendered csv_correlation_matrix(const UserCorrelationMatrix &m); // K x K, no header

    // Self-contained SVG renderings.
    Rendered svg_histogram(const Histogram2D &h);
    Rendered svg_xcorr(const Histogram1D &h);
    Rendered svg_eigencdf(const EmpiricalCDF &cdf);
    Rendered svg_power_profile(const arma::mat &p);
    Rendered svg_correlation_matrix(const UserCorrelationMatrix &m);

    // Writes every artifact plus manifest.csv into dir, creating it.
    void write_bundle(const ReportBundle &bundle, const std::filesystem::path &dir);
}

#endif
