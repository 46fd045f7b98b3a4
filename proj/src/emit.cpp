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

#include "bfmimo/emit.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace bfmimo
{
    std::string format_real(double v)
    {
        std::array<char, 64> buf{};
        const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
        return std::string(buf.data(), res.ptr);
    }

    std::string format_probability(double v)
    {
        std::string s = format_real(v);
        if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos)
            s += ".0";
        return s;
    }

    std::string sha256_hex(const std::string &data)
    {
        std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
        unsigned int len = 0;
        if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
            throw std::runtime_error("sha256: digest failed.");
        static constexpr char hex[] = "0123456789abcdef";
        std::string out;
        out.reserve(2 * len);
        for (unsigned int i = 0; i < len; ++i)
        {
            out.push_back(hex[md[i] >> 4]);
            out.push_back(hex[md[i] & 0xF]);
        }
        return out;
    }

    // ---------- CSV ----------

    Rendered csv_histogram(const Histogram2D &h)
    {
        Rendered r{"re_center,im_center,count\n", 0};
        for (arma::uword a = 0; a < h.bins(); ++a)
            for (arma::uword b = 0; b < h.bins(); ++b)
            {
                r.text += format_real(h.re_center(a)) + "," + format_real(h.im_center(b)) + "," +
                          std::to_string(h.counts(a, b)) + "\n";
                ++r.rows;
            }
        return r;
    }

    Rendered csv_xcorr(const Histogram1D &h)
    {
        Rendered r{"magnitude_center,count\n", 0};
        for (arma::uword a = 0; a < h.counts.n_elem; ++a)
        {
            r.text += format_real(h.center(a)) + "," + std::to_string(h.counts[a]) + "\n";
            ++r.rows;
        }
        return r;
    }

    Rendered csv_eigencdf(const EmpiricalCDF &cdf)
    {
        Rendered r{"eigenvalue,cdf\n", 0};
        for (const auto &[value, prob] : cdf.steps())
        {
            r.text += format_real(value) + "," + format_probability(prob) + "\n";
            ++r.rows;
        }
        return r;
    }

    Rendered csv_power_profile(const arma::mat &p)
    {
        Rendered r{"antenna_index,user_index,mean_power\n", 0};
        for (arma::uword i = 0; i < p.n_rows; ++i)
            for (arma::uword j = 0; j < p.n_cols; ++j)
            {
                r.text += std::to_string(i) + "," + std::to_string(j) + "," + format_real(p(i, j)) + "\n";
                ++r.rows;
            }
        return r;
    }

    Rendered csv_correlation_matrix(const UserCorrelationMatrix &m)
    {
        Rendered r;
        for (arma::uword a = 0; a < m.rho.n_rows; ++a)
        {
            for (arma::uword b = 0; b < m.rho.n_cols; ++b)
                r.text += (b ? "," : "") + format_real(m.rho(a, b));
            r.text += "\n";
            ++r.rows;
        }
        return r;
    }

    // ---------- SVG ----------

    namespace
    {
        constexpr double W = 640, H = 480, ML = 70, MR = 20, MT = 40, MB = 60;

        std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", v);
            return buf;
        }

        std::string xml_escape(const std::string &s)
        {
            std::string o;
            for (char c : s)
            {
                switch (c)
                {
                case '<': o += "&lt;"; break;
                case '>': o += "&gt;"; break;
                case '&': o += "&amp;"; break;
                default: o += c;
                }
            }
            return o;
        }

        // Piecewise-linear dark blue -> teal -> yellow.
        std::string heat_color(double x)
        {
            x = std::clamp(x, 0.0, 1.0);
            const std::array<std::array<double, 3>, 3> stops = {{{68, 1, 84}, {33, 145, 140}, {253, 231, 37}}};
            const double pos = x * 2.0;
            const auto k = static_cast<std::size_t>(std::min(pos, 1.999));
            const double f = pos - static_cast<double>(k);
            char buf[16];
            std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                          static_cast<int>(std::lround(stops[k][0] + f * (stops[k + 1][0] - stops[k][0]))),
                          static_cast<int>(std::lround(stops[k][1] + f * (stops[k + 1][1] - stops[k][1]))),
                          static_cast<int>(std::lround(stops[k][2] + f * (stops[k + 1][2] - stops[k][2]))));
            return buf;
        }

        class Plot
        {
        public:
            Plot(double x0, double x1, double y0, double y1) : x0_(x0), x1_(x1), y0_(y0), y1_(y1)
            {
                if (x1_ <= x0_)
                    x1_ = x0_ + 1.0;
                if (y1_ <= y0_)
                    y1_ = y0_ + 1.0;
            }

            double px(double x) const { return ML + (x - x0_) / (x1_ - x0_) * (W - ML - MR); }
            double py(double y) const { return H - MB - (y - y0_) / (y1_ - y0_) * (H - MT - MB); }

            std::string frame(const std::string &title, const std::string &xlabel, const std::string &ylabel) const
            {
                std::string s = "<rect x=\"" + num(ML) + "\" y=\"" + num(MT) + "\" width=\"" + num(W - ML - MR) +
                                "\" height=\"" + num(H - MT - MB) + "\" fill=\"none\" stroke=\"#000\"/>\n";
                for (int k = 0; k <= 4; ++k)
                {
                    const double xv = x0_ + (x1_ - x0_) * k / 4.0;
                    const double yv = y0_ + (y1_ - y0_) * k / 4.0;
                    s += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(H - MB + 18) +
                         "\" font-size=\"11\" text-anchor=\"middle\">" + format_tick(xv) + "</text>\n";
                    s += "<text x=\"" + num(ML - 6) + "\" y=\"" + num(py(yv) + 4) +
                         "\" font-size=\"11\" text-anchor=\"end\">" + format_tick(yv) + "</text>\n";
                }
                s += "<text x=\"" + num(W / 2) + "\" y=\"" + num(MT - 14) +
                     "\" font-size=\"14\" text-anchor=\"middle\">" + xml_escape(title) + "</text>\n";
                s += "<text x=\"" + num(W / 2) + "\" y=\"" + num(H - 16) +
                     "\" font-size=\"12\" text-anchor=\"middle\">" + xml_escape(xlabel) + "</text>\n";
                s += "<text x=\"16\" y=\"" + num(H / 2) + "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
                     num(H / 2) + ")\">" + xml_escape(ylabel) + "</text>\n";
                return s;
            }

        private:
            static std::string format_tick(double v)
            {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.3g", v);
                return buf;
            }

            double x0_, x1_, y0_, y1_;
        };

        std::string svg_open()
        {
            return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                   num(W) + "\" height=\"" + num(H) + "\" viewBox=\"0 0 " + num(W) + " " + num(H) +
                   "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
        }

        const std::array<const char *, 8> palette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                     "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    }

    Rendered svg_histogram(const Histogram2D &h)
    {
        const double lo = h.re_edges[0], hi = h.re_edges[h.bins()];
        Plot plot(lo, hi, lo, hi);
        const double peak = std::max<double>(1.0, static_cast<double>(h.counts.max()));

        Rendered r{svg_open(), 0};
        for (arma::uword a = 0; a < h.bins(); ++a)
            for (arma::uword b = 0; b < h.bins(); ++b)
            {
                if (h.counts(a, b) == 0)
                    continue;
                const double x = plot.px(h.re_edges[a]), x2 = plot.px(h.re_edges[a + 1]);
                const double y = plot.py(h.im_edges[b + 1]), y2 = plot.py(h.im_edges[b]);
                r.text += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(x2 - x) + "\" height=\"" +
                          num(y2 - y) + "\" fill=\"" + heat_color(static_cast<double>(h.counts(a, b)) / peak) + "\"/>\n";
                ++r.rows;
            }
        r.text += plot.frame("Channel coefficient histogram", "Re(h)", "Im(h)") + "</svg>\n";
        return r;
    }

    Rendered svg_xcorr(const Histogram1D &h)
    {
        const double peak = std::max<double>(1.0, static_cast<double>(h.counts.max()));
        Plot plot(h.edges[0], h.edges[h.edges.n_elem - 1], 0.0, peak);
        Rendered r{svg_open(), 0};
        for (arma::uword a = 0; a < h.counts.n_elem; ++a)
        {
            const double x = plot.px(h.edges[a]), x2 = plot.px(h.edges[a + 1]);
            const double y = plot.py(static_cast<double>(h.counts[a])), y0 = plot.py(0.0);
            r.text += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(x2 - x) + "\" height=\"" +
                      num(y0 - y) + "\" fill=\"" + palette[0] + "\" stroke=\"#fff\" stroke-width=\"0.5\"/>\n";
            ++r.rows;
        }
        r.text += plot.frame("Cross-correlation of users", "|g_nd|", "count") + "</svg>\n";
        return r;
    }

    Rendered svg_eigencdf(const EmpiricalCDF &cdf)
    {
        const auto steps = cdf.steps();
        Plot plot(std::min(0.0, cdf.sorted().front()), cdf.sorted().back(), 0.0, 1.0);
        Rendered r{svg_open(), 0};
        std::string pts = num(plot.px(steps.front().first)) + "," + num(plot.py(0.0));
        double prev = 0.0;
        for (const auto &[v, p] : steps)
        {
            pts += " " + num(plot.px(v)) + "," + num(plot.py(prev)) + " " + num(plot.px(v)) + "," + num(plot.py(p));
            prev = p;
            ++r.rows;
        }
        r.text += "<polyline fill=\"none\" stroke=\"" + std::string(palette[0]) + "\" stroke-width=\"1.5\" points=\"" +
                  pts + "\"/>\n";
        r.text += plot.frame("Eigenvalue CDF of G = H^H H / N", "eigenvalue", "CDF") + "</svg>\n";
        return r;
    }

    Rendered svg_power_profile(const arma::mat &p)
    {
        Plot plot(0.0, static_cast<double>(std::max<arma::uword>(p.n_rows, 2) - 1), 0.0, std::max(1e-12, p.max()) * 1.1);
        Rendered r{svg_open(), 0};
        for (arma::uword j = 0; j < p.n_cols; ++j)
        {
            std::string pts;
            for (arma::uword i = 0; i < p.n_rows; ++i)
            {
                pts += (i ? " " : "") + num(plot.px(static_cast<double>(i))) + "," + num(plot.py(p(i, j)));
                ++r.rows;
            }
            r.text += "<polyline fill=\"none\" stroke=\"" + std::string(palette[j % palette.size()]) +
                      "\" stroke-width=\"1.2\" points=\"" + pts + "\"/>\n";
        }
        r.text += plot.frame("Average power along the array", "antenna index", "mean |h|^2") + "</svg>\n";
        return r;
    }

    Rendered svg_correlation_matrix(const UserCorrelationMatrix &m)
    {
        const arma::uword k = m.rho.n_rows;
        Plot plot(0.0, static_cast<double>(k), 0.0, static_cast<double>(k));
        Rendered r{svg_open(), 0};
        for (arma::uword a = 0; a < k; ++a)
            for (arma::uword b = 0; b < k; ++b)
            {
                const double x = plot.px(static_cast<double>(b)), x2 = plot.px(static_cast<double>(b + 1));
                const double y = plot.py(static_cast<double>(k - a)), y2 = plot.py(static_cast<double>(k - a - 1));
                r.text += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(x2 - x) + "\" height=\"" +
                          num(y2 - y) + "\" fill=\"" + heat_color(m.rho(a, b)) + "\"/>\n";
                char label[32];
                std::snprintf(label, sizeof label, "%.3f", m.rho(a, b));
                r.text += "<text x=\"" + num(0.5 * (x + x2)) + "\" y=\"" + num(0.5 * (y + y2) + 4) +
                          "\" font-size=\"12\" text-anchor=\"middle\" fill=\"" + (m.rho(a, b) > 0.6 ? "#000" : "#fff") +
                          "\">" + label + "</text>\n";
                ++r.rows;
            }
        r.text += plot.frame("User correlation matrix", "user", "user") + "</svg>\n";
        return r;
    }

    void write_bundle(const ReportBundle &bundle, const std::filesystem::path &dir)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw io_error(dir.string(), "cannot create output directory: " + ec.message());

        auto write = [&](const std::string &name, const std::string &content) {
            const auto path = dir / name;
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw io_error(name, "cannot open " + path.string() + " for writing");
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            out.close();
            if (!out)
                throw io_error(name, "write to " + path.string() + " failed");
        };

        for (const auto &f : bundle.files)
            write(f.name, f.content);
        write("manifest.csv", bundle.manifest());
    }
}
