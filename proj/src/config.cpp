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

#include "bfmimo/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>

namespace bfmimo
{
    using json = nlohmann::json;
    using ordered_json = nlohmann::ordered_json;

    namespace
    {
        constexpr std::array<std::pair<Artifact, std::string_view>, 6> artifact_names = {{
            {Artifact::histogram, "histogram"},
            {Artifact::cross_correlation, "cross-correlation"},
            {Artifact::eigencdf, "eigencdf"},
            {Artifact::power_profile, "power-profile"},
            {Artifact::correlation_matrix, "correlation-matrix"},
            {Artifact::raw_channel, "raw-channel"},
        }};

        [[noreturn]] void fail(const std::string &path, const std::string &what)
        {
            throw config_error(path + ": " + what);
        }

        std::string join(const std::string &path, std::string_view key)
        {
            return path.empty() ? std::string(key) : path + "." + std::string(key);
        }

        std::string index(const std::string &path, std::size_t i)
        {
            return path + "[" + std::to_string(i) + "]";
        }

        void require_object(const json &j, const std::string &path, std::initializer_list<std::string_view> allowed)
        {
            if (!j.is_object())
                fail(path.empty() ? "document" : path, "expected an object");
            for (const auto &item : j.items())
                if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
                    fail(join(path, item.key()), "unknown key");
        }

        double get_real(const json &j, const std::string &path)
        {
            if (!j.is_number())
                fail(path, "expected a number");
            const double v = j.get<double>();
            if (!std::isfinite(v))
                fail(path, "expected a finite number");
            return v;
        }

        std::uint64_t get_count(const json &j, const std::string &path, std::uint64_t minimum)
        {
            if (!j.is_number_integer())
                fail(path, "expected an integer");
            if (j.is_number_unsigned())
            {
                const auto v = j.get<std::uint64_t>();
                if (v < minimum)
                    fail(path, "must be at least " + std::to_string(minimum));
                return v;
            }
            const auto v = j.get<std::int64_t>();
            if (v < 0 || static_cast<std::uint64_t>(v) < minimum)
                fail(path, "must be at least " + std::to_string(minimum));
            return static_cast<std::uint64_t>(v);
        }

        std::complex<double> get_complex(const json &j, const std::string &path)
        {
            if (j.is_number())
                return {get_real(j, path), 0.0};
            if (j.is_array() && j.size() == 2)
                return {get_real(j[0], index(path, 0)), get_real(j[1], index(path, 1))};
            fail(path, "expected a real number or a [re, im] pair");
        }

        ArrayGeometry parse_geometry(const json &j, const std::string &path)
        {
            require_object(j, path, {"n_antennas", "spacing_ratio"});
            ArrayGeometry g;
            if (!j.contains("n_antennas"))
                fail(join(path, "n_antennas"), "required");
            g.n_antennas = get_count(j["n_antennas"], join(path, "n_antennas"), 1);
            if (j.contains("spacing_ratio"))
                g.spacing_ratio = get_real(j["spacing_ratio"], join(path, "spacing_ratio"));
            return g;
        }

        ResourceGrid parse_grid(const json &j, const std::string &path)
        {
            require_object(j, path, {"t_max", "f_max", "symbols_per_rb"});
            ResourceGrid g;
            if (j.contains("t_max"))
                g.t_max = get_count(j["t_max"], join(path, "t_max"), 1);
            if (j.contains("f_max"))
                g.f_max = get_count(j["f_max"], join(path, "f_max"), 1);
            if (j.contains("symbols_per_rb"))
                g.symbols_per_rb = get_count(j["symbols_per_rb"], join(path, "symbols_per_rb"), 1);
            return g;
        }

        CorrelationSpec parse_correlation(const json &j, const std::string &path)
        {
            require_object(j, path, {"mode", "model", "rho", "matrix"});
            CorrelationSpec spec;
            if (j.contains("mode"))
            {
                const std::string p = join(path, "mode");
                if (!j["mode"].is_string())
                    fail(p, "expected one of none, time, frequency");
                const auto m = j["mode"].get<std::string>();
                if (m == "none")
                    spec.mode = CorrelationMode::none;
                else if (m == "time")
                    spec.mode = CorrelationMode::time;
                else if (m == "frequency")
                    spec.mode = CorrelationMode::frequency;
                else
                    fail(p, "expected one of none, time, frequency, got '" + m + "'");
            }

            std::string model = "exponential";
            if (j.contains("model"))
            {
                if (!j["model"].is_string())
                    fail(join(path, "model"), "expected exponential or custom");
                model = j["model"].get<std::string>();
            }

            if (model == "exponential")
            {
                if (j.contains("matrix"))
                    fail(join(path, "matrix"), "only valid with model custom");
                ExponentialCorrelation e;
                if (j.contains("rho"))
                    e.rho = get_real(j["rho"], join(path, "rho"));
                spec.model = e;
            }
            else if (model == "custom")
            {
                if (j.contains("rho"))
                    fail(join(path, "rho"), "only valid with model exponential");
                const std::string p = join(path, "matrix");
                if (!j.contains("matrix") || !j["matrix"].is_array() || j["matrix"].empty())
                    fail(p, "custom model requires a square matrix");
                const auto &rows = j["matrix"];
                const std::size_t n = rows.size();
                CustomCorrelation c{arma::cx_mat(n, n)};
                for (std::size_t a = 0; a < n; ++a)
                {
                    if (!rows[a].is_array() || rows[a].size() != n)
                        fail(index(p, a), "expected a row of length " + std::to_string(n));
                    for (std::size_t b = 0; b < n; ++b)
                        c.matrix(a, b) = get_complex(rows[a][b], index(index(p, a), b));
                }
                spec.model = std::move(c);
            }
            else
                fail(join(path, "model"), "expected exponential or custom, got '" + model + "'");
            return spec;
        }

        ClusterSpec parse_cluster(const json &j, const std::string &path)
        {
            require_object(j, path, {"direction", "spread_fraction", "mean_power"});
            ClusterSpec c;
            if (j.contains("direction"))
            {
                const auto &d = j["direction"];
                if (d.is_string())
                {
                    if (d.get<std::string>() != "random")
                        fail(join(path, "direction"), "expected radians in [0, pi) or \"random\"");
                }
                else
                    c.direction = get_real(d, join(path, "direction"));
            }
            if (!j.contains("spread_fraction"))
                fail(join(path, "spread_fraction"), "required");
            c.spread_fraction = get_real(j["spread_fraction"], join(path, "spread_fraction"));
            if (j.contains("mean_power"))
            {
                const auto &m = j["mean_power"];
                const std::string p = join(path, "mean_power");
                if (m.is_array())
                {
                    if (m.empty())
                        fail(p, "profile cannot be empty");
                    std::vector<double> profile;
                    for (std::size_t i = 0; i < m.size(); ++i)
                        profile.push_back(get_real(m[i], index(p, i)));
                    c.mean_power = MeanPower(std::move(profile));
                }
                else
                    c.mean_power = MeanPower(get_real(m, p));
            }
            return c;
        }

        std::vector<UserSpec> parse_users(const json &j, const std::string &path)
        {
            if (!j.is_array() || j.empty())
                fail(path, "expected a nonempty array of users");
            std::vector<UserSpec> users;
            for (std::size_t u = 0; u < j.size(); ++u)
            {
                const std::string up = index(path, u);
                require_object(j[u], up, {"clusters"});
                if (!j[u].contains("clusters") || !j[u]["clusters"].is_array() || j[u]["clusters"].empty())
                    fail(join(up, "clusters"), "expected a nonempty array of clusters");
                UserSpec user;
                const auto &cl = j[u]["clusters"];
                for (std::size_t c = 0; c < cl.size(); ++c)
                    user.clusters.push_back(parse_cluster(cl[c], index(join(up, "clusters"), c)));
                users.push_back(std::move(user));
            }
            return users;
        }

        std::vector<Artifact> parse_outputs(const json &j, const std::string &path)
        {
            if (!j.is_array())
                fail(path, "expected an array of artifact names");
            std::vector<Artifact> out;
            for (std::size_t i = 0; i < j.size(); ++i)
            {
                if (!j[i].is_string())
                    fail(index(path, i), "expected an artifact name");
                const auto a = artifact_from_string(j[i].get<std::string>());
                if (!a)
                    fail(index(path, i), "unknown artifact '" + j[i].get<std::string>() + "'");
                out.push_back(*a);
            }
            return out;
        }

        void sync_correlation_length(ScenarioConfig &c)
        {
            switch (c.correlation.mode)
            {
            case CorrelationMode::none:
                c.correlation.length = 1;
                break;
            case CorrelationMode::time:
                c.correlation.length = c.grid.t_max;
                break;
            case CorrelationMode::frequency:
                c.correlation.length = c.grid.f_max;
                break;
            }
        }

        std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
        {
            std::size_t line = 1, col = 1;
            const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
            for (std::size_t i = 0; i < end; ++i)
            {
                if (text[i] == '\n')
                {
                    ++line;
                    col = 1;
                }
                else
                    ++col;
            }
            return {line, col};
        }

        std::vector<Artifact> default_outputs(std::size_t n_users)
        {
            if (n_users >= 2)
                return {Artifact::histogram, Artifact::cross_correlation, Artifact::eigencdf,
                        Artifact::power_profile, Artifact::correlation_matrix};
            return {Artifact::histogram, Artifact::eigencdf, Artifact::power_profile};
        }
    }

    std::string to_string(Artifact a)
    {
        for (const auto &[k, v] : artifact_names)
            if (k == a)
                return std::string(v);
        return "unknown";
    }

    std::optional<Artifact> artifact_from_string(std::string_view name)
    {
        for (const auto &[k, v] : artifact_names)
            if (v == name)
                return k;
        return std::nullopt;
    }

    void ScenarioConfig::validate() const
    {
        try
        {
            geometry.validate();
        }
        catch (const std::invalid_argument &e)
        {
            fail("geometry", e.what());
        }
        try
        {
            grid.validate();
        }
        catch (const std::invalid_argument &e)
        {
            fail("grid", e.what());
        }
        if (realizations < 1)
            fail("realizations", "must be at least 1");
        if (users.empty())
            fail("users", "at least one user is required");

        for (std::size_t u = 0; u < users.size(); ++u)
        {
            const std::string up = "users[" + std::to_string(u) + "]";
            if (users[u].clusters.empty())
                fail(up + ".clusters", "at least one cluster is required");
            for (std::size_t c = 0; c < users[u].clusters.size(); ++c)
            {
                try
                {
                    users[u].clusters[c].validate(geometry.n_antennas);
                }
                catch (const std::invalid_argument &e)
                {
                    fail(up + ".clusters[" + std::to_string(c) + "]", e.what());
                }
            }
            for (arma::uword i = 0; i < geometry.n_antennas; ++i)
                if (!std::isfinite(users[u].total_power(i)))
                    fail(up, "total power must be finite");
        }

        const arma::uword expected_length = correlation.mode == CorrelationMode::time        ? grid.t_max
                                            : correlation.mode == CorrelationMode::frequency ? grid.f_max
                                                                                             : correlation.length;
        if (correlation.length != expected_length)
            fail("correlation", "length " + std::to_string(correlation.length) + " does not match the grid (" +
                                    std::to_string(expected_length) + ")");
        try
        {
            correlation.validate();
        }
        catch (const std::invalid_argument &e)
        {
            fail("correlation", e.what());
        }

        if (bins < 1)
            fail("bins", "must be at least 1");
        if (histogram_user >= users.size())
            fail("histogram_user", "must be below the number of users (" + std::to_string(users.size()) + ")");

        for (std::size_t i = 0; i < outputs.size(); ++i)
        {
            for (std::size_t k = 0; k < i; ++k)
                if (outputs[k] == outputs[i])
                    fail("outputs[" + std::to_string(i) + "]", "'" + to_string(outputs[i]) + "' is listed twice");
            if ((outputs[i] == Artifact::correlation_matrix || outputs[i] == Artifact::cross_correlation) &&
                users.size() < 2)
                fail("outputs[" + std::to_string(i) + "]", "'" + to_string(outputs[i]) + "' needs at least two users");
        }
    }

    ScenarioConfig parse_config(std::string_view text)
    {
        json doc;
        try
        {
            doc = json::parse(text.begin(), text.end(), nullptr, true, true);
        }
        catch (const json::parse_error &e)
        {
            const auto [line, col] = line_column(text, e.byte);
            throw config_error("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                               ": " + e.what());
        }

        require_object(doc, "", {"seed", "preset", "geometry", "grid", "correlation", "realizations", "users",
                                  "outputs", "bins", "histogram_user"});

        ScenarioConfig c;
        bool outputs_given = false;
        if (doc.contains("preset"))
        {
            if (!doc["preset"].is_string())
                fail("preset", "expected a preset name");
            if (doc.contains("users"))
                fail("users", "cannot be combined with a preset");
            c = expand_preset(doc["preset"].get<std::string>());
            outputs_given = true;
        }
        else
        {
            if (!doc.contains("geometry"))
                fail("geometry", "required");
            if (!doc.contains("users"))
                fail("users", "required");
        }

        if (doc.contains("seed"))
            c.seed = get_count(doc["seed"], "seed", 0);
        if (doc.contains("geometry"))
            c.geometry = parse_geometry(doc["geometry"], "geometry");
        if (doc.contains("grid"))
            c.grid = parse_grid(doc["grid"], "grid");
        if (doc.contains("correlation"))
            c.correlation = parse_correlation(doc["correlation"], "correlation");
        if (doc.contains("realizations"))
            c.realizations = get_count(doc["realizations"], "realizations", 1);
        if (doc.contains("users"))
            c.users = parse_users(doc["users"], "users");
        if (doc.contains("bins"))
            c.bins = get_count(doc["bins"], "bins", 1);
        if (doc.contains("histogram_user"))
            c.histogram_user = get_count(doc["histogram_user"], "histogram_user", 0);
        if (doc.contains("outputs"))
        {
            c.outputs = parse_outputs(doc["outputs"], "outputs");
            outputs_given = true;
        }
        if (!outputs_given)
            c.outputs = default_outputs(c.users.size());

        sync_correlation_length(c);
        c.validate();
        return c;
    }

    std::string emit_config(const ScenarioConfig &c)
    {
        ordered_json doc;
        doc["seed"] = c.seed;
        doc["geometry"] = {{"n_antennas", c.geometry.n_antennas}, {"spacing_ratio", c.geometry.spacing_ratio}};
        doc["grid"] = {{"t_max", c.grid.t_max}, {"f_max", c.grid.f_max}, {"symbols_per_rb", c.grid.symbols_per_rb}};

        ordered_json corr;
        corr["mode"] = to_string(c.correlation.mode);
        if (const auto *e = std::get_if<ExponentialCorrelation>(&c.correlation.model))
        {
            corr["model"] = "exponential";
            corr["rho"] = e->rho;
        }
        else
        {
            const arma::cx_mat &m = std::get<CustomCorrelation>(c.correlation.model).matrix;
            corr["model"] = "custom";
            ordered_json rows = ordered_json::array();
            for (arma::uword a = 0; a < m.n_rows; ++a)
            {
                ordered_json row = ordered_json::array();
                for (arma::uword b = 0; b < m.n_cols; ++b)
                    row.push_back({m(a, b).real(), m(a, b).imag()});
                rows.push_back(row);
            }
            corr["matrix"] = rows;
        }
        doc["correlation"] = corr;
        doc["realizations"] = c.realizations;

        ordered_json users = ordered_json::array();
        for (const auto &u : c.users)
        {
            ordered_json clusters = ordered_json::array();
            for (const auto &cl : u.clusters)
            {
                ordered_json jc;
                if (cl.direction)
                    jc["direction"] = *cl.direction;
                else
                    jc["direction"] = "random";
                jc["spread_fraction"] = cl.spread_fraction;
                if (cl.mean_power.is_profile())
                    jc["mean_power"] = cl.mean_power.values();
                else
                    jc["mean_power"] = cl.mean_power.values().front();
                clusters.push_back(jc);
            }
            users.push_back({{"clusters", clusters}});
        }
        doc["users"] = users;

        ordered_json outs = ordered_json::array();
        for (auto a : c.outputs)
            outs.push_back(to_string(a));
        doc["outputs"] = outs;
        doc["bins"] = c.bins;
        doc["histogram_user"] = c.histogram_user;
        return doc.dump(2) + "\n";
    }
}
