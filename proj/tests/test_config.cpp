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
#include "bfmimo/config.hpp"

#include <numbers>

using namespace bfmimo;
using Catch::Matchers::ContainsSubstring;

namespace
{
    const char *minimal = R"({
        "seed": 5,
        "geometry": {"n_antennas": 4},
        "users": [{"clusters": [{"direction": 0, "spread_fraction": 1, "mean_power": 1}]}],
        "realizations": 1
    })";

    std::string error_of(const std::string &text)
    {
        try
        {
            parse_config(text);
        }
        catch (const config_error &e)
        {
            return e.what();
        }
        return "";
    }

    ScenarioConfig random_config(RandomStream &rng)
    {
        ScenarioConfig c;
        c.seed = rng.next_u64();
        c.geometry = ArrayGeometry{1 + arma::uword(rng.uniform() * 40), 0.05 + rng.uniform()};
        c.grid = ResourceGrid{1 + arma::uword(rng.uniform() * 4), 1 + arma::uword(rng.uniform() * 4),
                              1 + arma::uword(rng.uniform() * 200)};
        const arma::uword k = 1 + arma::uword(rng.uniform() * 4);
        for (arma::uword j = 0; j < k; ++j)
        {
            UserSpec u;
            const int n_clusters = 1 + int(rng.uniform() * 3);
            for (int cl = 0; cl < n_clusters; ++cl)
            {
                ClusterSpec s;
                if (rng.uniform() < 0.5)
                    s.direction = rng.uniform() * std::numbers::pi;
                s.spread_fraction = rng.uniform();
                if (rng.uniform() < 0.3)
                {
                    std::vector<double> profile;
                    for (arma::uword i = 0; i < c.geometry.n_antennas; ++i)
                        profile.push_back(0.01 + rng.uniform());
                    s.mean_power = MeanPower(profile);
                }
                else
                    s.mean_power = 0.01 + 3.0 * rng.uniform();
                u.clusters.push_back(s);
            }
            c.users.push_back(u);
        }
        const double m = rng.uniform();
        if (m < 0.3)
            c.correlation = CorrelationSpec{CorrelationMode::time, ExponentialCorrelation{0.99 * rng.uniform()},
                                            c.grid.t_max};
        else if (m < 0.6)
            c.correlation = CorrelationSpec{CorrelationMode::frequency,
                                            ExponentialCorrelation{0.99 * rng.uniform()}, c.grid.f_max};
        else if (m < 0.8)
        {
            // Random correlation matrix: normalized Gram of random vectors
            const arma::uword n = c.grid.t_max;
            arma::cx_mat b(n, n + 1);
            for (auto &v : b)
                v = rng.complex_normal();
            arma::cx_mat s = b * b.t();
            const arma::vec d = 1.0 / arma::sqrt(arma::real(s.diag()));
            s = arma::diagmat(d) * s * arma::diagmat(d);
            s.diag().ones();
            s = 0.5 * (s + s.t());
            c.correlation = CorrelationSpec{CorrelationMode::time, CustomCorrelation{s}, n};
        }
        c.realizations = 1 + rng.next_u64() % 5000;
        c.bins = 1 + arma::uword(rng.uniform() * 100);
        c.histogram_user = arma::uword(rng.uniform() * double(k));
        c.outputs = {Artifact::histogram, Artifact::eigencdf};
        if (k >= 2)
            c.outputs.push_back(Artifact::correlation_matrix);
        if (rng.uniform() < 0.5)
            c.outputs.push_back(Artifact::raw_channel);
        return c;
    }
}

TEST_CASE("parse_config - Minimal document gets defaults")
{
    const ScenarioConfig c = parse_config(minimal);
    CHECK(c.seed == 5);
    CHECK(c.geometry.n_antennas == 4);
    CHECK(c.geometry.spacing_ratio == 0.25);
    CHECK(c.correlation.mode == CorrelationMode::none);
    CHECK(c.bins == 64);
    CHECK(c.realizations == 1);
    CHECK(c.grid == ResourceGrid{1, 1, 1});
    REQUIRE(c.users.size() == 1);
    REQUIRE(c.users[0].clusters.size() == 1);
    CHECK(c.users[0].clusters[0].direction == 0.0);
    CHECK(c.users[0].clusters[0].spread_fraction == 1.0);
    CHECK(c.users[0].clusters[0].mean_power.at(2) == 1.0);
    CHECK(c.outputs == std::vector<Artifact>{Artifact::histogram, Artifact::eigencdf, Artifact::power_profile});
}

TEST_CASE("parse_config - Semantic errors name the field")
{
    std::string doc = minimal;
    doc.replace(doc.find("\"spread_fraction\": 1"), 20, "\"spread_fraction\": 1.5");
    const std::string e = error_of(doc);
    CHECK_THAT(e, ContainsSubstring("spread_fraction"));
    CHECK_THAT(e, ContainsSubstring("[0, 1]"));
    CHECK_THAT(e, ContainsSubstring("users[0].clusters[0]"));

    CHECK_THAT(error_of(R"({"geometry": {"n_antennas": 4}, "users": [{"clusters": [{"spread_fraction": 1}]}], "colour": 1})"),
               ContainsSubstring("colour"));
    CHECK_THAT(error_of(R"({"geometry": {"n_antennas": 0}, "users": [{"clusters": [{"spread_fraction": 1}]}]})"),
               ContainsSubstring("geometry.n_antennas"));
    CHECK_THAT(error_of(R"({"geometry": {"n_antennas": 4}, "users": []})"), ContainsSubstring("users"));
    CHECK_THAT(error_of(R"({"geometry": {"n_antennas": 4}, "users": [{"clusters": [{"spread_fraction": 1}]}], "realizations": 0})"),
               ContainsSubstring("realizations"));
    CHECK_THAT(error_of(R"({"geometry": {"n_antennas": 4}, "users": [{"clusters": [{"spread_fraction": 1}]}], "outputs": ["movie"]})"),
               ContainsSubstring("outputs[0]"));
    CHECK_THAT(error_of(R"({"geometry": {"n_antennas": 4}, "users": [{"clusters": [{"spread_fraction": 1}]}], "outputs": ["correlation-matrix"]})"),
               ContainsSubstring("outputs"));
    CHECK_THAT(error_of(R"({"geometry": {"n_antennas": 2}, "users": [{"clusters": [{"spread_fraction": 1, "mean_power": [1, 2, 3]}]}]})"),
               ContainsSubstring("mean_power"));
    CHECK_THAT(error_of(R"({"geometry": {"n_antennas": 2}, "users": [{"clusters": [{"spread_fraction": 1, "direction": 3.5}]}]})"),
               ContainsSubstring("direction"));
    CHECK_THAT(error_of(R"({"geometry": {"n_antennas": 2}, "grid": {"t_max": 2}, "correlation": {"mode": "time", "model": "custom", "matrix": [[1, 2], [2, 1]]}, "users": [{"clusters": [{"spread_fraction": 1}]}]})"),
               ContainsSubstring("correlation"));
    CHECK_THAT(error_of(R"({"geometry": {"n_antennas": 2}, "correlation": {"mode": "time", "rho": 1.0}, "users": [{"clusters": [{"spread_fraction": 1}]}]})"),
               ContainsSubstring("rho"));
}

TEST_CASE("parse_config - Syntax errors report line and column")
{
    const std::string e = error_of("{\n  \"seed\": 1,\n  \"geometry\": {\"n_antennas\": 4,,}\n}");
    CHECK_THAT(e, ContainsSubstring("syntax error"));
    CHECK_THAT(e, ContainsSubstring("line 3"));
    CHECK_THAT(e, ContainsSubstring("column"));
}

TEST_CASE("parse_config - Presets")
{
    const ScenarioConfig a = parse_config(R"({"preset": "paper-A"})");
    CHECK(a.geometry.n_antennas == 128);
    CHECK(a.n_users() == 3);
    CHECK(a.realizations == 1000);
    for (const auto &u : a.users)
    {
        REQUIRE(u.clusters.size() == 3);
        CHECK(u.clusters[0].spread_fraction == 0.6);
        CHECK(u.clusters[1].spread_fraction == 0.8);
        CHECK(u.clusters[2].spread_fraction == 1.0);
    }

    const ScenarioConfig over = parse_config(R"({"preset": "paper-A", "seed": 9, "realizations": 10})");
    CHECK(over.seed == 9);
    CHECK(over.realizations == 10);
    CHECK(over.users == a.users);

    CHECK_THAT(error_of(R"({"preset": "paper-Z"})"), ContainsSubstring("paper-Z"));
    CHECK_THROWS_AS(expand_preset("nope"), config_error);
    CHECK_THAT(error_of(R"({"preset": "iid", "users": []})"), ContainsSubstring("users"));
}

TEST_CASE("Presets - Paper matrices differ only in antennas and spreads")
{
    const ScenarioConfig a = expand_preset("paper-A"), b = expand_preset("paper-B"), c = expand_preset("paper-C"),
                         d = expand_preset("paper-D");
    CHECK(a.geometry.n_antennas == 128);
    CHECK(b.geometry.n_antennas == 128);
    CHECK(c.geometry.n_antennas == 20);
    CHECK(d.geometry.n_antennas == 20);
    CHECK(a.users == c.users);
    CHECK(b.users == d.users);
    for (const auto *p : {&a, &b, &c, &d})
    {
        CHECK(p->seed == a.seed);
        CHECK(p->realizations == 1000);
        CHECK(p->n_users() == 3);
        CHECK(p->outputs == a.outputs);
        CHECK(p->correlation == a.correlation);
        CHECK(p->grid == a.grid);
        for (std::size_t j = 0; j < 3; ++j)
        {
            REQUIRE(p->users[j].clusters.size() == 3);
            for (std::size_t cl = 0; cl < 3; ++cl)
            {
                CHECK(p->users[j].clusters[cl].mean_power == a.users[j].clusters[cl].mean_power);
                CHECK(!p->users[j].clusters[cl].direction.has_value());
            }
        }
    }
    for (std::size_t cl = 0; cl < 3; ++cl)
        CHECK(b.users[0].clusters[cl].spread_fraction < a.users[0].clusters[cl].spread_fraction);

    for (const auto &name : preset_names())
    {
        const ScenarioConfig p = expand_preset(name);
        CHECK_NOTHROW(p.validate());
        CHECK(p.realizations >= 1000);
    }
    CHECK(expand_preset("fig5").n_users() == 6);
    CHECK(expand_preset("fig6").n_users() == 6);
    CHECK(expand_preset("fig5").geometry.n_antennas == 20);
}

TEST_CASE("emit_config - Round trip")
{
    for (const auto &name : preset_names())
    {
        const ScenarioConfig p = expand_preset(name);
        CHECK(parse_config(emit_config(p)) == p);
    }
    const ScenarioConfig m = parse_config(minimal);
    CHECK(parse_config(emit_config(m)) == m);

    RandomStream rng(2718);
    for (int k = 0; k < 200; ++k)
    {
        const ScenarioConfig c = random_config(rng);
        REQUIRE_NOTHROW(c.validate());
        const std::string text = emit_config(c);
        const ScenarioConfig back = parse_config(text);
        CHECK(back == c);
        CHECK(emit_config(back) == text);
    }
}

TEST_CASE("emit_config - Published field names")
{
    const std::string text = emit_config(parse_config(minimal));
    for (const char *key : {"\"seed\"", "\"geometry\"", "\"n_antennas\"", "\"spacing_ratio\"", "\"grid\"",
                            "\"t_max\"", "\"f_max\"", "\"symbols_per_rb\"", "\"correlation\"", "\"mode\"",
                            "\"users\"", "\"clusters\"", "\"direction\"", "\"spread_fraction\"", "\"mean_power\"",
                            "\"realizations\"", "\"outputs\"", "\"bins\"", "\"histogram_user\""})
        CHECK_THAT(text, ContainsSubstring(key));
    CHECK_THAT(text, !ContainsSubstring("preset"));
}

TEST_CASE("parse_config - Custom correlation and complex entries")
{
    const ScenarioConfig c = parse_config(R"({
        "geometry": {"n_antennas": 2},
        "grid": {"t_max": 1, "f_max": 2},
        // comments are accepted
        "correlation": {"mode": "frequency", "model": "custom", "matrix": [[1, [0.5, 0.25]], [[0.5, -0.25], 1]]},
        "users": [{"clusters": [{"direction": "random", "spread_fraction": 0.5}]}]
    })");
    CHECK(c.correlation.mode == CorrelationMode::frequency);
    CHECK(c.correlation.length == 2);
    const auto &m = std::get<CustomCorrelation>(c.correlation.model).matrix;
    CHECK(m(0, 1) == std::complex<double>(0.5, 0.25));
    CHECK(m(1, 0) == std::complex<double>(0.5, -0.25));
    CHECK(!c.users[0].clusters[0].direction.has_value());
}
