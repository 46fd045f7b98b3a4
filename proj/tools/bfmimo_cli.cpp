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


// Command line front end: simulate a configuration file, run a named preset
// or validate a configuration without simulating.

#include "bfmimo/config.hpp"
#include "bfmimo/emit.hpp"
#include "bfmimo/scenario.hpp"
#include "bfmimo/stochastic.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{
    constexpr const char *version = "bfmimo 1.0.0";

    enum exit_code
    {
        ok = 0,
        config_failure = 2,
        numerical_failure = 3,
        io_failure = 4,
    };

    std::string read_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw bfmimo::io_error(path, "cannot open for reading");
        std::ostringstream ss;
        ss << in.rdbuf();
        if (in.bad())
            throw bfmimo::io_error(path, "read failed");
        return ss.str();
    }

    void run(bfmimo::ScenarioConfig config, std::optional<std::uint64_t> seed, const std::string &out, unsigned threads)
    {
        if (seed)
            config.seed = *seed;
        const bfmimo::ReportBundle bundle = bfmimo::run_scenario(config, threads);
        bfmimo::write_bundle(bundle, out);
        std::cout << bundle.manifest();
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Statistical block fading channel simulator for multiuser massive MIMO"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir = "out";
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;

    auto *sim = app.add_subcommand("simulate", "Run the scenario described by a configuration file");
    sim->add_option("config", config_path, "JSON configuration file")->required();
    sim->add_option("--seed", seed, "Override the configured seed");
    sim->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sim->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();

    auto *pre = app.add_subcommand("preset", "Run a named preset");
    pre->add_option("name", preset_name, "Preset name")->required();
    pre->add_option("--out", out_dir, "Output directory")->capture_default_str();
    pre->add_option("--seed", seed, "Override the preset seed");
    pre->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();

    auto *val = app.add_subcommand("validate", "Parse and validate a configuration file");
    val->add_option("config", config_path, "JSON configuration file")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? ok : config_failure;
    }

    try
    {
        if (*sim)
            run(bfmimo::parse_config(read_file(config_path)), seed, out_dir, threads);
        else if (*pre)
            run(bfmimo::expand_preset(preset_name), seed, out_dir, threads);
        else if (*val)
        {
            const auto config = bfmimo::parse_config(read_file(config_path));
            std::cout << "valid: N=" << config.geometry.n_antennas << " K=" << config.n_users()
                      << " realizations=" << config.realizations << "\n";
        }
        return ok;
    }
    catch (const bfmimo::config_error &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return config_failure;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return config_failure;
    }
    catch (const bfmimo::numerical_error &e)
    {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return numerical_failure;
    }
    catch (const bfmimo::io_error &e)
    {
        std::cerr << "I/O failure: " << e.what() << "\n";
        return io_failure;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return numerical_failure;
    }
}
