// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

// synfocus <mode> --config PATH --out DIR [--seed N] [--threads N]
// exit 0 ok, 1 config error, 2 numerical failure

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "synfocus/error.hpp"
#include "synfocus/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"synthetic focusing for hybrid inverse problems"};
  std::string mode, config_path, out_dir;
  std::uint64_t seed = 0;
  int threads = -1;
  app.add_option("mode", mode, "phantom|forward|kernel|measure|focus|endtoend|validate")->required();
  app.add_option("--config", config_path, "key = value config file")->required();
  app.add_option("--out", out_dir, "output directory")->required();
  auto* seed_opt = app.add_option("--seed", seed, "noise seed (overrides config)");
  app.add_option("--threads", threads, "OpenMP thread cap, 0 for default")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  using namespace synfocus;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config '" + config_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    ExperimentConfig cfg = parse_config(text.str());
    cfg.mode = parse_mode(mode);
    cfg.output_dir = out_dir;
    if (*seed_opt) cfg.seed = seed;
    if (threads >= 0) cfg.threads = threads;
    const Metrics m = run_pipeline(cfg);
    for (const auto& [k, v] : m.entries())
      if (k.rfind("config.", 0) != 0) std::cout << k << " = " << v << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
}
