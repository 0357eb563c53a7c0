// Copyright 2026 The cobo Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "cobo/cobo.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> batch_size;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "run configuration file");
  sub->add_option("--seed", o.seed, "random seed (overrides config)");
  sub->add_option("--out", o.out, "output directory (overrides config)");
  sub->add_option("--batch-size", o.batch_size, "batch size n_b (overrides config)");
}

// Loads the config (or defaults) and forces the mode implied by the subcommand.
cobo::RunConfig resolve(const std::string& sub, const Overrides& o) {
  cobo::RunConfig c;
  if (!o.config.empty()) c = cobo::parse_config(o.config, /*validate_now=*/false);
  if (sub == "bo") {
    if (c.mode != "batch-bo") c.mode = "bo";
  } else {
    c.mode = sub;
  }
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.out = *o.out;
  if (o.batch_size) c.batch_size = *o.batch_size;
  cobo::validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cobo: batch Bayesian optimization and nested plant/controller co-design"};
  app.require_subcommand(1);
  Overrides o;
  for (const char* name : {"codesign", "bo", "econ", "simulate"}) {
    add_common(app.add_subcommand(name, std::string("run the ") + name + " mode"), o);
  }
  std::string report_dir;
  auto* rep = app.add_subcommand("report", "print the summary of a finished run");
  rep->add_option("dir", report_dir, "run output directory");
  rep->add_option("--out", report_dir, "run output directory");
  rep->add_option("--config", o.config, "config whose output directory is reported");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cobo::kExitOk : cobo::kExitUsage;
  }

  try {
    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "report") {
      if (report_dir.empty()) {
        report_dir = o.config.empty() ? cobo::RunConfig{}.out : cobo::parse_config(o.config, false).out;
      }
      return cobo::report(report_dir, std::cout);
    }
    return cobo::run(resolve(sub, o), std::cout);
  } catch (const cobo::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cobo::kExitRuntime;
  }
}
