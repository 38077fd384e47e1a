// syncov: build caches, select in-context examples, benchmark polynomial
// construction and inspect records.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "syncov/error.hpp"
#include "syncov/pipeline/config.hpp"
#include "syncov/pipeline/pipeline.hpp"

namespace {

using syncov::pipeline::Config;
using syncov::pipeline::Override;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;

struct CommonOptions {
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::string> strategy;
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> cache_dir;
  std::optional<std::string> output_dir;

  void attach(CLI::App* app, bool require_config) {
    auto* opt = app->add_option("-c,--config", config, "config file (key = value lines)");
    if (require_config) opt->required();
    app->add_option("--set", sets, "override a config key, KEY=VALUE (repeatable)");
    app->add_option("--strategy", strategy, "same as --set strategy=...");
    app->add_option("-k", k, "same as --set k=...");
    app->add_option("--seed", seed, "same as --set seed=...");
    app->add_option("-j,--workers", workers, "same as --set workers=...");
    app->add_option("--cache-dir", cache_dir, "same as --set cache_dir=...");
    app->add_option("--output-dir", output_dir, "same as --set output_dir=...");
  }

  Config load() const {
    std::vector<Override> overrides;
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) {
        throw syncov::ConfigError("--set expects KEY=VALUE, got '" + s + "'");
      }
      overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    if (strategy) overrides.emplace_back("strategy", *strategy);
    if (k) overrides.emplace_back("k", std::to_string(*k));
    if (seed) overrides.emplace_back("seed", std::to_string(*seed));
    if (workers) overrides.emplace_back("workers", std::to_string(*workers));
    if (cache_dir) overrides.emplace_back("cache_dir", *cache_dir);
    if (output_dir) overrides.emplace_back("output_dir", *output_dir);
    return config.empty() ? syncov::pipeline::default_config(overrides)
                          : syncov::pipeline::load_config(config, overrides);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"syncov: syntax- and word-coverage example selection for in-context translation"};
  app.set_version_flag("--version", std::string(syncov::pipeline::toolkit_version()));
  app.require_subcommand(1);

  CommonOptions build_opts;
  auto* build = app.add_subcommand("build", "ingest, filter, build polynomials and the BM25 index");
  build_opts.attach(build, true);

  CommonOptions select_opts;
  auto* select = app.add_subcommand("select", "select examples and render prompts for every test input");
  select_opts.attach(select, true);

  CommonOptions bench_opts;
  std::string bench_json;
  auto* bench = app.add_subcommand("bench", "scaling report for both polynomial constructions");
  bench_opts.attach(bench, false);
  bench->add_option("--json", bench_json, "also write the report as JSON to this file");

  CommonOptions inspect_opts;
  syncov::pipeline::InspectRequest request;
  bool corpus_side = false;
  std::optional<std::size_t> inspect_pool;
  auto* inspect = app.add_subcommand("inspect", "show a record's tree, polynomial and pool coverage");
  inspect_opts.attach(inspect, true);
  inspect->add_option("id", request.id, "record id")->required();
  inspect->add_flag("--corpus", corpus_side, "look the id up in the example database instead of the test set");
  inspect->add_option("--pool", inspect_pool, "BM25 pool size for the coverage listing");

  app.add_subcommand("keys", "list config keys")->callback([] {
    std::cout << syncov::pipeline::config_reference();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*build) {
      const auto report = syncov::pipeline::run_build(build_opts.load(), &std::cerr);
      std::cerr << report.corpus_records << " corpus records (" << report.removed
                << " removed by the length filter), " << report.test_records << " test inputs, "
                << report.labels << " dependency labels\n";
    } else if (*select) {
      syncov::pipeline::run_select(select_opts.load(), &std::cerr);
    } else if (*bench) {
      const auto report = syncov::pipeline::run_bench(bench_opts.load());
      std::cout << syncov::pipeline::bench_table(report);
      if (!bench_json.empty()) {
        std::ofstream out(bench_json);
        out << syncov::pipeline::bench_to_json(report).dump(2) << '\n';
        if (!out) throw syncov::DataError("cannot write " + bench_json);
      }
    } else if (*inspect) {
      request.test_side = !corpus_side;
      request.pool_size = inspect_pool;
      syncov::pipeline::run_inspect(inspect_opts.load(), request, std::cout);
    }
  } catch (const syncov::ConfigError& e) {
    std::cerr << "syncov: config error: " << e.what() << '\n';
    return kUsage;
  } catch (const syncov::DataError& e) {
    std::cerr << "syncov: " << e.what() << '\n';
    return kData;
  } catch (const syncov::DomainError& e) {
    std::cerr << "syncov: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "syncov: " << e.what() << '\n';
    return kData;
  }
  return kOk;
}
