// vproof: registers the shipped proof corpus and runs it under a chosen
// exploration configuration.

#include "vproof/corpus.hpp"
#include "vproof/registry.hpp"
#include "vproof/report.hpp"
#include "vproof/version.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>

namespace {

int cmd_list(const vproof::ProofRegistry& registry) {
  std::vector<const vproof::ProofEntry*> entries;
  for (const auto& entry : registry.entries())
    entries.push_back(&entry);
  std::sort(entries.begin(), entries.end(),
            [](const auto* a, const auto* b) { return a->name < b->name; });
  for (const auto* entry : entries)
    std::cout << entry->name << "\n    " << entry->description << "\n";
  std::cout << entries.size() << " proofs registered\n";
  return vproof::kExitPass;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"vproof: unit-proof runner (bounded exploration with mock "
               "expectations)"};
  app.set_version_flag("--version", vproof::kToolVersion);
  app.require_subcommand(1);

  CLI::App* list_cmd = app.add_subcommand("list", "List registered proofs");

  CLI::App* run_cmd = app.add_subcommand("run", "Explore registered proofs");
  std::string filter = "*";
  int max_depth = 0;
  int64_t max_paths = 0;
  std::string byte_profile;
  uint64_t seed = 0;
  bool strict_depth = false;
  bool fail_fast = false;
  std::string format = "text";
  auto* filter_opt =
      run_cmd->add_option("--filter", filter, "Glob over proof names");
  auto* depth_opt = run_cmd->add_option("--max-depth", max_depth,
                                        "Choice points per path");
  auto* paths_opt =
      run_cmd->add_option("--max-paths", max_paths, "Path budget per proof");
  auto* profile_opt = run_cmd->add_option(
      "--byte-profile", byte_profile, "Byte domain: small|full|sample:K");
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Exploration seed");
  auto* strict_depth_opt = run_cmd->add_flag(
      "--strict-depth", strict_depth,
      "Treat depth-exhausted paths as failures");
  auto* fail_fast_opt = run_cmd->add_flag(
      "--fail-fast", fail_fast, "Stop a proof at its first failing path");
  run_cmd->add_option("--format", format, "Report format: text|json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e);
    return vproof::kExitUsage;
  }

  vproof::ProofRegistry registry;
  vproof::corpus::register_corpus(registry);

  if (list_cmd->parsed())
    return cmd_list(registry);

  vproof::RunOptions options;
  options.filter = filter;
  options.format =
      format == "json" ? vproof::ReportFormat::Json : vproof::ReportFormat::Text;
  if (*filter_opt)
    options.filter = filter;
  if (*depth_opt)
    options.cli.max_depth = max_depth;
  if (*paths_opt)
    options.cli.max_paths = max_paths;
  if (*profile_opt) {
    try {
      options.cli.byte_profile = vproof::ByteProfile::parse(byte_profile);
    } catch (const vproof::ConfigError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return vproof::kExitUsage;
    }
  }
  if (*seed_opt)
    options.cli.seed = seed;
  if (*strict_depth_opt)
    options.cli.strict_depth = true;
  if (*fail_fast_opt)
    options.cli.fail_fast = true;

  vproof::RunResult result = vproof::run_proofs(registry, options);
  if (result.exit_code == vproof::kExitUsage) {
    std::cerr << "error: " << result.error << "\n";
    return result.exit_code;
  }
  if (options.format == vproof::ReportFormat::Json)
    std::cout << vproof::render_json(result.run);
  else
    std::cout << vproof::render_text(result.run);
  return result.exit_code;
}
