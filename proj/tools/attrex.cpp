#include <iostream>

#include <CLI11.hpp>

#include "attrex/cli.hpp"

int main(int argc, char** argv) {
  using attrex::cli::CliConfig;
  CLI::App app{"Attribute exploration with partial counter-examples"};
  app.require_subcommand(1);

  CliConfig config;
  std::size_t budget = 0;
  std::string mask;
  std::uint64_t seed = 0;
  std::string session_dir;

  auto paths = [&](CLI::App* sub, bool domain, bool journal_required) {
    sub->add_option("--schema", config.schema, "schema JSON file")->required()->check(CLI::ExistingFile);
    if (domain) sub->add_option("--domain", config.domain, "scripted domain JSON file")->required()->check(CLI::ExistingFile);
    auto* j = sub->add_option("--journal", config.journal, "journal file (one JSON record per line)");
    if (journal_required) j->required()->check(CLI::ExistingFile);
  };
  auto expert_flags = [&](CLI::App* sub) {
    sub->add_option("--mask", mask, "none | premise | per-query-random | fixed-hide-set:a,b");
    sub->add_option("--seed", seed, "seed for the per-query-random mask");
  };

  auto* explore = app.add_subcommand("explore", "run an exploration against a scripted expert");
  paths(explore, true, false);
  expert_flags(explore);
  explore->add_option("--out", config.out, "output directory")->default_val(".");
  explore->add_option("--budget", budget, "maximum number of questions");
  explore->add_option("--max-enum", config.max_enum, "attribute limit for brute-force reports");

  auto* serve = app.add_subcommand("serve", "host exploration sessions over HTTP");
  serve->add_option("--journal", session_dir, "session directory")->default_val("sessions");
  serve->add_option("--port", config.port, "port (0 picks a free one)")->default_val(8080);
  serve->add_option("--host", config.host, "bind address")->default_val("127.0.0.1");

  auto* replay = app.add_subcommand("replay", "replay a journal and verify every engine action");
  paths(replay, false, true);

  auto* report = app.add_subcommand("report", "summarize the base stored in a journal");
  paths(report, false, true);
  report->add_option("--max-enum", config.max_enum, "attribute limit for brute-force reports");

  auto* validate = app.add_subcommand("validate-expert", "check a scripted expert against the expert conditions");
  paths(validate, true, false);
  expert_flags(validate);

  CLI11_PARSE(app, argc, argv);

  for (auto* sub : {explore, validate}) {
    if (!sub->parsed()) continue;
    if (sub->count("--mask") != 0) config.mask = mask;
    if (sub->count("--seed") != 0) config.seed = seed;
  }
  if (explore->parsed() && explore->count("--budget") != 0) config.budget = budget;

  using namespace attrex::cli;
  if (explore->parsed()) return cmd_explore(config, std::cout, std::cerr);
  if (serve->parsed()) {
    config.journal = session_dir;
    return cmd_serve(config, std::cout, std::cerr);
  }
  if (replay->parsed()) return cmd_replay(config, std::cout, std::cerr);
  if (report->parsed()) return cmd_report(config, std::cout, std::cerr);
  return cmd_validate_expert(config, std::cout, std::cerr);
}
