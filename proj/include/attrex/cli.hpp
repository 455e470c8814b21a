#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "attrex/expert.hpp"

namespace attrex::cli {

struct CliConfig {
  std::string command;
  std::string schema;
  std::string domain;
  std::string journal;
  std::string out;
  std::optional<std::size_t> budget;
  std::optional<std::string> mask;
  std::optional<std::uint64_t> seed;
  std::size_t max_enum = 20;
  std::string host = "127.0.0.1";
  int port = 8080;
};

/// "none", "premise", "per-query-random", or "fixed-hide-set:a,b,c".
MaskPolicy parse_mask(const std::string& text, const ExplorationSchema& schema);

/// Writes journal.jsonl, implications.json, implications.txt, summary.json and
/// (within the enumeration limit) realizer.json into `out`.
int cmd_explore(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_replay(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_report(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate_expert(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_serve(const CliConfig& config, std::ostream& out, std::ostream& err);

/// "a, b -> c" (conclusion shown without the premise).
std::string format_implication(const Implication& imp, const ExplorationSchema& schema);

}  // namespace attrex::cli
