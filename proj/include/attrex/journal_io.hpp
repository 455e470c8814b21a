#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "attrex/base.hpp"

namespace attrex {

// Line-delimited journal records, attribute names on disk:
//   {"seq":1,"actor":"expert","action":"add_example",
//    "payload":{"index":0,"after":{"lower":["a"],"upper":["a","b"]}},"note":""}

nlohmann::json implication_to_json(const Implication& imp, const ExplorationSchema& schema);
Implication implication_from_json(const nlohmann::json& j, const ExplorationSchema& schema);
nlohmann::json example_to_json(const PartialExample& ex, const ExplorationSchema& schema);
PartialExample example_from_json(const nlohmann::json& j, const ExplorationSchema& schema);

nlohmann::json entry_to_json(const JournalEntry& e, const ExplorationSchema& schema);
JournalEntry entry_from_json(const nlohmann::json& j, const ExplorationSchema& schema);

/// One compact JSON object, no trailing newline.
std::string entry_to_line(const JournalEntry& e, const ExplorationSchema& schema);

/// Parses every line. Throws JournalError naming the sequence number of the
/// first line that does not parse.
std::vector<JournalEntry> read_journal(const std::string& path, const ExplorationSchema& schema);
std::vector<JournalEntry> parse_journal(std::istream& in, const ExplorationSchema& schema);

void write_journal(const std::string& path, const std::vector<JournalEntry>& entries, const ExplorationSchema& schema);

/// Append-only journal file; each record is flushed as it is written.
class JournalWriter {
 public:
  JournalWriter(const std::string& path, const ExplorationSchema& schema);

  void append(const JournalEntry& e);
  /// Appends every entry of `journal` past the ones already written.
  void sync(const std::vector<JournalEntry>& journal);
  std::size_t written() const { return written_; }
  void set_written(std::size_t n) { written_ = n; }

 private:
  std::ofstream out_;
  ExplorationSchema schema_;
  std::size_t written_ = 0;
};

std::vector<PartialExample> examples_from_json(const nlohmann::json& j, const ExplorationSchema& schema);
nlohmann::json examples_to_json(const std::vector<PartialExample>& c, const ExplorationSchema& schema);
nlohmann::json implications_to_json(const ImplicationList& l, const ExplorationSchema& schema);

}  // namespace attrex
