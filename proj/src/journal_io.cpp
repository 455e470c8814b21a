#include "attrex/journal_io.hpp"

#include <sstream>

#include "attrex/errors.hpp"

namespace attrex {

using nlohmann::json;

json implication_to_json(const Implication& imp, const ExplorationSchema& schema) {
  return {{"premise", schema.names_of(imp.premise())},
          {"conclusion", imp.bottom() ? json(nullptr) : json(schema.names_of(imp.conclusion()))}};
}

Implication implication_from_json(const json& j, const ExplorationSchema& schema) {
  const AttributeSet premise = schema.set_of(j.at("premise").get<std::vector<std::string>>());
  const auto& c = j.at("conclusion");
  if (c.is_null()) return Implication::to_bottom(premise);
  return Implication(premise, schema.set_of(c.get<std::vector<std::string>>()));
}

json example_to_json(const PartialExample& ex, const ExplorationSchema& schema) {
  return {{"lower", schema.names_of(ex.lower())}, {"upper", schema.names_of(ex.upper())}};
}

PartialExample example_from_json(const json& j, const ExplorationSchema& schema) {
  return PartialExample(schema.set_of(j.at("lower").get<std::vector<std::string>>()),
                        schema.set_of(j.at("upper").get<std::vector<std::string>>()));
}

namespace {

json item_to_json(const JournalItem& item, const ExplorationSchema& schema) {
  if (const auto* imp = std::get_if<Implication>(&item)) return implication_to_json(*imp, schema);
  return example_to_json(std::get<PartialExample>(item), schema);
}

bool about_implications(Action a) { return a == Action::add_implication || a == Action::drop_implication; }

JournalItem item_from_json(const json& j, Action action, const ExplorationSchema& schema) {
  if (about_implications(action)) return implication_from_json(j, schema);
  return example_from_json(j, schema);
}

}  // namespace

json entry_to_json(const JournalEntry& e, const ExplorationSchema& schema) {
  json payload = {{"index", e.index}};
  if (e.before) payload["before"] = item_to_json(*e.before, schema);
  if (e.after) payload["after"] = item_to_json(*e.after, schema);
  return {{"seq", e.seq},
          {"actor", std::string(to_string(e.actor))},
          {"action", std::string(to_string(e.action))},
          {"payload", payload},
          {"note", e.note}};
}

JournalEntry entry_from_json(const json& j, const ExplorationSchema& schema) {
  JournalEntry e;
  e.seq = j.at("seq").get<std::uint64_t>();
  try {
    e.actor = actor_from_string(j.at("actor").get<std::string>());
    e.action = action_from_string(j.at("action").get<std::string>());
    const auto& p = j.at("payload");
    e.index = p.at("index").get<std::size_t>();
    if (p.contains("before")) e.before = item_from_json(p.at("before"), e.action, schema);
    if (p.contains("after")) e.after = item_from_json(p.at("after"), e.action, schema);
    e.note = j.value("note", std::string());
  } catch (const std::exception& ex) {
    throw JournalError(e.seq, ex.what());
  }
  return e;
}

std::string entry_to_line(const JournalEntry& e, const ExplorationSchema& schema) {
  return entry_to_json(e, schema).dump();
}

std::vector<JournalEntry> parse_journal(std::istream& in, const ExplorationSchema& schema) {
  std::vector<JournalEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::uint64_t expected = out.size() + 1;
    json j;
    try {
      j = json::parse(line);
      if (!j.is_object() || !j.contains("seq")) throw JournalError(expected, "record has no sequence number");
    } catch (const json::exception& ex) {
      throw JournalError(expected, std::string("corrupt record: ") + ex.what());
    }
    try {
      out.push_back(entry_from_json(j, schema));
    } catch (const json::exception& ex) {
      throw JournalError(expected, std::string("corrupt record: ") + ex.what());
    }
    if (out.back().seq != expected) throw JournalError(out.back().seq, "expected sequence number " + std::to_string(expected));
  }
  return out;
}

std::vector<JournalEntry> read_journal(const std::string& path, const ExplorationSchema& schema) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open journal '" + path + "'");
  return parse_journal(in, schema);
}

void write_journal(const std::string& path, const std::vector<JournalEntry>& entries, const ExplorationSchema& schema) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ParseError("cannot write journal '" + path + "'");
  for (const auto& e : entries) out << entry_to_line(e, schema) << '\n';
}

JournalWriter::JournalWriter(const std::string& path, const ExplorationSchema& schema)
    : out_(path, std::ios::app), schema_(schema) {
  if (!out_) throw ParseError("cannot open journal '" + path + "' for appending");
}

void JournalWriter::append(const JournalEntry& e) {
  out_ << entry_to_line(e, schema_) << '\n';
  out_.flush();
  ++written_;
}

void JournalWriter::sync(const std::vector<JournalEntry>& journal) {
  for (std::size_t i = written_; i < journal.size(); ++i) append(journal[i]);
}

std::vector<PartialExample> examples_from_json(const json& j, const ExplorationSchema& schema) {
  try {
    const json& list = j.is_object() ? j.at("examples") : j;
    std::vector<PartialExample> out;
    for (const auto& item : list) out.push_back(example_from_json(item, schema));
    return out;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("examples: ") + ex.what());
  }
}

json examples_to_json(const std::vector<PartialExample>& c, const ExplorationSchema& schema) {
  json out = json::array();
  for (const auto& ex : c) out.push_back(example_to_json(ex, schema));
  return out;
}

json implications_to_json(const ImplicationList& l, const ExplorationSchema& schema) {
  json out = json::array();
  for (const auto& imp : l) out.push_back(implication_to_json(imp, schema));
  return out;
}

}  // namespace attrex
