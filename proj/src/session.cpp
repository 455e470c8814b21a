#include "attrex/session.hpp"

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>

#include "attrex/errors.hpp"

namespace attrex {

using nlohmann::json;

std::string_view to_string(SessionStatus s) {
  return s == SessionStatus::complete ? "complete" : "awaiting_answer";
}

namespace {

const std::string& truncated(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ParseError("cannot create journal '" + path + "'");
  return path;
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

}  // namespace

Session::Session(std::string id, ExplorationSchema schema, const std::vector<PartialExample>& initial_examples,
                 const std::string& journal_path)
    : id_(std::move(id)),
      exploration_(std::move(schema), initial_examples),
      writer_(truncated(journal_path), exploration_.schema()) {
  writer_.sync(exploration_.base().journal());
}

Session::Session(std::string id, Exploration exploration, const std::string& journal_path, std::size_t written)
    : id_(std::move(id)), exploration_(std::move(exploration)), writer_(journal_path, exploration_.schema()) {
  writer_.set_written(written);
  writer_.sync(exploration_.base().journal());
}

Session Session::resume(std::string id, const std::string& journal_path, ExplorationSchema schema) {
  const auto entries = read_journal(journal_path, schema);
  ExplorationBase base = ExplorationBase::replay(entries);
  Exploration exploration(std::move(schema), std::move(base));
  return Session(std::move(id), std::move(exploration), journal_path, entries.size());
}

std::string Session::token() const {
  const auto& q = pending();
  if (!q) return {};
  const std::uint64_t mix = q->implication.premise().bits() * 0x9e3779b97f4a7c15ULL ^ q->implication.conclusion().bits();
  return "q" + std::to_string(base().journal().size()) + "-" + hex(mix);
}

AnswerResult Session::submit_answer(const ExpertAnswer& answer, const std::string& token) {
  if (status() != SessionStatus::awaiting_answer) return {false, "not_awaiting", "the exploration is complete"};
  if (token != this->token()) return {false, "stale_token", "the question token does not match the pending question"};
  const SubmitOutcome outcome = exploration_.submit(answer);
  writer_.sync(exploration_.base().journal());
  if (outcome.accepted()) return {true, {}, {}};
  return {false, std::string(to_string(outcome.rejection)), outcome.diagnostic};
}

json Session::snapshot(std::size_t tail) const {
  const auto& s = schema();
  const auto& journal = base().journal();
  json pending_json = nullptr;
  if (const auto& q = pending()) {
    pending_json = {{"premise", s.names_of(q->implication.premise())},
                    {"conclusion", s.names_of(q->implication.conclusion())},
                    {"added", s.names_of(q->implication.conclusion() - q->implication.premise())},
                    {"token", token()}};
  }
  const auto questions = std::count_if(journal.begin(), journal.end(),
                                       [](const JournalEntry& e) { return e.actor == Actor::expert; });
  json tail_json = json::array();
  for (std::size_t i = journal.size() > tail ? journal.size() - tail : 0; i < journal.size(); ++i)
    tail_json.push_back(entry_to_json(journal[i], s));
  return {{"session_id", id_},
          {"status", std::string(to_string(status()))},
          {"schema", schema_to_json(s)},
          {"implications", implications_to_json(base().implications(), s)},
          {"examples", examples_to_json(base().examples(), s)},
          {"pending", pending_json},
          {"question_count", questions},
          {"consistent", is_consistent(base(), s)},
          {"journal_length", journal.size()},
          {"journal_tail", tail_json}};
}

json Session::journal_page(std::size_t offset, std::size_t limit) const {
  const auto& journal = base().journal();
  json entries = json::array();
  for (std::size_t i = offset; i < journal.size() && i < offset + limit; ++i)
    entries.push_back(entry_to_json(journal[i], schema()));
  return {{"total", journal.size()}, {"offset", offset}, {"entries", entries}};
}

Session create_session(const std::string& schema_file, const std::string& examples_file,
                       const std::string& journal_path, std::string id) {
  ExplorationSchema schema = load_schema(schema_file);
  std::vector<PartialExample> examples;
  if (!examples_file.empty()) examples = examples_from_json(read_json_file(examples_file), schema);
  return Session(std::move(id), std::move(schema), examples, journal_path);
}

SessionManager::SessionManager(std::filesystem::path directory) : directory_(std::move(directory)) {
  std::filesystem::create_directories(directory_);
}

std::size_t SessionManager::load_existing() {
  std::size_t loaded = 0;
  const std::string suffix = ".schema.json";
  for (const auto& entry : std::filesystem::directory_iterator(directory_)) {
    const std::string name = entry.path().filename().string();
    if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
    const std::string id = name.substr(0, name.size() - suffix.size());
    auto schema = load_schema(entry.path().string());
    auto slot = std::make_shared<Slot>();
    slot->session = std::make_unique<Session>(
        Session::resume(id, (directory_ / (id + ".journal.jsonl")).string(), std::move(schema)));
    std::unique_lock lock(mutex_);
    sessions_[id] = std::move(slot);
    ++loaded;
  }
  return loaded;
}

std::string SessionManager::create(const ExplorationSchema& schema, const std::vector<PartialExample>& initial_examples) {
  static thread_local std::mt19937_64 rng(std::random_device{}());
  std::string id;
  do {
    id = hex(rng());
  } while (exists(id));
  {
    std::ofstream out(directory_ / (id + ".schema.json"));
    out << schema_to_json(schema).dump(2) << '\n';
  }
  auto slot = std::make_shared<Slot>();
  try {
    slot->session = std::make_unique<Session>(id, schema, initial_examples, (directory_ / (id + ".journal.jsonl")).string());
  } catch (...) {
    std::filesystem::remove(directory_ / (id + ".schema.json"));
    std::filesystem::remove(directory_ / (id + ".journal.jsonl"));
    throw;
  }
  std::unique_lock lock(mutex_);
  sessions_[id] = std::move(slot);
  return id;
}

bool SessionManager::exists(const std::string& id) const {
  std::shared_lock lock(mutex_);
  return sessions_.count(id) != 0;
}

std::shared_ptr<SessionManager::Slot> SessionManager::slot(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw std::out_of_range("unknown session '" + id + "'");
  return it->second;
}

json SessionManager::state(const std::string& id) const {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  return s->session->snapshot();
}

json SessionManager::journal(const std::string& id, std::size_t offset, std::size_t limit) const {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  return s->session->journal_page(offset, limit);
}

AnswerResult SessionManager::answer(const std::string& id, const json& answer, const std::string& token) {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  return s->session->submit_answer(answer_from_json(answer, s->session->schema()), token);
}

std::vector<std::string> SessionManager::ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

namespace {

HttpReply error_reply(int status, const std::string& reason, const std::string& message) {
  return {status, {{"reason", reason}, {"message", message}}};
}

int status_for(const std::string& reason) {
  if (reason == "condition_i" || reason == "condition_iii") return 422;
  return 409;
}

}  // namespace

HttpReply SessionService::create(const std::string& body) {
  try {
    const json doc = json::parse(body);
    const ExplorationSchema schema = schema_from_json(doc.at("schema"));
    std::vector<PartialExample> examples;
    if (doc.contains("examples")) examples = examples_from_json(doc.at("examples"), schema);
    const std::string id = manager_.create(schema, examples);
    return {201, {{"session_id", id}, {"state", manager_.state(id)}}};
  } catch (const InconsistencyError& e) {
    return error_reply(422, "inconsistent_examples", e.what());
  } catch (const std::exception& e) {
    return error_reply(400, "bad_request", e.what());
  }
}

HttpReply SessionService::state(const std::string& id) {
  try {
    return {200, manager_.state(id)};
  } catch (const std::out_of_range& e) {
    return error_reply(404, "not_found", e.what());
  }
}

HttpReply SessionService::answer(const std::string& id, const std::string& body) {
  if (!manager_.exists(id)) return error_reply(404, "not_found", "unknown session '" + id + "'");
  json doc;
  try {
    doc = json::parse(body);
    if (!doc.contains("token") || !doc.contains("answer")) return error_reply(400, "bad_request", "token and answer are required");
  } catch (const json::exception& e) {
    return error_reply(400, "bad_request", e.what());
  }
  try {
    const AnswerResult r = manager_.answer(id, doc.at("answer"), doc.at("token").get<std::string>());
    if (!r.accepted) return error_reply(status_for(r.reason), r.reason, r.diagnostic);
    return {200, manager_.state(id)};
  } catch (const std::out_of_range& e) {
    return error_reply(404, "not_found", e.what());
  } catch (const std::exception& e) {
    return error_reply(400, "bad_request", e.what());
  }
}

HttpReply SessionService::journal(const std::string& id, std::size_t offset, std::size_t limit) {
  try {
    return {200, manager_.journal(id, offset, limit)};
  } catch (const std::out_of_range& e) {
    return error_reply(404, "not_found", e.what());
  }
}

}  // namespace attrex
