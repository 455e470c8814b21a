#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "attrex/engine.hpp"
#include "attrex/journal_io.hpp"

namespace attrex {

enum class SessionStatus { awaiting_answer, complete };

std::string_view to_string(SessionStatus s);

/// Outcome of submit_answer. `reason` is one of the wire reason codes:
/// condition_i, condition_iii, consistency, stale_token, not_awaiting.
struct AnswerResult {
  bool accepted = false;
  std::string reason;
  std::string diagnostic;
};

/// A resumable exploration bound to an append-only journal file.
///
/// Every base modification is appended to the journal before the call
/// returns; the schema plus the journal determine the whole state.
class Session {
 public:
  /// Throws InconsistencyError for initial examples without a completion.
  Session(std::string id, ExplorationSchema schema, const std::vector<PartialExample>& initial_examples,
          const std::string& journal_path);

  /// Replays the journal (any prefix of a valid one is accepted), finishes a
  /// normalization that was cut short, and poses the same question again.
  /// Throws JournalError naming the first corrupt record.
  static Session resume(std::string id, const std::string& journal_path, ExplorationSchema schema);

  const std::string& id() const { return id_; }
  const ExplorationSchema& schema() const { return exploration_.schema(); }
  const ExplorationBase& base() const { return exploration_.base(); }
  const std::optional<Question>& pending() const { return exploration_.pending(); }
  SessionStatus status() const {
    return exploration_.complete() ? SessionStatus::complete : SessionStatus::awaiting_answer;
  }
  /// Token of the pending question, empty when complete. Derived from the
  /// journal length and the question, so it survives resumption.
  std::string token() const;

  AnswerResult submit_answer(const ExpertAnswer& answer, const std::string& token);

  /// Read-only snapshot: schema, implications, examples, pending question,
  /// journal tail and consistency flag.
  nlohmann::json snapshot(std::size_t tail = 10) const;
  nlohmann::json journal_page(std::size_t offset, std::size_t limit) const;

 private:
  Session(std::string id, Exploration exploration, const std::string& journal_path, std::size_t written);

  std::string id_;
  Exploration exploration_;
  JournalWriter writer_;
};

/// create_session from files: schema JSON, examples JSON (a list, or an
/// object with "examples"; empty path means none).
Session create_session(const std::string& schema_file, const std::string& examples_file,
                       const std::string& journal_path, std::string id = "local");

/// Hosts many sessions in a directory: <id>.schema.json and <id>.journal.jsonl.
/// One writer per session at a time; snapshots may be taken concurrently.
class SessionManager {
 public:
  explicit SessionManager(std::filesystem::path directory);

  /// Resumes every session found in the directory. Returns how many.
  std::size_t load_existing();

  std::string create(const ExplorationSchema& schema, const std::vector<PartialExample>& initial_examples);
  bool exists(const std::string& id) const;

  /// Throws std::out_of_range for an unknown id.
  nlohmann::json state(const std::string& id) const;
  nlohmann::json journal(const std::string& id, std::size_t offset, std::size_t limit) const;
  AnswerResult answer(const std::string& id, const nlohmann::json& answer, const std::string& token);

  std::vector<std::string> ids() const;

 private:
  struct Slot {
    mutable std::mutex mutex;
    std::unique_ptr<Session> session;
  };
  std::shared_ptr<Slot> slot(const std::string& id) const;

  std::filesystem::path directory_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
};

/// The JSON-over-HTTP protocol as plain request handlers.
struct HttpReply {
  int status = 200;
  nlohmann::json body;
};

class SessionService {
 public:
  explicit SessionService(SessionManager& manager) : manager_(manager) {}

  /// POST /sessions  {"schema": {...}, "examples": [...]}
  HttpReply create(const std::string& body);
  /// GET /sessions/{id}/state
  HttpReply state(const std::string& id);
  /// POST /sessions/{id}/answer  {"token": "...", "answer": {"valid": true} | {"lower": [...], "upper": [...]}}
  HttpReply answer(const std::string& id, const std::string& body);
  /// GET /sessions/{id}/journal?offset=&limit=
  HttpReply journal(const std::string& id, std::size_t offset, std::size_t limit);

 private:
  SessionManager& manager_;
};

}  // namespace attrex
