#include <doctest.h>

#include <vector>

#include "attrex/errors.hpp"
#include "attrex/journal_io.hpp"
#include "attrex/session.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"

using namespace attrex;
using testing_support::slurp;
using testing_support::spit;
using testing_support::TempDir;

namespace {
constexpr std::size_t a = 0, b = 1;
const ExplorationSchema ab({"a", "b"});

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string first_lines(const std::vector<std::string>& lines, std::size_t k) {
  std::string out;
  for (std::size_t i = 0; i < k; ++i) out += lines[i] + "\n";
  return out;
}

void run_to_end(Session& s, const ScriptedDomain& dom) {
  while (s.status() == SessionStatus::awaiting_answer) {
    const auto r = s.submit_answer(scripted_answer(dom, s.pending()->implication), s.token());
    REQUIRE(r.accepted);
  }
}
}  // namespace

TEST_CASE("create_session") {
  TempDir dir;
  spit(dir.file("schema.json"), R"({"attributes": ["a", "b"]})");

  SUBCASE("no examples: the first question is ∅ -> ab") {
    const Session s = create_session(dir.file("schema.json"), "", dir.file("j.jsonl"));
    REQUIRE(s.status() == SessionStatus::awaiting_answer);
    CHECK(s.pending()->implication == Implication({}, {a, b}));
    const auto snap = s.snapshot();
    CHECK(snap["implications"].empty());
    CHECK(snap["pending"]["conclusion"] == nlohmann::json({"a", "b"}));
    CHECK(snap["consistent"] == true);
  }
  SUBCASE("the whole power set as examples completes at once") {
    spit(dir.file("ex.json"), R"([{"lower": [], "upper": []}, {"lower": ["a"], "upper": ["a"]},
                                  {"lower": ["b"], "upper": ["b"]}, {"lower": ["a", "b"], "upper": ["a", "b"]}])");
    const Session s = create_session(dir.file("schema.json"), dir.file("ex.json"), dir.file("j.jsonl"));
    CHECK(s.status() == SessionStatus::complete);
    CHECK(s.snapshot()["pending"].is_null());
    CHECK(s.token().empty());
  }
  SUBCASE("malformed schema") {
    spit(dir.file("bad.json"), R"({"attributes": [)");
    CHECK_THROWS_AS(create_session(dir.file("bad.json"), "", dir.file("j.jsonl")), ParseError);
  }
  SUBCASE("inconsistent examples name the offender") {
    spit(dir.file("nob.json"), R"({"attributes": ["a", "b"], "background": [{"premise": ["b"], "disjuncts": []}]})");
    spit(dir.file("ex.json"), R"([{"lower": ["a"], "upper": ["a"]}, {"lower": ["b"], "upper": ["a", "b"]}])");
    try {
      create_session(dir.file("nob.json"), dir.file("ex.json"), dir.file("j.jsonl"));
      FAIL("expected an inconsistency error");
    } catch (const InconsistencyError& e) {
      CHECK(std::string(e.what()).find("#1") != std::string::npos);
    }
  }
}

TEST_CASE("submit_answer") {
  TempDir dir;
  Session s("t", ab, {}, dir.file("j.jsonl"));

  SUBCASE("counter-example then the next question") {
    const auto r = s.submit_answer(ExpertAnswer::counterexample({{a}, {a}}), s.token());
    CHECK(r.accepted);
    CHECK(s.pending()->implication == Implication({}, {a}));
  }
  SUBCASE("condition i") {
    REQUIRE(s.submit_answer(ExpertAnswer::counterexample({{}, {}}), s.token()).accepted);
    REQUIRE(s.pending()->implication == Implication({a}, {a, b}));
    const auto before = s.base().journal().size();
    const auto r = s.submit_answer(ExpertAnswer::counterexample({{b}, {b}}), s.token());
    CHECK_FALSE(r.accepted);
    CHECK(r.reason == "condition_i");
    CHECK(s.base().journal().size() == before);
  }
  SUBCASE("two valid answers in a row") {
    REQUIRE(s.submit_answer(ExpertAnswer::counterexample({{}, {}}), s.token()).accepted);
    CHECK(s.submit_answer(ExpertAnswer::valid(), s.token()).accepted);
    REQUIRE(s.status() == SessionStatus::awaiting_answer);
    CHECK(s.submit_answer(ExpertAnswer::valid(), s.token()).accepted);
  }
  SUBCASE("stale token leaves the journal alone") {
    const std::string old = s.token();
    REQUIRE(s.submit_answer(ExpertAnswer::counterexample({{a}, {a}}), old).accepted);
    const auto length = slurp(dir.file("j.jsonl")).size();
    const auto r = s.submit_answer(ExpertAnswer::valid(), old);
    CHECK(r.reason == "stale_token");
    CHECK(slurp(dir.file("j.jsonl")).size() == length);
  }
  SUBCASE("snapshots do not touch the journal") {
    const auto text = slurp(dir.file("j.jsonl"));
    for (int i = 0; i < 5; ++i) s.snapshot();
    CHECK(slurp(dir.file("j.jsonl")) == text);
  }
  SUBCASE("answers after completion") {
    run_to_end(s, ScriptedDomain(ab, {{}, {a}, {a, b}}));
    CHECK(s.submit_answer(ExpertAnswer::valid(), "").reason == "not_awaiting");
    CHECK(s.base().implications() == ImplicationList{Implication({b}, {a, b})});
  }
}

TEST_CASE("resume") {
  TempDir dir;
  const ScriptedDomain dom(ab, {{}, {a}, {a, b}});

  SUBCASE("a completed session stays complete") {
    {
      Session s("t", ab, {}, dir.file("j.jsonl"));
      run_to_end(s, dom);
    }
    const Session r = Session::resume("t", dir.file("j.jsonl"), ab);
    CHECK(r.status() == SessionStatus::complete);
    CHECK(r.base().implications() == ImplicationList{Implication({b}, {a, b})});
  }
  SUBCASE("half a session poses the same question") {
    std::string token;
    std::optional<Question> pending;
    {
      Session s("t", ab, {}, dir.file("j.jsonl"));
      REQUIRE(s.submit_answer(scripted_answer(dom, s.pending()->implication), s.token()).accepted);
      token = s.token();
      pending = s.pending();
    }
    const Session r = Session::resume("t", dir.file("j.jsonl"), ab);
    CHECK(r.pending() == pending);
    CHECK(r.token() == token);
  }
  SUBCASE("a truncated last line names its sequence number") {
    {
      Session s("t", ab, {}, dir.file("j.jsonl"));
      run_to_end(s, dom);
    }
    const auto lines = lines_of(slurp(dir.file("j.jsonl")));
    REQUIRE(lines.size() >= 2);
    spit(dir.file("cut.jsonl"), first_lines(lines, lines.size() - 1) + lines.back().substr(0, lines.back().size() / 2));
    try {
      Session::resume("t", dir.file("cut.jsonl"), ab);
      FAIL("expected a journal error");
    } catch (const JournalError& e) {
      CHECK(e.seq() == lines.size());
    }
  }
}

TEST_CASE("every journal prefix resumes to the same final implications") {
  oracle::Rng rng(97);
  for (int round = 0; round < 20; ++round) {
    TempDir dir;
    const std::size_t n = 2 + rng.below(3);
    const auto k = oracle::random_background(rng, n, 2, 2);
    const ExplorationSchema schema(oracle::names(n), k);
    const ScriptedDomain dom(schema, oracle::random_domain(rng, n, k, 8), MaskPolicy::random(rng.below(1000)));
    ImplicationList final_l;
    {
      Session s("t", schema, {}, dir.file("full.jsonl"));
      run_to_end(s, dom);
      final_l = s.base().implications();
    }
    const auto lines = lines_of(slurp(dir.file("full.jsonl")));
    for (std::size_t cut = 0; cut <= lines.size(); ++cut) {
      spit(dir.file("p.jsonl"), first_lines(lines, cut));
      Session r = Session::resume("t", dir.file("p.jsonl"), schema);
      run_to_end(r, dom);
      REQUIRE(r.base().implications() == final_l);
      REQUIRE(slurp(dir.file("p.jsonl")) == slurp(dir.file("full.jsonl")));
    }
  }
}

TEST_CASE("session manager") {
  TempDir dir;
  SessionManager manager(dir.path());
  const std::string id1 = manager.create(ab, {});
  const std::string id2 = manager.create(ab, {});
  CHECK(id1 != id2);
  CHECK(manager.exists(id1));
  CHECK_THROWS_AS(manager.state("nope"), std::out_of_range);

  const auto token = manager.state(id1)["pending"]["token"].get<std::string>();
  const auto r = manager.answer(id1, nlohmann::json::parse(R"({"lower": ["a"], "upper": ["a"]})"), token);
  CHECK(r.accepted);
  CHECK(manager.state(id1)["journal_length"] == 1);
  CHECK(manager.state(id2)["journal_length"] == 0);

  SessionManager again(dir.path());
  CHECK(again.load_existing() == 2);
  CHECK(again.state(id1)["pending"] == manager.state(id1)["pending"]);
}

TEST_CASE("session service status codes") {
  TempDir dir;
  SessionManager manager(dir.path());
  SessionService service(manager);

  const auto created = service.create(R"({"schema": {"attributes": ["a", "b"]}, "examples": []})");
  REQUIRE(created.status == 201);
  const std::string id = created.body["session_id"];
  CHECK(service.state("missing").status == 404);
  CHECK(service.create("{").status == 400);
  CHECK(service.create(R"({"schema": {"attributes": ["a"], "background": [{"premise": ["a"], "disjuncts": []}]},
                           "examples": [{"lower": ["a"], "upper": ["a"]}]})")
            .status == 422);

  const std::string token = service.state(id).body["pending"]["token"];
  auto stale = service.answer(id, R"({"token": "q0-x", "answer": {"valid": true}})");
  CHECK(stale.status == 409);
  CHECK(stale.body["reason"] == "stale_token");

  nlohmann::json ok = {{"token", token}, {"answer", {{"lower", {"a"}}, {"upper", {"a"}}}}};
  CHECK(service.answer(id, ok.dump()).status == 200);
  const std::string token2 = service.state(id).body["pending"]["token"];
  nlohmann::json bad = {{"token", token2}, {"answer", {{"lower", {"a"}}, {"upper", {"a", "b"}}}}};
  const auto rejected = service.answer(id, bad.dump());
  CHECK(rejected.status == 422);
  CHECK(rejected.body["reason"] == "condition_i");

  const auto page = service.journal(id, 0, 1);
  CHECK(page.status == 200);
  CHECK(page.body["entries"].size() == 1);
  CHECK(page.body["total"] == 1);
  CHECK(service.journal("missing", 0, 10).status == 404);
}
