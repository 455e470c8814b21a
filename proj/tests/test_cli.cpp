#include <doctest.h>

#include <httplib.h>
#include <signal.h>
#include <sys/wait.h>

#include <cstdlib>
#include <sstream>
#include <thread>

#include "attrex/cli.hpp"
#include "support/tempdir.hpp"

using nlohmann::json;
using testing_support::slurp;
using testing_support::spit;
using testing_support::TempDir;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

Run run_tool(const TempDir& dir, const std::string& args) {
  const std::string out = dir.file("stdout.txt");
  const std::string err = dir.file("stderr.txt");
  const std::string cmd = std::string("\"") + ATTREX_TOOL_PATH + "\" " + args + " >\"" + out + "\" 2>\"" + err + "\"";
  const int raw = std::system(cmd.c_str());
  Run r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

void write_toy(const TempDir& dir) {
  spit(dir.file("schema.json"), R"({"attributes": ["a", "b"]})");
  spit(dir.file("domain.json"), R"({"sets": [[], ["a"], ["a", "b"]]})");
}

std::string toy_args(const TempDir& dir, const std::string& out) {
  return "explore --schema \"" + dir.file("schema.json") + "\" --domain \"" + dir.file("domain.json") + "\" --out \"" +
         dir.file(out) + "\"";
}

}  // namespace

TEST_CASE("explore on the toy domain") {
  TempDir dir;
  write_toy(dir);
  const Run r = run_tool(dir, toy_args(dir, "out"));
  REQUIRE(r.status == 0);
  CHECK(slurp(dir.file("out/implications.txt")) == "b -> a\n");
  const json summary = json::parse(slurp(dir.file("out/summary.json")));
  CHECK(summary["terminated"] == "complete");
  CHECK(summary["question_count"] == 3);
  CHECK(json::parse(slurp(dir.file("out/realizer.json"))).size() == 3);
  CHECK(std::filesystem::exists(dir.file("out/journal.jsonl")));
}

TEST_CASE("explore with budget zero") {
  TempDir dir;
  write_toy(dir);
  const Run r = run_tool(dir, toy_args(dir, "out") + " --budget 0");
  REQUIRE(r.status == 0);
  CHECK(slurp(dir.file("out/implications.txt")).empty());
  CHECK(json::parse(slurp(dir.file("out/summary.json")))["terminated"] == "budget_exhausted");
}

TEST_CASE("explore refuses a domain outside the background") {
  TempDir dir;
  spit(dir.file("schema.json"), R"({"attributes": ["a", "b"], "background": [{"premise": ["a", "b"], "disjuncts": []}]})");
  spit(dir.file("domain.json"), R"({"sets": [["a", "b"]]})");
  const Run r = run_tool(dir, toy_args(dir, "out"));
  CHECK(r.status != 0);
  CHECK(r.err.find("background") != std::string::npos);
}

TEST_CASE("per-query-random masking needs a seed") {
  TempDir dir;
  write_toy(dir);
  CHECK(run_tool(dir, toy_args(dir, "out") + " --mask per-query-random").status != 0);
  CHECK(run_tool(dir, toy_args(dir, "out") + " --mask per-query-random --seed 4").status == 0);
}

TEST_CASE("explore is byte-for-byte reproducible") {
  TempDir dir;
  spit(dir.file("schema.json"),
       R"({"attributes": ["a", "b", "c", "d"], "background": [{"premise": ["a"], "disjuncts": [["b"], ["c"]]}]})");
  spit(dir.file("domain.json"), R"({"sets": [[], ["a", "b"], ["a", "c", "d"], ["b", "d"], ["c"]]})");
  const std::string extra = " --mask per-query-random --seed 17";
  REQUIRE(run_tool(dir, toy_args(dir, "one") + extra).status == 0);
  REQUIRE(run_tool(dir, toy_args(dir, "two") + extra).status == 0);
  CHECK(slurp(dir.file("one/journal.jsonl")) == slurp(dir.file("two/journal.jsonl")));
  CHECK(slurp(dir.file("one/implications.json")) == slurp(dir.file("two/implications.json")));
}

TEST_CASE("replay") {
  TempDir dir;
  write_toy(dir);
  REQUIRE(run_tool(dir, toy_args(dir, "out")).status == 0);
  const std::string journal = dir.file("out/journal.jsonl");
  const std::string base = "replay --schema \"" + dir.file("schema.json") + "\" --journal ";

  const Run clean = run_tool(dir, base + "\"" + journal + "\"");
  CHECK(clean.status == 0);
  CHECK(clean.out.find("replay clean") != std::string::npos);
  CHECK(clean.out.find("b -> a") != std::string::npos);

  SUBCASE("an edited implication payload diverges at its record") {
    std::istringstream in(slurp(journal));
    std::string edited;
    std::uint64_t target = 0;
    for (std::string line; std::getline(in, line);) {
      json rec = json::parse(line);
      if (target == 0 && rec["action"] == "add_implication") {
        rec["payload"]["after"]["conclusion"] = json({"b"});
        target = rec["seq"];
      }
      edited += rec.dump() + "\n";
    }
    REQUIRE(target != 0);
    spit(dir.file("edited.jsonl"), edited);
    const Run r = run_tool(dir, base + "\"" + dir.file("edited.jsonl") + "\"");
    CHECK(r.status == 2);
    CHECK(r.err.find("divergence at seq " + std::to_string(target)) != std::string::npos);
  }
}

TEST_CASE("report and validate-expert") {
  TempDir dir;
  write_toy(dir);
  REQUIRE(run_tool(dir, toy_args(dir, "out")).status == 0);
  const Run rep =
      run_tool(dir, "report --schema \"" + dir.file("schema.json") + "\" --journal \"" + dir.file("out/journal.jsonl") + "\"");
  CHECK(rep.status == 0);
  CHECK(rep.out.find("next question: none") != std::string::npos);

  const Run val = run_tool(dir, "validate-expert --schema \"" + dir.file("schema.json") + "\" --domain \"" +
                                    dir.file("domain.json") + "\" --mask fixed-hide-set:b");
  CHECK(val.status == 0);
  CHECK(val.out.find("no violations") != std::string::npos);
}

TEST_CASE("format_implication and parse_mask") {
  const attrex::ExplorationSchema schema({"a", "b", "c"});
  CHECK(attrex::cli::format_implication(attrex::Implication({0, 1}, {2}), schema) == "a, b -> c");
  CHECK(attrex::cli::format_implication(attrex::Implication({}, {0}), schema) == "{} -> a");
  const auto m = attrex::cli::parse_mask("fixed-hide-set:a,c", schema);
  CHECK(m.kind == attrex::MaskPolicy::Kind::fixed_hide_set);
  CHECK(m.hide == attrex::AttributeSet{0, 2});
}

namespace {

// `attrex serve` in the background; stopped with SIGINT.
class ServeProcess {
 public:
  ServeProcess(const TempDir& dir, const std::string& sessions, const std::string& tag) : log_(dir.file(tag + ".log")) {
    const std::string pid_file = dir.file(tag + ".pid");
    const std::string cmd = std::string("\"") + ATTREX_TOOL_PATH + "\" serve --port 0 --journal \"" + sessions +
                            "\" >\"" + log_ + "\" 2>&1 & echo $! >\"" + pid_file + "\"";
    REQUIRE(std::system(cmd.c_str()) == 0);
    pid_ = std::stoi(slurp(pid_file));
    for (int i = 0; i < 200 && port_ < 0; ++i) {
      const std::string text = slurp(log_);
      const auto at = text.find("listening on ");
      if (at != std::string::npos) {
        const auto colon = text.find(':', at);
        port_ = std::stoi(text.substr(colon + 1));
      } else {
        std::this_thread::sleep_for(std::chrono::milliseconds(25));
      }
    }
    REQUIRE(port_ > 0);
  }
  ~ServeProcess() {
    ::kill(pid_, SIGINT);
    for (int i = 0; i < 200 && ::kill(pid_, 0) == 0; ++i) std::this_thread::sleep_for(std::chrono::milliseconds(25));
  }

  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }

 private:
  std::string log_;
  int pid_ = -1;
  int port_ = -1;
};

}  // namespace

TEST_CASE("serve: answers grow the journal and survive a restart") {
  TempDir dir;
  const std::string sessions = dir.file("sessions");
  std::string id;
  json pending;
  {
    ServeProcess server(dir, sessions, "first");
    auto cli = server.client();
    auto created = cli.Post("/sessions", R"({"schema": {"attributes": ["a", "b", "c"]}})", "application/json");
    REQUIRE(created);
    REQUIRE(created->status == 201);
    id = json::parse(created->body)["session_id"];
    const json state = json::parse(cli.Get("/sessions/" + id + "/state")->body);
    json answer = {{"token", state["pending"]["token"]}, {"answer", {{"lower", {"a"}}, {"upper", {"a", "b"}}}}};
    auto r = cli.Post("/sessions/" + id + "/answer", answer.dump(), "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
    const json after = json::parse(cli.Get("/sessions/" + id + "/state")->body);
    CHECK(after["journal_length"].get<int>() > 0);
    pending = after["pending"];
  }
  CHECK_FALSE(slurp(sessions + "/" + id + ".journal.jsonl").empty());
  ServeProcess again(dir, sessions, "second");
  auto cli = again.client();
  auto state = cli.Get("/sessions/" + id + "/state");
  REQUIRE(state);
  CHECK(json::parse(state->body)["pending"] == pending);
}
