#include "attrex/cli.hpp"

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "attrex/engine.hpp"
#include "attrex/errors.hpp"
#include "attrex/http_server.hpp"
#include "attrex/journal_io.hpp"
#include "attrex/session.hpp"

namespace attrex::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& names) {
  if (names.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
  return s;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << content;
}

ScriptedDomain load_domain(const CliConfig& config, const ExplorationSchema& schema, json& doc) {
  doc = read_json_file(config.domain);
  ScriptedDomain dom = domain_from_json(doc, schema);
  MaskPolicy policy = dom.policy();
  bool seeded = doc.contains("mask") && doc.at("mask").contains("seed");
  if (config.mask) policy = parse_mask(*config.mask, schema);
  if (config.seed) {
    policy.seed = *config.seed;
    seeded = true;
  } else if (config.mask) {
    policy.seed = dom.policy().seed;
  }
  if (policy.kind == MaskPolicy::Kind::per_query_random && !seeded)
    throw ParseError("the per-query-random mask policy needs a seed (--seed or mask.seed)");
  return ScriptedDomain(schema, dom.members(), policy);
}

std::string list_implications(const ImplicationList& l, const ExplorationSchema& schema) {
  std::string s;
  for (const auto& imp : l) s += format_implication(imp, schema) + "\n";
  return s;
}

json sets_to_json(const std::vector<AttributeSet>& sets, const ExplorationSchema& schema) {
  json out = json::array();
  for (auto s : sets) out.push_back(schema.names_of(s));
  return out;
}

}  // namespace

std::string format_implication(const Implication& imp, const ExplorationSchema& schema) {
  const std::string lhs = join(schema.names_of(imp.premise()));
  if (imp.bottom()) return lhs + " -> bottom";
  return lhs + " -> " + join(schema.names_of(imp.conclusion() - imp.premise()));
}

MaskPolicy parse_mask(const std::string& text, const ExplorationSchema& schema) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  MaskPolicy policy;
  policy.kind = mask_kind_from_string(kind);
  if (colon != std::string::npos) {
    if (policy.kind != MaskPolicy::Kind::fixed_hide_set) throw ParseError("only fixed-hide-set takes attributes");
    policy.hide = schema.set_of(split(text.substr(colon + 1), ','));
  }
  return policy;
}

int cmd_explore(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const ExplorationSchema schema = load_schema(config.schema);
    json doc;
    const ScriptedDomain dom = load_domain(config, schema, doc);
    std::vector<PartialExample> initial;
    if (doc.contains("examples")) initial = examples_from_json(doc.at("examples"), schema);

    const ExplorationResult result = explore(schema, answer_source(dom), initial, config.budget);

    const fs::path dir = config.out.empty() ? fs::path(".") : fs::path(config.out);
    fs::create_directories(dir);
    const fs::path journal = config.journal.empty() ? dir / "journal.jsonl" : fs::path(config.journal);
    write_journal(journal.string(), result.final_base.journal(), schema);
    write_file(dir / "implications.json", implications_to_json(result.validated, schema).dump(2) + "\n");
    write_file(dir / "implications.txt", list_implications(result.validated, schema));
    const bool complete = result.terminated == Termination::complete;
    json summary = {{"terminated", complete ? "complete" : "budget_exhausted"},
                    {"question_count", result.question_count},
                    {"implications", result.validated.size()},
                    {"examples", result.final_base.examples().size()},
                    {"rejected_answers", result.rejected_answers},
                    {"order_violations", result.order_violations}};
    if (schema.size() <= config.max_enum) {
      const auto realizer = minimal_realizer_report(result.validated, schema.background(), schema, config.max_enum);
      write_file(dir / "realizer.json", sets_to_json(realizer, schema).dump(2) + "\n");
      summary["minimal_realizer_size"] = realizer.size();
    }
    write_file(dir / "summary.json", summary.dump(2) + "\n");

    out << (complete ? "exploration complete" : "budget exhausted") << " after " << result.question_count
        << " questions\n"
        << list_implications(result.validated, schema);
    return 0;
  } catch (const std::exception& e) {
    err << "explore: " << e.what() << "\n";
    return 1;
  }
}

int cmd_replay(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const ExplorationSchema schema = load_schema(config.schema);
    const auto entries = read_journal(config.journal, schema);
    const ReplayReport report = verify_journal(entries, schema);
    out << "implications:\n" << list_implications(report.base.implications(), schema);
    out << "examples:\n";
    for (const auto& ex : report.base.examples())
      out << "(" << join(schema.names_of(ex.lower())) << " | " << join(schema.names_of(ex.upper())) << ")\n";
    if (!report.clean) {
      err << "divergence at seq " << report.divergent_seq << ": " << report.message << "\n";
      return 2;
    }
    out << "replay clean (" << entries.size() << " entries)\n";
    return 0;
  } catch (const JournalError& e) {
    err << "divergence at seq " << e.seq() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "replay: " << e.what() << "\n";
    return 1;
  }
}

int cmd_report(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const ExplorationSchema schema = load_schema(config.schema);
    const ExplorationBase base = ExplorationBase::replay(read_journal(config.journal, schema));
    out << "attributes: " << join(schema.attributes()) << "\n";
    out << "implications (" << base.implications().size() << "):\n" << list_implications(base.implications(), schema);
    out << "examples (" << base.examples().size() << ")\n";
    out << "consistent: " << (is_consistent(base, schema) ? "yes" : "no") << "\n";
    out << "redundant implications: " << base.implications().size() - remove_redundant(base.implications()).size()
        << "\n";
    if (const auto q = next_question(base, schema))
      out << "next question: " << format_implication(q->implication, schema) << "\n";
    else
      out << "next question: none (complete)\n";
    if (schema.size() <= config.max_enum) {
      const auto realizer = minimal_realizer_report(base.implications(), schema.background(), schema, config.max_enum);
      out << "minimal realizer (" << realizer.size() << "):\n";
      for (auto s : realizer) out << "  " << schema.format(s) << "\n";
    } else {
      out << "minimal realizer: skipped (" << schema.size() << " attributes exceed --max-enum " << config.max_enum
          << ")\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "report: " << e.what() << "\n";
    return 1;
  }
}

int cmd_validate_expert(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const ExplorationSchema schema = load_schema(config.schema);
    json doc;
    const ScriptedDomain dom = load_domain(config, schema, doc);
    std::vector<Implication> sample;
    if (schema.size() <= 8) {
      sample = all_queries(schema);
    } else {
      std::mt19937_64 rng(config.seed.value_or(0));
      for (int i = 0; i < 2000; ++i) {
        const AttributeSet x = AttributeSet(rng()) & schema.universe();
        sample.emplace_back(x, AttributeSet(rng()) & schema.universe());
      }
    }
    const ExpertReport report = validate_expert(answer_source(dom), schema, sample);
    out << "checked queries: " << report.checked_queries << "\n";
    for (const auto& v : report.violations)
      out << "condition " << v.condition << ": " << format_implication(v.query, schema) << ": " << v.evidence << "\n";
    out << (report.ok() ? "no violations\n" : "violations found\n");
    return report.ok() ? 0 : 2;
  } catch (const std::exception& e) {
    err << "validate-expert: " << e.what() << "\n";
    return 1;
  }
}

namespace {
std::atomic<HttpServer*> g_server{nullptr};
extern "C" void on_signal(int) {
  if (auto* s = g_server.load()) s->stop();
}
}  // namespace

int cmd_serve(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    SessionManager manager(config.journal.empty() ? fs::path("sessions") : fs::path(config.journal));
    const std::size_t resumed = manager.load_existing();
    HttpServer server(manager);
    const int port = server.bind(config.host, config.port);
    if (port < 0) {
      err << "serve: cannot bind " << config.host << ":" << config.port << "\n";
      return 1;
    }
    out << "listening on " << config.host << ":" << port << " (" << resumed << " sessions resumed)" << std::endl;
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.listen();
    g_server = nullptr;
    return 0;
  } catch (const std::exception& e) {
    err << "serve: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace attrex::cli
