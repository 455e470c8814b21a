#include "attrex/schema.hpp"

#include <fstream>
#include <sstream>

#include "attrex/errors.hpp"

namespace attrex {

ExplorationSchema::ExplorationSchema(std::vector<std::string> attributes, std::vector<CumulatedClause> background)
    : attributes_(std::move(attributes)), background_(std::move(background)) {
  if (attributes_.size() > kMaxAttributes)
    throw SchemaError("schema declares " + std::to_string(attributes_.size()) + " attributes, at most " +
                      std::to_string(kMaxAttributes) + " are supported");
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].empty()) throw SchemaError("attribute " + std::to_string(i) + " has an empty name");
    if (!lookup_.emplace(attributes_[i], i).second) throw SchemaError("duplicate attribute name '" + attributes_[i] + "'");
  }
  for (const auto& c : background_) check(c);
}

std::size_t ExplorationSchema::index(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) throw SchemaError("unknown attribute '" + std::string(name) + "'");
  return it->second;
}

void ExplorationSchema::check(AttributeSet s) const {
  if (!s.subset_of(universe()))
    throw SchemaError("attribute index " + std::to_string(s.highest()) + " is outside a universe of " +
                      std::to_string(size()) + " attributes");
}

void ExplorationSchema::check(const CumulatedClause& c) const {
  check(c.premise);
  for (auto b : c.disjuncts) check(b);
}

AttributeSet ExplorationSchema::set_of(const std::vector<std::string>& names) const {
  AttributeSet s;
  for (const auto& n : names) s.insert(index(n));
  return s;
}

std::vector<std::string> ExplorationSchema::names_of(AttributeSet s) const {
  check(s);
  std::vector<std::string> out;
  for (auto i : s.members()) out.push_back(attributes_[i]);
  return out;
}

std::string ExplorationSchema::format(AttributeSet s) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto i : s.members()) {
    if (!first) os << ", ";
    first = false;
    if (i < attributes_.size())
      os << attributes_[i];
    else
      os << '#' << i;
  }
  os << '}';
  return os.str();
}

bool satisfies_clause(const ExplorationSchema& schema, AttributeSet x, const CumulatedClause& c) {
  schema.check(x);
  schema.check(c);
  return holds(x, c);
}

bool compatible_with_background(AttributeSet x, const std::vector<CumulatedClause>& background) {
  for (const auto& c : background)
    if (!holds(x, c)) return false;
  return true;
}

bool compatible_with_background(AttributeSet x, const ExplorationSchema& schema) {
  return compatible_with_background(x, schema.background());
}

nlohmann::json schema_to_json(const ExplorationSchema& schema) {
  nlohmann::json bg = nlohmann::json::array();
  for (const auto& c : schema.background()) {
    nlohmann::json disjuncts = nlohmann::json::array();
    for (auto b : c.disjuncts) disjuncts.push_back(schema.names_of(b));
    bg.push_back({{"premise", schema.names_of(c.premise)}, {"disjuncts", disjuncts}});
  }
  return {{"attributes", schema.attributes()}, {"background", bg}};
}

ExplorationSchema schema_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("attributes")) throw ParseError("schema: missing 'attributes'");
    auto attributes = doc.at("attributes").get<std::vector<std::string>>();
    // Clauses are resolved against a name-only schema first.
    ExplorationSchema names_only(attributes);
    std::vector<CumulatedClause> background;
    if (doc.contains("background")) {
      for (const auto& c : doc.at("background")) {
        CumulatedClause clause;
        clause.premise = names_only.set_of(c.at("premise").get<std::vector<std::string>>());
        if (c.contains("disjuncts"))
          for (const auto& d : c.at("disjuncts")) clause.disjuncts.push_back(names_only.set_of(d.get<std::vector<std::string>>()));
        background.push_back(std::move(clause));
      }
    }
    return ExplorationSchema(std::move(attributes), std::move(background));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("schema: ") + e.what());
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

ExplorationSchema load_schema(const std::string& path) { return schema_from_json(read_json_file(path)); }

}  // namespace attrex
