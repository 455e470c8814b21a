#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "attrex/attribute_set.hpp"

namespace attrex {

/// Background formula  AND(premise) -> OR_i AND(disjuncts[i]).
///
/// An empty disjunct list states that no admissible set contains the premise.
struct CumulatedClause {
  AttributeSet premise;
  std::vector<AttributeSet> disjuncts;

  friend bool operator==(const CumulatedClause&, const CumulatedClause&) = default;
};

/// True iff the premise is not contained in x or some disjunct is.
inline bool holds(AttributeSet x, const CumulatedClause& c) {
  if (!c.premise.subset_of(x)) return true;
  for (auto b : c.disjuncts)
    if (b.subset_of(x)) return true;
  return false;
}

/// The attribute universe plus background knowledge. Immutable once built.
class ExplorationSchema {
 public:
  ExplorationSchema() = default;
  /// Throws SchemaError on duplicate/empty names, more than 64 attributes, or
  /// clauses mentioning indices outside the universe.
  ExplorationSchema(std::vector<std::string> attributes, std::vector<CumulatedClause> background = {});

  std::size_t size() const { return attributes_.size(); }
  AttributeSet universe() const { return AttributeSet::full(attributes_.size()); }
  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::vector<CumulatedClause>& background() const { return background_; }

  const std::string& name(std::size_t index) const { return attributes_.at(index); }
  std::size_t index(std::string_view name) const;

  /// Throws SchemaError if `s` mentions an index outside the universe.
  void check(AttributeSet s) const;
  void check(const CumulatedClause& c) const;

  AttributeSet set_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(AttributeSet s) const;
  /// "{a, b}" style rendering for diagnostics.
  std::string format(AttributeSet s) const;

  friend bool operator==(const ExplorationSchema& a, const ExplorationSchema& b) {
    return a.attributes_ == b.attributes_ && a.background_ == b.background_;
  }

 private:
  std::vector<std::string> attributes_;
  std::vector<CumulatedClause> background_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

/// satisfies_clause with schema range checking.
bool satisfies_clause(const ExplorationSchema& schema, AttributeSet x, const CumulatedClause& c);

/// True iff x satisfies every background clause of the schema.
bool compatible_with_background(AttributeSet x, const ExplorationSchema& schema);
bool compatible_with_background(AttributeSet x, const std::vector<CumulatedClause>& background);

nlohmann::json schema_to_json(const ExplorationSchema& schema);
ExplorationSchema schema_from_json(const nlohmann::json& doc);
ExplorationSchema load_schema(const std::string& path);

/// Reads a whole JSON document from disk; throws ParseError.
nlohmann::json read_json_file(const std::string& path);

}  // namespace attrex
