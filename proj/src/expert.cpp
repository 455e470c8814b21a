#include "attrex/expert.hpp"

#include <algorithm>
#include <random>

#include "attrex/errors.hpp"
#include "attrex/journal_io.hpp"

namespace attrex {

const PartialExample& ExpertAnswer::example() const {
  if (!example_) throw ContractError("a valid answer carries no counter-example");
  return *example_;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::string_view kMaskNames[] = {"none", "fixed-hide-set", "per-query-random", "premise"};

}  // namespace

std::string_view to_string(MaskPolicy::Kind k) { return kMaskNames[static_cast<int>(k)]; }

MaskPolicy::Kind mask_kind_from_string(std::string_view s) {
  for (int i = 0; i < 4; ++i)
    if (kMaskNames[i] == s) return static_cast<MaskPolicy::Kind>(i);
  throw ParseError("unknown mask policy '" + std::string(s) + "'");
}

AttributeSet MaskPolicy::hide_set(const Implication& imp, AttributeSet refuting, AttributeSet universe) const {
  switch (kind) {
    case Kind::none:
      return {};
    case Kind::fixed_hide_set:
      return hide & universe;
    case Kind::per_query_random: {
      std::uint64_t key = splitmix64(seed);
      key = splitmix64(key ^ imp.premise().bits());
      key = splitmix64(key ^ imp.conclusion().bits() ^ (imp.bottom() ? 0x5bd1e995ULL : 0));
      std::mt19937_64 rng(key);
      return AttributeSet(rng()) & universe;
    }
    case Kind::premise_only:
      return refuting - imp.premise();
  }
  return {};
}

PartialExample mask(AttributeSet d, const Implication& imp, AttributeSet hide) {
  if (respects(d, imp)) throw ContractError("mask: the set does not refute the implication");
  const AttributeSet lower = (d - hide) | imp.premise();
  AttributeSet upper = d | hide;
  if (!imp.bottom()) upper.erase(static_cast<std::size_t>((imp.conclusion() - d).members().front()));
  return PartialExample(lower, upper);
}

PartialExample mask(AttributeSet d, const Implication& imp, const MaskPolicy& policy, AttributeSet universe) {
  return mask(d, imp, policy.hide_set(imp, d, universe));
}

ScriptedDomain::ScriptedDomain(ExplorationSchema schema, std::vector<AttributeSet> members, MaskPolicy policy)
    : schema_(std::move(schema)), members_(std::move(members)), policy_(policy) {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    schema_.check(members_[i]);
    if (!compatible_with_background(members_[i], schema_))
      throw SchemaError("domain member #" + std::to_string(i) + " " + schema_.format(members_[i]) +
                        " violates the background knowledge");
  }
  schema_.check(policy_.hide);
}

ExpertAnswer scripted_answer(const ScriptedDomain& dom, const Implication& imp) {
  for (auto d : dom.members())
    if (!respects(d, imp)) return ExpertAnswer::counterexample(mask(d, imp, dom.policy(), dom.schema().universe()));
  return ExpertAnswer::valid();
}

AnswerSource answer_source(ScriptedDomain dom) {
  return [dom = std::move(dom)](const Implication& imp) { return scripted_answer(dom, imp); };
}

AttributeSet expert_closure(const ScriptedDomain& dom, AttributeSet x) {
  AttributeSet meet = dom.schema().universe();
  for (auto d : dom.members())
    if (x.subset_of(d)) meet &= d;
  return meet;
}

bool ExpertReport::has(int condition) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const ExpertViolation& v) { return v.condition == condition; });
}

namespace {

std::string describe(const Implication& imp, const ExplorationSchema& schema) {
  return schema.format(imp.premise()) + " -> " + (imp.bottom() ? std::string("bottom") : schema.format(imp.conclusion()));
}

std::string describe(const PartialExample& ex, const ExplorationSchema& schema) {
  return "(" + schema.format(ex.lower()) + ", " + schema.format(ex.upper()) + ")";
}

}  // namespace

ExpertReport validate_expert(const AnswerSource& source, const ExplorationSchema& schema,
                             const ImplicationList& validated, const std::vector<Implication>& sample) {
  ExpertReport report;
  ImplicationList valid_queries;
  std::vector<std::pair<Implication, PartialExample>> counterexamples;
  for (const auto& q : sample) {
    const ExpertAnswer ans = source(q);
    ++report.checked_queries;
    if (ans.is_valid()) {
      valid_queries.push_back(q);
      continue;
    }
    const PartialExample& ex = ans.example();
    counterexamples.emplace_back(q, ex);
    if (!refutes(ex, q))
      report.violations.push_back({q, 1, describe(ex, schema) + " does not refute " + describe(q, schema)});
    if (!find_completion(ex, validated, schema.background(), schema))
      report.violations.push_back({q, 3, describe(ex, schema) + " has no compatible completion"});
  }
  for (const auto& [q, ex] : counterexamples)
    for (const auto& v : valid_queries)
      if (refutes(ex, v))
        report.violations.push_back({q, 2, describe(ex, schema) + " refutes " + describe(v, schema) +
                                               ", which was answered valid"});
  return report;
}

ExpertReport validate_expert(const AnswerSource& source, const ExplorationSchema& schema,
                             const std::vector<Implication>& sample) {
  ImplicationList validated;
  for (const auto& q : sample)
    if (source(q).is_valid()) validated.push_back(q);
  return validate_expert(source, schema, validated, sample);
}

std::vector<Implication> all_queries(const ExplorationSchema& schema, std::size_t limit) {
  if (schema.size() > limit)
    throw SizeLimitError("exhaustive query set over " + std::to_string(schema.size()) +
                         " attributes exceeds the limit of " + std::to_string(limit));
  std::vector<Implication> out;
  for_each_subset(schema.universe(), [&](AttributeSet x) {
    for_each_subset(schema.universe() - x, [&](AttributeSet extra) { out.emplace_back(x, x | extra); });
  });
  return out;
}

ExpertAnswer normalize_expert_answer(const ExpertAnswer& ans, const ImplicationList& theory) {
  if (ans.is_valid()) return ans;
  const PartialExample& ex = ans.example();
  const Closure c = implication_closure(theory, ex.lower());
  if (c.bottom || !c.set.subset_of(ex.upper()))
    throw InconsistencyError("the theory closure of the lower bound leaves the upper bound");
  return ExpertAnswer::counterexample(PartialExample(c.set, ex.upper()));
}

ScriptedDomain domain_from_json(const nlohmann::json& doc, const ExplorationSchema& schema) {
  try {
    std::vector<AttributeSet> members;
    for (const auto& s : doc.at("sets")) members.push_back(schema.set_of(s.get<std::vector<std::string>>()));
    MaskPolicy policy;
    if (doc.contains("mask")) {
      const auto& m = doc.at("mask");
      policy.kind = mask_kind_from_string(m.value("policy", std::string("none")));
      if (m.contains("hide")) policy.hide = schema.set_of(m.at("hide").get<std::vector<std::string>>());
      policy.seed = m.value("seed", std::uint64_t{0});
    }
    return ScriptedDomain(schema, std::move(members), policy);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("domain: ") + e.what());
  }
}

nlohmann::json domain_to_json(const ScriptedDomain& dom) {
  nlohmann::json sets = nlohmann::json::array();
  for (auto d : dom.members()) sets.push_back(dom.schema().names_of(d));
  return {{"sets", sets},
          {"mask",
           {{"policy", std::string(to_string(dom.policy().kind))},
            {"hide", dom.schema().names_of(dom.policy().hide)},
            {"seed", dom.policy().seed}}}};
}

nlohmann::json answer_to_json(const ExpertAnswer& ans, const ExplorationSchema& schema) {
  if (ans.is_valid()) return {{"valid", true}};
  return example_to_json(ans.example(), schema);
}

ExpertAnswer answer_from_json(const nlohmann::json& j, const ExplorationSchema& schema) {
  try {
    if (j.value("valid", false)) return ExpertAnswer::valid();
    return ExpertAnswer::counterexample(example_from_json(j, schema));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("answer: ") + e.what());
  }
}

}  // namespace attrex
