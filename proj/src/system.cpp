#include "sosforge/system.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace sosforge {

void ConstraintSystem::collect_vars() {
  std::unordered_set<VarId> seen(vars.begin(), vars.end());
  for (const auto& c : constraints)
    for (VarId v : c.poly.variables())
      if (seen.insert(v).second) vars.push_back(v);
}

int ConstraintSystem::max_degree() const {
  int d = 0;
  for (const auto& c : constraints) d = std::max(d, c.poly.degree());
  return d;
}

nlohmann::json system_to_json(const ConstraintSystem& s) {
  nlohmann::json j;
  j["vars"] = nlohmann::json::array();
  for (VarId v : s.vars) {
    auto d = domain_index(v);
    j["vars"].push_back({{"name", var_name(v)}, {"domain", d ? nlohmann::json(*d) : nlohmann::json()}});
  }
  j["constraints"] = nlohmann::json::array();
  for (const auto& c : s.constraints)
    j["constraints"].push_back({{"poly", to_text(c.poly)}, {"rel", relation_text(c.rel)}});
  return j;
}

ConstraintSystem system_from_json(const nlohmann::json& j) {
  ConstraintSystem s;
  if (j.contains("vars"))
    for (const auto& v : j.at("vars")) {
      std::string name = v.at("name").get<std::string>();
      bool dom = v.contains("domain") && !v.at("domain").is_null();
      VarId id = var_by_name(name, dom);
      if (dom && domain_index(id) != v.at("domain").get<int>())
        throw std::invalid_argument("domain index disagrees with the name of " + name);
      s.vars.push_back(id);
    }
  for (const auto& c : j.at("constraints"))
    s.constraints.push_back({parse_polynomial(c.at("poly").get<std::string>()),
                             parse_relation(c.at("rel").get<std::string>())});
  s.collect_vars();
  return s;
}

}  // namespace sosforge
