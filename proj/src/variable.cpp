#include "sosforge/variable.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace sosforge {

namespace {

struct Registry {
  std::shared_mutex mu;
  std::deque<VarKey> keys;  // deque keeps references stable
  std::deque<std::string> names;
  std::unordered_map<std::string, VarId> by_name;
};

Registry& registry() {
  static Registry r;
  return r;
}

std::string render(const std::string& kind, const std::vector<int>& idx) {
  if (idx.empty()) return kind;
  std::string s = kind + "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx[i]);
  }
  return s + ")";
}

}  // namespace

bool default_domain_flag(const std::string& kind, const std::vector<int>& indices) {
  return (kind == "x" || kind == "z") && indices.size() == 2;
}

VarId var(const std::string& kind, std::vector<int> indices) {
  bool dom = default_domain_flag(kind, indices);
  return var(kind, std::move(indices), dom);
}

VarId var(const std::string& kind, std::vector<int> indices, bool has_domain) {
  if (kind.empty()) throw std::invalid_argument("variable kind must be nonempty");
  if (has_domain && indices.empty())
    throw std::invalid_argument("domain variable needs an index: " + kind);
  std::string name = render(kind, indices);
  auto& r = registry();
  {
    std::shared_lock lock(r.mu);
    auto it = r.by_name.find(name);
    if (it != r.by_name.end()) {
      if (r.keys[it->second].has_domain != has_domain)
        throw std::invalid_argument("conflicting domain flag for " + name);
      return it->second;
    }
  }
  std::unique_lock lock(r.mu);
  auto it = r.by_name.find(name);
  if (it != r.by_name.end()) {
    if (r.keys[it->second].has_domain != has_domain)
      throw std::invalid_argument("conflicting domain flag for " + name);
    return it->second;
  }
  VarId id = static_cast<VarId>(r.keys.size());
  r.keys.push_back(VarKey{kind, std::move(indices), has_domain});
  r.names.push_back(name);
  r.by_name.emplace(name, id);
  return id;
}

VarKey parse_var_name(const std::string& name) {
  VarKey key;
  auto open = name.find('(');
  if (open == std::string::npos) {
    if (name.empty() || name.find_first_of("),* +") != std::string::npos)
      throw std::invalid_argument("bad variable name: " + name);
    key.kind = name;
    return key;
  }
  if (open == 0 || name.back() != ')') throw std::invalid_argument("bad variable name: " + name);
  key.kind = name.substr(0, open);
  std::string body = name.substr(open + 1, name.size() - open - 2);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    auto comma = body.find(',', pos);
    std::string part = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad variable index in " + name);
    }
    if (used != part.size()) throw std::invalid_argument("bad variable index in " + name);
    key.indices.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return key;
}

VarId var_by_name(const std::string& name) {
  {
    auto& r = registry();
    std::shared_lock lock(r.mu);
    auto it = r.by_name.find(name);
    if (it != r.by_name.end()) return it->second;
  }
  VarKey k = parse_var_name(name);
  return var(k.kind, k.indices);
}

VarId var_by_name(const std::string& name, bool has_domain) {
  VarKey k = parse_var_name(name);
  return var(k.kind, k.indices, has_domain);
}

const VarKey& var_key(VarId id) {
  auto& r = registry();
  std::shared_lock lock(r.mu);
  if (id >= r.keys.size()) throw std::out_of_range("unknown variable id");
  return r.keys[id];
}

std::string var_name(VarId id) {
  auto& r = registry();
  std::shared_lock lock(r.mu);
  if (id >= r.names.size()) throw std::out_of_range("unknown variable id");
  return r.names[id];
}

std::optional<int> domain_index(VarId id) {
  const VarKey& k = var_key(id);
  if (!k.has_domain) return std::nullopt;
  return k.indices.front();
}

VarId rename_domain(VarId id, int new_index) {
  VarKey k = var_key(id);
  if (!k.has_domain) return id;
  k.indices.front() = new_index;
  return var(k.kind, k.indices, true);
}

}  // namespace sosforge
