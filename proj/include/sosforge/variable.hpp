#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sosforge {

using VarId = std::uint32_t;

/// Symbolic identity of a variable: `kind(i1,i2,...)`.
/// When has_domain is set, the first index names an element of the domain.
struct VarKey {
  std::string kind;
  std::vector<int> indices;
  bool has_domain = false;

  bool operator==(const VarKey&) const = default;
};

/// Domain flag used when a variable is named without one:
/// two-index x and z variables are domain-indexed, everything else is not.
bool default_domain_flag(const std::string& kind, const std::vector<int>& indices);

/// Interns a variable in the process-wide registry. Thread safe.
/// Throws std::invalid_argument if the name is already registered with a
/// different domain flag.
VarId var(const std::string& kind, std::vector<int> indices);
VarId var(const std::string& kind, std::vector<int> indices, bool has_domain);

/// Interns by printed name, e.g. `x(2,5)`. An already registered name keeps
/// its flag; a new one gets default_domain_flag.
VarId var_by_name(const std::string& name);
VarId var_by_name(const std::string& name, bool has_domain);

const VarKey& var_key(VarId id);
std::string var_name(VarId id);
std::optional<int> domain_index(VarId id);

/// The same variable with its domain index replaced; identity for
/// variables without a domain index.
VarId rename_domain(VarId id, int new_index);

/// Splits `kind(i,j)` into its parts. Throws std::invalid_argument.
VarKey parse_var_name(const std::string& name);

/// Partial 0/1 assignment.
using Assignment = std::map<VarId, bool>;

}  // namespace sosforge
