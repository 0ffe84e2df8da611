#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace reparam {

using Var = std::uint32_t;

enum class Role { State, Input, Parameter, TowerGen, Output, Auxiliary };

const char* to_string(Role r);

// Process-wide interned symbol table. Interning is append-only and guarded by
// a mutex, so Var handles stay valid and comparable for the whole run.
Var intern(std::string_view name);
bool is_interned(std::string_view name);
const std::string& var_name(Var v);
// u -> u_1 -> u_2 ... ; base_var/derivative_order invert it.
Var derivative_var(Var base, int order);
Var base_var(Var v);
int derivative_order(Var v);
// Display form: u_2 prints as u''.
std::string display_name(Var v);
// A name of the form prefix + k that is not yet interned.
Var fresh_var(std::string_view prefix);

struct UniverseEntry {
    Var var;
    Role role;
    int order = 0;
};

/// Ordered set of role-tagged variables used by a model or a computation.
class VarUniverse {
public:
    void add(Var v, Role role, int order = 0);
    bool contains(Var v) const;
    Role role(Var v) const;
    std::vector<Var> with_role(Role r) const;
    const std::vector<UniverseEntry>& entries() const { return entries_; }

private:
    std::vector<UniverseEntry> entries_;
};

}  // namespace reparam
