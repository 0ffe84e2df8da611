#include "reparam/symbol.hpp"

#include "reparam/error.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace reparam {

namespace {

struct SymbolInfo {
    std::string name;
    Var base;
    int order;
};

struct SymbolTable {
    std::mutex mu;
    std::deque<SymbolInfo> infos;
    std::unordered_map<std::string, Var> index;
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

Var intern_locked(SymbolTable& t, const std::string& name, Var base, int order) {
    auto it = t.index.find(name);
    if (it != t.index.end()) {
        // A plain name like y_1 interned by a parser becomes the derivative once asked for as one.
        auto& info = t.infos[it->second];
        if (order > 0 && info.order == 0) {
            info.base = base;
            info.order = order;
        }
        return it->second;
    }
    Var v = static_cast<Var>(t.infos.size());
    t.infos.push_back({name, order == 0 ? v : base, order});
    t.index.emplace(name, v);
    return v;
}

}  // namespace

const char* to_string(Role r) {
    switch (r) {
    case Role::State: return "state";
    case Role::Input: return "input";
    case Role::Parameter: return "parameter";
    case Role::TowerGen: return "tower";
    case Role::Output: return "output";
    case Role::Auxiliary: return "auxiliary";
    }
    return "?";
}

Var intern(std::string_view name) {
    auto& t = table();
    std::lock_guard lock(t.mu);
    return intern_locked(t, std::string(name), 0, 0);
}

bool is_interned(std::string_view name) {
    auto& t = table();
    std::lock_guard lock(t.mu);
    return t.index.count(std::string(name)) > 0;
}

const std::string& var_name(Var v) {
    auto& t = table();
    std::lock_guard lock(t.mu);
    if (v >= t.infos.size()) throw Error(ErrorKind::Internal, "unknown variable id");
    return t.infos[v].name;
}

Var derivative_var(Var base, int order) {
    if (order == 0) return base;
    auto& t = table();
    std::lock_guard lock(t.mu);
    Var b = t.infos[base].base;
    int total = t.infos[base].order + order;
    if (total == 0) return b;
    return intern_locked(t, t.infos[b].name + "_" + std::to_string(total), b, total);
}

Var base_var(Var v) {
    auto& t = table();
    std::lock_guard lock(t.mu);
    return t.infos[v].base;
}

int derivative_order(Var v) {
    auto& t = table();
    std::lock_guard lock(t.mu);
    return t.infos[v].order;
}

std::string display_name(Var v) {
    auto& t = table();
    std::lock_guard lock(t.mu);
    const auto& info = t.infos[v];
    if (info.order == 0) return info.name;
    return t.infos[info.base].name + std::string(static_cast<std::size_t>(info.order), '\'');
}

Var fresh_var(std::string_view prefix) {
    auto& t = table();
    std::lock_guard lock(t.mu);
    for (int k = 1;; ++k) {
        std::string name = std::string(prefix) + std::to_string(k);
        if (!t.index.count(name)) return intern_locked(t, name, 0, 0);
    }
}

void VarUniverse::add(Var v, Role role, int order) {
    if (contains(v)) return;
    entries_.push_back({v, role, order});
}

bool VarUniverse::contains(Var v) const {
    for (const auto& e : entries_)
        if (e.var == v) return true;
    return false;
}

Role VarUniverse::role(Var v) const {
    for (const auto& e : entries_)
        if (e.var == v) return e.role;
    throw Error(ErrorKind::Internal, "variable " + var_name(v) + " not in universe");
}

std::vector<Var> VarUniverse::with_role(Role r) const {
    std::vector<Var> out;
    for (const auto& e : entries_)
        if (e.role == r) out.push_back(e.var);
    return out;
}

}  // namespace reparam
