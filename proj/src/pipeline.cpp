#include "reparam/pipeline.hpp"

#include "reparam/error.hpp"
#include "reparam/expr.hpp"

#include <chrono>
#include <sstream>

namespace reparam {

namespace {

using json = nlohmann::json;

std::string rat_str(const Rational& q) { return q.num().get_str() + "/" + q.den().get_str(); }

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Tower symbols as the user sees them; alpha prints as X.
std::map<Var, RatFunc> tower_display(const Report& r) {
    const OdeModel& m = r.result.evaluation ? r.result.evaluation->model : r.input;
    auto names = display_names(r.result.tower, m);
    if (r.result.tower.tower.alpha) names[*r.result.tower.tower.alpha] = RatFunc::var(intern("X"));
    return names;
}

std::string with_defs(const OdeModel& m, const std::map<Var, RatFunc>& defs) {
    std::string out = m.str();
    bool any = false;
    for (const auto& [v, d] : defs) any = any || !(d == RatFunc::var(v));
    if (!any) return out;
    out += "defs: ";
    bool first = true;
    for (const auto& [v, d] : defs) {
        if (d == RatFunc::var(v)) continue;
        if (!first) out += ", ";
        first = false;
        out += var_name(v) + " = " + d.str();
    }
    return out + "\n";
}

// Descending powers of X.
std::string min_poly_text(const FieldTower& t, const std::map<Var, RatFunc>& names) {
    std::string out;
    for (std::size_t k = t.min_poly.size(); k-- > 0;) {
        RatFunc c = t.min_poly[k].substitute(names);
        if (c.is_zero()) continue;
        std::string cs = c.str();
        bool neg = cs[0] == '-' && (-c).str().find_first_of("+-") == std::string::npos;
        if (neg) cs = (-c).str();
        bool compound = cs.find_first_of("+-") != std::string::npos;
        std::string term;
        if (k == 0)
            term = cs;
        else {
            term = k == 1 ? "X" : "X^" + std::to_string(k);
            if (cs != "1") term = (compound ? "(" + cs + ")" : cs) + "*" + term;
        }
        if (out.empty())
            out = neg ? "-" + term : term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out;
}

std::string shown(const MPoly& p, const std::map<Var, RatFunc>& names) { return RatFunc(p).substitute(names).str(); }

bool has_tower(const Report& r) { return !r.result.tower.params.empty() || !r.result.tower.tower.gens.empty(); }

bool reached(const Report& r, Command c) { return static_cast<int>(r.command) >= static_cast<int>(c); }

}  // namespace

const char* to_string(Command c) {
    switch (c) {
    case Command::IoEq: return "io-eq";
    case Command::Identifiability: return "identifiability";
    case Command::Witness: return "witness";
    case Command::Reparam: return "reparam";
    case Command::PolyRealize: return "poly-realize";
    case Command::Verify: return "verify";
    }
    return "?";
}

Report run_pipeline(const ModelFile& input, const PipelineConfig& config) {
    Report r;
    r.command = config.command;
    r.seed = config.seed;
    r.input = input.model;
    r.input_defs = input.defs;
    std::optional<GbBudgetScope> budget;
    if (config.gb_budget) budget.emplace(config.gb_budget);
    auto& res = r.result;
    auto t0 = std::chrono::steady_clock::now();
    auto lap = [&](const std::string& stage) {
        auto t1 = std::chrono::steady_clock::now();
        r.timings.push_back({stage, std::chrono::duration<double>(t1 - t0).count()});
        t0 = t1;
    };
    try {
        switch (config.command) {
        case Command::IoEq:
        case Command::Identifiability: {
            res.stage = "io-eq";
            res.eqs = io_equations(r.input);
            lap("io-eq");
            if (config.command == Command::IoEq) break;
            res.stage = "identifiability";
            res.gens = identifiable_generators(res.eqs, r.input);
            lap("identifiability");
            res.stage = "tower";
            res.tower = build_field_tower(r.input.used_params(), res.gens, config.seed);
            lap("tower");
            break;
        }
        case Command::Witness:
        case Command::Reparam: {
            ReparamOptions opt;
            opt.seed = config.seed;
            opt.fixed = config.fixed;
            opt.component_param = config.component_param;
            opt.stop_after_witness = config.command == Command::Witness;
            optimal_realization_general_into(r.input, opt, res);
            lap(res.stage);
            if (res.verified && config.command == Command::Reparam) {
                r.model = res.model;
                r.verification = VerifyReport{true, true, ""};
            }
            break;
        }
        case Command::PolyRealize: {
            res.stage = "poly-realize";
            OdeModel out = polynomial_realization_first_order(r.input);
            lap("poly-realize");
            res.stage = "verify";
            res.eqs = io_equations(r.input);
            r.verification = check_realization(out, res.eqs);
            lap("verify");
            res.changed = !(out.rhs == r.input.rhs && out.output_exprs == r.input.output_exprs);
            if (!r.verification->ok())
                throw Error(ErrorKind::NotARealization, "transformed model fails verification: " +
                                                            r.verification->diagnostic);
            res.model = out;
            res.in_params = out;
            res.verified = true;
            r.model = out;
            break;
        }
        case Command::Verify: {
            if (!config.reference) throw Error(ErrorKind::InvalidArgument, "verify needs a reference model");
            res.stage = "io-eq";
            res.eqs = io_equations(*config.reference);
            lap("io-eq");
            res.stage = "verify";
            OdeModel cand = r.input.substitute_params(r.input_defs);
            r.verification = check_realization(cand, res.eqs);
            lap("verify");
            if (!r.verification->ok())
                throw Error(ErrorKind::NotARealization, "candidate is not a realization of the reference: " +
                                                            r.verification->diagnostic);
            break;
        }
        }
    } catch (const Error& e) {
        r.error_kind = e.kind();
        r.error = e.what();
        r.failed_stage = res.stage.empty() ? to_string(config.command) : res.stage;
    } catch (const std::exception& e) {
        r.error_kind = ErrorKind::Internal;
        r.error = e.what();
        r.failed_stage = res.stage;
    }
    return r;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::UndeclaredSymbol:
    case ErrorKind::DuplicateEquation: return 2;
    case ErrorKind::BudgetExhausted: return 4;
    default: return 3;
    }
}

int exit_code(const Report& r) { return r.error_kind ? exit_code(*r.error_kind) : 0; }

json to_json(const Report& r) {
    const auto& res = r.result;
    json j;
    j["command"] = to_string(r.command);
    j["seed"] = r.seed;
    j["input"] = with_defs(r.input, r.input_defs);
    json eqs = json::array();
    for (const auto& e : res.eqs)
        eqs.push_back({{"output", e.output_index < r.input.outputs.size() ? var_name(r.input.outputs[e.output_index]) : std::to_string(e.output_index)},
                       {"order", e.order},
                       {"principal", e.principal},
                       {"poly", e.poly.str()}});
    if (r.command != Command::PolyRealize) j["io_equations"] = eqs;
    if (reached(r, Command::Identifiability) && r.command != Command::PolyRealize && r.command != Command::Verify) {
        json gens = json::array();
        for (const auto& g : res.gens) gens.push_back(g.str());
        j["identifiable_generators"] = gens;
        if (has_tower(r)) {
            auto names = tower_display(r);
            const auto& t = res.tower.tower;
            json tj;
            tj["degree"] = t.degree();
            json tg = json::array();
            for (std::size_t i = 0; i < t.gens.size(); ++i)
                tg.push_back({{"symbol", names.at(t.gens[i]).str()}, {"definition", t.definitions[i].str()}});
            tj["generators"] = tg;
            if (t.alpha) {
                tj["alpha"] = t.alpha_definition.str();
                tj["min_poly"] = min_poly_text(t, names);
                json coeffs = json::array();
                for (const auto& c : res.tower.alpha_coeffs) coeffs.push_back(rat_str(c));
                tj["alpha_coeffs"] = coeffs;
            } else {
                tj["alpha"] = nullptr;
            }
            json trans = json::array();
            for (Var v : res.tower.transcendental) trans.push_back(var_name(v));
            tj["transcendental"] = trans;
            j["tower"] = tj;
        }
    }
    if (res.evaluation) {
        json a = json::object(), w = json::object();
        for (const auto& [v, q] : res.evaluation->assignment) a[var_name(v)] = rat_str(q);
        for (const auto& [v, f] : res.evaluation->rewrite) w[var_name(v)] = f.str();
        j["evaluation"] = {{"assignment", a}, {"rewrite", w}};
    }
    if (res.witness) {
        auto names = tower_display(r);
        json h = json::array(), ideal = json::array();
        for (const auto& p : res.witness->h_polys) h.push_back(shown(p, names));
        for (const auto& p : res.witness->ideal) ideal.push_back(shown(p, names));
        json comps = json::array();
        for (const auto& c : res.components) {
            json g = json::array();
            for (const auto& p : c.gens) g.push_back(shown(p, names));
            comps.push_back({{"generators", g},
                             {"dimension", c.dimension},
                             {"linear", c.linear},
                             {"embedded", c.embedded},
                             {"certified", c.certified}});
        }
        j["witness"] = {{"h", h}, {"delta", shown(res.witness->delta, names)}, {"ideal", ideal}, {"components", comps}};
    }
    if (res.chosen) j["chosen_component"] = *res.chosen;
    if (r.model) {
        if (!res.substitution.s.empty()) {
            json s = json::array();
            auto names = tower_display(r);
            if (res.tower.tower.alpha) names[*res.tower.tower.alpha] = res.tower.tower.alpha_definition;
            for (const auto& f : res.substitution.s) s.push_back(f.substitute(names).str());
            j["substitution"] = {{"provenance", to_string(res.substitution.provenance)}, {"s", s}};
        }
        j["model"] = with_defs(*r.model, res.defs);
        j["changed"] = res.changed;
    }
    if (r.verification)
        j["verification"] = {{"vanishes", r.verification->vanishes},
                             {"proportional", r.verification->proportional},
                             {"diagnostic", r.verification->diagnostic}};
    j["notes"] = res.notes;
    json tm = json::array();
    for (const auto& t : r.timings) tm.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
    j["timings"] = tm;
    if (r.error_kind)
        j["error"] = {{"kind", to_string(*r.error_kind)}, {"stage", r.failed_stage}, {"message", r.error}};
    else
        j["error"] = nullptr;
    return j;
}

std::string to_text(const Report& r) {
    const auto& res = r.result;
    std::ostringstream os;
    if (!res.eqs.empty()) {
        os << "io-equations:\n";
        for (const auto& e : res.eqs)
            os << "  " << (e.output_index < r.input.outputs.size() ? var_name(r.input.outputs[e.output_index]) : std::to_string(e.output_index)) << " (order " << e.order
               << (e.principal ? "" : ", non-principal") << "): " << e.poly << "\n";
    }
    if (!res.gens.empty() && r.command != Command::PolyRealize) {
        os << "identifiable generators:";
        for (std::size_t i = 0; i < res.gens.size(); ++i) os << (i ? ", " : " ") << res.gens[i];
        os << "\n";
    }
    if (has_tower(r) && r.command != Command::PolyRealize && r.command != Command::Verify) {
        const auto& t = res.tower.tower;
        auto names = tower_display(r);
        os << "tower: degree " << t.degree();
        for (std::size_t i = 0; i < t.gens.size(); ++i) {
            RatFunc sym = names.at(t.gens[i]);
            if (!(sym == t.definitions[i])) os << ", " << sym << " = " << t.definitions[i];
        }
        if (t.alpha) os << ", alpha = " << t.alpha_definition << ", min_poly " << min_poly_text(t, names);
        if (!res.tower.transcendental.empty()) {
            os << ", transcendental:";
            for (Var v : res.tower.transcendental) os << " " << var_name(v);
        }
        os << "\n";
    }
    if (res.evaluation) {
        os << "evaluation:";
        for (const auto& [v, q] : res.evaluation->assignment) os << " " << var_name(v) << " = " << q;
        for (const auto& [v, f] : res.evaluation->rewrite) os << ", " << var_name(v) << " -> " << f;
        os << "\n";
    }
    if (res.witness) {
        auto names = tower_display(r);
        os << "witness polynomials:\n";
        for (const auto& p : res.witness->h_polys) os << "  " << shown(p, names) << "\n";
        os << "witness components:\n";
        for (std::size_t k = 0; k < res.components.size(); ++k) {
            const auto& c = res.components[k];
            os << "  [" << k << "] dim " << c.dimension << (c.linear ? ", linear" : ", non-linear")
               << (c.embedded ? ", embedded" : "") << ":";
            for (std::size_t i = 0; i < c.gens.size(); ++i) os << (i ? ", " : " ") << shown(c.gens[i], names);
            os << "\n";
        }
    }
    if (res.chosen) os << "chosen component: " << *res.chosen << "\n";
    if (r.model) {
        if (r.command == Command::Reparam && !res.changed)
            os << "already globally identifiable; model unchanged\n";
        os << "model:\n" << with_defs(*r.model, res.defs);
    }
    if (r.verification)
        os << "verification: vanishes " << (r.verification->vanishes ? "yes" : "no") << ", proportional "
           << (r.verification->proportional ? "yes" : "no") << "\n";
    for (const auto& n : res.notes) os << "note: " << n << "\n";
    if (r.error_kind) os << "error in " << r.failed_stage << ": " << r.error << "\n";
    return os.str();
}

std::map<Var, RatFunc> parse_component_param(std::string_view text) {
    std::map<Var, RatFunc> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        if (trim(line).empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(ErrorKind::ParseError, "expected z_i_j = expr", no, 1);
        std::string name = trim(std::string_view(line).substr(0, eq));
        if (name.empty()) throw ParseError(ErrorKind::ParseError, "missing variable name", no, 1);
        Var v = intern(name);
        if (out.count(v)) throw ParseError(ErrorKind::DuplicateEquation, "duplicate entry for " + name, no, 1);
        out[v] = parse_ratfunc(std::string_view(line).substr(eq + 1), {}, no, static_cast<int>(eq) + 1);
    }
    return out;
}

std::pair<Var, Rational> parse_fix(std::string_view text) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::ParseError, "expected param=value in --fix");
    std::string name = trim(text.substr(0, eq));
    if (name.empty()) throw Error(ErrorKind::ParseError, "missing parameter in --fix");
    return {intern(name), Rational::parse(trim(text.substr(eq + 1)))};
}

}  // namespace reparam
