#include "reparam/modelfile.hpp"

#include "reparam/error.hpp"
#include "reparam/expr.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace reparam {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

struct Line {
    int no;
    std::string text;
    int indent;  // column offset of text within the raw line
};

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

}  // namespace

ModelFile parse_model_file(std::string_view text) {
    std::vector<Line> lines;
    {
        std::istringstream in{std::string(text)};
        std::string raw;
        int no = 0;
        while (std::getline(in, raw)) {
            ++no;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.resize(hash);
            std::size_t lead = 0;
            while (lead < raw.size() && std::isspace(static_cast<unsigned char>(raw[lead]))) ++lead;
            std::string t = trim(raw);
            if (!t.empty()) lines.push_back({no, t, static_cast<int>(lead)});
        }
    }

    std::map<std::string, std::vector<std::string>> lists;
    std::map<std::string, int> list_line;
    std::vector<Line> eqs;
    std::string defs_text;
    int defs_line = 0;
    for (const auto& l : lines) {
        auto colon = l.text.find(':');
        std::string head = colon == std::string::npos ? "" : trim(std::string_view(l.text).substr(0, colon));
        if (head == "states" || head == "params" || head == "inputs" || head == "outputs") {
            if (list_line.count(head))
                throw ParseError(ErrorKind::ParseError, "section '" + head + "' given twice", l.no, l.indent + 1);
            list_line[head] = l.no;
            std::string rest = l.text.substr(colon + 1);
            std::vector<std::string> names = trim(rest).empty() ? std::vector<std::string>{} : split_commas(rest);
            for (const auto& n : names)
                if (!is_identifier(n))
                    throw ParseError(ErrorKind::ParseError, "bad name '" + n + "' in " + head, l.no, l.indent + 1);
            lists[head] = names;
        } else if (head == "defs") {
            defs_text = l.text.substr(colon + 1);
            defs_line = l.no;
        } else {
            eqs.push_back(l);
        }
    }
    if (!list_line.count("states")) throw ParseError(ErrorKind::ParseError, "missing 'states:' section", 1, 1);
    if (!list_line.count("outputs") || lists["outputs"].empty())
        throw ParseError(ErrorKind::ParseError, "empty outputs section", list_line.count("outputs") ? list_line["outputs"] : 1, 1);

    ModelFile mf;
    OdeModel& m = mf.model;
    std::map<std::string, Role> declared;
    auto declare = [&](const std::string& section, Role role, std::vector<Var>& into) {
        for (const auto& n : lists[section]) {
            if (declared.count(n))
                throw ParseError(ErrorKind::ParseError, "symbol '" + n + "' declared twice", list_line[section], 1);
            declared[n] = role;
            into.push_back(intern(n));
        }
    };
    declare("states", Role::State, m.states);
    declare("params", Role::Parameter, m.params);
    declare("inputs", Role::Input, m.inputs);
    declare("outputs", Role::Output, m.outputs);

    int line_no = 0;
    SymbolResolver resolve = [&](const std::string& name, int primes, int column) -> Var {
        auto it = declared.find(name);
        if (it == declared.end() || it->second == Role::Output)
            throw ParseError(ErrorKind::UndeclaredSymbol, "undeclared symbol '" + name + "'", line_no, column);
        if (primes > 0)
            throw ParseError(ErrorKind::ParseError, "derivative of '" + name + "' in a right-hand side", line_no, column);
        return intern(name);
    };

    std::map<Var, RatFunc> rhs, outs;
    for (const auto& l : eqs) {
        auto eq = l.text.find('=');
        if (eq == std::string::npos) throw ParseError(ErrorKind::ParseError, "expected an equation", l.no, l.indent + 1);
        std::string lhs = trim(std::string_view(l.text).substr(0, eq));
        bool prime = !lhs.empty() && lhs.back() == '\'';
        std::string name = prime ? trim(std::string_view(lhs).substr(0, lhs.size() - 1)) : lhs;
        auto it = declared.find(name);
        if (it == declared.end())
            throw ParseError(ErrorKind::UndeclaredSymbol, "undeclared symbol '" + name + "'", l.no, l.indent + 1);
        line_no = l.no;
        int offset = l.indent + static_cast<int>(eq) + 1;
        RatFunc value = parse_ratfunc(std::string_view(l.text).substr(eq + 1), resolve, l.no, offset);
        Var v = intern(name);
        if (prime) {
            if (it->second != Role::State)
                throw ParseError(ErrorKind::ParseError, "'" + name + "' is not a state", l.no, l.indent + 1);
            if (!rhs.emplace(v, value).second)
                throw ParseError(ErrorKind::DuplicateEquation, "second equation for " + name + "'", l.no, l.indent + 1);
        } else {
            if (it->second != Role::Output)
                throw ParseError(ErrorKind::ParseError, "'" + name + "' is not an output", l.no, l.indent + 1);
            if (!outs.emplace(v, value).second)
                throw ParseError(ErrorKind::DuplicateEquation, "second equation for " + name, l.no, l.indent + 1);
        }
    }
    for (Var x : m.states) {
        if (!rhs.count(x)) throw ParseError(ErrorKind::ParseError, "no equation for " + var_name(x) + "'", list_line["states"], 1);
        m.rhs.push_back(rhs[x]);
    }
    for (Var y : m.outputs) {
        if (!outs.count(y)) throw ParseError(ErrorKind::ParseError, "no equation for output " + var_name(y), list_line["outputs"], 1);
        m.output_exprs.push_back(outs[y]);
    }

    if (!defs_text.empty()) {
        for (const auto& d : split_commas(defs_text)) {
            auto eq = d.find('=');
            std::string name = eq == std::string::npos ? "" : trim(std::string_view(d).substr(0, eq));
            if (!declared.count(name) || declared[name] != Role::Parameter)
                throw ParseError(ErrorKind::ParseError, "defs entry must define a declared parameter", defs_line, 1);
            mf.defs[intern(name)] = parse_ratfunc(std::string_view(d).substr(eq + 1), {}, defs_line);
        }
    }
    return mf;
}

OdeModel parse_model(std::string_view text) { return parse_model_file(text).model; }

ModelFile load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model_file(ss.str());
}

}  // namespace reparam
