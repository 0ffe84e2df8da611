#include "reparam/error.hpp"
#include "reparam/pipeline.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace reparam;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ModelFile load(const std::string& path) { return parse_model_file(read_file(path)); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Globally identifiable reparametrization of rational ODE models"};
    app.require_subcommand(1);

    bool as_json = false;
    std::uint64_t seed = 0;
    std::size_t budget = 0;
    std::string component_file, reference_file, model_file;
    std::vector<std::string> fixes;

    app.add_flag("--json", as_json, "machine-readable report");
    app.add_option("--seed", seed, "seed for random draws")->default_val(0);
    app.add_option("--gb-budget", budget, "Groebner reduction-step budget (default 1000000)");

    struct Sub {
        const char* name;
        const char* help;
        Command cmd;
    };
    const Sub subs[] = {
        {"io-eq", "input-output equations", Command::IoEq},
        {"identifiability", "identifiable generators and the field tower", Command::Identifiability},
        {"witness", "witness variety and its components", Command::Witness},
        {"reparam", "globally identifiable reparametrization", Command::Reparam},
        {"poly-realize", "polynomial realization of a one-state model", Command::PolyRealize},
        {"verify", "check a model against the IO-equations of a reference", Command::Verify},
    };
    std::map<CLI::App*, Command> which;
    for (const auto& s : subs) {
        auto* sc = app.add_subcommand(s.name, s.help);
        sc->add_option("model", model_file, "model file")->required()->check(CLI::ExistingFile);
        sc->fallthrough();
        if (s.cmd == Command::Reparam || s.cmd == Command::Witness)
            sc->add_option("--fix", fixes, "force a parameter value, e.g. p2=1");
        if (s.cmd == Command::Reparam)
            sc->add_option("--component-param", component_file, "parametrization of a witness component")
                ->check(CLI::ExistingFile);
        if (s.cmd == Command::Verify)
            sc->add_option("--against", reference_file, "reference model")->required()->check(CLI::ExistingFile);
        which[sc] = s.cmd;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    PipelineConfig cfg;
    cfg.seed = seed;
    cfg.gb_budget = budget;
    for (auto* sc : app.get_subcommands()) cfg.command = which.at(sc);
    ModelFile input;
    try {
        input = load(model_file);
        for (const auto& f : fixes) {
            auto [v, q] = parse_fix(f);
            cfg.fixed[v] = q;
        }
        if (!component_file.empty()) cfg.component_param = parse_component_param(read_file(component_file));
        if (!reference_file.empty()) cfg.reference = load(reference_file).model;
    } catch (const Error& e) {
        std::cerr << "reparam: " << e.what() << "\n";
        return e.kind() == ErrorKind::InvalidArgument ? 3 : 2;
    }

    Report r = run_pipeline(input, cfg);
    if (as_json)
        std::cout << to_json(r).dump(2) << "\n";
    else
        std::cout << to_text(r);
    if (!r.ok() && !as_json) std::cerr << r.error << "\n";
    return exit_code(r);
}
