#pragma once

#include "reparam/error.hpp"
#include "reparam/modelfile.hpp"
#include "reparam/reparametrize.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace reparam {

enum class Command { IoEq, Identifiability, Witness, Reparam, PolyRealize, Verify };

const char* to_string(Command c);

struct PipelineConfig {
    Command command = Command::Reparam;
    std::uint64_t seed = 0;
    std::size_t gb_budget = 0;  // 0 keeps the default
    std::map<Var, Rational> fixed;
    std::optional<std::map<Var, RatFunc>> component_param;
    // verify: the model whose IO-equations the input must satisfy
    std::optional<OdeModel> reference;
};

struct StageTime {
    std::string stage;
    double seconds = 0;
};

struct Report {
    Command command = Command::Reparam;
    std::uint64_t seed = 0;
    OdeModel input;
    std::map<Var, RatFunc> input_defs;
    Reparametrization result;       // filled as far as the pipeline got
    std::optional<TowerReport> base_tower;  // before evaluation
    std::optional<OdeModel> model;  // set only when verified
    std::optional<VerifyReport> verification;
    std::vector<StageTime> timings;
    std::optional<ErrorKind> error_kind;
    std::string error;
    std::string failed_stage;

    bool ok() const { return !error_kind; }
};

Report run_pipeline(const ModelFile& input, const PipelineConfig& config);

// 0 success, 2 parse error, 3 stage failure, 4 budget exhausted.
int exit_code(ErrorKind kind);
int exit_code(const Report& r);

nlohmann::json to_json(const Report& r);
std::string to_text(const Report& r);

// Lines `z1_0 = w1`; `#` comments.
std::map<Var, RatFunc> parse_component_param(std::string_view text);
// `p2=1`, `b=-7/2`
std::pair<Var, Rational> parse_fix(std::string_view text);

}  // namespace reparam
