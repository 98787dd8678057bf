#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "synlog/grouping.hpp"
#include "synlog/pipeline.hpp"

namespace synlog {

enum class Command { Parse, Evaluate, Bench, RegexStats };

struct RunConfig {
    Command command = Command::Parse;
    std::filesystem::path input;
    std::filesystem::path out_dir = ".";
    GrouperConfig grouper;
    SamplerConfig sampler;
    std::optional<std::filesystem::path> rules_path;  // built-ins when absent
    bool refine = true;
    int repeat = 1;  // bench only, >= 1
    int threads = 1;
};

// Exit codes: 0 success, 1 input/usage error, 2 internal invariant violation.
int run_parse(const RunConfig& cfg);
int run_evaluate(const RunConfig& cfg);
int run_bench(const RunConfig& cfg);
int run_regex_stats(const RunConfig& cfg);
int run(const RunConfig& cfg);

// Rules from cfg.rules_path, the SYNLOG_RULES environment variable, or the
// built-in defaults, in that precedence order.
RegexRuleSet resolve_rules(const RunConfig& cfg);

}  // namespace synlog
