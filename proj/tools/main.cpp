#include <CLI11.hpp>

#include <string>

#include "synlog/cli.hpp"

namespace {

void add_common_flags(CLI::App* cmd, synlog::RunConfig& cfg, std::string& grouper,
                      std::string& rules, bool with_refine) {
    cmd->add_option("--input", cfg.input, "input file (.csv structured or raw log)")
        ->required();
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--grouper", grouper, "grouping backend: drain | ael")
        ->check(CLI::IsMember({"drain", "ael"}));
    cmd->add_option("--depth", cfg.grouper.tree_depth, "prefix tree depth (drain)");
    cmd->add_option("--st", cfg.grouper.similarity_threshold,
                    "similarity threshold (drain)");
    cmd->add_option("--max-children", cfg.grouper.max_children,
                    "max children per tree node (drain)");
    cmd->add_option("--k", cfg.sampler.k, "representative logs per group");
    cmd->add_option("--seed", cfg.sampler.seed, "sampling seed");
    cmd->add_option("--rules", rules, "anonymization rules file (category<TAB>pattern)");
    cmd->add_option("--threads", cfg.threads, "refinement worker cap");
    if (with_refine) {
        cmd->add_flag("--no-refine", "emit raw group templates instead of refining");
    }
}

void finish_config(const CLI::App* cmd, synlog::RunConfig& cfg, const std::string& grouper,
                   const std::string& rules, bool with_refine) {
    cfg.grouper.backend = grouper == "ael" ? synlog::GrouperBackend::AelLike
                                           : synlog::GrouperBackend::DrainLike;
    if (!rules.empty()) cfg.rules_path = rules;
    if (with_refine) cfg.refine = cmd->count("--no-refine") == 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-phase log template miner and evaluation harness"};
    app.require_subcommand(1);

    synlog::RunConfig cfg;
    std::string grouper = "drain";
    std::string rules;

    CLI::App* parse = app.add_subcommand("parse", "parse logs into templates");
    add_common_flags(parse, cfg, grouper, rules, true);

    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "score a parse against the EventTemplate ground truth");
    add_common_flags(evaluate, cfg, grouper, rules, true);

    CLI::App* bench = app.add_subcommand("bench", "time the grouping and refinement stages");
    add_common_flags(bench, cfg, grouper, rules, false);
    bench->add_option("--repeat", cfg.repeat, "runs per stage, median reported")
        ->check(CLI::PositiveNumber);

    CLI::App* regex_stats = app.add_subcommand(
        "regex-stats", "classify ground-truth variables by anonymization rule");
    add_common_flags(regex_stats, cfg, grouper, rules, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (parse->parsed()) {
        cfg.command = synlog::Command::Parse;
        finish_config(parse, cfg, grouper, rules, true);
    } else if (evaluate->parsed()) {
        cfg.command = synlog::Command::Evaluate;
        finish_config(evaluate, cfg, grouper, rules, true);
    } else if (bench->parsed()) {
        cfg.command = synlog::Command::Bench;
        finish_config(bench, cfg, grouper, rules, false);
    } else {
        cfg.command = synlog::Command::RegexStats;
        finish_config(regex_stats, cfg, grouper, rules, false);
    }
    return synlog::run(cfg);
}
