#include "synlog/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "synlog/datasets.hpp"
#include "synlog/errors.hpp"
#include "synlog/metrics.hpp"

namespace synlog {

namespace {

StructuredDataset load_input(const std::filesystem::path& input) {
    std::string ext = input.extension().string();
    if (ext == ".csv") return load_structured_csv(input);
    return load_raw_log(input);
}

std::vector<LogGroup> group_records(const StructuredDataset& ds, const GrouperConfig& cfg) {
    auto grouper = make_grouper(cfg);
    for (const LogRecord& rec : ds.records) grouper->feed(rec);
    return grouper->finalize();
}

void write_text(const std::filesystem::path& p, const std::string& data) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + p.string());
    out << data;
    if (!out) throw IoError("error while writing: " + p.string());
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int guarded(const char* what, int (*fn)(const RunConfig&), const RunConfig& cfg) {
    try {
        return fn(cfg);
    } catch (const IoError& e) {
        std::cerr << what << ": " << e.what() << '\n';
    } catch (const FormatError& e) {
        std::cerr << what << ": " << e.what() << '\n';
    } catch (const EmptyContentError& e) {
        std::cerr << what << ": " << e.what() << '\n';
    } catch (const DomainMismatchError& e) {
        std::cerr << what << ": " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        std::cerr << what << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << what << ": internal error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

nlohmann::json report_to_json(const MetricsReport& r) {
    return nlohmann::json{
        {"ga", r.ga},
        {"pa", r.pa},
        {"fga", r.fga},
        {"fta", r.fta},
        {"pga", r.pga},
        {"rga", r.rga},
        {"pta", r.pta},
        {"rta", r.rta},
        {"messages_total", r.counts.messages_total},
        {"predicted_templates", r.counts.predicted_templates},
        {"truth_templates", r.counts.truth_templates},
        {"correct_groups", r.counts.correct_groups},
        {"correct_templates", r.counts.correct_templates},
    };
}

int do_parse(const RunConfig& cfg) {
    StructuredDataset ds = load_input(cfg.input);
    std::vector<LogGroup> groups = group_records(ds, cfg.grouper);
    ParseResult result = cfg.refine
                             ? refine_groups(groups, resolve_rules(cfg), cfg.sampler,
                                             cfg.threads)
                             : raw_group_result(groups);
    write_structured_output(ds, result, cfg.out_dir);
    return 0;
}

int do_evaluate(const RunConfig& cfg) {
    StructuredDataset ds = load_input(cfg.input);
    if (!ds.truth) {
        std::cerr << "evaluate: input has no EventTemplate ground truth\n";
        return 1;
    }
    std::vector<LogGroup> groups = group_records(ds, cfg.grouper);

    MetricsReport raw = compute_metrics(raw_group_result(groups), *ds.truth);
    std::optional<MetricsReport> refined;
    if (cfg.refine) {
        refined = compute_metrics(
            refine_groups(groups, resolve_rules(cfg), cfg.sampler, cfg.threads), *ds.truth);
    }

    std::filesystem::create_directories(cfg.out_dir);
    std::string csv = "variant," + MetricsReport::csv_header() + '\n';
    csv += "raw," + raw.to_csv_row() + '\n';
    std::cout << "[raw]\n" << raw.to_kv_text();
    nlohmann::json j;
    if (refined) {
        csv += "refined," + refined->to_csv_row() + '\n';
        char delta[256];
        std::snprintf(delta, sizeof(delta), "delta,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,,,,,",
                      refined->ga - raw.ga, refined->pa - raw.pa, refined->fga - raw.fga,
                      refined->fta - raw.fta, refined->pga - raw.pga, refined->rga - raw.rga,
                      refined->pta - raw.pta, refined->rta - raw.rta);
        csv += delta;
        csv += '\n';
        std::cout << "[refined]\n" << refined->to_kv_text();
        j = report_to_json(*refined);
        j["variant"] = "refined";
    } else {
        j = report_to_json(raw);
        j["variant"] = "raw";
    }
    write_text(cfg.out_dir / (ds.name + "_metrics.csv"), csv);
    write_text(cfg.out_dir / "metrics.json", j.dump(2) + '\n');
    return 0;
}

int do_bench(const RunConfig& cfg) {
    if (cfg.repeat < 1) throw std::invalid_argument("repeat must be >= 1");
    StructuredDataset ds = load_input(cfg.input);
    RegexRuleSet rules = resolve_rules(cfg);

    std::vector<double> group_times, refine_times;
    for (int i = 0; i < cfg.repeat; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<LogGroup> groups = group_records(ds, cfg.grouper);
        group_times.push_back(seconds_since(t0));

        auto t1 = std::chrono::steady_clock::now();
        ParseResult result = refine_groups(groups, rules, cfg.sampler, cfg.threads);
        refine_times.push_back(seconds_since(t1));
        if (result.assignments.size() != ds.records.size()) {
            throw std::logic_error("refinement lost records");
        }
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    const double g = median(group_times);
    const double r = median(refine_times);
    const double ratio = g > 0 ? r / g : 0.0;

    char row[256];
    std::snprintf(row, sizeof(row), "%.6f,%.6f,%.6f,%.6f\n", g, r, g + r, ratio);
    std::string csv = "grouping_s,refinement_s,total_s,refine_over_group_ratio\n";
    csv += row;
    std::filesystem::create_directories(cfg.out_dir);
    write_text(cfg.out_dir / (ds.name + "_bench.csv"), csv);
    std::cout << csv;
    return 0;
}

int do_regex_stats(const RunConfig& cfg) {
    StructuredDataset ds = load_input(cfg.input);
    if (!ds.truth) {
        std::cerr << "regex-stats: input has no EventTemplate ground truth\n";
        return 1;
    }
    RegexRuleSet rules = resolve_rules(cfg);
    VariableScan scan = scan_variables(ds, rules);

    std::map<std::string, std::size_t> counts;
    for (const RegexRule& r : rules.rules()) {
        counts.try_emplace(std::string(to_string(r.category())), 0);
    }
    counts.try_emplace("unmatched", 0);
    std::size_t matched = 0;
    for (const VariableOccurrence& occ : scan.occurrences) {
        counts[occ.category] += 1;
        if (occ.category != "unmatched") ++matched;
    }

    std::string csv = "category,count\n";
    // rule order first, then unmatched and the summary rows
    for (const RegexRule& r : rules.rules()) {
        auto name = std::string(to_string(r.category()));
        csv += name + ',' + std::to_string(counts[name]) + '\n';
    }
    csv += "unmatched," + std::to_string(counts["unmatched"]) + '\n';
    csv += "total," + std::to_string(scan.occurrences.size()) + '\n';
    csv += "misaligned_pairs," + std::to_string(scan.misaligned_pairs) + '\n';
    char frac[64];
    std::snprintf(frac, sizeof(frac), "matched_fraction,%.6f\n",
                  scan.occurrences.empty()
                      ? 0.0
                      : static_cast<double>(matched) /
                            static_cast<double>(scan.occurrences.size()));
    csv += frac;
    std::filesystem::create_directories(cfg.out_dir);
    write_text(cfg.out_dir / "regex_stats.csv", csv);
    std::cout << csv;
    return 0;
}

}  // namespace

RegexRuleSet resolve_rules(const RunConfig& cfg) {
    if (cfg.rules_path) return RegexRuleSet::load_file(*cfg.rules_path);
    if (const char* env = std::getenv("SYNLOG_RULES"); env != nullptr && *env != '\0') {
        return RegexRuleSet::load_file(env);
    }
    return RegexRuleSet::builtin_defaults();
}

int run_parse(const RunConfig& cfg) { return guarded("parse", &do_parse, cfg); }
int run_evaluate(const RunConfig& cfg) { return guarded("evaluate", &do_evaluate, cfg); }
int run_bench(const RunConfig& cfg) { return guarded("bench", &do_bench, cfg); }
int run_regex_stats(const RunConfig& cfg) { return guarded("regex-stats", &do_regex_stats, cfg); }

int run(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::Parse: return run_parse(cfg);
        case Command::Evaluate: return run_evaluate(cfg);
        case Command::Bench: return run_bench(cfg);
        case Command::RegexStats: return run_regex_stats(cfg);
    }
    return 2;
}

}  // namespace synlog
