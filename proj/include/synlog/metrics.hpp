#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "synlog/log_model.hpp"

namespace synlog {

// Predicted template per message. Template strings live once in a table and
// lines carry indices, so a 100k-line result does not copy 100k strings.
// Messages sharing a template string form the predicted partition used by
// the grouping metrics.
struct ParseResult {
    std::vector<std::string> templates;
    std::unordered_map<LineId, std::uint32_t> assignments;  // line id -> table index

    std::uint32_t add_template(std::string t) {
        templates.push_back(std::move(t));
        return static_cast<std::uint32_t>(templates.size() - 1);
    }
    void assign(LineId id, std::uint32_t index) { assignments.emplace(id, index); }
    bool covers(LineId id) const { return assignments.contains(id); }
    const std::string& template_of(LineId id) const {
        return templates.at(assignments.at(id));
    }
};

// Ground-truth template string per message (the EventTemplate column).
struct GroundTruth {
    std::unordered_map<LineId, std::string> assignments;
};

struct MetricsCounts {
    std::uint64_t messages_total = 0;
    std::uint64_t predicted_templates = 0;
    std::uint64_t truth_templates = 0;
    std::uint64_t correct_groups = 0;
    std::uint64_t correct_templates = 0;
};

struct MetricsReport {
    double ga = 0, pa = 0, fga = 0, fta = 0;
    double pga = 0, rga = 0, pta = 0, rta = 0;
    MetricsCounts counts;

    // "key=value" lines, one per field, in a fixed order.
    std::string to_kv_text() const;
    static std::string csv_header();
    std::string to_csv_row() const;
};

// All four metrics in one pass. Template strings are compared after
// whitespace normalization. Throws DomainMismatchError when pred and truth
// do not cover the same line ids.
MetricsReport compute_metrics(const ParseResult& pred, const GroundTruth& truth);

double compute_ga(const ParseResult& pred, const GroundTruth& truth);
double compute_pa(const ParseResult& pred, const GroundTruth& truth);

struct F1Parts {
    double precision = 0, recall = 0, f1 = 0;
};
F1Parts compute_fga(const ParseResult& pred, const GroundTruth& truth);
F1Parts compute_fta(const ParseResult& pred, const GroundTruth& truth);

// Harmonic mean with harmonic_mean(0, 0) = 0.
double harmonic_mean(double a, double b);

}  // namespace synlog
