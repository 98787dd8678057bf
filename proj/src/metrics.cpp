#include "synlog/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "synlog/errors.hpp"

namespace synlog {

double harmonic_mean(double a, double b) {
    if (a + b == 0.0) return 0.0;
    return 2.0 * a * b / (a + b);
}

namespace {

struct PartitionView {
    // line_id -> class index; class index -> size / normalized template
    std::unordered_map<LineId, std::size_t> cls;
    std::vector<std::size_t> sizes;
    std::vector<std::string> templates;

    void add(LineId line_id, std::string norm,
             std::unordered_map<std::string, std::size_t>& index) {
        auto [it, inserted] = index.emplace(std::move(norm), sizes.size());
        if (inserted) {
            sizes.push_back(0);
            templates.push_back(it->first);
        }
        cls.emplace(line_id, it->second);
        sizes[it->second] += 1;
    }
};

PartitionView build_partition(const ParseResult& pred) {
    PartitionView out;
    std::unordered_map<std::string, std::size_t> index;
    out.cls.reserve(pred.assignments.size());
    // normalize once per referenced table entry, not once per line
    std::vector<std::ptrdiff_t> cls_of_table(pred.templates.size(), -1);
    for (const auto& [line_id, tpl_index] : pred.assignments) {
        std::ptrdiff_t& slot = cls_of_table.at(tpl_index);
        if (slot < 0) {
            std::string norm = normalize_whitespace(pred.templates[tpl_index]);
            auto [it, inserted] = index.emplace(std::move(norm), out.sizes.size());
            if (inserted) {
                out.sizes.push_back(0);
                out.templates.push_back(it->first);
            }
            slot = static_cast<std::ptrdiff_t>(it->second);
        }
        const auto cls = static_cast<std::size_t>(slot);
        out.cls.emplace(line_id, cls);
        out.sizes[cls] += 1;
    }
    return out;
}

PartitionView build_partition(const GroundTruth& truth) {
    PartitionView out;
    std::unordered_map<std::string, std::size_t> index;
    out.cls.reserve(truth.assignments.size());
    for (const auto& [line_id, tpl] : truth.assignments) {
        out.add(line_id, normalize_whitespace(tpl), index);
    }
    return out;
}

void check_domains(const ParseResult& pred, const GroundTruth& truth) {
    if (pred.assignments.size() != truth.assignments.size()) {
        throw DomainMismatchError("prediction and ground truth differ in size");
    }
    for (const auto& [line_id, _] : pred.assignments) {
        if (!truth.assignments.contains(line_id)) {
            throw DomainMismatchError("line id " + std::to_string(line_id) +
                                      " missing from ground truth");
        }
    }
}

std::string fmt_fraction(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

MetricsReport compute_metrics(const ParseResult& pred, const GroundTruth& truth) {
    check_domains(pred, truth);

    PartitionView p = build_partition(pred);
    PartitionView t = build_partition(truth);

    // Co-occurrence counts per (pred class, truth class) pair. A pred class
    // equals a truth class as a set iff their sizes both equal the pair count.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> co;
    for (const auto& [line_id, pc] : p.cls) {
        co[{pc, t.cls.at(line_id)}] += 1;
    }

    MetricsReport r;
    r.counts.messages_total = p.cls.size();
    r.counts.predicted_templates = p.sizes.size();
    r.counts.truth_templates = t.sizes.size();

    std::uint64_t correct_messages = 0;
    for (const auto& [pair, n] : co) {
        const auto [pc, tc] = pair;
        if (p.sizes[pc] == n && t.sizes[tc] == n) {
            r.counts.correct_groups += 1;
            correct_messages += n;
            if (p.templates[pc] == t.templates[tc]) {
                r.counts.correct_templates += 1;
            }
        }
    }

    std::uint64_t exact_messages = 0;
    for (const auto& [line_id, pc] : p.cls) {
        if (p.templates[pc] == t.templates[t.cls.at(line_id)]) ++exact_messages;
    }

    const double total = static_cast<double>(r.counts.messages_total);
    if (total > 0) {
        r.ga = static_cast<double>(correct_messages) / total;
        r.pa = static_cast<double>(exact_messages) / total;
    }
    if (r.counts.predicted_templates > 0) {
        r.pga = static_cast<double>(r.counts.correct_groups) /
                static_cast<double>(r.counts.predicted_templates);
        r.pta = static_cast<double>(r.counts.correct_templates) /
                static_cast<double>(r.counts.predicted_templates);
    }
    if (r.counts.truth_templates > 0) {
        r.rga = static_cast<double>(r.counts.correct_groups) /
                static_cast<double>(r.counts.truth_templates);
        r.rta = static_cast<double>(r.counts.correct_templates) /
                static_cast<double>(r.counts.truth_templates);
    }
    r.fga = harmonic_mean(r.pga, r.rga);
    r.fta = harmonic_mean(r.pta, r.rta);
    return r;
}

double compute_ga(const ParseResult& pred, const GroundTruth& truth) {
    return compute_metrics(pred, truth).ga;
}

double compute_pa(const ParseResult& pred, const GroundTruth& truth) {
    return compute_metrics(pred, truth).pa;
}

F1Parts compute_fga(const ParseResult& pred, const GroundTruth& truth) {
    MetricsReport r = compute_metrics(pred, truth);
    return {r.pga, r.rga, r.fga};
}

F1Parts compute_fta(const ParseResult& pred, const GroundTruth& truth) {
    MetricsReport r = compute_metrics(pred, truth);
    return {r.pta, r.rta, r.fta};
}

std::string MetricsReport::to_kv_text() const {
    std::string out;
    auto kv = [&out](const char* k, const std::string& v) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    };
    kv("ga", fmt_fraction(ga));
    kv("pa", fmt_fraction(pa));
    kv("fga", fmt_fraction(fga));
    kv("fta", fmt_fraction(fta));
    kv("pga", fmt_fraction(pga));
    kv("rga", fmt_fraction(rga));
    kv("pta", fmt_fraction(pta));
    kv("rta", fmt_fraction(rta));
    kv("messages_total", std::to_string(counts.messages_total));
    kv("predicted_templates", std::to_string(counts.predicted_templates));
    kv("truth_templates", std::to_string(counts.truth_templates));
    kv("correct_groups", std::to_string(counts.correct_groups));
    kv("correct_templates", std::to_string(counts.correct_templates));
    return out;
}

std::string MetricsReport::csv_header() {
    return "ga,pa,fga,fta,pga,rga,pta,rta,messages_total,predicted_templates,"
           "truth_templates,correct_groups,correct_templates";
}

std::string MetricsReport::to_csv_row() const {
    std::string out;
    for (double v : {ga, pa, fga, fta, pga, rga, pta, rta}) {
        out += fmt_fraction(v);
        out += ',';
    }
    out += std::to_string(counts.messages_total) + ',';
    out += std::to_string(counts.predicted_templates) + ',';
    out += std::to_string(counts.truth_templates) + ',';
    out += std::to_string(counts.correct_groups) + ',';
    out += std::to_string(counts.correct_templates);
    return out;
}

}  // namespace synlog
