#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "synlog/datasets.hpp"
#include "synlog/grouping.hpp"
#include "synlog/metrics.hpp"
#include "synlog/pipeline.hpp"

namespace py = pybind11;
using namespace synlog;

namespace {

RegexRuleSet rules_from(const std::optional<std::filesystem::path>& rules_path) {
    return rules_path ? RegexRuleSet::load_file(*rules_path)
                      : RegexRuleSet::builtin_defaults();
}

std::vector<std::string> py_tokenize(const std::string& content) {
    std::vector<std::string> out;
    for (const Token& t : tokenize(content)) out.push_back(t.text);
    return out;
}

std::vector<std::string> py_anonymize(const std::vector<std::string>& tokens,
                                      const std::optional<std::filesystem::path>& rules_path) {
    Anonymizer anonymizer(rules_from(rules_path));
    TokenSeq seq;
    seq.reserve(tokens.size());
    for (const std::string& t : tokens) seq.emplace_back(t);
    std::vector<std::string> out;
    for (const Token& t : anonymizer.anonymize(seq)) out.push_back(t.text);
    return out;
}

std::vector<std::string> py_parse_lines(const std::vector<std::string>& lines,
                                        const std::string& grouper, int depth, double st,
                                        int max_children, int k, std::uint64_t seed,
                                        bool refine, int threads,
                                        const std::optional<std::filesystem::path>& rules_path) {
    GrouperConfig gcfg;
    gcfg.backend = grouper == "ael" ? GrouperBackend::AelLike : GrouperBackend::DrainLike;
    gcfg.tree_depth = depth;
    gcfg.similarity_threshold = st;
    gcfg.max_children = max_children;

    auto g = make_grouper(gcfg);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        g->feed(LogRecord{static_cast<LineId>(i + 1), lines[i]});
    }
    std::vector<LogGroup> groups = g->finalize();

    SamplerConfig scfg{k, seed};
    ParseResult result = refine ? refine_groups(groups, rules_from(rules_path), scfg, threads)
                                : raw_group_result(groups);
    std::vector<std::string> out;
    out.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out.push_back(result.template_of(static_cast<LineId>(i + 1)));
    }
    return out;
}

py::dict py_evaluate(const std::vector<std::string>& predicted,
                     const std::vector<std::string>& truth) {
    if (predicted.size() != truth.size()) {
        throw py::value_error("predicted and truth must have the same length");
    }
    ParseResult pred;
    GroundTruth gt;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        pred.assign(static_cast<LineId>(i + 1), pred.add_template(predicted[i]));
        gt.assignments[static_cast<LineId>(i + 1)] = truth[i];
    }
    MetricsReport r = compute_metrics(pred, gt);
    py::dict d;
    d["ga"] = r.ga;
    d["pa"] = r.pa;
    d["fga"] = r.fga;
    d["fta"] = r.fta;
    d["pga"] = r.pga;
    d["rga"] = r.rga;
    d["pta"] = r.pta;
    d["rta"] = r.rta;
    d["messages_total"] = r.counts.messages_total;
    d["predicted_templates"] = r.counts.predicted_templates;
    d["truth_templates"] = r.counts.truth_templates;
    d["correct_groups"] = r.counts.correct_groups;
    d["correct_templates"] = r.counts.correct_templates;
    return d;
}

std::optional<std::vector<std::string>> py_extract_variables(const std::string& content,
                                                             const std::string& tpl) {
    ExtractResult r = extract_variables(content, parse_template_string(tpl));
    if (r.misaligned) return std::nullopt;
    return r.values;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "two-phase log template mining: syntax-based grouping plus "
              "LCS-based template refinement";

    m.def("tokenize", &py_tokenize, py::arg("content"),
          "Split a log message on whitespace runs.");
    m.def("anonymize", &py_anonymize, py::arg("tokens"),
          py::arg("rules_path") = std::nullopt,
          "Replace likely-variable tokens with the '<*>' marker.");
    m.def("parse_lines", &py_parse_lines, py::arg("lines"), py::arg("grouper") = "drain",
          py::arg("depth") = 4, py::arg("st") = 0.4, py::arg("max_children") = 100,
          py::arg("k") = 2, py::arg("seed") = 42, py::arg("refine") = true,
          py::arg("threads") = 1, py::arg("rules_path") = std::nullopt,
          "Parse log lines and return one template string per line.");
    m.def("evaluate", &py_evaluate, py::arg("predicted"), py::arg("truth"),
          "GA/PA/FGA/FTA metrics between two per-line template lists.");
    m.def("extract_variables", &py_extract_variables, py::arg("content"),
          py::arg("template"),
          "Variable values captured by a template, or None when misaligned.");
}
