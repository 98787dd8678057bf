#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "synlog/log_model.hpp"
#include "synlog/metrics.hpp"
#include "synlog/rules.hpp"

namespace synlog {

struct StructuredDataset {
    std::string name;
    std::vector<LogRecord> records;
    std::optional<GroundTruth> truth;
};

// Loads a Loghub-style structured CSV. The header must contain a Content
// column; LineId is used when present (row ordinal otherwise) and
// EventTemplate populates the ground truth.
StructuredDataset load_structured_csv(const std::filesystem::path& path);

// Loads a plain log file, one record per non-blank line, no ground truth.
StructuredDataset load_raw_log(const std::filesystem::path& path);

struct ExtractResult {
    std::vector<std::string> values;
    bool misaligned = false;
};

// Captures the variable values of content under its template: constants must
// match literally, each marker consumes one or more tokens (non-greedy,
// leftmost). A template that cannot match its own content yields a
// misaligned result instead of an error.
ExtractResult extract_variables(std::string_view content, const Template& truth_template);

struct VariableOccurrence {
    LineId line_id = 0;
    std::string value;
    std::string category;  // rule category name or "unmatched"
};

struct VariableScan {
    std::vector<VariableOccurrence> occurrences;
    std::size_t misaligned_pairs = 0;
};

// Extracts every ground-truth variable occurrence of the dataset and labels
// each with the first rule category that fully matches it.
VariableScan scan_variables(const StructuredDataset& dataset, const RegexRuleSet& rules);

// Writes <name>_structured.csv and <name>_templates.csv under out_dir.
// EventIds are assigned by first appearance in line order; output bytes are
// stable across runs for identical inputs.
void write_structured_output(const StructuredDataset& dataset, const ParseResult& result,
                             const std::filesystem::path& out_dir);

// Dataset label from a file name, dropping extensions and the usual
// "_structured"/"_structured_corrected" suffixes.
std::string dataset_name_from_path(const std::filesystem::path& path);

namespace csv {

// Minimal RFC 4180 reader/writer: comma separation, double-quote quoting,
// quotes escaped by doubling, quoted fields may span lines.
std::vector<std::vector<std::string>> parse(std::string_view text);
std::string escape_field(std::string_view field);

}  // namespace csv

}  // namespace synlog
