#include "synlog/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "synlog/errors.hpp"

namespace synlog {

namespace csv {

std::vector<std::vector<std::string>> parse(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any_field = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        any_field = true;
    };
    auto end_row = [&] {
        if (any_field || !field.empty()) {
            end_field();
            rows.push_back(std::move(row));
            row.clear();
            any_field = false;
        }
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            end_row();
        } else if (c == '\r') {
            // swallow; \r\n handled by the \n branch
        } else {
            field.push_back(c);
        }
    }
    end_row();
    return rows;
}

std::string escape_field(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace csv

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error while reading: " + path.string());
    return std::move(ss).str();
}

std::optional<std::size_t> column_index(const std::vector<std::string>& header,
                                        std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return std::nullopt;
}

}  // namespace

std::string dataset_name_from_path(const std::filesystem::path& path) {
    std::string name = path.filename().string();
    auto strip_suffix = [&name](std::string_view suffix) {
        if (name.size() > suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
            name.resize(name.size() - suffix.size());
            return true;
        }
        return false;
    };
    strip_suffix(".csv") || strip_suffix(".log") || strip_suffix(".txt");
    strip_suffix("_structured_corrected") || strip_suffix("_structured");
    strip_suffix(".log");
    return name.empty() ? "dataset" : name;
}

StructuredDataset load_structured_csv(const std::filesystem::path& path) {
    std::string text = read_file(path);
    auto rows = csv::parse(text);
    if (rows.empty()) throw FormatError("structured CSV has no header: " + path.string());

    const auto& header = rows.front();
    auto content_col = column_index(header, "Content");
    if (!content_col) {
        throw FormatError("structured CSV lacks a Content column: " + path.string());
    }
    auto lineid_col = column_index(header, "LineId");
    auto template_col = column_index(header, "EventTemplate");

    StructuredDataset ds;
    ds.name = dataset_name_from_path(path);
    if (template_col) ds.truth.emplace();

    std::unordered_set<LineId> seen_ids;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() <= *content_col) {
            throw FormatError(path.string() + ": row " + std::to_string(r + 1) +
                              " has too few fields");
        }
        LineId id = static_cast<LineId>(r);
        if (lineid_col && row.size() > *lineid_col) {
            const std::string& raw = row[*lineid_col];
            auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), id);
            if (ec != std::errc() || ptr != raw.data() + raw.size()) {
                throw FormatError(path.string() + ": row " + std::to_string(r + 1) +
                                  " has a non-numeric LineId");
            }
        }
        if (!seen_ids.insert(id).second) {
            throw FormatError(path.string() + ": duplicate LineId " + std::to_string(id));
        }
        const std::string& content = row[*content_col];
        if (normalize_whitespace(content).empty()) {
            throw FormatError(path.string() + ": row " + std::to_string(r + 1) +
                              " has empty Content");
        }
        ds.records.push_back(LogRecord{id, content});
        if (ds.truth) {
            if (row.size() <= *template_col) {
                throw FormatError(path.string() + ": row " + std::to_string(r + 1) +
                                  " lacks an EventTemplate field");
            }
            ds.truth->assignments[id] = row[*template_col];
        }
    }
    return ds;
}

StructuredDataset load_raw_log(const std::filesystem::path& path) {
    std::string text = read_file(path);
    StructuredDataset ds;
    ds.name = dataset_name_from_path(path);
    std::size_t pos = 0;
    LineId next_id = 1;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line(text.data() + pos,
                              (eol == std::string::npos ? text.size() : eol) - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!normalize_whitespace(line).empty()) {
            ds.records.push_back(LogRecord{next_id++, std::string(line)});
        }
        if (eol == std::string::npos) break;
        pos = eol + 1;
    }
    return ds;
}

namespace {

// Token-level matcher: template constants must equal content tokens, each
// marker captures >= 1 tokens, shortest capture first (non-greedy,
// leftmost). Feasibility is tabulated right to left so the forward walk
// never backtracks.
struct TokenMatcher {
    const std::vector<std::string>& tpl;
    const std::vector<std::string>& content;
    std::vector<char> feasible;  // (T+1) x (N+1): tpl[ti:] matches content[ci:]

    TokenMatcher(const std::vector<std::string>& t, const std::vector<std::string>& c)
        : tpl(t), content(c), feasible((t.size() + 1) * (c.size() + 1), 0) {
        const std::size_t n = content.size();
        at(tpl.size(), n) = 1;
        for (std::size_t ti = tpl.size(); ti-- > 0;) {
            // suffix-any of the row below lets a marker consume any tail
            std::vector<char> below_any(n + 2, 0);
            for (std::size_t ci = n + 1; ci-- > 0;) {
                below_any[ci] = static_cast<char>(below_any[ci + 1] | at(ti + 1, ci));
            }
            for (std::size_t ci = n + 1; ci-- > 0;) {
                if (tpl[ti] == kVariableMarker) {
                    at(ti, ci) = ci + 1 <= n ? below_any[ci + 1] : char{0};
                } else {
                    at(ti, ci) =
                        ci < n && content[ci] == tpl[ti] ? at(ti + 1, ci + 1) : char{0};
                }
            }
        }
    }

    char& at(std::size_t ti, std::size_t ci) {
        return feasible[ti * (content.size() + 1) + ci];
    }

    bool spans(std::vector<std::pair<std::size_t, std::size_t>>& out) {
        if (!at(0, 0)) return false;
        std::size_t ci = 0;
        for (std::size_t ti = 0; ti < tpl.size(); ++ti) {
            if (tpl[ti] == kVariableMarker) {
                std::size_t take = 1;
                while (!at(ti + 1, ci + take)) ++take;
                out.emplace_back(ci, take);
                ci += take;
            } else {
                ++ci;
            }
        }
        return true;
    }
};

}  // namespace

ExtractResult extract_variables(std::string_view content, const Template& truth_template) {
    std::vector<std::string> content_tokens;
    for (const Token& t : tokenize(content)) content_tokens.push_back(t.text);
    std::vector<std::string> tpl_tokens;
    for (const Token& t : truth_template.tokens) tpl_tokens.push_back(t.text);

    std::vector<std::pair<std::size_t, std::size_t>> spans;
    TokenMatcher matcher(tpl_tokens, content_tokens);
    if (!matcher.spans(spans)) {
        return ExtractResult{{}, true};
    }
    ExtractResult out;
    out.values.reserve(spans.size());
    for (const auto& [start, len] : spans) {
        std::string value = content_tokens[start];
        for (std::size_t i = 1; i < len; ++i) {
            value += ' ';
            value += content_tokens[start + i];
        }
        out.values.push_back(std::move(value));
    }
    return out;
}

VariableScan scan_variables(const StructuredDataset& dataset, const RegexRuleSet& rules) {
    if (!dataset.truth) return {};
    VariableScan scan;
    std::unordered_map<std::string, Template> template_cache;
    for (const LogRecord& rec : dataset.records) {
        auto it = dataset.truth->assignments.find(rec.line_id);
        if (it == dataset.truth->assignments.end()) continue;
        auto [cached, inserted] = template_cache.try_emplace(it->second);
        if (inserted) cached->second = parse_template_string(it->second);
        ExtractResult extracted = extract_variables(rec.content, cached->second);
        if (extracted.misaligned) {
            ++scan.misaligned_pairs;
            continue;
        }
        for (std::string& value : extracted.values) {
            const RegexRule* rule = rules.first_match(value);
            scan.occurrences.push_back(VariableOccurrence{
                rec.line_id, std::move(value),
                rule ? std::string(to_string(rule->category())) : "unmatched"});
        }
    }
    return scan;
}

void write_structured_output(const StructuredDataset& dataset, const ParseResult& result,
                             const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    std::unordered_map<std::string, std::size_t> event_index;
    std::vector<std::string> event_templates;
    std::vector<std::size_t> occurrences;

    std::ostringstream structured;
    structured << "LineId,Content,EventId,EventTemplate\n";
    for (const LogRecord& rec : dataset.records) {
        if (!result.covers(rec.line_id)) {
            throw FormatError("parse result does not cover line id " +
                              std::to_string(rec.line_id));
        }
        const std::string& tpl = result.template_of(rec.line_id);
        auto [slot, inserted] = event_index.try_emplace(tpl, event_templates.size());
        if (inserted) {
            event_templates.push_back(tpl);
            occurrences.push_back(0);
        }
        occurrences[slot->second] += 1;
        structured << rec.line_id << ',' << csv::escape_field(rec.content) << ",E"
                   << (slot->second + 1) << ',' << csv::escape_field(tpl) << '\n';
    }

    std::ostringstream templates;
    templates << "EventId,EventTemplate,Occurrences\n";
    for (std::size_t i = 0; i < event_templates.size(); ++i) {
        templates << 'E' << (i + 1) << ',' << csv::escape_field(event_templates[i]) << ','
                  << occurrences[i] << '\n';
    }

    auto write = [&](const std::filesystem::path& p, const std::string& data) {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + p.string());
        out << data;
        if (!out) throw IoError("error while writing: " + p.string());
    };
    write(out_dir / (dataset.name + "_structured.csv"), structured.str());
    write(out_dir / (dataset.name + "_templates.csv"), templates.str());
}

}  // namespace synlog
