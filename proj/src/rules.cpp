#include "synlog/rules.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "synlog/errors.hpp"

namespace synlog {

namespace {

constexpr std::array<std::pair<RuleCategory, std::string_view>, 8> kCategoryNames = {{
    {RuleCategory::IpAddress, "ip_address"},
    {RuleCategory::MacAddress, "mac_address"},
    {RuleCategory::EmailAddress, "email_address"},
    {RuleCategory::UnixPath, "unix_path"},
    {RuleCategory::WindowsPath, "windows_path"},
    {RuleCategory::Datetime, "datetime"},
    {RuleCategory::Duration, "duration"},
    {RuleCategory::Memory, "memory"},
}};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex_digit(char c) {
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}
bool is_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Necessary-condition guards for the built-in patterns. Each returns false
// only for tokens the corresponding regex cannot fully match.
bool guard_email(std::string_view t) {
    return t.find('@') != std::string_view::npos &&
           t.find('.') != std::string_view::npos;
}
bool guard_mac(std::string_view t) {
    return std::count(t.begin(), t.end(), ':') >= 5;
}
bool guard_ip(std::string_view t) {
    return std::count(t.begin(), t.end(), '.') >= 2;
}
bool guard_windows_path(std::string_view t) {
    return t.size() >= 3 && is_alpha(t[0]) && t[1] == ':' &&
           (t[2] == '/' || t[2] == '\\');
}
bool guard_unix_path(std::string_view t) { return !t.empty() && t[0] == '/'; }
bool guard_datetime(std::string_view t) {
    return !t.empty() && is_digit(t[0]) &&
           t.find_first_of("-/") != std::string_view::npos;
}
bool guard_duration(std::string_view t) {
    return t.find('s') != std::string_view::npos &&
           std::any_of(t.begin(), t.end(), is_digit);
}
bool guard_memory(std::string_view t) { return !t.empty() && is_digit(t[0]); }

bool (*builtin_guard(RuleCategory c))(std::string_view) {
    switch (c) {
        case RuleCategory::EmailAddress: return &guard_email;
        case RuleCategory::MacAddress: return &guard_mac;
        case RuleCategory::IpAddress: return &guard_ip;
        case RuleCategory::WindowsPath: return &guard_windows_path;
        case RuleCategory::UnixPath: return &guard_unix_path;
        case RuleCategory::Datetime: return &guard_datetime;
        case RuleCategory::Duration: return &guard_duration;
        case RuleCategory::Memory: return &guard_memory;
    }
    return nullptr;
}

}  // namespace

std::string_view to_string(RuleCategory c) {
    for (const auto& [cat, name] : kCategoryNames) {
        if (cat == c) return name;
    }
    return "unknown";
}

RuleCategory rule_category_from_string(std::string_view s) {
    for (const auto& [cat, name] : kCategoryNames) {
        if (name == s) return cat;
    }
    throw FormatError("unknown rule category: " + std::string(s));
}

RegexRule::RegexRule(RuleCategory category, std::string pattern)
    : category_(category), pattern_(std::move(pattern)) {
    try {
        compiled_.assign(pattern_, std::regex::ECMAScript | std::regex::optimize);
    } catch (const std::regex_error& e) {
        throw FormatError("rule pattern for '" + std::string(to_string(category_)) +
                          "' does not compile: " + e.what());
    }
}

bool RegexRule::matches(const std::string& token) const {
    if (guard_ && !guard_(token)) return false;
    return std::regex_match(token, compiled_);
}

const RegexRule* RegexRuleSet::first_match(const std::string& token) const {
    for (const RegexRule& r : rules_) {
        if (r.matches(token)) return &r;
    }
    return nullptr;
}

RegexRuleSet RegexRuleSet::builtin_defaults() {
    struct Entry {
        RuleCategory cat;
        const char* pattern;
    };
    // Application order: email and MAC before the host-shaped IP pattern,
    // paths before the date/duration/memory number shapes.
    static const Entry kDefaults[] = {
        {RuleCategory::EmailAddress, R"([0-9a-zA-Z]+@([0-9a-zA-Z]+\.)+[0-9a-zA-Z]+)"},
        {RuleCategory::MacAddress, R"(([A-Fa-f0-9]{2}:){5,11}[A-Fa-f0-9]{2})"},
        {RuleCategory::IpAddress, R"((?:[-0-9a-zA-Z]+\.){2,}[-0-9a-zA-Z]+(?::?:\d+)?)"},
        {RuleCategory::WindowsPath,
         R"(([a-zA-Z]\:[\/\\][\d+\w+\-_\.\\\#\$]*([\/\\\.][\d+\w+\-_\.\\\#\$\\\/*]*)?))"},
        {RuleCategory::UnixPath,
         R"((\/[\d+\w+\-_\.\\\#\$]*[\/\.][\d+\w+\-_\.\\\#\$\/*]*)+(\sHTTPS?\/\d\.\d)?)"},
        {RuleCategory::Datetime, R"((\d{1,4}(-|/)\d{1,2}(-|/)\d{1,4}))"},
        {RuleCategory::Duration, R"([+-]?(\d+s(\d+\s?ms)?|\d+\s?ms))"},
        {RuleCategory::Memory, R"((\d+(\.\d+)?)\s?[kmgKMG][bB]?((\/s)|(ytes))?)"},
    };
    std::vector<RegexRule> rules;
    rules.reserve(std::size(kDefaults));
    for (const Entry& e : kDefaults) {
        RegexRule r(e.cat, e.pattern);
        r.guard_ = builtin_guard(e.cat);
        rules.push_back(std::move(r));
    }
    return RegexRuleSet(std::move(rules));
}

RegexRuleSet RegexRuleSet::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open rules file: " + path.string());
    std::vector<RegexRule> rules;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw FormatError("rules file " + path.string() + ":" +
                              std::to_string(lineno) + ": expected category<TAB>pattern");
        }
        RuleCategory cat = rule_category_from_string(line.substr(0, tab));
        rules.emplace_back(cat, line.substr(tab + 1));
    }
    return RegexRuleSet(std::move(rules));
}

bool is_pure_number(std::string_view token) {
    std::size_t i = 0;
    if (i < token.size() && (token[i] == '+' || token[i] == '-')) ++i;
    if (i >= token.size()) return false;
    // Hexadecimal requires an explicit 0x/0X prefix.
    if (token.size() - i > 2 && token[i] == '0' &&
        (token[i + 1] == 'x' || token[i + 1] == 'X')) {
        for (std::size_t j = i + 2; j < token.size(); ++j) {
            if (!is_hex_digit(token[j])) return false;
        }
        return true;
    }
    std::size_t digits = 0;
    bool seen_dot = false;
    for (; i < token.size(); ++i) {
        if (is_digit(token[i])) {
            ++digits;
        } else if (token[i] == '.' && !seen_dot) {
            seen_dot = true;
            // no trailing dot, no dot without following digits
            if (i + 1 == token.size()) return false;
        } else {
            return false;
        }
    }
    return digits > 0;
}

bool is_digit_rich(std::string_view token) {
    std::size_t digits = 0;
    for (char c : token) {
        if (is_digit(c)) ++digits;
    }
    return digits * 2 > token.size();
}

bool Anonymizer::is_variable(const std::string& token) const {
    auto it = cache_.find(token);
    if (it != cache_.end()) return it->second;
    bool variable = rules_.first_match(token) != nullptr || is_pure_number(token) ||
                    is_digit_rich(token);
    cache_.emplace(token, variable);
    return variable;
}

TokenSeq Anonymizer::anonymize(const TokenSeq& tokens) const {
    TokenSeq out;
    out.reserve(tokens.size());
    for (const Token& t : tokens) {
        if (!t.is_marker() && is_variable(t.text)) {
            out.emplace_back(std::string(kVariableMarker));
        } else {
            out.push_back(t);
        }
    }
    return out;
}

}  // namespace synlog
