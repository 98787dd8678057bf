#pragma once

#include <filesystem>
#include <memory>
#include <regex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "synlog/log_model.hpp"

namespace synlog {

enum class RuleCategory {
    IpAddress,
    MacAddress,
    EmailAddress,
    UnixPath,
    WindowsPath,
    Datetime,
    Duration,
    Memory,
};

std::string_view to_string(RuleCategory c);
RuleCategory rule_category_from_string(std::string_view s);  // throws FormatError

// One whole-token anonymization pattern.
class RegexRule {
public:
    RegexRule(RuleCategory category, std::string pattern);  // throws FormatError

    RuleCategory category() const { return category_; }
    const std::string& pattern() const { return pattern_; }

    // Full-match test against a single token.
    bool matches(const std::string& token) const;

private:
    using Guard = bool (*)(std::string_view);

    RuleCategory category_;
    std::string pattern_;
    std::regex compiled_;
    Guard guard_ = nullptr;  // cheap necessary condition, never a false negative

    friend class RegexRuleSet;
};

// Ordered list of rules; order is significant (first match wins).
class RegexRuleSet {
public:
    RegexRuleSet() = default;
    explicit RegexRuleSet(std::vector<RegexRule> rules) : rules_(std::move(rules)) {}

    const std::vector<RegexRule>& rules() const { return rules_; }

    // First rule whose pattern fully matches the token, or nullptr.
    const RegexRule* first_match(const std::string& token) const;

    static RegexRuleSet builtin_defaults();
    // Loads "category<TAB>pattern" lines. Throws IoError / FormatError.
    static RegexRuleSet load_file(const std::filesystem::path& path);

private:
    std::vector<RegexRule> rules_;
};

// True for decimal reals ("15", "-3.5") and 0x/0X-prefixed hexadecimals.
bool is_pure_number(std::string_view token);

// True when the token has strictly more digit characters than non-digits.
bool is_digit_rich(std::string_view token);

// Token-wise variable pre-marking: a token becomes the variable marker when a
// rule matches it whole, or it is a pure number, or it is digit-rich. Rule
// matching runs before the number rules. Caches per-token verdicts, so one
// instance must not be shared across threads.
class Anonymizer {
public:
    explicit Anonymizer(RegexRuleSet rules) : rules_(std::move(rules)) {}

    const RegexRuleSet& rules() const { return rules_; }

    bool is_variable(const std::string& token) const;
    TokenSeq anonymize(const TokenSeq& tokens) const;

private:
    RegexRuleSet rules_;
    mutable std::unordered_map<std::string, bool> cache_;
};

}  // namespace synlog
