#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace synlog {

using LineId = std::uint64_t;
using GroupId = std::uint64_t;

// The literal variable marker used in templates and ground-truth files.
inline constexpr std::string_view kVariableMarker = "<*>";

enum class TokenKind { Constant, VariableMarker };

// One whitespace-delimited token of a log message or template. The kind is
// fully determined by the text: exactly "<*>" is a variable marker.
struct Token {
    std::string text;

    Token() = default;
    explicit Token(std::string t) : text(std::move(t)) {}

    bool is_marker() const { return text == kVariableMarker; }
    TokenKind kind() const {
        return is_marker() ? TokenKind::VariableMarker : TokenKind::Constant;
    }

    friend bool operator==(const Token&, const Token&) = default;
};

using TokenSeq = std::vector<Token>;

// One raw log message, headers already stripped.
struct LogRecord {
    LineId line_id = 0;
    std::string content;
};

// Ordered sequence of constant tokens and variable markers.
struct Template {
    TokenSeq tokens;

    bool empty() const { return tokens.empty(); }

    // True when no two adjacent tokens are both variable markers.
    bool is_canonical() const;

    friend bool operator==(const Template&, const Template&) = default;
};

// A cluster of records presumed to share one template. unique_contents keeps
// the distinct member contents in first-appearance order.
struct LogGroup {
    GroupId group_id = 0;
    std::vector<LineId> member_ids;
    std::vector<std::string> unique_contents;
    std::optional<Template> template_;
};

// Splits content on runs of ASCII whitespace. Throws EmptyContentError when
// the input is empty after trimming.
TokenSeq tokenize(std::string_view content);

// Joins token texts with single spaces; markers render literally as "<*>".
std::string render_template(const Template& t);

// Inverse of render_template up to whitespace normalization. Throws
// EmptyContentError on empty input.
Template parse_template_string(std::string_view s);

// True iff the constant tokens of t, in order, form an order-preserving
// subsequence of the given token texts.
bool constants_present(const Template& t, std::span<const Token> tokens);

// Collapses whitespace runs to single spaces and trims the ends.
std::string normalize_whitespace(std::string_view s);

}  // namespace synlog
