#include "synlog/log_model.hpp"

#include "synlog/errors.hpp"

namespace synlog {

namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
}

}  // namespace

bool Template::is_canonical() const {
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i].is_marker() && tokens[i - 1].is_marker()) return false;
    }
    return true;
}

TokenSeq tokenize(std::string_view content) {
    TokenSeq out;
    out.reserve(content.size() / 6 + 1);
    std::size_t i = 0;
    const std::size_t n = content.size();
    while (i < n) {
        while (i < n && is_ascii_space(content[i])) ++i;
        std::size_t start = i;
        while (i < n && !is_ascii_space(content[i])) ++i;
        if (i > start) out.emplace_back(std::string(content.substr(start, i - start)));
    }
    if (out.empty()) throw EmptyContentError("content is empty after trimming");
    return out;
}

std::string render_template(const Template& t) {
    std::string out;
    for (std::size_t i = 0; i < t.tokens.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += t.tokens[i].text;
    }
    return out;
}

Template parse_template_string(std::string_view s) {
    return Template{tokenize(s)};
}

bool constants_present(const Template& t, std::span<const Token> tokens) {
    std::size_t j = 0;
    for (const Token& tok : t.tokens) {
        if (tok.is_marker()) continue;
        while (j < tokens.size() && tokens[j].text != tok.text) ++j;
        if (j == tokens.size()) return false;
        ++j;
    }
    return true;
}

std::string normalize_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = true;  // swallow leading whitespace
    for (char c : s) {
        if (is_ascii_space(c)) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out.push_back(' ');
            in_space = false;
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace synlog
