#include <doctest.h>

#include "synlog/errors.hpp"
#include "synlog/log_model.hpp"
#include "test_util.hpp"

using namespace synlog;
using namespace synlog::test;

TEST_CASE("tokenize splits on whitespace runs") {
    auto tokens = tokenize("Reading broadcast variable 11 took 15 ms");
    CHECK(texts_of(tokens) ==
          std::vector<std::string>{"Reading", "broadcast", "variable", "11", "took", "15",
                                   "ms"});
    CHECK(texts_of(tokenize("a")) == std::vector<std::string>{"a"});
    CHECK(texts_of(tokenize("a   b\tc")) == std::vector<std::string>{"a", "b", "c"});
    CHECK(texts_of(tokenize("  lead trail \r\n")) ==
          std::vector<std::string>{"lead", "trail"});
}

TEST_CASE("tokenize rejects empty content") {
    CHECK_THROWS_AS(tokenize(""), EmptyContentError);
    CHECK_THROWS_AS(tokenize("   \t \n"), EmptyContentError);
}

TEST_CASE("token kind is determined by the marker text") {
    CHECK(Token("<*>").is_marker());
    CHECK(Token("<*>").kind() == TokenKind::VariableMarker);
    CHECK(Token("x").kind() == TokenKind::Constant);
    CHECK_FALSE(Token("<*>>").is_marker());
    CHECK_FALSE(Token("<>").is_marker());
}

TEST_CASE("render_template joins with single spaces") {
    Template t{toks({"Reading", "broadcast", "variable", "<*>", "took", "<*>", "ms"})};
    CHECK(render_template(t) == "Reading broadcast variable <*> took <*> ms");
    CHECK(render_template(Template{toks({"<*>"})}) == "<*>");
    CHECK(render_template(Template{toks({"a", "<*>", "b"})}) == "a <*> b");
}

TEST_CASE("parse_template_string inverts render") {
    Template t = parse_template_string("open <*> failed");
    CHECK(t.tokens == toks({"open", "<*>", "failed"}));
    CHECK(parse_template_string("<*>").tokens == toks({"<*>"}));

    Template fig = parse_template_string("Reading broadcast variable <*> took <*> ms");
    REQUIRE(fig.tokens.size() == 7);
    CHECK(fig.tokens[3].is_marker());
    CHECK(fig.tokens[5].is_marker());
    CHECK_FALSE(fig.tokens[0].is_marker());
    CHECK_THROWS_AS(parse_template_string("  "), EmptyContentError);
}

TEST_CASE("constants_present is an ordered subsequence test") {
    Template t{toks({"Connection", "from", "<*>", "closed"})};
    CHECK(constants_present(t, toks({"Connection", "from", "host7", "closed"})));
    CHECK_FALSE(constants_present(t, toks({"Connection", "from", "x", "dropped"})));
    CHECK(constants_present(Template{toks({"<*>"})}, toks({"anything"})));
    // order matters
    CHECK_FALSE(constants_present(Template{toks({"b", "a"})}, toks({"a", "b"})));
}

TEST_CASE("template canonical form") {
    CHECK(Template{toks({"a", "<*>", "b"})}.is_canonical());
    CHECK_FALSE(Template{toks({"a", "<*>", "<*>"})}.is_canonical());
    CHECK(Template{}.is_canonical());
}

TEST_CASE("property: tokenize-join is idempotent") {
    Rng rng(101);
    const char* pieces[] = {"a", "bb", "x9", "<*>", "##", "end.", "10ms", "/var/x"};
    for (int iter = 0; iter < 200; ++iter) {
        std::string s;
        std::size_t n = 1 + rng.below(10);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t pad = rng.below(3) + 1;
            s.append(pad, rng.chance(0.3) ? '\t' : ' ');
            s += pieces[rng.below(std::size(pieces))];
        }
        auto once = tokenize(s);
        auto rendered = render_template(Template{once});
        CHECK(tokenize(rendered) == once);
    }
}

TEST_CASE("property: parse round-trips rendered canonical templates") {
    Rng rng(202);
    const char* words[] = {"open", "close", "send", "recv", "ok", "fail"};
    for (int iter = 0; iter < 200; ++iter) {
        Template t;
        std::size_t n = 1 + rng.below(8);
        bool last_marker = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!last_marker && rng.chance(0.35)) {
                t.tokens.emplace_back(std::string(kVariableMarker));
                last_marker = true;
            } else {
                t.tokens.emplace_back(std::string(words[rng.below(std::size(words))]));
                last_marker = false;
            }
        }
        REQUIRE(t.is_canonical());
        CHECK(parse_template_string(render_template(t)) == t);
    }
}

TEST_CASE("property: demoting a constant never breaks containment") {
    Rng rng(303);
    const char* words[] = {"open", "close", "send", "recv", "ok", "fail", "x", "y"};
    for (int iter = 0; iter < 300; ++iter) {
        Template t;
        std::size_t n = 1 + rng.below(6);
        for (std::size_t i = 0; i < n; ++i) {
            t.tokens.emplace_back(rng.chance(0.3) ? std::string(kVariableMarker)
                                                  : std::string(words[rng.below(8)]));
        }
        TokenSeq haystack;
        std::size_t m = rng.below(10);
        for (std::size_t i = 0; i < m; ++i) {
            haystack.emplace_back(std::string(words[rng.below(8)]));
        }
        if (!constants_present(t, haystack)) continue;

        // replace one constant with the marker: containment must survive
        for (std::size_t i = 0; i < t.tokens.size(); ++i) {
            if (t.tokens[i].is_marker()) continue;
            Template weaker = t;
            weaker.tokens[i] = Token(std::string(kVariableMarker));
            CHECK(constants_present(weaker, haystack));
        }
    }
}

TEST_CASE("normalize_whitespace collapses runs and trims") {
    CHECK(normalize_whitespace("  a \t b  ") == "a b");
    CHECK(normalize_whitespace("") == "");
    CHECK(normalize_whitespace(" \t ") == "");
    CHECK(normalize_whitespace("one") == "one");
}
