#include "synlog/pipeline.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <thread>

#include "synlog/errors.hpp"

namespace synlog {

namespace {

// splitmix64: tiny portable PRNG so sampling is reproducible across standard
// libraries (std:: distributions are not).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::size_t below(std::size_t bound) {
        return static_cast<std::size_t>(next() % bound);
    }
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t group_id) {
    SplitMix64 rng(seed ^ (group_id * 0x9E3779B97F4A7C15ULL + 1));
    return rng.next();
}

}  // namespace

void SamplerConfig::validate() const {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
}

std::vector<std::string> sample_representatives(const LogGroup& group,
                                                const SamplerConfig& cfg) {
    cfg.validate();
    const auto& uniques = group.unique_contents;
    if (uniques.empty()) return {};
    if (uniques.size() == 1) return {uniques.front(), uniques.front()};

    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(cfg.k),
                                                   uniques.size());
    std::vector<std::size_t> idx(uniques.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    SplitMix64 rng(mix_seed(cfg.seed, group.group_id));
    std::vector<std::string> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        std::size_t j = i + rng.below(idx.size() - i);
        std::swap(idx[i], idx[j]);
        out.push_back(uniques[idx[i]]);
    }
    return out;
}

namespace {

// LCS of a against b with earliest-match tie-breaking, via suffix-length DP
// and a forward walk. Returns the matched indices into a.
std::vector<std::size_t> lcs_indices(std::span<const std::string> a,
                                     std::span<const std::string> b) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<std::uint32_t> dp((n + 1) * (m + 1), 0);
    auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = m; j-- > 0;) {
            dp[at(i, j)] = (a[i] == b[j])
                               ? dp[at(i + 1, j + 1)] + 1
                               : std::max(dp[at(i + 1, j)], dp[at(i, j + 1)]);
        }
    }
    std::vector<std::size_t> matched;
    std::size_t i = 0, j = 0;
    while (i < n && j < m) {
        if (a[i] == b[j] && dp[at(i, j)] == dp[at(i + 1, j + 1)] + 1) {
            matched.push_back(i);
            ++i;
            ++j;
        } else if (dp[at(i + 1, j)] >= dp[at(i, j + 1)]) {
            ++i;
        } else {
            ++j;
        }
    }
    return matched;
}

}  // namespace

Template identify_template(std::span<const TokenSeq> reps) {
    if (reps.empty()) return {};
    const TokenSeq& base = reps.front();

    // Working set: surviving base positions and their texts, narrowed by each
    // further representative in turn.
    std::vector<std::size_t> positions(base.size());
    std::vector<std::string> texts(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        positions[i] = i;
        texts[i] = base[i].text;
    }
    for (std::size_t r = 1; r < reps.size(); ++r) {
        std::vector<std::string> other(reps[r].size());
        for (std::size_t i = 0; i < reps[r].size(); ++i) other[i] = reps[r][i].text;
        std::vector<std::size_t> kept = lcs_indices(texts, other);
        std::vector<std::size_t> new_positions;
        std::vector<std::string> new_texts;
        new_positions.reserve(kept.size());
        new_texts.reserve(kept.size());
        for (std::size_t k : kept) {
            new_positions.push_back(positions[k]);
            new_texts.push_back(std::move(texts[k]));
        }
        positions = std::move(new_positions);
        texts = std::move(new_texts);
    }

    std::vector<bool> keep(base.size(), false);
    for (std::size_t p : positions) keep[p] = true;
    Template out;
    out.tokens.reserve(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        out.tokens.push_back(keep[i] ? base[i] : Token(std::string(kVariableMarker)));
    }
    return out;
}

Template verify_constants(const Template& t,
                          std::span<const TokenSeq> anonymized_uniques) {
    Template out = t;
    for (Token& tok : out.tokens) {
        if (tok.is_marker()) continue;
        for (const TokenSeq& seq : anonymized_uniques) {
            bool found = false;
            for (const Token& member : seq) {
                if (member.text == tok.text) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                tok = Token(std::string(kVariableMarker));
                break;
            }
        }
    }
    return out;
}

bool is_stray_symbol(char c) {
    switch (c) {
        case '/': case '#': case ':': case '=': case ',': case ';':
        case '(': case ')': case '[': case ']': case '<': case '>':
        case '"': case '\'':
            return true;
        default:
            return false;
    }
}

namespace {

// True when the token is one or more markers held together by nothing but
// stray symbols, e.g. "/<*>", "(<*>)", "<*>:<*>".
bool reduces_to_marker(const std::string& text) {
    bool saw_marker = false;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text.compare(i, kVariableMarker.size(), kVariableMarker) == 0) {
            saw_marker = true;
            i += kVariableMarker.size();
        } else if (is_stray_symbol(text[i])) {
            ++i;
        } else {
            return false;
        }
    }
    return saw_marker;
}

}  // namespace

Template postprocess(const Template& t) {
    Template out;
    out.tokens.reserve(t.tokens.size());
    for (const Token& tok : t.tokens) {
        bool marker = tok.is_marker() || reduces_to_marker(tok.text);
        if (marker && !out.tokens.empty() && out.tokens.back().is_marker()) {
            continue;  // collapse the run
        }
        out.tokens.push_back(marker ? Token(std::string(kVariableMarker)) : tok);
    }
    return out;
}

Template refine_template(const LogGroup& group, const Anonymizer& anonymizer,
                         const SamplerConfig& cfg) {
    std::vector<TokenSeq> anonymized_uniques;
    anonymized_uniques.reserve(group.unique_contents.size());
    std::unordered_map<std::string_view, std::size_t> unique_index;
    for (std::size_t i = 0; i < group.unique_contents.size(); ++i) {
        anonymized_uniques.push_back(anonymizer.anonymize(tokenize(group.unique_contents[i])));
        unique_index.emplace(group.unique_contents[i], i);
    }

    std::vector<std::string> reps = sample_representatives(group, cfg);
    std::vector<TokenSeq> rep_tokens;
    rep_tokens.reserve(reps.size());
    for (const std::string& rep : reps) {
        rep_tokens.push_back(anonymized_uniques[unique_index.at(rep)]);
    }

    Template t = identify_template(rep_tokens);
    t = verify_constants(t, anonymized_uniques);
    return postprocess(t);
}

ParseResult refine_groups(std::span<const LogGroup> groups, const RegexRuleSet& rules,
                          const SamplerConfig& cfg, int threads) {
    cfg.validate();
    std::vector<Template> templates(groups.size());

    auto work = [&](std::size_t begin, std::size_t end) {
        Anonymizer anonymizer(rules);  // worker-local cache
        for (std::size_t i = begin; i < end; ++i) {
            templates[i] = refine_template(groups[i], anonymizer, cfg);
        }
    };

    const int workers = std::max(1, threads);
    if (workers == 1 || groups.size() < 2) {
        work(0, groups.size());
    } else {
        const std::size_t n = groups.size();
        const std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(chunks);
        pool.reserve(chunks);
        for (std::size_t c = 0; c < chunks; ++c) {
            std::size_t begin = n * c / chunks;
            std::size_t end = n * (c + 1) / chunks;
            pool.emplace_back([&work, &errors, c, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    errors[c] = std::current_exception();
                }
            });
        }
        for (std::thread& th : pool) th.join();
        for (const std::exception_ptr& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    ParseResult result;
    std::size_t total = 0;
    for (const LogGroup& g : groups) total += g.member_ids.size();
    result.assignments.reserve(total);
    result.templates.reserve(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
        std::uint32_t index = result.add_template(render_template(templates[i]));
        for (LineId id : groups[i].member_ids) {
            result.assign(id, index);
        }
    }
    return result;
}

ParseResult raw_group_result(std::span<const LogGroup> groups) {
    ParseResult result;
    std::size_t total = 0;
    for (const LogGroup& g : groups) total += g.member_ids.size();
    result.assignments.reserve(total);
    result.templates.reserve(groups.size());
    for (const LogGroup& g : groups) {
        std::uint32_t index = result.add_template(render_template(consensus_template(g)));
        for (LineId id : g.member_ids) {
            result.assign(id, index);
        }
    }
    return result;
}

}  // namespace synlog
