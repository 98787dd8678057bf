#include "synlog/grouping.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "synlog/errors.hpp"

namespace synlog {

void GrouperConfig::validate() const {
    if (backend == GrouperBackend::DrainLike) {
        if (tree_depth < 3) throw std::invalid_argument("tree_depth must be >= 3");
        if (!(similarity_threshold > 0.0 && similarity_threshold < 1.0)) {
            throw std::invalid_argument("similarity_threshold must be in (0, 1)");
        }
        if (max_children < 1) throw std::invalid_argument("max_children must be >= 1");
    }
}

namespace {

// Incrementally built group. pattern holds the evolving positional surrogate
// used for similarity; mismatched positions degrade to the marker.
struct GroupBuilder {
    GroupId id = 0;
    std::vector<LineId> member_ids;
    std::vector<std::string> unique_contents;
    std::unordered_set<std::string> seen_contents;
    TokenSeq pattern;

    void add(const LogRecord& record) {
        member_ids.push_back(record.line_id);
        if (seen_contents.insert(record.content).second) {
            unique_contents.push_back(record.content);
        }
    }

    LogGroup to_group() const {
        return LogGroup{id, member_ids, unique_contents, std::nullopt};
    }
};

std::vector<LogGroup> collect(const std::vector<GroupBuilder>& builders) {
    std::vector<LogGroup> out;
    out.reserve(builders.size());
    for (const GroupBuilder& b : builders) out.push_back(b.to_group());
    std::sort(out.begin(), out.end(), [](const LogGroup& a, const LogGroup& b) {
        return a.member_ids.front() < b.member_ids.front();
    });
    return out;
}

// Fixed-depth prefix tree keyed by token count, then by the first
// (tree_depth - 2) tokens. Pure-number tokens and overflow beyond
// max_children route through the wildcard child.
class DrainGrouper final : public Grouper {
public:
    explicit DrainGrouper(const GrouperConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

    GroupId feed(const LogRecord& record) override {
        TokenSeq tokens = tokenize(record.content);
        Node* node = &length_roots_[tokens.size()];
        const std::size_t levels =
            std::min<std::size_t>(tokens.size(), static_cast<std::size_t>(cfg_.tree_depth) - 2);
        for (std::size_t i = 0; i < levels; ++i) {
            node = descend(*node, tokens[i].text);
        }

        GroupBuilder* best = nullptr;
        double best_sim = -1.0;
        for (std::size_t idx : node->group_indices) {
            double sim = similarity(groups_[idx].pattern, tokens);
            if (sim > best_sim) {
                best_sim = sim;
                best = &groups_[idx];
            }
        }
        if (best == nullptr || best_sim < cfg_.similarity_threshold) {
            GroupBuilder b;
            b.id = next_id_++;
            b.pattern = tokens;
            b.add(record);
            node->group_indices.push_back(groups_.size());
            groups_.push_back(std::move(b));
            return groups_.back().id;
        }
        merge_pattern(best->pattern, tokens);
        best->add(record);
        return best->id;
    }

    std::vector<LogGroup> finalize() const override { return collect(groups_); }

private:
    struct Node {
        std::unordered_map<std::string, std::unique_ptr<Node>> children;
        std::unique_ptr<Node> wildcard;
        std::vector<std::size_t> group_indices;  // leaf payload
    };

    Node* descend(Node& node, const std::string& token) {
        if (is_pure_number(token)) return wildcard_of(node);
        auto it = node.children.find(token);
        if (it != node.children.end()) return it->second.get();
        if (node.children.size() < static_cast<std::size_t>(cfg_.max_children)) {
            auto [ins, _] = node.children.emplace(token, std::make_unique<Node>());
            return ins->second.get();
        }
        return wildcard_of(node);
    }

    static Node* wildcard_of(Node& node) {
        if (!node.wildcard) node.wildcard = std::make_unique<Node>();
        return node.wildcard.get();
    }

    static double similarity(const TokenSeq& pattern, const TokenSeq& tokens) {
        std::size_t equal = 0;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (pattern[i].text == tokens[i].text) ++equal;
        }
        return static_cast<double>(equal) / static_cast<double>(tokens.size());
    }

    static void merge_pattern(TokenSeq& pattern, const TokenSeq& tokens) {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (pattern[i].text != tokens[i].text) {
                pattern[i] = Token(std::string(kVariableMarker));
            }
        }
    }

    GrouperConfig cfg_;
    std::unordered_map<std::size_t, Node> length_roots_;
    std::vector<GroupBuilder> groups_;
    GroupId next_id_ = 0;
};

// Bins records by (token count, anonymizer-variable count); within a bin a
// record joins the first group whose pattern agrees with it on every
// position where both sides carry a constant.
class AelGrouper final : public Grouper {
public:
    AelGrouper() : anonymizer_(RegexRuleSet::builtin_defaults()) {}

    GroupId feed(const LogRecord& record) override {
        TokenSeq anonymized = anonymizer_.anonymize(tokenize(record.content));
        std::size_t markers = 0;
        for (const Token& t : anonymized) {
            if (t.is_marker()) ++markers;
        }
        auto& bin = bins_[{anonymized.size(), markers}];
        for (std::size_t idx : bin) {
            GroupBuilder& g = groups_[idx];
            if (compatible(g.pattern, anonymized)) {
                reconcile(g.pattern, anonymized);
                g.add(record);
                return g.id;
            }
        }
        GroupBuilder b;
        b.id = next_id_++;
        b.pattern = std::move(anonymized);
        b.add(record);
        bin.push_back(groups_.size());
        groups_.push_back(std::move(b));
        return groups_.back().id;
    }

    std::vector<LogGroup> finalize() const override { return collect(groups_); }

private:
    static bool compatible(const TokenSeq& pattern, const TokenSeq& tokens) {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (pattern[i].is_marker() || tokens[i].is_marker()) continue;
            if (pattern[i].text != tokens[i].text) return false;
        }
        return true;
    }

    static void reconcile(TokenSeq& pattern, const TokenSeq& tokens) {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (pattern[i].text != tokens[i].text) {
                pattern[i] = Token(std::string(kVariableMarker));
            }
        }
    }

    Anonymizer anonymizer_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> bins_;
    std::vector<GroupBuilder> groups_;
    GroupId next_id_ = 0;
};

}  // namespace

std::unique_ptr<Grouper> make_grouper(const GrouperConfig& config) {
    config.validate();
    switch (config.backend) {
        case GrouperBackend::DrainLike: return std::make_unique<DrainGrouper>(config);
        case GrouperBackend::AelLike: return std::make_unique<AelGrouper>();
    }
    throw std::invalid_argument("unknown grouper backend");
}

Template consensus_template(const LogGroup& group) {
    Template out;
    bool first = true;
    for (const std::string& content : group.unique_contents) {
        TokenSeq tokens = tokenize(content);
        if (first) {
            out.tokens = std::move(tokens);
            first = false;
            continue;
        }
        // both backends keep token counts uniform within a group
        const std::size_t n = std::min(out.tokens.size(), tokens.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (out.tokens[i].text != tokens[i].text) {
                out.tokens[i] = Token(std::string(kVariableMarker));
            }
        }
        for (std::size_t i = n; i < out.tokens.size(); ++i) {
            out.tokens[i] = Token(std::string(kVariableMarker));
        }
    }
    return out;
}

}  // namespace synlog
