#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "synlog/grouping.hpp"
#include "synlog/log_model.hpp"
#include "synlog/metrics.hpp"
#include "synlog/rules.hpp"

namespace synlog {

struct SamplerConfig {
    int k = 2;                  // representative logs per group, >= 2
    std::uint64_t seed = 42;

    void validate() const;  // throws std::invalid_argument
};

// Picks min(k, |unique contents|) distinct contents with a PRNG seeded from
// (cfg.seed, group id); a group with a single unique content yields that
// content twice so downstream always sees a pair.
std::vector<std::string> sample_representatives(const LogGroup& group,
                                                const SamplerConfig& cfg);

// Longest common subsequence over the representatives' token texts, folded
// left to right. The first representative's tokens survive as constants when
// they are part of the common subsequence; everything else becomes the
// marker. Pre-existing markers match like ordinary tokens.
Template identify_template(std::span<const TokenSeq> reps);

// Demotes template constants that are absent from any member's anonymized
// token sequence. anonymized_uniques aligns with group.unique_contents.
Template verify_constants(const Template& t,
                          std::span<const TokenSeq> anonymized_uniques);

// Collapses runs of adjacent markers and strips stray punctuation glued onto
// markers ("/<*>" becomes "<*>"). Output is canonical.
Template postprocess(const Template& t);

// Characters that may surround a marker inside a single token without making
// it a constant.
bool is_stray_symbol(char c);

// Full per-group refinement: anonymize unique contents, sample, identify,
// verify, postprocess.
Template refine_template(const LogGroup& group, const Anonymizer& anonymizer,
                         const SamplerConfig& cfg);

// Refines every group and maps each member line id to its group's rendered
// template. Membership is never altered. threads > 1 fans groups out across
// workers; results are merged in input group order either way, so the output
// does not depend on the worker count.
ParseResult refine_groups(std::span<const LogGroup> groups, const RegexRuleSet& rules,
                          const SamplerConfig& cfg, int threads = 1);

// Counterpart used when refinement is disabled: assigns each group its raw
// consensus template.
ParseResult raw_group_result(std::span<const LogGroup> groups);

}  // namespace synlog
