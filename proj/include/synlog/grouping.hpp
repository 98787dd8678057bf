#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "synlog/log_model.hpp"
#include "synlog/rules.hpp"

namespace synlog {

enum class GrouperBackend { DrainLike, AelLike };

struct GrouperConfig {
    GrouperBackend backend = GrouperBackend::DrainLike;
    int tree_depth = 4;               // drain_like only, >= 3
    double similarity_threshold = 0.4;  // drain_like only, in (0, 1)
    int max_children = 100;           // drain_like only, >= 1

    void validate() const;  // throws std::invalid_argument
};

// Streaming clusterer of log records. feed() must be externally serialized;
// finalize() output is immutable.
class Grouper {
public:
    virtual ~Grouper() = default;

    // Appends the record to exactly one group and returns its id.
    virtual GroupId feed(const LogRecord& record) = 0;

    // The partition so far, ordered by first-member line id, templates unset.
    virtual std::vector<LogGroup> finalize() const = 0;
};

std::unique_ptr<Grouper> make_grouper(const GrouperConfig& config);

// Positional consensus of a group's unique contents: positions on which all
// members agree keep their token, all others become the variable marker.
// This is the group's raw (unrefined) template.
Template consensus_template(const LogGroup& group);

}  // namespace synlog
