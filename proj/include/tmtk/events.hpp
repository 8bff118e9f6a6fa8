#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tmtk/diagnostics.hpp"
#include "tmtk/model.hpp"
#include "tmtk/time_point.hpp"

namespace tmtk {

// Attribute value bound by an event.
using Literal = std::variant<std::int64_t, std::string>;

std::string literal_text(const Literal& v);    // raw cell text
std::string literal_quoted(const Literal& v);  // DSL form, strings quoted

// Connected subdiagram an event freezes: some actions plus arcs among them.
struct Region {
    std::set<ActionRef> actions;
    std::set<FlowArc> flows;
    std::set<TriggerArc> triggers;

    bool operator==(const Region&) const = default;
};

// Region whose arc sets are all model arcs with both endpoints inside.
Region induced_region(const StaticModel& model, std::set<ActionRef> actions);

// A declared event: a region placed at a time. `terminates` closes the named
// thimac's open existence; `bindings` assign values to attribute creates in
// the region; `duration` is the activation lengths in granularity units.
struct EventDecl {
    std::string id;
    std::string label;
    TimePoint time;
    std::int64_t duration = 1;
    Region region;
    std::map<ThimacPath, Literal> bindings;
    std::optional<ThimacPath> terminates;

    bool operator==(const EventDecl&) const = default;
};

// One chronology entry: a run of event ids repeated `count` times. Plain
// entries have count 1 and a single id.
struct ChronologyEntry {
    std::vector<std::string> ids;
    int count = 1;

    bool operator==(const ChronologyEntry&) const = default;
};

struct ChronologySpec {
    std::vector<ChronologyEntry> entries;

    bool empty() const { return entries.empty(); }
    bool operator==(const ChronologySpec&) const = default;
};

// k counts occurrences of the event id across the whole expansion;
// group_iteration is 1-based within the enclosing repeat group (1 for plain
// entries) and shifts the effective time by group_iteration - 1 units.
struct Occurrence {
    std::string event_id;
    int k = 1;
    int group_iteration = 1;

    bool operator==(const Occurrence&) const = default;
};

std::vector<Occurrence> expand(const ChronologySpec& chronology);

TimePoint occurrence_time(const EventDecl& event, const Occurrence& occ);

// Empty result iff the region is a non-empty, weakly connected subdiagram of
// the model (SubdiagramViolation / RegionDisconnected otherwise).
std::vector<Diagnostic> check_region(const StaticModel& model, const Region& region);

// Partial order induced by the static arcs: A precedes B iff some action of
// A's region reaches some action of B's region through arcs whose endpoints
// are not both inside either region. `closure` holds the acyclic core;
// `reduced` is its transitive reduction; mutually reachable groups land in
// `cycles`.
struct FlowOrder {
    std::set<std::pair<std::string, std::string>> closure;
    std::vector<std::pair<std::string, std::string>> reduced;
    std::vector<std::vector<std::string>> cycles;

    bool precedes(const std::string& a, const std::string& b) const {
        return closure.count({a, b}) != 0;
    }
};

FlowOrder derive_flow_order(const StaticModel& model, const std::vector<EventDecl>& events);

// Chronology admissibility: CyclicOrder (order derivation found cycles),
// OrderViolation (expansion not a linear extension, per repetition index),
// IdentityViolation (two occurrences, equal region and effective time),
// TimeMonotonicity warning (a later entry strictly earlier in time).
std::vector<Diagnostic> check_chronology(const StaticModel& model,
                                         const std::vector<EventDecl>& events,
                                         const ChronologySpec& chronology);

}  // namespace tmtk
