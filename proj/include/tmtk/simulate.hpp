#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tmtk/events.hpp"
#include "tmtk/model.hpp"
#include "tmtk/time_point.hpp"

namespace tmtk {

// One slice of a thimac's existence: the closed-open interval [becoming, end)
// with the attribute value bound over it. end empty = still existing. At any
// instant a thimac has at most one open exicon.
struct Exicon {
    int id = 0;  // 1-based, assigned by (becoming, opening order) after a run
    ThimacPath thimac;
    TimePoint becoming;
    std::optional<TimePoint> end;
    std::optional<Literal> value;
    std::string origin;  // occurrence that opened it, "E2" or "E2#3"

    bool operator==(const Exicon&) const = default;
};

struct ExistenceLedger {
    // Ordered by (becoming, id); per-thimac intervals never overlap.
    std::vector<Exicon> exicons;

    bool operator==(const ExistenceLedger&) const = default;
};

// One line per exicon: "id<TAB>path<TAB>becoming<TAB>end[<TAB>value]", end
// printed as "open" while the thing still exists, strings quoted.
std::string serialize(const ExistenceLedger& ledger);

// Cross-event causation: a trigger whose source acted in this occurrence and
// whose target Create belongs to a later occurrence's region.
struct FiredTrigger {
    TriggerArc arc;
    std::size_t to_index = 0;  // position in the expanded chronology

    bool operator==(const FiredTrigger&) const = default;
};

// What one occurrence did. The region is active over [start, end) only; in
// between occurrences the diagram is static and only open exicons persist.
struct TraceEntry {
    Occurrence occ;
    TimePoint start;
    TimePoint end;
    std::vector<ActionRef> opened;       // fresh exicon
    std::vector<ActionRef> persisted;    // existing thing, no value change
    std::vector<ActionRef> rebound;      // value change: close at t, reopen at t
    std::vector<ActionRef> overwritten;  // value change at the becoming instant
    std::vector<ThimacPath> terminated;  // closed by `terminates`
    std::vector<ThimacPath> dropped;     // terminated at its own becoming
    std::vector<FiredTrigger> fired;
};

struct Trace {
    std::vector<TraceEntry> entries;
};

struct SimulationResult {
    Trace trace;
    ExistenceLedger ledger;
};

// Replays the expanded chronology in order. Creates in each region open,
// persist, or rebind exicons; `terminates` closes the named thimac's open
// exicon. Throws TmError: BindingWithoutCreate (an event binds a path that is
// not an attribute thimac with its Create in the region),
// TerminateWithoutExistence (nothing open to terminate).
SimulationResult run(const StaticModel& model, const std::vector<EventDecl>& events,
                     const std::vector<Occurrence>& occurrences);

struct ExistsResult {
    bool exists = false;
    std::optional<Literal> value;
};

// True iff some exicon of the thimac covers t (same time axis, closed-open).
ExistsResult exists_at(const ExistenceLedger& ledger, const ThimacPath& thimac,
                       const TimePoint& t);

}  // namespace tmtk
