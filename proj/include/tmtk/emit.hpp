#pragma once

#include <string>
#include <vector>

#include "tmtk/events.hpp"
#include "tmtk/model.hpp"
#include "tmtk/simulate.hpp"
#include "tmtk/time_point.hpp"

namespace tmtk {

// TSV with header "Date<TAB>description": one row per occurrence, labels
// verbatim, sorted by time with chronology order breaking ties. fill_days adds
// a "Nothing" row for every uncovered day between calendar rows.
std::string emit_event_log(const std::vector<EventDecl>& events, const Trace& trace,
                           bool fill_days = false);

// Bitemporal history TSV for the entities under `group`: an entity is a thimac
// in that subtree owning exicons and at least one attribute child with
// exicons. Header "Row id startTime endTime <attributes>"; one row per maximal
// interval over which every attribute of the entity holds constant; open ends
// print the 9999-12-31 sentinel; rows ordered by (id, startTime) and numbered
// from 1. The id column reads the attribute child named "id". Throws
// TmError(MissingAttribute) when an entity lacks a column's value anywhere in
// its existence.
std::string emit_history_table(const StaticModel& model, const ExistenceLedger& ledger,
                               const ThimacPath& group);

// The state visible at one instant: history rows covering `at`, re-numbered,
// without the interval columns. Header "Row id <attributes>".
std::string emit_snapshot(const StaticModel& model, const ExistenceLedger& ledger,
                          const ThimacPath& group, const TimePoint& at);

enum class DotView { Static, Events };

// Graphviz text. Static view: one cluster per thimac level, action nodes named
// "<path>__<kind>", solid flow edges, dashed trigger edges. Events view: one
// cluster per event with per-event action copies "<event>__<path>__<kind>";
// region arcs inside clusters, model arcs spanning two regions across them.
std::string emit_dot(const StaticModel& model, const std::vector<EventDecl>& events,
                     DotView view);

}  // namespace tmtk
