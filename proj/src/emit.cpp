#include "tmtk/emit.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tmtk {

namespace {

struct LogRow {
    TimePoint time;
    std::string description;
};

}  // namespace

std::string emit_event_log(const std::vector<EventDecl>& events, const Trace& trace,
                           bool fill_days) {
    std::map<std::string, const EventDecl*> by_id;
    for (const EventDecl& e : events) by_id[e.id] = &e;

    std::vector<LogRow> rows;
    for (const TraceEntry& entry : trace.entries) {
        auto it = by_id.find(entry.occ.event_id);
        if (it == by_id.end()) continue;
        rows.push_back({entry.start, it->second->label});
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const LogRow& a, const LogRow& b) { return time_less(a.time, b.time); });

    if (fill_days) {
        std::vector<LogRow> filled;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i > 0 && rows[i - 1].time.is_calendar() && rows[i].time.is_calendar()) {
                for (std::int64_t s = rows[i - 1].time.interval_end();
                     s < rows[i].time.interval_start(); ++s)
                    filled.push_back({TimePoint{Granularity::Day, s}, "Nothing"});
            }
            filled.push_back(rows[i]);
        }
        rows = std::move(filled);
    }

    std::string out = "Date\tdescription\n";
    for (const LogRow& r : rows) {
        out += r.time.to_string();
        out += '\t';
        out += r.description;
        out += '\n';
    }
    return out;
}

namespace {

struct HistoryRow {
    Literal id;
    TimePoint start;
    std::optional<TimePoint> end;  // empty = open
    std::vector<Literal> cells;    // one per attribute column
};

bool literal_less(const Literal& a, const Literal& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    return a < b;
}

// Covers-t test on the closed-open interval [start, end).
bool row_covers(const HistoryRow& r, const TimePoint& t) {
    if (r.start.is_calendar() != t.is_calendar()) return false;
    if (t.interval_start() < r.start.interval_start()) return false;
    if (r.end && t.interval_start() >= r.end->interval_start()) return false;
    if (!r.end && t == kOpenEndSentinel) return false;
    return true;
}

struct HistoryBuild {
    std::vector<std::string> columns;  // attribute names, id excluded
    std::vector<HistoryRow> rows;
};

Literal attribute_at(const ExistenceLedger& ledger, const ThimacPath& entity,
                     const std::string& attr, const TimePoint& t) {
    ExistsResult r = exists_at(ledger, entity.child(attr), t);
    if (!r.exists || !r.value)
        throw TmError(DiagCode::MissingAttribute,
                      entity.to_string() + " has no " + attr + " value at " + t.to_string());
    return *r.value;
}

HistoryBuild build_history(const StaticModel& model, const ExistenceLedger& ledger,
                           const ThimacPath& group) {
    // Entities and attribute columns in order of first appearance.
    std::vector<ThimacPath> entities;
    std::vector<std::string> columns;
    std::set<ThimacPath> attr_paths;
    for (const Exicon& e : ledger.exicons) {
        const Thimac* t = model.find(e.thimac);
        if (t && t->attribute) attr_paths.insert(e.thimac);
    }
    for (const Exicon& e : ledger.exicons) {
        const Thimac* t = model.find(e.thimac);
        if (!t || t->attribute || !e.thimac.within(group)) continue;
        bool has_attr_child = false;
        for (const Thimac& child : t->subthimacs)
            if (child.attribute && attr_paths.count(e.thimac.child(child.name)))
                has_attr_child = true;
        if (!has_attr_child) continue;
        if (std::find(entities.begin(), entities.end(), e.thimac) == entities.end())
            entities.push_back(e.thimac);
    }
    for (const Exicon& e : ledger.exicons) {
        if (!attr_paths.count(e.thimac)) continue;
        ThimacPath parent = e.thimac.parent();
        if (std::find(entities.begin(), entities.end(), parent) == entities.end()) continue;
        const std::string& name = e.thimac.segments.back();
        if (name == "id") continue;
        if (std::find(columns.begin(), columns.end(), name) == columns.end())
            columns.push_back(name);
    }

    HistoryBuild build;
    build.columns = columns;

    for (const ThimacPath& entity : entities) {
        // Each of the entity's own existence slices is cut wherever any of its
        // attribute slices starts or ends, then equal neighbours are merged
        // back so every row spans a maximal constant interval.
        std::vector<const Exicon*> own;
        std::vector<TimePoint> boundaries;
        for (const Exicon& e : ledger.exicons) {
            if (e.thimac == entity) own.push_back(&e);
            if (attr_paths.count(e.thimac) && e.thimac.parent() == entity) {
                boundaries.push_back(e.becoming);
                if (e.end) boundaries.push_back(*e.end);
            }
        }
        std::vector<HistoryRow> entity_rows;
        for (const Exicon* slice : own) {
            std::vector<TimePoint> cuts{slice->becoming};
            for (const TimePoint& b : boundaries) {
                bool inside = time_less(slice->becoming, b) &&
                              (!slice->end || time_less(b, *slice->end));
                if (inside && std::find(cuts.begin(), cuts.end(), b) == cuts.end())
                    cuts.push_back(b);
            }
            std::sort(cuts.begin(), cuts.end(), time_less);

            for (std::size_t i = 0; i < cuts.size(); ++i) {
                HistoryRow row;
                row.start = cuts[i];
                if (i + 1 < cuts.size())
                    row.end = cuts[i + 1];
                else if (slice->end)
                    row.end = *slice->end;
                row.id = attribute_at(ledger, entity, "id", row.start);
                for (const std::string& col : build.columns)
                    row.cells.push_back(attribute_at(ledger, entity, col, row.start));

                if (!entity_rows.empty()) {
                    HistoryRow& prev = entity_rows.back();
                    if (prev.end && *prev.end == row.start && prev.id == row.id &&
                        prev.cells == row.cells) {
                        prev.end = row.end;
                        continue;
                    }
                }
                entity_rows.push_back(std::move(row));
            }
        }
        for (HistoryRow& row : entity_rows) build.rows.push_back(std::move(row));
    }

    std::stable_sort(build.rows.begin(), build.rows.end(),
                     [](const HistoryRow& a, const HistoryRow& b) {
                         if (!(a.id == b.id)) return literal_less(a.id, b.id);
                         return time_less(a.start, b.start);
                     });
    return build;
}

}  // namespace

std::string emit_history_table(const StaticModel& model, const ExistenceLedger& ledger,
                               const ThimacPath& group) {
    HistoryBuild build = build_history(model, ledger, group);
    std::string out = "Row\tid\tstartTime\tendTime";
    for (const std::string& col : build.columns) {
        out += '\t';
        out += col;
    }
    out += '\n';
    int row_no = 0;
    for (const HistoryRow& r : build.rows) {
        out += std::to_string(++row_no);
        out += '\t';
        out += literal_text(r.id);
        out += '\t';
        out += r.start.to_string();
        out += '\t';
        out += r.end ? r.end->to_string() : kOpenEndSentinel.to_string();
        for (const Literal& cell : r.cells) {
            out += '\t';
            out += literal_text(cell);
        }
        out += '\n';
    }
    return out;
}

std::string emit_snapshot(const StaticModel& model, const ExistenceLedger& ledger,
                          const ThimacPath& group, const TimePoint& at) {
    HistoryBuild build = build_history(model, ledger, group);
    std::string out = "Row\tid";
    for (const std::string& col : build.columns) {
        out += '\t';
        out += col;
    }
    out += '\n';
    int row_no = 0;
    for (const HistoryRow& r : build.rows) {
        if (!row_covers(r, at)) continue;
        out += std::to_string(++row_no);
        out += '\t';
        out += literal_text(r.id);
        for (const Literal& cell : r.cells) {
            out += '\t';
            out += literal_text(cell);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string node_id(const ActionRef& ref) {
    return ref.thimac.to_string() + "__" + action_name(ref.kind);
}

std::string event_node_id(const std::string& event_id, const ActionRef& ref) {
    return event_id + "__" + ref.thimac.to_string() + "__" + action_name(ref.kind);
}

void emit_thimac_cluster(std::string& out, const ThimacPath& path, const Thimac& thimac,
                         int depth) {
    std::string pad(std::size_t(depth) * 2, ' ');
    out += pad + "subgraph " + dot_quote("cluster_" + path.to_string()) + " {\n";
    out += pad + "  label=" + dot_quote(thimac.name) + ";\n";
    thimac.actions.for_each([&](ActionKind k) {
        ActionRef ref{path, k};
        out += pad + "  " + dot_quote(node_id(ref)) + " [label=" + dot_quote(action_name(k)) +
               "];\n";
    });
    for (const Thimac& child : thimac.subthimacs)
        emit_thimac_cluster(out, path.child(child.name), child, depth + 1);
    out += pad + "}\n";
}

std::string emit_dot_static(const StaticModel& model) {
    std::string out = "digraph " + dot_quote(model.name) + " {\n";
    out += "  rankdir=LR;\n";
    out += "  node [shape=box];\n";
    for (const Thimac& root : model.roots)
        emit_thimac_cluster(out, ThimacPath({root.name}), root, 1);
    for (const FlowArc& a : model.flows)
        out += "  " + dot_quote(node_id(a.from)) + " -> " + dot_quote(node_id(a.to)) + ";\n";
    for (const TriggerArc& a : model.triggers)
        out += "  " + dot_quote(node_id(a.from)) + " -> " + dot_quote(node_id(a.to)) +
               " [style=dashed];\n";
    out += "}\n";
    return out;
}

std::string emit_dot_events(const StaticModel& model, const std::vector<EventDecl>& events) {
    std::string out = "digraph " + dot_quote(model.name + " events") + " {\n";
    out += "  rankdir=LR;\n";
    out += "  node [shape=box];\n";
    for (const EventDecl& e : events) {
        out += "  subgraph " + dot_quote("cluster_" + e.id) + " {\n";
        out += "    label=" + dot_quote(e.id) + ";\n";
        for (const ActionRef& ref : e.region.actions)
            out += "    " + dot_quote(event_node_id(e.id, ref)) +
                   " [label=" + dot_quote(ref.to_string()) + "];\n";
        for (const FlowArc& a : e.region.flows)
            out += "    " + dot_quote(event_node_id(e.id, a.from)) + " -> " +
                   dot_quote(event_node_id(e.id, a.to)) + ";\n";
        for (const TriggerArc& a : e.region.triggers)
            out += "    " + dot_quote(event_node_id(e.id, a.from)) + " -> " +
                   dot_quote(event_node_id(e.id, a.to)) + " [style=dashed];\n";
        out += "  }\n";
    }
    // Arcs spanning two regions connect the per-event copies.
    auto cross = [&](const ActionRef& from, const ActionRef& to, const char* attrs) {
        for (const EventDecl& ef : events) {
            if (!ef.region.actions.count(from)) continue;
            for (const EventDecl& et : events) {
                if (&ef == &et || !et.region.actions.count(to)) continue;
                out += "  " + dot_quote(event_node_id(ef.id, from)) + " -> " +
                       dot_quote(event_node_id(et.id, to)) + attrs + ";\n";
            }
        }
    };
    for (const FlowArc& a : model.flows) cross(a.from, a.to, "");
    for (const TriggerArc& a : model.triggers) cross(a.from, a.to, " [style=dashed]");
    out += "}\n";
    return out;
}

}  // namespace

std::string emit_dot(const StaticModel& model, const std::vector<EventDecl>& events,
                     DotView view) {
    if (view == DotView::Static) return emit_dot_static(model);
    return emit_dot_events(model, events);
}

}  // namespace tmtk
