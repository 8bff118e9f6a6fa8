#include "tmtk/simulate.hpp"

#include <algorithm>
#include <map>

namespace tmtk {

std::string serialize(const ExistenceLedger& ledger) {
    std::string out;
    for (const Exicon& e : ledger.exicons) {
        out += std::to_string(e.id);
        out += '\t';
        out += e.thimac.to_string();
        out += '\t';
        out += e.becoming.to_string();
        out += '\t';
        out += e.end ? e.end->to_string() : std::string("open");
        if (e.value) {
            out += '\t';
            out += literal_quoted(*e.value);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::string origin_name(const Occurrence& occ) {
    if (occ.k == 1) return occ.event_id;
    return occ.event_id + "#" + std::to_string(occ.k);
}

void check_bindings(const StaticModel& model, const EventDecl& event) {
    for (const auto& [path, value] : event.bindings) {
        (void)value;
        const Thimac* t = model.find(path);
        if (!t || !t->attribute)
            throw TmError(DiagCode::BindingWithoutCreate,
                          event.id + " binds " + path.to_string() +
                              ", which is not an attribute thimac");
        if (!event.region.actions.count({path, ActionKind::Create}))
            throw TmError(DiagCode::BindingWithoutCreate,
                          event.id + " binds " + path.to_string() +
                              " but its create is outside the region");
    }
}

}  // namespace

SimulationResult run(const StaticModel& model, const std::vector<EventDecl>& events,
                     const std::vector<Occurrence>& occurrences) {
    std::map<std::string, const EventDecl*> by_id;
    for (const EventDecl& e : events) by_id[e.id] = &e;
    for (const Occurrence& o : occurrences) {
        if (!by_id.count(o.event_id))
            throw TmError(DiagCode::TmRef, "chronology names undeclared event " + o.event_id);
    }
    for (const EventDecl& e : events) check_bindings(model, e);

    SimulationResult result;
    std::vector<Exicon>& ledger = result.ledger.exicons;
    // Index of the open exicon per path, if any.
    std::map<ThimacPath, std::size_t> open;
    const std::vector<ActionRef> walk_order = model.all_actions();

    for (std::size_t idx = 0; idx < occurrences.size(); ++idx) {
        const Occurrence& occ = occurrences[idx];
        const EventDecl& event = *by_id[occ.event_id];
        const TimePoint t = occurrence_time(event, occ);

        TraceEntry entry;
        entry.occ = occ;
        entry.start = t;
        entry.end = t.advanced(event.duration);

        // Creates, in the model's walk order so exicon numbering is stable.
        for (const ActionRef& ref : walk_order) {
            if (ref.kind != ActionKind::Create || !event.region.actions.count(ref)) continue;
            const ThimacPath& path = ref.thimac;
            auto binding = event.bindings.find(path);
            auto slot = open.find(path);

            if (slot == open.end()) {
                Exicon e;
                e.thimac = path;
                e.becoming = t;
                if (binding != event.bindings.end()) e.value = binding->second;
                e.origin = origin_name(occ);
                open[path] = ledger.size();
                ledger.push_back(std::move(e));
                entry.opened.push_back(ref);
                continue;
            }

            Exicon& current = ledger[slot->second];
            bool rebinds =
                binding != event.bindings.end() &&
                (!current.value || !(*current.value == binding->second));
            if (!rebinds) {
                entry.persisted.push_back(ref);
                continue;
            }
            if (current.becoming == t) {
                // The slice just opened at this very instant; no zero-length
                // slice is kept, the value simply changes hands.
                current.value = binding->second;
                current.origin = origin_name(occ);
                entry.overwritten.push_back(ref);
                continue;
            }
            current.end = t;
            Exicon e;
            e.thimac = path;
            e.becoming = t;
            e.value = binding->second;
            e.origin = origin_name(occ);
            open[path] = ledger.size();
            ledger.push_back(std::move(e));
            entry.rebound.push_back(ref);
        }

        if (event.terminates) {
            const ThimacPath& path = *event.terminates;
            auto slot = open.find(path);
            if (slot == open.end())
                throw TmError(DiagCode::TerminateWithoutExistence,
                              origin_name(occ) + " terminates " + path.to_string() +
                                  ", which has no open existence");
            Exicon& current = ledger[slot->second];
            if (current.becoming == t) {
                // Terminated in the instant of its becoming: it never spanned
                // any time, so the slice is withdrawn entirely.
                const std::size_t gone = slot->second;
                ledger.erase(ledger.begin() + std::ptrdiff_t(gone));
                for (auto& [p, i] : open) {
                    (void)p;
                    if (i > gone) --i;
                }
                entry.dropped.push_back(path);
            } else {
                current.end = t;
                entry.terminated.push_back(path);
            }
            open.erase(path);
        }

        // A trigger fires across events when its source acted here and its
        // target Create belongs to the next occurrence that includes it.
        for (const TriggerArc& arc : model.triggers) {
            if (!event.region.actions.count(arc.from)) continue;
            if (event.region.actions.count(arc.to)) continue;
            for (std::size_t later = idx + 1; later < occurrences.size(); ++later) {
                const EventDecl& target = *by_id[occurrences[later].event_id];
                if (target.region.actions.count(arc.to)) {
                    entry.fired.push_back({arc, later});
                    break;
                }
            }
        }

        result.trace.entries.push_back(std::move(entry));
    }

    std::stable_sort(ledger.begin(), ledger.end(), [](const Exicon& a, const Exicon& b) {
        return time_less(a.becoming, b.becoming);
    });
    for (std::size_t i = 0; i < ledger.size(); ++i) ledger[i].id = int(i + 1);
    return result;
}

ExistsResult exists_at(const ExistenceLedger& ledger, const ThimacPath& thimac,
                       const TimePoint& t) {
    for (const Exicon& e : ledger.exicons) {
        if (!(e.thimac == thimac)) continue;
        if (e.becoming.is_calendar() != t.is_calendar()) continue;
        if (t.interval_start() < e.becoming.interval_start()) continue;
        if (e.end && t.interval_start() >= e.end->interval_start()) continue;
        if (!e.end && t == kOpenEndSentinel) continue;
        return {true, e.value};
    }
    return {false, std::nullopt};
}

}  // namespace tmtk
