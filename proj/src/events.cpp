#include "tmtk/events.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace tmtk {

std::string literal_text(const Literal& v) {
    if (const auto* n = std::get_if<std::int64_t>(&v)) return std::to_string(*n);
    return std::get<std::string>(v);
}

std::string literal_quoted(const Literal& v) {
    if (const auto* n = std::get_if<std::int64_t>(&v)) return std::to_string(*n);
    std::string out = "\"";
    for (char c : std::get<std::string>(v)) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

Region induced_region(const StaticModel& model, std::set<ActionRef> actions) {
    Region r;
    r.actions = std::move(actions);
    for (const FlowArc& a : model.flows)
        if (r.actions.count(a.from) && r.actions.count(a.to)) r.flows.insert(a);
    for (const TriggerArc& a : model.triggers)
        if (r.actions.count(a.from) && r.actions.count(a.to)) r.triggers.insert(a);
    return r;
}

std::vector<Occurrence> expand(const ChronologySpec& chronology) {
    std::vector<Occurrence> out;
    std::map<std::string, int> seen;
    for (const ChronologyEntry& e : chronology.entries) {
        for (int iter = 1; iter <= e.count; ++iter) {
            for (const std::string& id : e.ids) out.push_back({id, ++seen[id], iter});
        }
    }
    return out;
}

TimePoint occurrence_time(const EventDecl& event, const Occurrence& occ) {
    return event.time.advanced(occ.group_iteration - 1);
}

std::vector<Diagnostic> check_region(const StaticModel& model, const Region& region) {
    std::vector<Diagnostic> out;
    auto bad = [&](DiagCode code, const std::string& subject, const std::string& message) {
        out.push_back({Severity::Error, code, subject, message, std::nullopt});
    };

    if (region.actions.empty()) {
        bad(DiagCode::SubdiagramViolation, "region", "region has no actions");
        return out;
    }
    for (const ActionRef& a : region.actions) {
        if (!model.resolves(a))
            bad(DiagCode::SubdiagramViolation, a.to_string(), "action is not in the model");
    }
    for (const FlowArc& a : region.flows) {
        if (!model.has_flow(a))
            bad(DiagCode::SubdiagramViolation, a.to_string(), "flow is not in the model");
        if (!region.actions.count(a.from) || !region.actions.count(a.to))
            bad(DiagCode::SubdiagramViolation, a.to_string(),
                "flow endpoint lies outside the region");
    }
    for (const TriggerArc& a : region.triggers) {
        if (!model.has_trigger(a))
            bad(DiagCode::SubdiagramViolation, a.to_string(), "trigger is not in the model");
        if (!region.actions.count(a.from) || !region.actions.count(a.to))
            bad(DiagCode::SubdiagramViolation, a.to_string(),
                "trigger endpoint lies outside the region");
    }
    if (!out.empty()) return out;

    // Weak connectivity over the region's own arcs.
    std::map<ActionRef, std::vector<ActionRef>> adj;
    auto link = [&](const ActionRef& a, const ActionRef& b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (const FlowArc& a : region.flows) link(a.from, a.to);
    for (const TriggerArc& a : region.triggers) link(a.from, a.to);

    std::set<ActionRef> seen;
    std::deque<ActionRef> queue{*region.actions.begin()};
    seen.insert(*region.actions.begin());
    while (!queue.empty()) {
        ActionRef cur = queue.front();
        queue.pop_front();
        for (const ActionRef& nxt : adj[cur]) {
            if (seen.insert(nxt).second) queue.push_back(nxt);
        }
    }
    if (seen.size() != region.actions.size())
        bad(DiagCode::RegionDisconnected, "region",
            "region splits into disconnected parts");
    return out;
}

namespace {

struct ArcEnds {
    ActionRef from;
    ActionRef to;
};

// Reachability from A's actions into B's actions, at least one arc, skipping
// arcs interior to either region (both endpoints inside it).
bool region_reaches(const std::vector<ArcEnds>& arcs, const std::set<ActionRef>& a,
                    const std::set<ActionRef>& b) {
    auto interior = [](const ArcEnds& e, const std::set<ActionRef>& r) {
        return r.count(e.from) && r.count(e.to);
    };
    // Targets are matched only on nodes discovered through an arc, which keeps
    // the path length at one or more.
    std::set<ActionRef> seen;
    std::deque<ActionRef> queue(a.begin(), a.end());
    while (!queue.empty()) {
        ActionRef u = queue.front();
        queue.pop_front();
        for (const ArcEnds& e : arcs) {
            if (!(e.from == u)) continue;
            if (interior(e, a) || interior(e, b)) continue;
            if (b.count(e.to)) return true;
            if (seen.insert(e.to).second) queue.push_back(e.to);
        }
    }
    return false;
}

}  // namespace

FlowOrder derive_flow_order(const StaticModel& model, const std::vector<EventDecl>& events) {
    std::vector<ArcEnds> arcs;
    for (const FlowArc& a : model.flows) arcs.push_back({a.from, a.to});
    for (const TriggerArc& a : model.triggers) arcs.push_back({a.from, a.to});

    const std::size_t n = events.size();
    std::vector<std::vector<bool>> raw(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            raw[i][j] =
                region_reaches(arcs, events[i].region.actions, events[j].region.actions);
        }
    }

    // Mutually reachable groups are cycles; the acyclic core keeps only pairs
    // across groups. Mutuality must be merged transitively: two events can sit
    // in one knot through a third without being directly mutual themselves.
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (raw[i][j] && raw[j][i]) parent[root(i)] = root(j);

    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = root(i);
        if (comp[r] < 0) comp[r] = ncomp++;
        comp[i] = comp[r];
    }

    FlowOrder order;
    std::vector<std::vector<std::string>> groups;
    groups.resize(std::size_t(ncomp));
    for (std::size_t i = 0; i < n; ++i) groups[std::size_t(comp[i])].push_back(events[i].id);
    for (auto& g : groups)
        if (g.size() > 1) order.cycles.push_back(g);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && raw[i][j] && comp[i] != comp[j])
                order.closure.insert({events[i].id, events[j].id});
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !order.precedes(events[i].id, events[j].id)) continue;
            bool redundant = false;
            for (std::size_t k = 0; k < n && !redundant; ++k) {
                if (k == i || k == j) continue;
                redundant = order.precedes(events[i].id, events[k].id) &&
                            order.precedes(events[k].id, events[j].id);
            }
            if (!redundant) order.reduced.push_back({events[i].id, events[j].id});
        }
    }
    return order;
}

std::vector<Diagnostic> check_chronology(const StaticModel& model,
                                         const std::vector<EventDecl>& events,
                                         const ChronologySpec& chronology) {
    std::vector<Diagnostic> out;
    std::map<std::string, const EventDecl*> by_id;
    for (const EventDecl& e : events) by_id[e.id] = &e;

    std::vector<Occurrence> occs = expand(chronology);
    for (const Occurrence& o : occs) {
        if (!by_id.count(o.event_id)) {
            out.push_back({Severity::Error, DiagCode::TmRef, o.event_id,
                           "chronology names an undeclared event", std::nullopt});
        }
    }
    if (has_errors(out)) return out;

    FlowOrder order = derive_flow_order(model, events);
    for (const auto& cycle : order.cycles) {
        std::string subject;
        for (const auto& id : cycle) {
            if (!subject.empty()) subject += ", ";
            subject += id;
        }
        out.push_back({Severity::Error, DiagCode::CyclicOrder, subject,
                       "events are mutually reachable through the static arcs", std::nullopt});
    }

    std::vector<TimePoint> times;
    times.reserve(occs.size());
    for (const Occurrence& o : occs) times.push_back(occurrence_time(*by_id[o.event_id], o));

    if (order.cycles.empty()) {
        for (std::size_t i = 0; i < occs.size(); ++i) {
            for (std::size_t j = i + 1; j < occs.size(); ++j) {
                if (occs[i].group_iteration != occs[j].group_iteration) continue;
                if (order.precedes(occs[j].event_id, occs[i].event_id)) {
                    out.push_back({Severity::Error, DiagCode::OrderViolation,
                                   occs[i].event_id + " before " + occs[j].event_id,
                                   "the static arcs require " + occs[j].event_id +
                                       " to come first",
                                   std::nullopt});
                }
            }
        }
    }

    for (std::size_t i = 0; i < occs.size(); ++i) {
        for (std::size_t j = i + 1; j < occs.size(); ++j) {
            if (times[i] == times[j] &&
                by_id[occs[i].event_id]->region == by_id[occs[j].event_id]->region) {
                out.push_back({Severity::Error, DiagCode::IdentityViolation,
                               occs[i].event_id + " and " + occs[j].event_id,
                               "two occurrences share one region at " + times[i].to_string(),
                               std::nullopt});
            }
        }
    }

    for (std::size_t i = 0; i + 1 < occs.size(); ++i) {
        if (strictly_before(times[i + 1], times[i])) {
            out.push_back({Severity::Warning, DiagCode::TimeMonotonicity,
                           occs[i + 1].event_id,
                           "occurs at " + times[i + 1].to_string() + ", earlier than the " +
                               occs[i].event_id + " entry before it",
                           std::nullopt});
        }
    }
    return out;
}

}  // namespace tmtk
