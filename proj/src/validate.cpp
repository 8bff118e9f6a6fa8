#include "tmtk/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tmtk {

bool allowed_flow_adjacency(ActionKind from, ActionKind to, bool same_thimac,
                            const ValidateOptions& opts) {
    using K = ActionKind;
    if (same_thimac) {
        return (from == K::Transfer && to == K::Receive) ||
               (from == K::Receive && to == K::Process) ||
               (from == K::Receive && to == K::Release) ||
               (from == K::Process && to == K::Release) ||
               (from == K::Create && to == K::Process) ||
               (from == K::Create && to == K::Release);
    }
    if (from == K::Release && to == K::Transfer) return true;
    if (from == K::Transfer && to == K::Transfer) return true;
    if (from == K::Transfer && to == K::Receive) return !opts.require_transfer_pairing;
    return false;
}

namespace {

struct TransitSearch {
    const StaticModel& model;
    std::map<ActionRef, std::vector<ActionRef>> out;
    std::vector<TransitPath> found;

    explicit TransitSearch(const StaticModel& m) : model(m) {
        for (const FlowArc& a : m.flows) out[a.from].push_back(a.to);
    }

    // Path so far: [outside source, boundary transfer, interior...]. Interior
    // nodes stay within `boundary`; an outside Transfer completes a path.
    void extend(std::vector<ActionRef>& path, const ThimacPath& boundary) {
        const auto it = out.find(path.back());
        if (it == out.end()) return;
        for (const ActionRef& next : it->second) {
            if (std::find(path.begin(), path.end(), next) != path.end()) continue;
            if (next.thimac.within(boundary)) {
                path.push_back(next);
                extend(path, boundary);
                path.pop_back();
            } else if (next.kind == ActionKind::Transfer) {
                path.push_back(next);
                found.push_back(TransitPath{path});
                path.pop_back();
            }
        }
    }

    std::vector<TransitPath> run() {
        for (const FlowArc& entry : model.flows) {
            if (entry.to.kind != ActionKind::Transfer) continue;
            if (entry.from.thimac.within(entry.to.thimac)) continue;
            std::vector<ActionRef> path{entry.from, entry.to};
            extend(path, entry.to.thimac);
        }
        return std::move(found);
    }
};

bool contiguous_subsequence(const std::vector<ActionRef>& small,
                            const std::vector<ActionRef>& big) {
    if (small.size() > big.size()) return false;
    for (std::size_t off = 0; off + small.size() <= big.size(); ++off) {
        if (std::equal(small.begin(), small.end(), big.begin() + off)) return true;
    }
    return false;
}

}  // namespace

std::vector<TransitPath> find_transit_paths(const StaticModel& model) {
    std::vector<TransitPath> all = TransitSearch(model).run();
    std::vector<TransitPath> maximal;
    for (std::size_t i = 0; i < all.size(); ++i) {
        bool contained = false;
        for (std::size_t j = 0; j < all.size() && !contained; ++j) {
            if (i == j || all[j].nodes.size() <= all[i].nodes.size()) continue;
            contained = contiguous_subsequence(all[i].nodes, all[j].nodes);
        }
        if (!contained && std::find(maximal.begin(), maximal.end(), all[i]) == maximal.end())
            maximal.push_back(all[i]);
    }
    return maximal;
}

std::vector<Diagnostic> validate(const StaticModel& model, const ValidateOptions& opts) {
    std::vector<Diagnostic> out;
    auto error = [&](DiagCode code, const std::string& subject, const std::string& message) {
        out.push_back({Severity::Error, code, subject, message, std::nullopt});
    };

    for (const FlowArc& a : model.flows) {
        for (const ActionRef& end : {a.from, a.to}) {
            if (!model.resolves(end))
                error(DiagCode::TmRef, a.to_string(), "unresolved action " + end.to_string());
        }
    }
    for (const TriggerArc& a : model.triggers) {
        for (const ActionRef& end : {a.from, a.to}) {
            if (!model.resolves(end))
                error(DiagCode::TmRef, a.to_string(), "unresolved action " + end.to_string());
        }
    }

    for (const FlowArc& a : model.flows) {
        bool same = a.from.thimac == a.to.thimac;
        if (!allowed_flow_adjacency(a.from.kind, a.to.kind, same, opts)) {
            error(DiagCode::TmAdj, a.to_string(),
                  std::string("flow pair ") + action_name(a.from.kind) + " -> " +
                      action_name(a.to.kind) + (same ? " is not allowed within a thimac"
                                                     : " is not allowed across thimacs"));
        }
    }

    for (const FlowArc& a : model.flows) {
        if (a.to.kind == ActionKind::Create)
            error(DiagCode::TmCreateInflow, a.to_string(),
                  "flow into a create; creation must be triggered");
    }

    std::set<ActionRef> reported_creates;
    for (const TransitPath& p : find_transit_paths(model)) {
        for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
            const ActionRef& n = p.nodes[i];
            if (n.kind == ActionKind::Create && reported_creates.insert(n).second)
                error(DiagCode::TmTransitCreate, n.to_string(),
                      "create sits on a transit path; this flow type carries no creation");
        }
    }

    for (const TriggerArc& a : model.triggers) {
        if (a.to.kind != ActionKind::Create)
            error(DiagCode::TmTriggerTarget, a.to_string(), "trigger target must be a create");
        else if (a.from.thimac == a.to.thimac)
            error(DiagCode::TmTriggerTarget, a.to_string(),
                  "trigger must cross into another thimac");
    }

    std::set<ActionRef> arced;
    for (const FlowArc& a : model.flows) {
        arced.insert(a.from);
        arced.insert(a.to);
    }
    for (const TriggerArc& a : model.triggers) {
        arced.insert(a.from);
        arced.insert(a.to);
    }
    model.walk([&](const ThimacPath& path, const Thimac& t) {
        if (t.attribute) return;
        t.actions.for_each([&](ActionKind k) {
            if (k == ActionKind::Create) return;
            ActionRef ref{path, k};
            if (!arced.count(ref))
                out.push_back({Severity::Warning, DiagCode::TmOrphan, ref.to_string(),
                               "action participates in no flow or trigger", std::nullopt});
        });
    });

    return out;
}

}  // namespace tmtk
