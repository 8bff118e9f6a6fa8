#include "tmtk/model.hpp"

#include <algorithm>

#include "tmtk/diagnostics.hpp"
#include "tmtk/validate.hpp"

namespace tmtk {

const char* action_name(ActionKind k) {
    switch (k) {
        case ActionKind::Create: return "create";
        case ActionKind::Process: return "process";
        case ActionKind::Release: return "release";
        case ActionKind::Transfer: return "transfer";
        case ActionKind::Receive: return "receive";
    }
    return "?";
}

std::optional<ActionKind> action_from_name(const std::string& name) {
    for (ActionKind k : kAllActionKinds)
        if (name == action_name(k)) return k;
    return std::nullopt;
}

int ActionSet::size() const {
    int n = 0;
    for (ActionKind k : kAllActionKinds)
        if (contains(k)) ++n;
    return n;
}

ActionSet ActionSet::of(std::initializer_list<ActionKind> kinds) {
    ActionSet s;
    for (ActionKind k : kinds) s.insert(k);
    return s;
}

std::string ThimacPath::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i) out += '.';
        out += segments[i];
    }
    return out;
}

ThimacPath ThimacPath::parse(const std::string& dotted) {
    ThimacPath p;
    std::string seg;
    for (char c : dotted) {
        if (c == '.') {
            p.segments.push_back(seg);
            seg.clear();
        } else {
            seg += c;
        }
    }
    if (!seg.empty() || !dotted.empty()) p.segments.push_back(seg);
    return p;
}

ThimacPath ThimacPath::parent() const {
    ThimacPath p = *this;
    if (!p.segments.empty()) p.segments.pop_back();
    return p;
}

ThimacPath ThimacPath::child(const std::string& name) const {
    ThimacPath p = *this;
    p.segments.push_back(name);
    return p;
}

bool ThimacPath::within(const ThimacPath& other) const {
    if (segments.size() < other.segments.size()) return false;
    return std::equal(other.segments.begin(), other.segments.end(), segments.begin());
}

std::string ActionRef::to_string() const {
    return thimac.to_string() + "." + action_name(kind);
}

std::string FlowArc::to_string() const {
    return from.to_string() + " -> " + to.to_string();
}

std::string TriggerArc::to_string() const {
    return from.to_string() + " -> " + to.to_string();
}

const char* flow_kind_name(FlowKind k) {
    switch (k) {
        case FlowKind::Self: return "self";
        case FlowKind::Internal: return "internal";
        case FlowKind::Transit: return "transit";
    }
    return "?";
}

namespace {

const Thimac* find_in(const std::vector<Thimac>& list, const std::string& name) {
    for (const Thimac& t : list)
        if (t.name == name) return &t;
    return nullptr;
}

Thimac* find_in(std::vector<Thimac>& list, const std::string& name) {
    for (Thimac& t : list)
        if (t.name == name) return &t;
    return nullptr;
}

void walk_rec(const ThimacPath& prefix, const Thimac& t,
              const std::function<void(const ThimacPath&, const Thimac&)>& visit) {
    ThimacPath path = prefix.child(t.name);
    visit(path, t);
    for (const Thimac& sub : t.subthimacs) walk_rec(path, sub, visit);
}

}  // namespace

const Thimac* StaticModel::find(const ThimacPath& path) const {
    const std::vector<Thimac>* level = &roots;
    const Thimac* cur = nullptr;
    for (const std::string& seg : path.segments) {
        cur = find_in(*level, seg);
        if (!cur) return nullptr;
        level = &cur->subthimacs;
    }
    return cur;
}

bool StaticModel::resolves(const ActionRef& ref) const {
    const Thimac* t = find(ref.thimac);
    return t && t->actions.contains(ref.kind);
}

bool StaticModel::has_flow(const FlowArc& arc) const {
    return std::find(flows.begin(), flows.end(), arc) != flows.end();
}

bool StaticModel::has_trigger(const TriggerArc& arc) const {
    return std::find(triggers.begin(), triggers.end(), arc) != triggers.end();
}

void StaticModel::walk(
    const std::function<void(const ThimacPath&, const Thimac&)>& visit) const {
    for (const Thimac& t : roots) walk_rec(ThimacPath{}, t, visit);
}

std::vector<ActionRef> StaticModel::all_actions() const {
    std::vector<ActionRef> out;
    walk([&](const ThimacPath& path, const Thimac& t) {
        t.actions.for_each([&](ActionKind k) { out.push_back({path, k}); });
    });
    return out;
}

StaticModel add_thimac(StaticModel model, const std::optional<ThimacPath>& parent,
                       const std::string& name, ActionSet actions, bool attribute) {
    std::vector<Thimac>* level = &model.roots;
    if (parent && !parent->empty()) {
        Thimac* p = nullptr;
        for (const std::string& seg : parent->segments) {
            p = find_in(*level, seg);
            if (!p) throw TmError(DiagCode::UnknownParent,
                                  "no thimac at path " + parent->to_string());
            level = &p->subthimacs;
        }
        if (p->attribute)
            throw TmError(DiagCode::AttributeRuleViolation,
                          "attribute thimac " + parent->to_string() + " cannot nest subthimacs");
    }
    if (find_in(*level, name))
        throw TmError(DiagCode::DuplicateName, "sibling named " + name + " already exists");
    if (attribute && !(actions == ActionSet::of({ActionKind::Create})))
        throw TmError(DiagCode::AttributeRuleViolation,
                      "attribute thimac " + name + " must declare exactly create");
    level->push_back(Thimac{name, actions, {}, attribute});
    return model;
}

namespace {

void check_arc_endpoints(const StaticModel& model, const ActionRef& from, const ActionRef& to) {
    if (!model.resolves(from))
        throw TmError(DiagCode::UnresolvedRef, "no action " + from.to_string());
    if (!model.resolves(to))
        throw TmError(DiagCode::UnresolvedRef, "no action " + to.to_string());
}

}  // namespace

StaticModel add_flow(StaticModel model, const ActionRef& from, const ActionRef& to) {
    check_arc_endpoints(model, from, to);
    if (from == to)
        throw TmError(DiagCode::SelfLoop, "flow endpoints are identical: " + from.to_string());
    FlowArc arc{from, to};
    if (model.has_flow(arc))
        throw TmError(DiagCode::DuplicateArc, "flow already present: " + arc.to_string());
    model.flows.push_back(arc);
    return model;
}

StaticModel add_trigger(StaticModel model, const ActionRef& from, const ActionRef& to) {
    check_arc_endpoints(model, from, to);
    if (to.kind != ActionKind::Create)
        throw TmError(DiagCode::TriggerTargetNotCreate,
                      "trigger target must be a create: " + to.to_string());
    if (from.thimac == to.thimac)
        throw TmError(DiagCode::TriggerWithinThimac,
                      "trigger may not stay inside " + from.thimac.to_string());
    TriggerArc arc{from, to};
    if (model.has_trigger(arc))
        throw TmError(DiagCode::DuplicateArc, "trigger already present: " + arc.to_string());
    model.triggers.push_back(arc);
    return model;
}

FlowKind classify_flow(const StaticModel& model, const FlowArc& arc) {
    if (!model.has_flow(arc))
        throw TmError(DiagCode::UnknownArc, "not an arc of the model: " + arc.to_string());
    for (const TransitPath& p : find_transit_paths(model)) {
        for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
            if (p.nodes[i] == arc.from && p.nodes[i + 1] == arc.to) return FlowKind::Transit;
        }
    }
    if (arc.from.thimac == arc.to.thimac) return FlowKind::Self;
    return FlowKind::Internal;
}

}  // namespace tmtk
