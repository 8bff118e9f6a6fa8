#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tmtk {

// The five machine actions. The enum order is the canonical declaration order
// used by the printer and by deterministic walks.
enum class ActionKind { Create, Process, Release, Transfer, Receive };

inline constexpr ActionKind kAllActionKinds[] = {
    ActionKind::Create, ActionKind::Process, ActionKind::Release,
    ActionKind::Transfer, ActionKind::Receive};

const char* action_name(ActionKind k);
std::optional<ActionKind> action_from_name(const std::string& name);

// Set of action kinds; each kind at most once by construction.
class ActionSet {
  public:
    ActionSet() = default;

    bool contains(ActionKind k) const { return bits_ & bit(k); }
    void insert(ActionKind k) { bits_ |= bit(k); }
    void erase(ActionKind k) { bits_ &= ~bit(k); }
    int size() const;
    bool empty() const { return bits_ == 0; }

    // Visits kinds in canonical enum order.
    template <typename F>
    void for_each(F&& f) const {
        for (ActionKind k : kAllActionKinds)
            if (contains(k)) f(k);
    }

    bool operator==(const ActionSet&) const = default;

    static ActionSet of(std::initializer_list<ActionKind> kinds);

  private:
    static std::uint8_t bit(ActionKind k) { return std::uint8_t(1u << unsigned(k)); }
    std::uint8_t bits_ = 0;
};

// Dotted path of thimac names from a root, e.g. "Table.Row.price".
struct ThimacPath {
    std::vector<std::string> segments;

    ThimacPath() = default;
    explicit ThimacPath(std::vector<std::string> segs) : segments(std::move(segs)) {}

    bool empty() const { return segments.empty(); }
    std::string to_string() const;
    static ThimacPath parse(const std::string& dotted);

    ThimacPath parent() const;
    ThimacPath child(const std::string& name) const;

    // True when this path equals `other` or lies in its subtree.
    bool within(const ThimacPath& other) const;

    bool operator==(const ThimacPath&) const = default;
    bool operator<(const ThimacPath& o) const { return segments < o.segments; }
};

// One action of one thimac.
struct ActionRef {
    ThimacPath thimac;
    ActionKind kind = ActionKind::Create;

    std::string to_string() const;

    bool operator==(const ActionRef&) const = default;
    bool operator<(const ActionRef& o) const {
        if (thimac != o.thimac) return thimac < o.thimac;
        return kind < o.kind;
    }
};

// Solid arrow: a thing moves between two actions.
struct FlowArc {
    ActionRef from;
    ActionRef to;

    std::string to_string() const;

    bool operator==(const FlowArc&) const = default;
    bool operator<(const FlowArc& o) const {
        if (from != o.from) return from < o.from;
        return to < o.to;
    }
};

// Dashed arrow: the source activates a Create in another thimac.
struct TriggerArc {
    ActionRef from;
    ActionRef to;

    std::string to_string() const;

    bool operator==(const TriggerArc&) const = default;
    bool operator<(const TriggerArc& o) const {
        if (from != o.from) return from < o.from;
        return to < o.to;
    }
};

// Thing/machine node. `attribute` marks a value-holding leaf: no subthimacs
// and exactly a Create action.
struct Thimac {
    std::string name;
    ActionSet actions;
    std::vector<Thimac> subthimacs;
    bool attribute = false;

    bool operator==(const Thimac&) const = default;
};

enum class FlowKind { Self, Internal, Transit };

const char* flow_kind_name(FlowKind k);

// Whole diagram: a forest of thimacs plus the arcs between their actions.
// Treated as an immutable value; the add_* builders return updated copies.
struct StaticModel {
    std::string name;
    std::vector<Thimac> roots;
    std::vector<FlowArc> flows;
    std::vector<TriggerArc> triggers;

    bool operator==(const StaticModel&) const = default;

    const Thimac* find(const ThimacPath& path) const;
    bool resolves(const ActionRef& ref) const;
    bool has_flow(const FlowArc& arc) const;
    bool has_trigger(const TriggerArc& arc) const;

    // Pre-order walk over every thimac with its full path.
    void walk(const std::function<void(const ThimacPath&, const Thimac&)>& visit) const;

    // All (path, kind) pairs in pre-order / canonical kind order.
    std::vector<ActionRef> all_actions() const;
};

// Builders. Each checks its preconditions and throws TmError on violation:
// UnknownParent, DuplicateName, AttributeRuleViolation for add_thimac;
// UnresolvedRef, DuplicateArc, SelfLoop for add_flow; additionally
// TriggerTargetNotCreate and TriggerWithinThimac for add_trigger.
StaticModel add_thimac(StaticModel model, const std::optional<ThimacPath>& parent,
                       const std::string& name, ActionSet actions, bool attribute = false);
StaticModel add_flow(StaticModel model, const ActionRef& from, const ActionRef& to);
StaticModel add_trigger(StaticModel model, const ActionRef& from, const ActionRef& to);

// Classifies a flow arc of the model; throws TmError(UnknownArc) for arcs not
// in model.flows. Precedence: on a transit path => Transit; same endpoint
// thimac => Self; otherwise Internal.
FlowKind classify_flow(const StaticModel& model, const FlowArc& arc);

}  // namespace tmtk
