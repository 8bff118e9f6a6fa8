#pragma once

#include <vector>

#include "tmtk/diagnostics.hpp"
#include "tmtk/model.hpp"

namespace tmtk {

struct ValidateOptions {
    // Forbid the elided cross-thimac Transfer -> Receive; every hand-off must
    // then pass through a Transfer -> Transfer pairing.
    bool require_transfer_pairing = false;
};

// Legal (from, to) action pairs for a flow arc. Same-thimac arcs follow the
// interior machine wiring; cross-thimac arcs are the hand-off forms. Flows
// into Create are never legal (creation is triggered, not fed).
bool allowed_flow_adjacency(ActionKind from, ActionKind to, bool same_thimac,
                            const ValidateOptions& opts = {});

// A through-route: enters a thimac's Transfer from outside, stays inside that
// thimac's subtree, and leaves to a Transfer outside it. nodes includes the
// outside source and the outside exit Transfer.
struct TransitPath {
    std::vector<ActionRef> nodes;

    bool operator==(const TransitPath&) const = default;
};

// All maximal simple transit paths, deterministically ordered.
std::vector<TransitPath> find_transit_paths(const StaticModel& model);

// Structural rule check. Returns diagnostics (never throws); order is
// deterministic: rule by rule, arcs and actions in declaration order.
// Rules: TM-REF (unresolved arc endpoint), TM-ADJ (flow pair outside the
// adjacency table), TM-CREATE-INFLOW (any flow into a Create),
// TM-TRANSIT-CREATE (Create on a transit path), TM-TRIGGER-TARGET (trigger
// not aimed at a Create in another thimac), TM-ORPHAN (warning: non-Create
// action with no incident arc on a non-attribute thimac).
std::vector<Diagnostic> validate(const StaticModel& model, const ValidateOptions& opts = {});

}  // namespace tmtk
