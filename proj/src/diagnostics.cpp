#include "tmtk/diagnostics.hpp"

#include <algorithm>

namespace tmtk {

const char* code_name(DiagCode code) {
    switch (code) {
        case DiagCode::TmSyntax: return "TM-SYNTAX";
        case DiagCode::TmDup: return "TM-DUP";
        case DiagCode::TmRef: return "TM-REF";
        case DiagCode::TmAdj: return "TM-ADJ";
        case DiagCode::TmTransitCreate: return "TM-TRANSIT-CREATE";
        case DiagCode::TmCreateInflow: return "TM-CREATE-INFLOW";
        case DiagCode::TmTriggerTarget: return "TM-TRIGGER-TARGET";
        case DiagCode::TmOrphan: return "TM-ORPHAN";
        case DiagCode::UnknownParent: return "UnknownParent";
        case DiagCode::DuplicateName: return "DuplicateName";
        case DiagCode::AttributeRuleViolation: return "AttributeRuleViolation";
        case DiagCode::UnresolvedRef: return "UnresolvedRef";
        case DiagCode::DuplicateArc: return "DuplicateArc";
        case DiagCode::SelfLoop: return "SelfLoop";
        case DiagCode::TriggerTargetNotCreate: return "TriggerTargetNotCreate";
        case DiagCode::TriggerWithinThimac: return "TriggerWithinThimac";
        case DiagCode::UnknownArc: return "UnknownArc";
        case DiagCode::SubdiagramViolation: return "SubdiagramViolation";
        case DiagCode::RegionDisconnected: return "RegionDisconnected";
        case DiagCode::CyclicOrder: return "CyclicOrder";
        case DiagCode::OrderViolation: return "OrderViolation";
        case DiagCode::IdentityViolation: return "IdentityViolation";
        case DiagCode::TimeMonotonicity: return "TimeMonotonicity";
        case DiagCode::TerminateWithoutExistence: return "TerminateWithoutExistence";
        case DiagCode::BindingWithoutCreate: return "BindingWithoutCreate";
        case DiagCode::MissingAttribute: return "MissingAttribute";
    }
    return "UNKNOWN";
}

std::string format_diagnostic(const Diagnostic& d) {
    std::string out = d.severity == Severity::Error ? "error " : "warning ";
    out += code_name(d.code);
    out += ' ';
    out += d.subject;
    out += ": ";
    out += d.message;
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

bool has_warnings(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Warning; });
}

}  // namespace tmtk
