#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmtk {

// Half-open location of a construct in DSL source text. Lines and columns are
// 1-based; length counts bytes and never spans a newline.
struct SourceSpan {
    int line = 0;
    int column = 0;
    int length = 0;

    bool operator==(const SourceSpan&) const = default;
};

enum class Severity { Warning, Error };

// Stable diagnostic identifiers. The TM_* group is the structural validator's
// closed rule set; the rest belong to the frontend, the event layer, the
// simulator, and the emitters.
enum class DiagCode {
    // frontend
    TmSyntax,
    TmDup,
    TmRef,
    // structural validator
    TmAdj,
    TmTransitCreate,
    TmCreateInflow,
    TmTriggerTarget,
    TmOrphan,
    // model builders
    UnknownParent,
    DuplicateName,
    AttributeRuleViolation,
    UnresolvedRef,
    DuplicateArc,
    SelfLoop,
    TriggerTargetNotCreate,
    TriggerWithinThimac,
    UnknownArc,
    // event layer
    SubdiagramViolation,
    RegionDisconnected,
    CyclicOrder,
    OrderViolation,
    IdentityViolation,
    TimeMonotonicity,
    // simulator
    TerminateWithoutExistence,
    BindingWithoutCreate,
    // emitters
    MissingAttribute,
};

const char* code_name(DiagCode code);

struct Diagnostic {
    Severity severity = Severity::Error;
    DiagCode code = DiagCode::TmSyntax;
    std::string subject;  // path, arc, event id, or line:col for syntax errors
    std::string message;
    std::optional<SourceSpan> span;
};

// Canonical one-line rendering: "<severity> <code> <subject>: <message>".
std::string format_diagnostic(const Diagnostic& d);

bool has_errors(const std::vector<Diagnostic>& diags);
bool has_warnings(const std::vector<Diagnostic>& diags);

// Hard failure thrown by builders, the simulator, and the emitters when a
// precondition does not hold. Checks that produce lists use Diagnostic instead.
class TmError : public std::runtime_error {
  public:
    TmError(DiagCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    DiagCode code() const { return code_; }

  private:
    DiagCode code_;
};

}  // namespace tmtk
