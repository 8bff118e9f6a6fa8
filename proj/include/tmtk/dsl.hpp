#pragma once

#include <map>
#include <string>
#include <vector>

#include "tmtk/diagnostics.hpp"
#include "tmtk/events.hpp"
#include "tmtk/model.hpp"

namespace tmtk {

// One parsed .tm source: the static model plus the dynamic declarations.
// spans locates every declared element in the source text, keyed by
// "model", "thimac:<path>", "flow:<arc>", "trigger:<arc>", "event:<id>",
// "chronology".
struct ModelDocument {
    StaticModel model;
    std::vector<EventDecl> events;
    ChronologySpec chronology;
    std::map<std::string, SourceSpan> spans;
};

// Structural equality; source locations do not count.
bool doc_equal(const ModelDocument& a, const ModelDocument& b);

struct ParseResult {
    ModelDocument doc;
    std::vector<Diagnostic> diagnostics;
};

// Parses DSL text. Never throws on bad input: the parser recovers at the next
// statement and reports every error it can find (TmSyntax with a span, TmRef
// for unresolved references, TmDup for duplicate declarations). The returned
// model always satisfies referential integrity; offending arcs, region
// members, and chronology entries are dropped.
ParseResult parse(const std::string& text);

// Canonical form: one declaration per statement, 2-space indent, actions in
// canonical order, attribute leaves as `attribute <Name>`, all arcs at top
// level with absolute paths, LF line endings. parse(print(doc)) reproduces
// doc up to spans, and print is idempotent across that round trip.
std::string print(const ModelDocument& doc);

}  // namespace tmtk
