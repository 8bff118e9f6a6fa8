#include <cstdint>
#include <set>
#include <utility>

#include "tmtk/dsl.hpp"
#include "tmtk/time_point.hpp"

namespace tmtk {

bool doc_equal(const ModelDocument& a, const ModelDocument& b) {
    return a.model == b.model && a.events == b.events && a.chronology == b.chronology;
}

namespace {

enum class Tok { Ident, Int, Date, Str, LBrace, RBrace, Comma, Dot, Arrow, Eq, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
    int length = 0;
};

SourceSpan span_of(const Token& t) { return {t.line, t.col, t.length}; }

struct Lexer {
    const std::string& src;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;
    std::vector<Diagnostic>& diags;

    Lexer(const std::string& s, std::vector<Diagnostic>& d) : src(s), diags(d) {}

    char peek(std::size_t ahead = 0) const {
        return pos + ahead < src.size() ? src[pos + ahead] : '\0';
    }

    void advance() {
        if (peek() == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    static bool ident_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    }
    static bool ident_char(char c) {
        return ident_start(c) || (c >= '0' && c <= '9') || c == '_';
    }
    static bool digit(char c) { return c >= '0' && c <= '9'; }

    std::vector<Token> lex() {
        std::vector<Token> out;
        while (pos < src.size()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
                continue;
            }
            if (c == '#') {
                while (pos < src.size() && peek() != '\n') advance();
                continue;
            }
            Token t;
            t.line = line;
            t.col = col;
            if (ident_start(c)) {
                std::size_t start = pos;
                while (pos < src.size() && ident_char(peek())) advance();
                t.kind = Tok::Ident;
                t.text = src.substr(start, pos - start);
                t.length = int(pos - start);
            } else if (digit(c)) {
                std::size_t start = pos;
                while (pos < src.size() && digit(peek())) advance();
                t.kind = Tok::Int;
                // Digits, dash, digit starts a date-style literal.
                if (peek() == '-' && digit(peek(1))) {
                    t.kind = Tok::Date;
                    while (pos < src.size() && (digit(peek()) || peek() == '-')) advance();
                }
                t.text = src.substr(start, pos - start);
                t.length = int(pos - start);
            } else if (c == '"') {
                std::size_t start = pos;
                advance();
                bool closed = false;
                std::string value;
                while (pos < src.size()) {
                    char d = peek();
                    if (d == '\n') break;
                    if (d == '"') {
                        advance();
                        closed = true;
                        break;
                    }
                    if (d == '\\' && (peek(1) == '"' || peek(1) == '\\')) {
                        advance();
                        value += peek();
                        advance();
                        continue;
                    }
                    value += d;
                    advance();
                }
                t.kind = Tok::Str;
                t.text = std::move(value);
                t.length = int(pos - start);
                if (!closed) {
                    diags.push_back({Severity::Error, DiagCode::TmSyntax,
                                     std::to_string(t.line) + ":" + std::to_string(t.col),
                                     "unterminated string", span_of(t)});
                }
            } else if (c == '-' && peek(1) == '>') {
                advance();
                advance();
                t.kind = Tok::Arrow;
                t.text = "->";
                t.length = 2;
            } else {
                advance();
                t.length = 1;
                switch (c) {
                    case '{': t.kind = Tok::LBrace; break;
                    case '}': t.kind = Tok::RBrace; break;
                    case ',': t.kind = Tok::Comma; break;
                    case '.': t.kind = Tok::Dot; break;
                    case '=': t.kind = Tok::Eq; break;
                    default:
                        diags.push_back(
                            {Severity::Error, DiagCode::TmSyntax,
                             std::to_string(t.line) + ":" + std::to_string(t.col),
                             "unexpected character", SourceSpan{t.line, t.col, 1}});
                        continue;
                }
                t.text = std::string(1, c);
            }
            out.push_back(std::move(t));
        }
        Token end;
        end.kind = Tok::End;
        end.line = line;
        end.col = col;
        out.push_back(end);
        return out;
    }
};

struct PendingArc {
    bool trigger = false;
    ActionRef from;
    ActionRef to;
    SourceSpan span;
};

struct PendingEvent {
    std::string id;
    std::string label;
    TimePoint time;
    std::int64_t duration = 1;
    std::optional<ThimacPath> terminates;
    SourceSpan terminates_span;
    std::vector<std::pair<ActionRef, SourceSpan>> includes;
    std::vector<std::pair<std::pair<ThimacPath, Literal>, SourceSpan>> sets;
    SourceSpan span;
};

struct Parser {
    const std::vector<Token>& toks;
    std::size_t pos = 0;
    ModelDocument doc;
    std::vector<Diagnostic>& diags;
    std::vector<PendingArc> arcs;
    std::vector<PendingEvent> events;
    bool have_model_stmt = false;
    bool have_chronology = false;
    std::vector<std::pair<std::vector<std::pair<std::string, SourceSpan>>, int>> chrono_entries;

    Parser(const std::vector<Token>& t, std::vector<Diagnostic>& d) : toks(t), diags(d) {}

    const Token& cur() const { return toks[pos]; }
    const Token& take() { return toks[pos + 1 < toks.size() ? pos++ : pos]; }
    bool at_ident(const char* kw) const {
        return cur().kind == Tok::Ident && cur().text == kw;
    }
    bool accept(Tok k) {
        if (cur().kind != k) return false;
        take();
        return true;
    }

    void error_here(const std::string& message) {
        const Token& t = cur();
        diags.push_back({Severity::Error, DiagCode::TmSyntax,
                         std::to_string(t.line) + ":" + std::to_string(t.col), message,
                         span_of(t)});
    }

    void dup_here(const std::string& subject, const std::string& message,
                  const SourceSpan& span) {
        diags.push_back({Severity::Error, DiagCode::TmDup, subject, message, span});
    }

    // ---- small grammar pieces -------------------------------------------

    std::optional<std::string> expect_name(const char* what) {
        if (cur().kind != Tok::Ident) {
            error_here(std::string("expected ") + what);
            return std::nullopt;
        }
        return take().text;
    }

    std::optional<ThimacPath> parse_path() {
        ThimacPath path;
        auto first = expect_name("a thimac name");
        if (!first) return std::nullopt;
        path.segments.push_back(*first);
        while (accept(Tok::Dot)) {
            auto next = expect_name("a name after '.'");
            if (!next) return std::nullopt;
            path.segments.push_back(*next);
        }
        return path;
    }

    // Dotted segments ending in an action kind; the leading segments extend
    // `enclosing` (empty at top level and in event bodies, where refs are
    // absolute).
    std::optional<ActionRef> parse_ref(const ThimacPath& enclosing) {
        std::vector<std::string> segs;
        auto first = expect_name("an action reference");
        if (!first) return std::nullopt;
        segs.push_back(*first);
        while (accept(Tok::Dot)) {
            auto next = expect_name("a name after '.'");
            if (!next) return std::nullopt;
            segs.push_back(*next);
        }
        auto kind = action_from_name(segs.back());
        if (!kind) {
            error_here("action reference must end in an action kind");
            return std::nullopt;
        }
        segs.pop_back();
        ThimacPath path = enclosing;
        for (auto& s : segs) path.segments.push_back(std::move(s));
        if (path.empty()) {
            error_here("action reference needs a thimac path");
            return std::nullopt;
        }
        return ActionRef{std::move(path), *kind};
    }

    std::optional<std::int64_t> parse_int(const char* what) {
        if (cur().kind != Tok::Int) {
            error_here(std::string("expected ") + what);
            return std::nullopt;
        }
        const Token& t = take();
        try {
            return std::stoll(t.text);
        } catch (const std::exception&) {
            diags.push_back({Severity::Error, DiagCode::TmSyntax,
                             std::to_string(t.line) + ":" + std::to_string(t.col),
                             "integer is out of range", span_of(t)});
            return std::nullopt;
        }
    }

    // ---- statements ------------------------------------------------------

    void parse_model_stmt() {
        const Token& kw = take();
        if (cur().kind != Tok::Str) {
            error_here("expected the model name string");
            return;
        }
        const Token& name = take();
        if (have_model_stmt) {
            dup_here("model", "model name already declared", span_of(name));
            return;
        }
        have_model_stmt = true;
        doc.model.name = name.text;
        doc.spans.emplace("model", span_of(kw));
    }

    void parse_thimac(const ThimacPath& parent, std::vector<Thimac>& siblings,
                      std::set<std::string>& sibling_names) {
        take();  // 'thimac'
        auto name = expect_name("a thimac name");
        if (!name) return;
        const Token& name_tok = toks[pos - 1];
        ThimacPath path = parent;
        path.segments.push_back(*name);
        Thimac node;
        node.name = *name;
        bool keep = sibling_names.insert(*name).second;
        if (!keep)
            dup_here(path.to_string(), "duplicate thimac name among siblings",
                     span_of(name_tok));
        if (!accept(Tok::LBrace)) {
            error_here("expected '{' after the thimac name");
            if (keep) siblings.push_back(std::move(node));
            return;
        }
        parse_thimac_body(path, node);
        if (keep) {
            doc.spans.emplace("thimac:" + path.to_string(), span_of(name_tok));
            siblings.push_back(std::move(node));
        }
    }

    void parse_thimac_body(const ThimacPath& path, Thimac& node) {
        std::set<std::string> child_names;
        while (true) {
            if (cur().kind == Tok::RBrace) {
                take();
                return;
            }
            if (cur().kind == Tok::End) {
                error_here("missing '}' before end of input");
                return;
            }
            if (cur().kind == Tok::Ident) {
                if (auto kind = action_from_name(cur().text)) {
                    const Token& t = take();
                    if (node.actions.contains(*kind))
                        dup_here(path.to_string(),
                                 "action " + std::string(action_name(*kind)) +
                                     " already declared",
                                 span_of(t));
                    node.actions.insert(*kind);
                    continue;
                }
                if (at_ident("attribute")) {
                    take();
                    auto name = expect_name("an attribute name");
                    if (!name) continue;
                    const Token& name_tok = toks[pos - 1];
                    ThimacPath child_path = path;
                    child_path.segments.push_back(*name);
                    if (!child_names.insert(*name).second) {
                        dup_here(child_path.to_string(),
                                 "duplicate thimac name among siblings", span_of(name_tok));
                        continue;
                    }
                    Thimac leaf;
                    leaf.name = *name;
                    leaf.attribute = true;
                    leaf.actions.insert(ActionKind::Create);
                    doc.spans.emplace("thimac:" + child_path.to_string(), span_of(name_tok));
                    node.subthimacs.push_back(std::move(leaf));
                    continue;
                }
                if (at_ident("thimac")) {
                    parse_thimac(path, node.subthimacs, child_names);
                    continue;
                }
                if (at_ident("flow") || at_ident("trigger")) {
                    parse_arc_stmt(path);
                    continue;
                }
            }
            error_here("expected an action, thimac, attribute, flow, or trigger");
            take();
        }
    }

    void parse_arc_stmt(const ThimacPath& enclosing) {
        bool trigger = at_ident("trigger");
        const Token& kw = take();
        auto from = parse_ref(enclosing);
        if (!from) return;
        if (!accept(Tok::Arrow)) {
            error_here("expected '->'");
            return;
        }
        auto to = parse_ref(enclosing);
        if (!to) return;
        arcs.push_back({trigger, std::move(*from), std::move(*to), span_of(kw)});
    }

    std::optional<TimePoint> parse_time_token() {
        if (cur().kind != Tok::Date && cur().kind != Tok::Int) {
            error_here("expected a time (YYYY-MM-DD, a year, or a tick)");
            return std::nullopt;
        }
        const Token& t = take();
        auto parsed = parse_time(t.text);
        if (!parsed) {
            diags.push_back({Severity::Error, DiagCode::TmSyntax,
                             std::to_string(t.line) + ":" + std::to_string(t.col),
                             "not a valid time", span_of(t)});
            return std::nullopt;
        }
        if (*parsed == kOpenEndSentinel) {
            diags.push_back({Severity::Error, DiagCode::TmSyntax,
                             std::to_string(t.line) + ":" + std::to_string(t.col),
                             "9999-12-31 is reserved for open intervals", span_of(t)});
            return std::nullopt;
        }
        return parsed;
    }

    void parse_event() {
        take();  // 'event'
        auto id = expect_name("an event id");
        if (!id) return;
        const Token& id_tok = toks[pos - 1];
        PendingEvent ev;
        ev.id = *id;
        ev.span = span_of(id_tok);
        bool duplicate = false;
        for (const PendingEvent& prior : events) duplicate = duplicate || prior.id == ev.id;
        if (duplicate) dup_here(ev.id, "event id already declared", span_of(id_tok));

        if (cur().kind != Tok::Str) {
            error_here("expected the event label string");
            return;
        }
        ev.label = take().text;
        if (!at_ident("at")) {
            error_here("expected 'at'");
            return;
        }
        take();
        auto time = parse_time_token();
        if (!time) return;
        ev.time = *time;
        if (at_ident("for")) {
            take();
            auto n = parse_int("a duration count");
            if (!n) return;
            if (*n < 1) {
                error_here("duration must be at least 1");
                return;
            }
            ev.duration = *n;
        }
        if (at_ident("terminates")) {
            const Token& kw = take();
            ev.terminates_span = span_of(kw);
            auto path = parse_path();
            if (!path) return;
            ev.terminates = std::move(*path);
        }
        if (!accept(Tok::LBrace)) {
            error_here("expected '{' after the event header");
            return;
        }
        while (true) {
            if (cur().kind == Tok::RBrace) {
                take();
                break;
            }
            if (cur().kind == Tok::End) {
                error_here("missing '}' before end of input");
                break;
            }
            if (at_ident("include")) {
                take();
                do {
                    const Token& at = cur();
                    auto ref = parse_ref(ThimacPath{});
                    if (!ref) break;
                    ev.includes.emplace_back(std::move(*ref), span_of(at));
                } while (accept(Tok::Comma));
                continue;
            }
            if (at_ident("set")) {
                const Token& kw = take();
                auto path = parse_path();
                if (!path) continue;
                if (!accept(Tok::Eq)) {
                    error_here("expected '='");
                    continue;
                }
                Literal value;
                if (cur().kind == Tok::Int) {
                    auto n = parse_int("a literal");
                    if (!n) continue;
                    value = *n;
                } else if (cur().kind == Tok::Str) {
                    value = take().text;
                } else {
                    error_here("expected an integer or string literal");
                    continue;
                }
                ev.sets.push_back({{std::move(*path), std::move(value)}, span_of(kw)});
                continue;
            }
            error_here("expected include or set");
            take();
        }
        if (!duplicate) events.push_back(std::move(ev));
    }

    void parse_chronology() {
        const Token& kw = take();
        bool duplicate = have_chronology;
        if (duplicate) dup_here("chronology", "chronology already declared", span_of(kw));
        have_chronology = true;
        if (!duplicate) doc.spans.emplace("chronology", span_of(kw));
        do {
            if (at_ident("repeat")) {
                take();
                auto n = parse_int("a repeat count");
                if (!n) return;
                if (*n < 1) {
                    error_here("repeat count must be at least 1");
                    return;
                }
                if (!accept(Tok::LBrace)) {
                    error_here("expected '{' after the repeat count");
                    return;
                }
                std::vector<std::pair<std::string, SourceSpan>> ids;
                do {
                    const Token& at = cur();
                    auto id = expect_name("an event id");
                    if (!id) return;
                    ids.emplace_back(*id, span_of(at));
                } while (accept(Tok::Comma));
                if (!accept(Tok::RBrace)) {
                    error_here("expected '}' after the repeat group");
                    return;
                }
                if (!duplicate) chrono_entries.emplace_back(std::move(ids), int(*n));
            } else {
                const Token& at = cur();
                auto id = expect_name("an event id");
                if (!id) return;
                if (!duplicate)
                    chrono_entries.emplace_back(
                        std::vector<std::pair<std::string, SourceSpan>>{{*id, span_of(at)}},
                        1);
            }
        } while (accept(Tok::Comma));
    }

    // ---- driver ----------------------------------------------------------

    void parse_document() {
        std::set<std::string> root_names;
        while (cur().kind != Tok::End) {
            if (at_ident("model")) {
                parse_model_stmt();
            } else if (at_ident("thimac")) {
                parse_thimac(ThimacPath{}, doc.model.roots, root_names);
            } else if (at_ident("flow") || at_ident("trigger")) {
                parse_arc_stmt(ThimacPath{});
            } else if (at_ident("event")) {
                parse_event();
            } else if (at_ident("chronology")) {
                parse_chronology();
            } else {
                error_here("expected a declaration");
                take();
            }
        }
        resolve();
    }

    void unresolved(const std::string& subject, const std::string& what,
                    const SourceSpan& span) {
        diags.push_back({Severity::Error, DiagCode::TmRef, subject,
                         what + " does not resolve against the model", span});
    }

    void resolve() {
        for (PendingArc& arc : arcs) {
            std::string key = (arc.trigger ? "trigger:" : "flow:") + arc.from.to_string() +
                              " -> " + arc.to.to_string();
            try {
                // Copy in, assign back: a throwing builder must leave the
                // model as it was for the remaining arcs.
                doc.model = arc.trigger ? add_trigger(doc.model, arc.from, arc.to)
                                        : add_flow(doc.model, arc.from, arc.to);
                doc.spans.emplace(key, arc.span);
            } catch (const TmError& err) {
                DiagCode code = err.code();
                if (code == DiagCode::UnresolvedRef) code = DiagCode::TmRef;
                if (code == DiagCode::DuplicateArc) code = DiagCode::TmDup;
                diags.push_back({Severity::Error, code,
                                 arc.from.to_string() + " -> " + arc.to.to_string(),
                                 err.what(), arc.span});
            }
        }
        for (PendingEvent& ev : events) {
            EventDecl decl;
            decl.id = std::move(ev.id);
            decl.label = std::move(ev.label);
            decl.time = ev.time;
            decl.duration = ev.duration;
            std::set<ActionRef> actions;
            for (auto& [ref, span] : ev.includes) {
                if (!doc.model.resolves(ref)) {
                    unresolved(decl.id, ref.to_string(), span);
                    continue;
                }
                actions.insert(ref);
            }
            decl.region = induced_region(doc.model, std::move(actions));
            for (auto& [binding, span] : ev.sets) {
                if (!doc.model.find(binding.first)) {
                    unresolved(decl.id, binding.first.to_string(), span);
                    continue;
                }
                if (decl.bindings.count(binding.first)) {
                    dup_here(decl.id, binding.first.to_string() + " already bound", span);
                    continue;
                }
                decl.bindings.emplace(std::move(binding.first), std::move(binding.second));
            }
            if (ev.terminates) {
                const Thimac* target = doc.model.find(*ev.terminates);
                if (!target || !target->actions.contains(ActionKind::Create))
                    unresolved(decl.id, ev.terminates->to_string() + " (no create there)",
                               ev.terminates_span);
                else
                    decl.terminates = std::move(*ev.terminates);
            }
            doc.spans.emplace("event:" + decl.id, ev.span);
            doc.events.push_back(std::move(decl));
        }
        for (auto& [ids, count] : chrono_entries) {
            ChronologyEntry entry;
            entry.count = count;
            for (auto& [id, span] : ids) {
                bool known = false;
                for (const EventDecl& e : doc.events) known = known || e.id == id;
                if (!known) {
                    unresolved(id, "chronology event " + id, span);
                    continue;
                }
                entry.ids.push_back(id);
            }
            if (!entry.ids.empty()) doc.chronology.entries.push_back(std::move(entry));
        }
    }
};

}  // namespace

ParseResult parse(const std::string& text) {
    ParseResult result;
    Lexer lexer(text, result.diagnostics);
    std::vector<Token> tokens = lexer.lex();
    Parser parser(tokens, result.diagnostics);
    parser.parse_document();
    result.doc = std::move(parser.doc);
    return result;
}

}  // namespace tmtk
