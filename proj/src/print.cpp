#include "tmtk/dsl.hpp"

namespace tmtk {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

void print_thimac(std::string& out, const Thimac& thimac, int depth) {
    std::string pad(std::size_t(depth) * 2, ' ');
    if (thimac.attribute) {
        out += pad + "attribute " + thimac.name + "\n";
        return;
    }
    out += pad + "thimac " + thimac.name + " {\n";
    thimac.actions.for_each(
        [&](ActionKind k) { out += pad + "  " + action_name(k) + "\n"; });
    for (const Thimac& child : thimac.subthimacs) print_thimac(out, child, depth + 1);
    out += pad + "}\n";
}

}  // namespace

std::string print(const ModelDocument& doc) {
    std::string out;
    if (!doc.model.name.empty()) out += "model " + quoted(doc.model.name) + "\n";
    for (const Thimac& root : doc.model.roots) print_thimac(out, root, 0);
    for (const FlowArc& a : doc.model.flows)
        out += "flow " + a.from.to_string() + " -> " + a.to.to_string() + "\n";
    for (const TriggerArc& a : doc.model.triggers)
        out += "trigger " + a.from.to_string() + " -> " + a.to.to_string() + "\n";
    for (const EventDecl& e : doc.events) {
        out += "event " + e.id + " " + quoted(e.label) + " at " + e.time.to_string();
        if (e.duration != 1) out += " for " + std::to_string(e.duration);
        if (e.terminates) out += " terminates " + e.terminates->to_string();
        out += " {\n";
        if (!e.region.actions.empty()) {
            out += "  include ";
            bool first = true;
            for (const ActionRef& ref : e.region.actions) {
                if (!first) out += ", ";
                out += ref.to_string();
                first = false;
            }
            out += "\n";
        }
        for (const auto& [path, value] : e.bindings)
            out += "  set " + path.to_string() + " = " + literal_quoted(value) + "\n";
        out += "}\n";
    }
    if (!doc.chronology.empty()) {
        out += "chronology ";
        bool first = true;
        for (const ChronologyEntry& entry : doc.chronology.entries) {
            if (!first) out += ", ";
            first = false;
            if (entry.count == 1 && entry.ids.size() == 1) {
                out += entry.ids.front();
                continue;
            }
            out += "repeat " + std::to_string(entry.count) + " { ";
            for (std::size_t i = 0; i < entry.ids.size(); ++i) {
                if (i) out += ", ";
                out += entry.ids[i];
            }
            out += " }";
        }
        out += "\n";
    }
    return out;
}

}  // namespace tmtk
