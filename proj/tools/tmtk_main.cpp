#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tmtk/dsl.hpp"
#include "tmtk/emit.hpp"
#include "tmtk/simulate.hpp"
#include "tmtk/validate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDiagErrors = 1;
constexpr int kUsage = 2;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void report(const std::vector<tmtk::Diagnostic>& diags) {
    for (const tmtk::Diagnostic& d : diags) std::cerr << tmtk::format_diagnostic(d) << "\n";
}

// Exit status once everything already printed: errors beat warnings; warnings
// count as failures only under --strict.
int status_for(bool errors, bool warnings, bool strict) {
    if (errors) return kDiagErrors;
    if (warnings && strict) return kDiagErrors;
    return kOk;
}

struct LoadedDoc {
    tmtk::ModelDocument doc;
    std::string source;
};

// Reads and parses, reporting diagnostics. Returns nullopt with *status set
// when the pipeline should stop here.
std::optional<LoadedDoc> load(const std::string& path, int* status) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "cannot read " << path << "\n";
        *status = kUsage;
        return std::nullopt;
    }
    tmtk::ParseResult parsed = tmtk::parse(*text);
    report(parsed.diagnostics);
    if (tmtk::has_errors(parsed.diagnostics)) {
        *status = kDiagErrors;
        return std::nullopt;
    }
    return LoadedDoc{std::move(parsed.doc), std::move(*text)};
}

int cmd_validate(const std::string& path, bool strict, bool pairing) {
    int status = kOk;
    auto loaded = load(path, &status);
    if (!loaded) return status;
    tmtk::ValidateOptions opts;
    opts.require_transfer_pairing = pairing;
    auto diags = tmtk::validate(loaded->doc.model, opts);
    report(diags);
    return status_for(tmtk::has_errors(diags), tmtk::has_warnings(diags), strict);
}

int cmd_print(const std::string& path, bool check) {
    int status = kOk;
    auto loaded = load(path, &status);
    if (!loaded) return status;
    std::string canonical = tmtk::print(loaded->doc);
    if (check) {
        if (canonical != loaded->source) {
            std::cerr << path << " is not in canonical form\n";
            return kDiagErrors;
        }
        return kOk;
    }
    std::cout << canonical;
    return kOk;
}

// Shared front half of events/simulate: validation plus region checks.
std::optional<LoadedDoc> load_checked(const std::string& path, bool pairing, int* status,
                                      bool* warned) {
    auto loaded = load(path, status);
    if (!loaded) return std::nullopt;
    tmtk::ValidateOptions opts;
    opts.require_transfer_pairing = pairing;
    auto diags = tmtk::validate(loaded->doc.model, opts);
    for (const tmtk::EventDecl& e : loaded->doc.events) {
        auto region_diags = tmtk::check_region(loaded->doc.model, e.region);
        for (tmtk::Diagnostic& d : region_diags) {
            d.subject = e.id + " " + d.subject;
            diags.push_back(std::move(d));
        }
    }
    report(diags);
    *warned = *warned || tmtk::has_warnings(diags);
    if (tmtk::has_errors(diags)) {
        *status = kDiagErrors;
        return std::nullopt;
    }
    return loaded;
}

int cmd_events(const std::string& path, bool strict, bool pairing) {
    int status = kOk;
    bool warned = false;
    auto loaded = load_checked(path, pairing, &status, &warned);
    if (!loaded) return status;
    tmtk::FlowOrder order = tmtk::derive_flow_order(loaded->doc.model, loaded->doc.events);
    for (const auto& [before, after] : order.reduced)
        std::cout << before << " < " << after << "\n";
    for (const auto& cycle : order.cycles) {
        std::cout << "cycle:";
        for (const std::string& id : cycle) std::cout << " " << id;
        std::cout << "\n";
    }
    auto diags = tmtk::check_chronology(loaded->doc.model, loaded->doc.events,
                                        loaded->doc.chronology);
    report(diags);
    return status_for(tmtk::has_errors(diags), warned || tmtk::has_warnings(diags), strict);
}

int cmd_simulate(const std::string& path, const std::string& format,
                 const std::string& group, const std::string& at, bool fill_days,
                 bool strict, bool pairing) {
    int status = kOk;
    bool warned = false;
    auto loaded = load_checked(path, pairing, &status, &warned);
    if (!loaded) return status;
    const tmtk::ModelDocument& doc = loaded->doc;

    if (format == "dot-static") {
        std::cout << tmtk::emit_dot(doc.model, doc.events, tmtk::DotView::Static);
        return status_for(false, warned, strict);
    }
    if (format == "dot-events") {
        if (doc.events.empty()) {
            std::cerr << "the events view needs at least one declared event\n";
            return kUsage;
        }
        std::cout << tmtk::emit_dot(doc.model, doc.events, tmtk::DotView::Events);
        return status_for(false, warned, strict);
    }

    if (doc.chronology.empty()) {
        std::cerr << "simulation needs a chronology declaration\n";
        return kUsage;
    }
    auto diags = tmtk::check_chronology(doc.model, doc.events, doc.chronology);
    report(diags);
    warned = warned || tmtk::has_warnings(diags);
    if (tmtk::has_errors(diags)) return kDiagErrors;

    try {
        tmtk::SimulationResult sim =
            tmtk::run(doc.model, doc.events, tmtk::expand(doc.chronology));
        if (format == "ledger") {
            std::cout << tmtk::serialize(sim.ledger);
        } else if (format == "event-log") {
            std::cout << tmtk::emit_event_log(doc.events, sim.trace, fill_days);
        } else {
            if (group.empty()) {
                std::cerr << "--format history needs --group\n";
                return kUsage;
            }
            tmtk::ThimacPath pattern = tmtk::ThimacPath::parse(group);
            if (at.empty()) {
                std::cout << tmtk::emit_history_table(doc.model, sim.ledger, pattern);
            } else {
                auto when = tmtk::parse_time(at);
                if (!when) {
                    std::cerr << "--at is not a valid time: " << at << "\n";
                    return kUsage;
                }
                std::cout << tmtk::emit_snapshot(doc.model, sim.ledger, pattern, *when);
            }
        }
    } catch (const tmtk::TmError& err) {
        std::cerr << "error " << tmtk::code_name(err.code()) << ": " << err.what() << "\n";
        return kDiagErrors;
    }
    return status_for(false, warned, strict);
}

int cmd_export(const std::string& path, const std::string& view) {
    int status = kOk;
    auto loaded = load(path, &status);
    if (!loaded) return status;
    if (view == "events" && loaded->doc.events.empty()) {
        std::cerr << "the events view needs at least one declared event\n";
        return kUsage;
    }
    std::cout << tmtk::emit_dot(loaded->doc.model, loaded->doc.events,
                                view == "events" ? tmtk::DotView::Events
                                                 : tmtk::DotView::Static);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thinging-Machine model toolkit"};
    app.require_subcommand(1);

    std::string path, format = "ledger", group, at, view = "static";
    bool strict = false, pairing = false, check = false, fill_days = false;

    CLI::App* validate = app.add_subcommand("validate", "Check structural rules");
    validate->add_option("file", path)->required();
    validate->add_flag("--strict", strict, "Treat warnings as failures");
    validate->add_flag("--require-transfer-pairing", pairing,
                       "Forbid cross-thimac transfer -> receive");

    CLI::App* print_cmd = app.add_subcommand("print", "Rewrite in canonical form");
    print_cmd->add_option("file", path)->required();
    print_cmd->add_flag("--check", check, "Fail if the file is not canonical");

    CLI::App* events = app.add_subcommand("events", "Show the derived event order");
    events->add_option("file", path)->required();
    events->add_flag("--strict", strict, "Treat warnings as failures");
    events->add_flag("--require-transfer-pairing", pairing,
                     "Forbid cross-thimac transfer -> receive");

    CLI::App* simulate = app.add_subcommand("simulate", "Run the chronology and emit tables");
    simulate->add_option("file", path)->required();
    simulate->add_option("--format", format, "ledger, event-log, history, dot-static, dot-events")
        ->check(CLI::IsMember({"ledger", "event-log", "history", "dot-static", "dot-events"}));
    simulate->add_option("--group", group, "Entity subtree for --format history");
    simulate->add_option("--at", at, "Snapshot instant for --format history");
    simulate->add_flag("--fill-days", fill_days, "Interpolate Nothing rows in the event log");
    simulate->add_flag("--strict", strict, "Treat warnings as failures");
    simulate->add_flag("--require-transfer-pairing", pairing,
                       "Forbid cross-thimac transfer -> receive");

    CLI::App* export_cmd = app.add_subcommand("export", "Render a DOT diagram");
    export_cmd->add_option("file", path)->required();
    export_cmd->add_option("--view", view, "static or events")
        ->check(CLI::IsMember({"static", "events"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (validate->parsed()) return cmd_validate(path, strict, pairing);
    if (print_cmd->parsed()) return cmd_print(path, check);
    if (events->parsed()) return cmd_events(path, strict, pairing);
    if (simulate->parsed())
        return cmd_simulate(path, format, group, at, fill_days, strict, pairing);
    if (export_cmd->parsed()) return cmd_export(path, view);
    return kUsage;
}
