#include "support.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace support {

using namespace tmtk;

bool oracle_adjacency(ActionKind from, ActionKind to, bool same_thimac,
                      bool require_transfer_pairing) {
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
    if (from == K::Transfer && to == K::Receive) return !require_transfer_pairing;
    return false;
}

namespace {

bool transit_qualifies(const std::vector<ActionRef>& p) {
    if (p.size() < 3) return false;
    const ThimacPath& boundary = p[1].thimac;
    if (p[1].kind != ActionKind::Transfer) return false;
    if (p.front().thimac.within(boundary)) return false;
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
        if (!p[i].thimac.within(boundary)) return false;
    if (p.back().kind != ActionKind::Transfer) return false;
    if (p.back().thimac.within(boundary)) return false;
    return true;
}

bool contiguous_sub(const std::vector<ActionRef>& small, const std::vector<ActionRef>& big) {
    if (small.size() > big.size()) return false;
    for (std::size_t off = 0; off + small.size() <= big.size(); ++off) {
        bool all = true;
        for (std::size_t i = 0; i < small.size(); ++i)
            if (!(big[off + i] == small[i])) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

}  // namespace

std::vector<std::vector<ActionRef>> oracle_transit_paths(const StaticModel& m) {
    std::map<ActionRef, std::vector<ActionRef>> adj;
    for (const FlowArc& f : m.flows) adj[f.from].push_back(f.to);

    std::vector<std::vector<ActionRef>> qual;
    std::vector<ActionRef> cur;
    std::set<ActionRef> used;
    std::function<void(const ActionRef&)> dfs = [&](const ActionRef& node) {
        cur.push_back(node);
        used.insert(node);
        if (transit_qualifies(cur)) qual.push_back(cur);
        auto it = adj.find(node);
        if (it != adj.end())
            for (const ActionRef& nxt : it->second)
                if (!used.count(nxt)) dfs(nxt);
        used.erase(node);
        cur.pop_back();
    };
    for (const ActionRef& start : m.all_actions()) dfs(start);

    std::sort(qual.begin(), qual.end());
    qual.erase(std::unique(qual.begin(), qual.end()), qual.end());

    std::vector<std::vector<ActionRef>> out;
    for (const auto& p : qual) {
        bool contained = false;
        for (const auto& q : qual)
            if (q.size() > p.size() && contiguous_sub(p, q)) {
                contained = true;
                break;
            }
        if (!contained) out.push_back(p);
    }
    return out;
}

OrderOracle oracle_order(const StaticModel& m, const std::vector<EventDecl>& events) {
    std::vector<std::pair<ActionRef, ActionRef>> arcs;
    for (const FlowArc& f : m.flows) arcs.push_back({f.from, f.to});
    for (const TriggerArc& g : m.triggers) arcs.push_back({g.from, g.to});

    auto interior = [](const std::pair<ActionRef, ActionRef>& a, const Region& r) {
        return r.actions.count(a.first) != 0 && r.actions.count(a.second) != 0;
    };

    const std::size_t n = events.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const Region& ri = events[i].region;
            const Region& rj = events[j].region;
            std::set<ActionRef> reached;
            bool grew = true;
            while (grew) {
                grew = false;
                for (const auto& arc : arcs) {
                    if (interior(arc, ri) || interior(arc, rj)) continue;
                    bool active = ri.actions.count(arc.first) != 0 || reached.count(arc.first) != 0;
                    if (active && reached.insert(arc.second).second) grew = true;
                }
            }
            for (const ActionRef& a : rj.actions)
                if (reached.count(a)) {
                    reach[i][j] = true;
                    break;
                }
        }
    }

    // Mutual-reachability grouping by union-find.
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (reach[i][j] && reach[j][i]) parent[find(i)] = find(j);

    OrderOracle out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && reach[i][j]) {
                out.raw.insert({events[i].id, events[j].id});
                if (find(i) != find(j)) out.closure.insert({events[i].id, events[j].id});
            }
    std::map<std::size_t, std::set<std::string>> comps;
    for (std::size_t i = 0; i < n; ++i) comps[find(i)].insert(events[i].id);
    for (auto& [root, ids] : comps)
        if (ids.size() >= 2) out.cycles.insert(ids);
    return out;
}

std::string check_disjoint(const ExistenceLedger& ledger) {
    std::map<std::string, std::vector<const Exicon*>> by_path;
    for (const Exicon& e : ledger.exicons) by_path[e.thimac.to_string()].push_back(&e);

    for (auto& [path, slices] : by_path) {
        for (const Exicon* e : slices) {
            if (e->becoming.is_calendar() != slices.front()->becoming.is_calendar())
                return path + ": slices on mixed time axes";
            if (e->end) {
                if (e->end->is_calendar() != e->becoming.is_calendar())
                    return path + ": one slice spans both axes";
                if (e->end->interval_start() <= e->becoming.interval_start())
                    return path + ": empty or inverted slice";
            }
        }
        std::vector<const Exicon*> sorted = slices;
        std::sort(sorted.begin(), sorted.end(), [](const Exicon* a, const Exicon* b) {
            return a->becoming.interval_start() < b->becoming.interval_start();
        });
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
            if (!sorted[i]->end) return path + ": open slice is not the last";
            if (sorted[i + 1]->becoming.interval_start() < sorted[i]->end->interval_start())
                return path + ": overlapping slices";
        }
    }
    return "";
}

std::string check_snapshot_unique(const ExistenceLedger& ledger) {
    std::map<std::string, std::vector<const Exicon*>> by_path;
    for (const Exicon& e : ledger.exicons) by_path[e.thimac.to_string()].push_back(&e);

    for (auto& [path, slices] : by_path) {
        std::set<std::int64_t> probes;
        for (const Exicon* e : slices) {
            probes.insert(e->becoming.interval_start());
            if (e->end) {
                probes.insert(e->end->interval_start());
                probes.insert(e->end->interval_start() - 1);
            }
        }
        for (std::int64_t x : probes) {
            int covering = 0;
            for (const Exicon* e : slices) {
                if (e->becoming.interval_start() > x) continue;
                if (e->end && e->end->interval_start() <= x) continue;
                ++covering;
            }
            if (covering > 1)
                return path + ": " + std::to_string(covering) + " slices cover instant " +
                       std::to_string(x);
        }
    }
    return "";
}

std::string check_dot(const std::string& text) {
    if (text.rfind("digraph \"", 0) != 0) return "missing digraph header";
    std::istringstream in(text);
    std::string line;
    int depth = 0;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t");
        std::string t = line.substr(b, e - b + 1);
        int quotes = 0;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] == '"' && (i == 0 || t[i - 1] != '\\')) ++quotes;
        if (quotes % 2) return "unbalanced quotes on line " + std::to_string(line_no);
        if (t.back() == '{') {
            ++depth;
            continue;
        }
        if (t == "}") {
            if (--depth < 0) return "brace closed at depth 0 on line " + std::to_string(line_no);
            continue;
        }
        if (t.back() != ';') return "statement without semicolon on line " + std::to_string(line_no);
    }
    if (depth != 0) return "unbalanced braces at end of text";
    return "";
}

int rand_int(Rng& rng, int lo, int hi) {
    return lo + int(rng() % std::uint64_t(hi - lo + 1));
}

namespace {

ActionSet random_action_set(Rng& rng) {
    ActionSet s;
    int n = rand_int(rng, 1, 5);
    for (int i = 0; i < n; ++i) s.insert(kAllActionKinds[rand_int(rng, 0, 4)]);
    return s;
}

}  // namespace

StaticModel gen_flow_graph(Rng& rng, int max_actions) {
    StaticModel m;
    m.name = "g";
    int budget = rand_int(rng, 2, max_actions);
    int nroots = rand_int(rng, 1, 3);
    std::vector<Thimac*> nodes;
    for (int r = 0; r < nroots; ++r) {
        Thimac t;
        t.name = "T" + std::to_string(r + 1);
        m.roots.push_back(t);
    }
    for (Thimac& t : m.roots) {
        nodes.push_back(&t);
        if (rand_int(rng, 0, 2) == 0) {
            Thimac child;
            child.name = "N";
            t.subthimacs.push_back(child);
            nodes.push_back(&t.subthimacs.back());
        }
    }
    for (int i = 0; i < budget; ++i)
        nodes[std::size_t(rand_int(rng, 0, int(nodes.size()) - 1))]->actions.insert(
            kAllActionKinds[rand_int(rng, 0, 4)]);

    std::vector<ActionRef> all = m.all_actions();
    if (all.size() >= 2) {
        int trials = rand_int(rng, 1, 14);
        for (int i = 0; i < trials; ++i) {
            const ActionRef& a = all[std::size_t(rand_int(rng, 0, int(all.size()) - 1))];
            const ActionRef& b = all[std::size_t(rand_int(rng, 0, int(all.size()) - 1))];
            FlowArc arc{a, b};
            if (a == b || m.has_flow(arc)) continue;
            m.flows.push_back(arc);
        }
    }
    return m;
}

StaticModel gen_valid_model(Rng& rng) {
    StaticModel m;
    m.name = "gen";
    int counter = 0;
    std::vector<ThimacPath> hosts;
    int nroots = rand_int(rng, 1, 3);
    for (int r = 0; r < nroots; ++r) {
        std::string nm = "T" + std::to_string(++counter);
        m = add_thimac(m, std::nullopt, nm, random_action_set(rng));
        ThimacPath root({nm});
        hosts.push_back(root);
        if (rand_int(rng, 0, 1) == 0) {
            std::string cn = "T" + std::to_string(++counter);
            m = add_thimac(m, root, cn, random_action_set(rng));
            hosts.push_back(root.child(cn));
        }
    }
    for (const ThimacPath& host : hosts) {
        int nattr = rand_int(rng, 0, 2);
        for (int a = 0; a < nattr; ++a)
            m = add_thimac(m, host, "a" + std::to_string(a + 1),
                           ActionSet::of({ActionKind::Create}), true);
    }

    std::vector<ActionRef> all = m.all_actions();
    int flow_trials = rand_int(rng, 2, 14);
    for (int i = 0; i < flow_trials && all.size() >= 2; ++i) {
        const ActionRef& a = all[std::size_t(rand_int(rng, 0, int(all.size()) - 1))];
        const ActionRef& b = all[std::size_t(rand_int(rng, 0, int(all.size()) - 1))];
        if (a == b || m.has_flow({a, b})) continue;
        if (!oracle_adjacency(a.kind, b.kind, a.thimac == b.thimac)) continue;
        m = add_flow(m, a, b);
    }
    std::vector<ActionRef> creates;
    for (const ActionRef& a : all)
        if (a.kind == ActionKind::Create) creates.push_back(a);
    int trig_trials = rand_int(rng, 0, 8);
    for (int i = 0; i < trig_trials && !creates.empty(); ++i) {
        const ActionRef& src = all[std::size_t(rand_int(rng, 0, int(all.size()) - 1))];
        const ActionRef& dst = creates[std::size_t(rand_int(rng, 0, int(creates.size()) - 1))];
        if (src.thimac == dst.thimac || m.has_trigger({src, dst})) continue;
        m = add_trigger(m, src, dst);
    }
    return m;
}

namespace {

std::string gen_label(Rng& rng) {
    static const char alpha[] =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789      '";
    int len = rand_int(rng, 0, 20);
    std::string s;
    for (int i = 0; i < len; ++i) {
        int mode = rand_int(rng, 0, 19);
        if (mode == 0)
            s += '"';
        else if (mode == 1)
            s += '\\';
        else
            s += alpha[std::size_t(rand_int(rng, 0, int(sizeof alpha) - 2))];
    }
    return s;
}

}  // namespace

std::vector<EventDecl> gen_events(Rng& rng, const StaticModel& model) {
    std::vector<EventDecl> events;
    std::vector<ActionRef> all = model.all_actions();
    if (all.empty()) return events;
    std::vector<std::pair<ActionRef, ActionRef>> arcs;
    for (const FlowArc& f : model.flows) arcs.push_back({f.from, f.to});
    for (const TriggerArc& g : model.triggers) arcs.push_back({g.from, g.to});

    int nev = rand_int(rng, 1, 5);
    for (int e = 1; e <= nev; ++e) {
        std::set<ActionRef> acts;
        acts.insert(all[std::size_t(rand_int(rng, 0, int(all.size()) - 1))]);
        int grow = rand_int(rng, 0, 4);
        for (int g = 0; g < grow; ++g) {
            std::vector<ActionRef> frontier;
            for (const auto& [u, v] : arcs) {
                if (acts.count(u) && !acts.count(v)) frontier.push_back(v);
                if (acts.count(v) && !acts.count(u)) frontier.push_back(u);
            }
            if (frontier.empty()) break;
            acts.insert(frontier[std::size_t(rand_int(rng, 0, int(frontier.size()) - 1))]);
        }

        EventDecl ev;
        ev.id = "E" + std::to_string(e);
        ev.label = gen_label(rng);
        ev.time = TimePoint::tick(0);  // placeholder, callers schedule real times
        ev.duration = rand_int(rng, 0, 3) == 0 ? rand_int(rng, 2, 3) : 1;
        ev.region = induced_region(model, acts);
        std::vector<ThimacPath> attr_creates;
        std::vector<ThimacPath> plain_creates;
        for (const ActionRef& a : acts) {
            if (a.kind != ActionKind::Create) continue;
            const Thimac* th = model.find(a.thimac);
            if (th && th->attribute)
                attr_creates.push_back(a.thimac);
            else
                plain_creates.push_back(a.thimac);
        }
        for (const ThimacPath& p : attr_creates) {
            int pick = rand_int(rng, 0, 2);
            if (pick == 0) continue;
            if (pick == 1)
                ev.bindings[p] = std::int64_t(rand_int(rng, 0, 99));
            else
                ev.bindings[p] = std::string("v") + std::to_string(rand_int(rng, 0, 9));
        }
        // Terminating a thimac whose create sits in this very region keeps the
        // chronology replayable: the create opens or persists it first.
        if (rand_int(rng, 0, 4) == 0 && !plain_creates.empty())
            ev.terminates = plain_creates[std::size_t(rand_int(rng, 0, int(plain_creates.size()) - 1))];
        events.push_back(ev);
    }
    return events;
}

ModelDocument gen_document(Rng& rng) {
    ModelDocument doc;
    doc.model = gen_valid_model(rng);
    int axis = rand_int(rng, 0, 2);
    auto rand_time = [&rng, axis]() {
        switch (axis) {
            case 0:
                return TimePoint::day(rand_int(rng, 1990, 2020), rand_int(rng, 1, 12),
                                      rand_int(rng, 1, 28));
            case 1: return TimePoint::year(rand_int(rng, 1200, 7000));
            default: return TimePoint::tick(rand_int(rng, 0, 400));
        }
    };

    doc.events = gen_events(rng, doc.model);
    // Mutually reachable events poison every chronology over them, so cycle
    // members cannot stay declared.
    OrderOracle order = oracle_order(doc.model, doc.events);
    if (!order.cycles.empty()) {
        std::set<std::string> cyclic;
        for (const auto& group : order.cycles) cyclic.insert(group.begin(), group.end());
        std::vector<EventDecl> kept;
        for (EventDecl& e : doc.events)
            if (!cyclic.count(e.id)) kept.push_back(std::move(e));
        doc.events = std::move(kept);
    }
    if (doc.events.empty()) {
        // A lone event cannot order against anything.
        std::vector<EventDecl> one = gen_events(rng, doc.model);
        one.resize(1);
        doc.events = std::move(one);
    }
    order = oracle_order(doc.model, doc.events);

    // Random linear extension of the derived order.
    std::map<std::string, int> indeg;
    std::map<std::string, std::vector<std::string>> succ;
    for (const EventDecl& e : doc.events) indeg[e.id] = 0;
    for (const auto& [a, b] : order.closure) {
        if (!indeg.count(a) || !indeg.count(b)) continue;
        succ[a].push_back(b);
        ++indeg[b];
    }
    std::vector<std::string> ready;
    std::vector<std::string> seq;
    for (const auto& [id, d] : indeg)
        if (d == 0) ready.push_back(id);
    while (!ready.empty()) {
        std::swap(ready[std::size_t(rand_int(rng, 0, int(ready.size()) - 1))], ready.back());
        std::string id = ready.back();
        ready.pop_back();
        for (const std::string& nxt : succ[id])
            if (--indeg[nxt] == 0) ready.push_back(nxt);
        seq.push_back(std::move(id));
    }
    if (seq.size() != indeg.size()) {
        // Region reachability is not transitive, so the closure can knot even
        // without mutual pairs. Keep the untangled part.
        std::set<std::string> placed(seq.begin(), seq.end());
        std::vector<EventDecl> kept;
        for (EventDecl& e : doc.events)
            if (placed.count(e.id)) kept.push_back(std::move(e));
        doc.events = std::move(kept);
    }
    if (doc.events.empty()) {
        std::vector<EventDecl> one = gen_events(rng, doc.model);
        one.resize(1);
        doc.events = std::move(one);
        seq = {doc.events.front().id};
    }

    // Occurrence times increase strictly: each repeat iteration advances one
    // unit, each entry starts past the previous entry's last occurrence.
    TimePoint cursor = rand_time();
    std::set<std::string> scheduled;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        bool last = i + 1 == seq.size();
        if (rand_int(rng, 0, 4) == 0 && !(last && doc.chronology.entries.empty())) {
            continue;  // declared but never occurs
        }
        ChronologyEntry entry;
        entry.ids.push_back(seq[i]);
        entry.count = rand_int(rng, 0, 2) == 0 ? rand_int(rng, 2, 3) : 1;
        for (EventDecl& e : doc.events)
            if (e.id == seq[i]) e.time = cursor;
        scheduled.insert(seq[i]);
        cursor = cursor.advanced(entry.count - 1 + rand_int(rng, 1, 3));
        doc.chronology.entries.push_back(entry);
    }
    for (EventDecl& e : doc.events)
        if (!scheduled.count(e.id)) e.time = rand_time();
    return doc;
}

std::string gen_noise(Rng& rng, int max_len) {
    static const char* words[] = {"model",   "thimac",     "flow",     "trigger", "event",
                                  "chronology", "repeat",  "include",  "set",     "at",
                                  "for",     "terminates", "attribute", "create",  "process",
                                  "release", "transfer",   "receive"};
    static const char alphabet[] = "abgzXYZ019 \t\n\"\\{}.,=->#_";
    int len = rand_int(rng, 0, max_len);
    std::string s;
    while (int(s.size()) < len) {
        int mode = rand_int(rng, 0, 9);
        if (mode == 0) {
            s += char(rand_int(rng, 1, 255));
        } else if (mode <= 2) {
            s += words[rand_int(rng, 0, 17)];
            s += ' ';
        } else {
            s += alphabet[std::size_t(rand_int(rng, 0, int(sizeof alphabet) - 2))];
        }
    }
    return s;
}

std::string fixture_path(const std::string& name) {
    return std::string(TMTK_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CmdResult run_cmd(const std::string& cmd) {
    CmdResult r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.output.append(buf, n);
    int st = pclose(p);
    if (WIFEXITED(st)) r.status = WEXITSTATUS(st);
    return r;
}

std::string tmtk_bin() {
    return TMTK_BIN;
}

}  // namespace support
