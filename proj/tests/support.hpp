#pragma once

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tmtk/dsl.hpp"
#include "tmtk/events.hpp"
#include "tmtk/model.hpp"
#include "tmtk/simulate.hpp"

// Oracles restate their rules from scratch (brute force where affordable) so
// the library implementation has something independent to disagree with.
namespace support {

// Flow adjacency as a literal table.
bool oracle_adjacency(tmtk::ActionKind from, tmtk::ActionKind to, bool same_thimac,
                      bool require_transfer_pairing = false);

// Every maximal transit path, found by enumerating all simple flow paths and
// filtering: [a0..an], n >= 2 arcs, a1 a Transfer of thimac T entered from
// outside, a1..a(n-1) within T's subtree, an a Transfer outside T.
std::vector<std::vector<tmtk::ActionRef>> oracle_transit_paths(const tmtk::StaticModel& m);

// Pairwise region order by fixpoint reachability.
struct OrderOracle {
    std::set<std::pair<std::string, std::string>> raw;      // a reaches b
    std::set<std::pair<std::string, std::string>> closure;  // raw minus in-cycle pairs
    std::set<std::set<std::string>> cycles;                 // mutual groups, size >= 2
};
OrderOracle oracle_order(const tmtk::StaticModel& m, const std::vector<tmtk::EventDecl>& events);

// "" when per-path slices are disjoint, non-empty, on one axis, and only the
// last slice of a path may be open.
std::string check_disjoint(const tmtk::ExistenceLedger& ledger);

// "" when no probed instant is covered by two slices of one path.
std::string check_snapshot_unique(const tmtk::ExistenceLedger& ledger);

// "" when the text is one digraph with balanced braces and quotes and every
// statement line ends in a semicolon.
std::string check_dot(const std::string& text);

// Deterministic generators.
using Rng = std::mt19937_64;

int rand_int(Rng& rng, int lo, int hi);  // inclusive bounds

// Arbitrary small flow graph (arcs of any shape) for transit-path testing.
tmtk::StaticModel gen_flow_graph(Rng& rng, int max_actions);

// Validator-clean model: flows drawn from the allowed adjacency, triggers
// aimed at creates of other thimacs, a few attribute leaves.
tmtk::StaticModel gen_valid_model(Rng& rng);

// Raw event batch over a model: connected regions, bindings on attribute
// creates, occasional terminates. Times are placeholders; regions may even
// order cyclically. For order-derivation tests.
std::vector<tmtk::EventDecl> gen_events(Rng& rng, const tmtk::StaticModel& model);

// Document over a valid model whose chronology satisfies the simulator's
// precondition: no cyclic order among declared events, entries follow the
// derived order, and occurrence times increase strictly. Round-trips through
// the DSL and replays without diagnostics.
tmtk::ModelDocument gen_document(Rng& rng);

// Hostile parser input: raw bytes mixed with DSL keywords and punctuation.
std::string gen_noise(Rng& rng, int max_len);

std::string fixture_path(const std::string& name);
std::string read_file(const std::string& path);

struct CmdResult {
    int status = -1;
    std::string output;
};

// Runs a shell command and captures stdout (append 2>&1 to merge stderr).
CmdResult run_cmd(const std::string& cmd);

std::string tmtk_bin();

}  // namespace support
