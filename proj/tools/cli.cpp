#include "cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "confsel/adjustment.hpp"
#include "confsel/errors.hpp"
#include "confsel/expansion.hpp"
#include "confsel/service.hpp"
#include "confsel/session.hpp"

namespace confsel::cli {

namespace {

// A failure that maps to a specific exit code.
struct Exit {
    int code;
    std::string message;
};

struct GraphArgs {
    std::string path;
    std::string x, y;
};

void add_graph_args(CLI::App* cmd, GraphArgs& a) {
    cmd->add_option("GRAPH", a.path, "Graph file")->required();
    cmd->add_option("--x", a.x, "Treatment vertex")->required();
    cmd->add_option("--y", a.y, "Outcome vertex")->required();
}

VertexId vertex_arg(const std::string& name, const char* flag) {
    try {
        return VertexId(name);
    } catch (const InvalidName& e) {
        throw Exit{exit_usage, std::string(flag) + ": " + e.what()};
    }
}

struct Loaded {
    Admg g;
    VertexId x, y;
};

Loaded load(const GraphArgs& a) {
    Admg g = read_graph_file(a.path);
    VertexId x = vertex_arg(a.x, "--x"), y = vertex_arg(a.y, "--y");
    for (const auto& v : {x, y})
        if (!g.contains(v)) throw Exit{exit_usage, "vertex '" + v.name() + "' is not in " + a.path};
    if (x == y) throw Exit{exit_usage, "--x and --y must differ"};
    return {std::move(g), x, y};
}

void print_family(std::ostream& out, const VertexSetFamily& f) {
    for (const auto& s : f) out << to_string(s) << "\n";
}

void print_results(std::ostream& out, std::ostream& err, const ExpansionResult& r, bool minimal_only) {
    const VertexSetFamily minimal = r.sufficient_sets.minimal_members();
    if (minimal_only) {
        print_family(out, minimal);
    } else {
        out << "# sufficient sets (discovery order)\n";
        for (const auto& s : r.discovery_order) out << to_string(s) << "\n";
        out << "# minimal sufficient sets\n";
        print_family(out, minimal);
        out << "# " << r.states_pushed << " states pushed, " << r.states_popped << " popped, " << r.queries
            << " questions\n";
    }
    if (r.exhausted) return;
    const auto* fin = r.trace.empty() ? nullptr : std::get_if<FinishedEvent>(&r.trace.back());
    if (fin && fin->status == FinishStatus::CapsHit)
        err << "warning: stopped at a configured cap; the sets above may be incomplete\n";
    else
        err << "warning: the session ended before the search finished; the sets above are partial\n";
}

struct ExpandArgs {
    std::string strategy = "min-cut";
    std::size_t max_states = ExpansionConfig{}.max_states;
    std::size_t max_vertices = ExpansionConfig{}.max_vertices;
    bool keep_redundant = false;
};

void add_expand_args(CLI::App* cmd, ExpandArgs& a) {
    cmd->add_option("--strategy", a.strategy, "Edge selection: min-cut or first")
        ->check(CLI::IsMember({"min-cut", "first"}));
    cmd->add_option("--max-states", a.max_states, "Cap on working states")->check(CLI::PositiveNumber);
    cmd->add_option("--max-vertices", a.max_vertices, "Cap on distinct vertices")->check(CLI::Range(2, 100000));
    cmd->add_flag("--keep-redundant", a.keep_redundant,
                  "Do not trim redundant vertices from primary adjustment sets");
}

ExpansionConfig config_of(const ExpandArgs& a) {
    ExpansionConfig c;
    c.strategy = parse_edge_strategy(a.strategy);
    c.max_states = a.max_states;
    c.max_vertices = a.max_vertices;
    c.minimal_only = !a.keep_redundant;
    return c;
}

int cmd_check(const GraphArgs& ga, const std::vector<std::string>& adjust, std::ostream& out) {
    Loaded l = load(ga);
    VertexSet s;
    for (const auto& name : adjust) {
        if (name.empty()) continue;
        VertexId v = vertex_arg(name, "--adjust");
        if (!l.g.contains(v)) throw Exit{exit_usage, "vertex '" + name + "' is not in " + ga.path};
        if (v == l.x || v == l.y) throw Exit{exit_usage, "--adjust must not contain --x or --y"};
        s.insert(v);
    }
    const bool adjustment = is_adjustment_set(l.g, l.x, l.y, s);
    const bool sufficient = is_sufficient(l.g, l.x, l.y, s);
    const bool backdoor = pearl_backdoor(l.g, l.x, l.y, s);
    out << "set: " << to_string(s) << "\n";
    out << "adjustment set: " << (adjustment ? "yes" : "no") << "\n";
    out << "back-door criterion: " << (backdoor ? "satisfied" : "not satisfied") << "\n";
    out << (sufficient ? "sufficient" : "not sufficient") << "\n";
    return sufficient ? exit_ok : exit_negative;
}

int cmd_enumerate(const GraphArgs& ga, bool all, std::size_t cap, std::ostream& out) {
    Loaded l = load(ga);
    EnumerationOptions opts;
    opts.cap = cap;
    VertexSetFamily f = all ? enumerate_all_sufficient(l.g, l.x, l.y, opts)
                            : enumerate_minimal_sufficient(l.g, l.x, l.y, opts);
    if (f.empty()) out << "# no sufficient adjustment set\n";
    print_family(out, f);
    return exit_ok;
}

int cmd_expand(const GraphArgs& ga, const ExpandArgs& ea, bool minimal_only, bool recursive,
               const std::string& trace, std::ostream& out, std::ostream& err) {
    Loaded l = load(ga);
    const ExpansionConfig config = config_of(ea);
    GraphOracle oracle(l.g, l.x, l.y);
    ExpansionResult r = recursive ? confounder_select_recursive(oracle, l.x, l.y, config)
                                  : confounder_select(oracle, l.x, l.y, config);
    if (!trace.empty()) write_transcript_file(trace, make_transcript(l.x, l.y, config, r.trace));
    print_results(out, err, r, minimal_only);
    return exit_ok;
}

int cmd_session(const std::string& xs, const std::string& ys, const ExpandArgs& ea,
                const std::string& transcript, std::istream& in, std::ostream& out, std::ostream& err) {
    if (xs.empty() || ys.empty()) throw Exit{exit_usage, "session: --x and --y are required without --serve"};
    VertexId x = vertex_arg(xs, "--x"), y = vertex_arg(ys, "--y");
    if (x == y) throw Exit{exit_usage, "--x and --y must differ"};
    LiveSession s(x, y, config_of(ea));
    while (const auto& p = s.pending()) {
        out << "[" << p->id << "] " << describe_question(p->query) << "\n> " << std::flush;
        std::string line;
        if (!std::getline(in, line)) {
            s.abort();
            out << "\n# session aborted; " << s.events().size() << " events recorded\n";
            break;
        }
        try {
            s.answer(p->id, parse_answer_text(p->query, line));
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
        }
    }
    if (!transcript.empty()) write_transcript_file(transcript, s.transcript());
    if (s.status() == SessionStatus::Finished) {
        // summarise from the recorded events
        ReplayReport rep = replay_transcript(s.transcript());
        print_results(out, err, rep.result, false);
    }
    return exit_ok;
}

int cmd_serve(const std::string& addr, std::ostream& out) {
    const auto colon = addr.rfind(':');
    if (colon == std::string::npos) throw Exit{exit_usage, "--serve expects HOST:PORT"};
    int port = 0;
    try {
        port = std::stoi(addr.substr(colon + 1));
    } catch (const std::exception&) {
        throw Exit{exit_usage, "--serve: invalid port in '" + addr + "'"};
    }
    SessionService svc;
    out << "# serving sessions on " << addr << "\n" << std::flush;
    svc.serve(addr.substr(0, colon), port);
    return exit_ok;
}

int cmd_replay(const std::string& path, std::ostream& out, std::ostream& err) {
    SessionTranscript t = read_transcript_file(path);
    ReplayReport rep;
    try {
        rep = replay_transcript(t);
    } catch (const ReplayDivergence& e) {
        throw Exit{exit_divergence, path + ": " + e.what()};
    }
    if (rep.unused_answers > 0)
        err << "warning: " << rep.unused_answers << " recorded answer(s) were never asked for\n";
    if (!rep.identical)
        throw Exit{exit_divergence, path + ": replay diverged at event " + std::to_string(*rep.first_difference)};
    print_results(out, err, rep.result, false);
    out << "# replay reproduced all " << t.events.size() << " events\n";
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Confounder selection by iterative graph expansion"};
    app.require_subcommand(1);

    GraphArgs check_g, enum_g, expand_g;
    std::vector<std::string> adjust;
    auto* check = app.add_subcommand("check", "Check a candidate adjustment set");
    add_graph_args(check, check_g);
    check->add_option("--adjust", adjust, "Comma-separated adjustment set (may be empty)")
        ->required()
        ->delimiter(',')
        ->expected(0, -1);

    bool all = false;
    std::size_t cap = default_enumeration_cap;
    auto* enumerate = app.add_subcommand("enumerate", "List sufficient adjustment sets by brute force");
    add_graph_args(enumerate, enum_g);
    enumerate->add_flag("--all", all, "List every sufficient set, not only the minimal ones");
    enumerate->add_option("--cap", cap, "Largest candidate pool to search")->check(CLI::PositiveNumber);

    ExpandArgs expand_a, session_a;
    bool minimal_only = false, recursive = false;
    std::string trace;
    auto* expand = app.add_subcommand("expand", "Run the expansion with the graph as oracle");
    add_graph_args(expand, expand_g);
    add_expand_args(expand, expand_a);
    expand->add_flag("--minimal-only", minimal_only, "Print only the minimal sufficient sets");
    auto* rec = expand->add_flag("--recursive", recursive, "Use the depth-first variant");
    expand->add_option("--trace", trace, "Write the run's transcript to this path")->excludes(rec);

    std::string sx, sy, serve, transcript;
    auto* session = app.add_subcommand("session", "Answer the questions interactively");
    session->add_option("--x", sx, "Treatment vertex");
    session->add_option("--y", sy, "Outcome vertex");
    add_expand_args(session, session_a);
    auto* serve_opt = session->add_option("--serve", serve, "Serve the HTTP interface on HOST:PORT");
    session->add_option("--transcript", transcript, "Write the session transcript to this path")
        ->excludes(serve_opt);

    std::string replay_path;
    auto* replay = app.add_subcommand("replay", "Re-run a transcript and verify it reproduces");
    replay->add_option("TRANSCRIPT", replay_path, "Transcript file")->required();

    std::vector<const char*> argv{"confsel"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*check) return cmd_check(check_g, adjust, out);
        if (*enumerate) return cmd_enumerate(enum_g, all, cap, out);
        if (*expand) return cmd_expand(expand_g, expand_a, minimal_only, recursive, trace, out, err);
        if (*session) {
            if (!serve.empty()) return cmd_serve(serve, out);
            return cmd_session(sx, sy, session_a, transcript, in, out, err);
        }
        if (*replay) return cmd_replay(replay_path, out, err);
    } catch (const Exit& e) {
        err << "error: " << e.message << "\n";
        return e.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_usage;
}

}  // namespace confsel::cli
