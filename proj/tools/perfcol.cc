// perfcol: command-line front end.
//
// Exit status: 0 success, 1 mismatch or failed expectation, 2 usage or
// input error, 3 budget exceeded.

#include <perfcol/constructions.hh>
#include <perfcol/enumerate.hh>
#include <perfcol/error.hh>
#include <perfcol/pipeline.hh>
#include <perfcol/polynomial.hh>
#include <perfcol/sieve.hh>
#include <perfcol/solver.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace perfcol;
using nlohmann::json;

namespace
{
    constexpr int exit_mismatch = 1;
    constexpr int exit_usage = 2;
    constexpr int exit_budget = 3;

    struct Settings
    {
        std::string format = "text";
        std::string graph;
        std::string matrix;
        std::string colouring;
        std::string db;
        std::string mode = "first";
        std::string expect;
        std::string permutation = "()";
        std::string output;
        std::string target = "all";
        int colours = 0;
        int degree = 0;
        int jobs = 1;
        std::uint64_t budget = default_node_budget;
        std::uint64_t enumeration_budget = 0;
        bool unfiltered = false;
    };

    auto json_output(const Settings & s) -> bool
    {
        return s.format == "json";
    }

    auto read_file(const std::string & path) -> std::string
    {
        std::ifstream in(path);
        if (! in)
            throw FormatError("cannot read " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    auto write_file(const std::string & path, const std::string & text) -> void
    {
        std::ofstream out(path);
        if (! (out << text))
            throw FormatError("cannot write " + path);
    }

    auto record_line(const CandidateRecord & r) -> std::string
    {
        std::string status = to_string(r.status);
        status.resize(12, ' ');
        return to_string(r.matrix) + "  " + status + describe(r);
    }

    auto run_gen_graph(const Settings & s) -> int
    {
        auto g = parse_graph_argument(s.graph);
        auto list = edges(g);
        if (json_output(s)) {
            json e = json::array();
            for (auto [u, v] : list)
                e.push_back({ u, v });
            json out{ { "id", g.id() }, { "vertices", g.size() }, { "edges", e } };
            out["degree"] = regularity(g) ? json(*regularity(g)) : json();
            std::cout << out.dump(2) << '\n';
        }
        else {
            std::cout << "# " << g.id() << ": " << g.size() << " vertices, " << list.size() << " edges\n";
            for (auto [u, v] : list)
                std::cout << u << ' ' << v << '\n';
        }
        return 0;
    }

    auto run_candidates(const Settings & s) -> int
    {
        std::vector<ColourMatrix> list;
        std::string source;
        int degree = s.degree;
        if (! s.graph.empty()) {
            auto g = parse_graph_argument(s.graph);
            degree = regularity(g).value_or(0);
            if (degree == 0)
                throw PreconditionError("graph " + g.id() + " is not regular with positive degree");
            if (s.unfiltered)
                list = enumerate_candidates(degree, s.colours, { s.enumeration_budget, s.jobs });
            else
                list = spectral_candidates(g, s.colours, { .enumeration_budget = s.enumeration_budget, .jobs = s.jobs });
            source = g.id();
        }
        else {
            if (degree < 1)
                throw ParameterError("give --graph or a positive --degree");
            list = enumerate_candidates(degree, s.colours, { s.enumeration_budget, s.jobs });
            source = "degree " + std::to_string(degree);
        }

        if (json_output(s)) {
            json matrices = json::array();
            for (auto & a : list)
                matrices.push_back(to_json(a));
            json out{ { "degree", degree }, { "colours", s.colours }, { "count", list.size() }, { "candidates", matrices } };
            if (! s.graph.empty())
                out["graph"] = source;
            out["spectral_filter"] = ! s.graph.empty() && ! s.unfiltered;
            std::cout << out.dump(2) << '\n';
        }
        else {
            std::cout << "# " << list.size() << " candidates, " << source << ", " << s.colours << " colours\n";
            for (auto & a : list)
                std::cout << to_string(a) << '\n';
        }
        return 0;
    }

    auto run_sieve(const Settings & s) -> int
    {
        auto g = parse_graph_argument(s.graph);
        auto store = s.db.empty() ? ResultsStore{} : load_store(s.db);
        auto excluded = store.excluded(g.id());
        auto result = sieve_pass(spectral_candidates(g, s.colours, { .enumeration_budget = s.enumeration_budget, .jobs = s.jobs }),
            g, excluded);

        if (json_output(s)) {
            json ex = json::array(), survivors = json::array();
            for (auto & r : result.excluded)
                ex.push_back(to_json(r));
            for (auto & a : result.survivors)
                survivors.push_back(to_json(a));
            std::cout << json{ { "graph", g.id() }, { "colours", s.colours }, { "excluded", ex }, { "survivors", survivors } }.dump(2)
                      << '\n';
        }
        else {
            std::cout << "# " << g.id() << ", " << s.colours << " colours: " << result.excluded.size() << " excluded, "
                      << result.survivors.size() << " survive\n";
            for (auto & r : result.excluded)
                std::cout << record_line(r) << '\n';
            for (auto & a : result.survivors)
                std::cout << to_string(a) << "  survives\n";
        }
        return 0;
    }

    auto run_solve_matrix(const Settings & s, const Graph & g) -> int
    {
        auto a = parse_matrix(s.matrix);
        SolveOptions options;
        options.mode = parse_search_mode(s.mode);
        options.node_budget = s.budget;
        auto outcome = solve(g, a, options);

        if (json_output(s)) {
            json witnesses = json::array();
            for (auto & w : outcome.witnesses)
                witnesses.push_back(to_json(w));
            json out{
                { "graph", g.id() },
                { "matrix", to_json(a) },
                { "mode", s.mode },
                { "verdict", to_string(outcome.verdict) },
                { "solutions", outcome.solutions },
                { "nodes", outcome.stats.nodes },
                { "max_depth", outcome.stats.max_depth },
                { "seconds", outcome.stats.seconds },
                { "witnesses", witnesses },
            };
            if (outcome.class_size_failure)
                out["reason"] = *outcome.class_size_failure;
            std::cout << out.dump(2) << '\n';
        }
        else {
            std::cout << "verdict " << to_string(outcome.verdict) << '\n';
            if (outcome.class_size_failure)
                std::cout << "reason " << *outcome.class_size_failure << '\n';
            if (options.mode != SearchMode::first)
                std::cout << "solutions " << outcome.solutions << '\n';
            std::cout << "nodes " << outcome.stats.nodes << ", max depth " << outcome.stats.max_depth << ", "
                      << outcome.stats.seconds << " s\n";
            for (auto & w : outcome.witnesses)
                std::cout << "witness " << to_json(w).dump() << '\n';
        }
        if (! s.output.empty() && ! outcome.witnesses.empty())
            write_file(s.output, to_json(outcome.witnesses.front()).dump() + "\n");

        if (outcome.verdict == Verdict::budget_exceeded)
            return exit_budget;
        if (! s.expect.empty()) {
            bool want_sat = s.expect == "sat";
            if (want_sat != (outcome.verdict == Verdict::sat))
                return exit_mismatch;
        }
        return 0;
    }

    auto run_solve(const Settings & s) -> int
    {
        auto g = parse_graph_argument(s.graph);
        if (! s.matrix.empty())
            return run_solve_matrix(s, g);
        if (s.colours < 1)
            throw ParameterError("solve needs --matrix or --colours");

        auto store = s.db.empty() ? ResultsStore{} : load_store(s.db);
        AnalysisOptions options{ s.budget, s.enumeration_budget, s.jobs };
        auto records = analyse(g, s.colours, store, options);
        if (! s.db.empty())
            save_store(store, s.db);

        int realizable = 0, unknown = 0;
        for (auto & r : records) {
            realizable += r.status == Status::realizable;
            unknown += r.status == Status::unknown;
        }
        if (json_output(s)) {
            json list = json::array();
            for (auto & r : records)
                list.push_back(to_json(r, true));
            std::cout << json{ { "graph", g.id() }, { "colours", s.colours }, { "candidates", records.size() },
                { "realizable", realizable }, { "unknown", unknown }, { "records", list } }.dump(2) << '\n';
        }
        else {
            std::cout << "# " << g.id() << ", " << s.colours << " colours: " << realizable << " realizable of "
                      << records.size() << " candidates";
            if (unknown)
                std::cout << ", " << unknown << " undecided";
            std::cout << '\n';
            for (auto & r : records)
                std::cout << record_line(r) << '\n';
        }
        return unknown ? exit_budget : 0;
    }

    auto run_verify(const Settings & s) -> int
    {
        auto g = parse_graph_argument(s.graph);
        auto c = parse_colouring(read_file(s.colouring));
        auto result = verify(g, c);
        std::optional<ColourMatrix> expected;
        if (! s.matrix.empty())
            expected = parse_matrix(s.matrix);
        bool ok = result && (! expected || *expected == *result.matrix);

        if (json_output(s)) {
            json out{ { "graph", g.id() }, { "perfect", bool(result) } };
            if (result)
                out["matrix"] = to_json(*result.matrix);
            else
                out["reason"] = result.explanation();
            if (expected)
                out["matches_expected"] = ok;
            std::cout << out.dump(2) << '\n';
        }
        else if (result) {
            std::cout << "perfect, matrix " << to_string(*result.matrix) << '\n';
            if (expected && ! ok)
                std::cout << "expected " << to_string(*expected) << '\n';
        }
        else
            std::cout << "not perfect: " << result.explanation() << '\n';
        return ok ? 0 : exit_mismatch;
    }

    auto run_lift(const Settings & s) -> int
    {
        auto c = parse_colouring(read_file(s.colouring));
        auto pi = parse_permutation(s.permutation, c.colours());
        auto lifted = lift(c, pi);
        auto d = std::countr_zero(unsigned(c.size()));
        auto before = *verify(hypercube(d), c).matrix;
        auto after = verify(hypercube(d + 1), lifted);
        if (! after)
            throw std::logic_error("lifted colouring does not verify: " + after.explanation());

        if (! s.output.empty())
            write_file(s.output, to_json(lifted).dump() + "\n");
        if (json_output(s))
            std::cout << json{ { "graph", lifted.graph_id() }, { "permutation", to_string(pi) }, { "from", to_json(before) },
                { "matrix", to_json(*after.matrix) }, { "colouring", to_json(lifted) } }.dump(2) << '\n';
        else {
            std::cout << to_string(before) << " on " << hypercube(d).id() << " lifts by " << to_string(pi) << " to "
                      << to_string(*after.matrix) << " on " << lifted.graph_id() << '\n';
            std::cout << to_json(lifted).dump() << '\n';
        }
        return 0;
    }

    auto run_reproduce(const Settings & s) -> int
    {
        auto store = s.db.empty() ? ResultsStore{} : load_store(s.db);
        auto report = reproduce(parse_target(s.target), store, { s.budget, s.enumeration_budget, s.jobs });
        if (! s.db.empty())
            save_store(store, s.db);
        if (json_output(s))
            std::cout << report.json.dump(2) << '\n';
        else
            for (auto & line : report.lines)
                std::cout << line << '\n';
        if (report.mismatch)
            return exit_mismatch;
        return report.incomplete ? exit_budget : 0;
    }

    auto run_status(const Settings & s) -> int
    {
        auto store = load_store(s.db);
        json graphs = json::array();
        for (auto & [id, entry] : store.graphs()) {
            json counts = json::array();
            for (auto & [m, records] : entry.records) {
                int tally[3] = {};
                for (auto & r : records)
                    ++tally[int(r.status)];
                counts.push_back({ { "colours", m }, { "candidates", records.size() }, { "realizable", tally[0] },
                    { "excluded", tally[1] }, { "unknown", tally[2] } });
                if (! json_output(s))
                    std::cout << display_name(id) << ", " << m << " colours: " << tally[0] << " realizable, " << tally[1]
                              << " excluded, " << tally[2] << " undecided of " << records.size() << '\n';
            }
            graphs.push_back({ { "graph", id }, { "colour_counts", counts } });
        }
        if (json_output(s))
            std::cout << json{ { "generated_at", store.generated_at }, { "graphs", graphs } }.dump(2) << '\n';
        else if (store.graphs().empty())
            std::cout << "store is empty\n";
        return 0;
    }
}

int main(int argc, char ** argv)
{
    Settings s;
    CLI::App app{ "Perfect colourings of regular graphs: candidates, sieves, search and reproduction." };
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({ "text", "json" }));

    auto graph_option = [&](CLI::App * sub, bool required) {
        auto o = sub->add_option("--graph", s.graph, "hypercube:<d>, complete:<n> or an edge-list file");
        if (required)
            o->required();
    };
    auto jobs_option = [&](CLI::App * sub) {
        sub->add_option("--jobs", s.jobs, "Worker threads")->check(CLI::Range(1, 256));
    };
    auto budget_options = [&](CLI::App * sub) {
        sub->add_option("--budget", s.budget, "Search node budget per matrix");
        sub->add_option("--enumeration-budget", s.enumeration_budget, "Enumeration node budget (0 = none)");
    };

    auto gen = app.add_subcommand("gen-graph", "Print a graph as an edge list");
    graph_option(gen, true);

    auto cand = app.add_subcommand("candidates", "List candidate colour adjacency matrices");
    graph_option(cand, false);
    cand->add_option("--degree", s.degree, "Degree, when no graph is given");
    cand->add_option("--colours", s.colours, "Number of colours")->required()->check(CLI::Range(1, max_colours));
    cand->add_flag("--unfiltered", s.unfiltered, "Skip the spectral filter");
    jobs_option(cand);
    cand->add_option("--enumeration-budget", s.enumeration_budget, "Enumeration node budget (0 = none)");

    auto sieve = app.add_subcommand("sieve", "Apply class-size and merge exclusions to the candidates");
    graph_option(sieve, true);
    sieve->add_option("--colours", s.colours, "Number of colours")->required()->check(CLI::Range(1, max_colours));
    sieve->add_option("--db", s.db, "Results store supplying excluded matrices");
    jobs_option(sieve);

    auto solve_cmd = app.add_subcommand("solve", "Search for a perfect colouring, or decide every candidate");
    graph_option(solve_cmd, true);
    solve_cmd->add_option("--matrix", s.matrix, "Colour adjacency matrix, e.g. \"0,4;2,2\"");
    solve_cmd->add_option("--colours", s.colours, "Decide all candidates with this many colours")->check(CLI::Range(1, max_colours));
    solve_cmd->add_option("--mode", s.mode, "Search mode")->check(CLI::IsMember({ "first", "count", "all" }));
    solve_cmd->add_option("--expect", s.expect, "Exit 1 unless the verdict is this")->check(CLI::IsMember({ "sat", "unsat" }));
    solve_cmd->add_option("--output", s.output, "Write the first witness here");
    solve_cmd->add_option("--db", s.db, "Results store to read and update");
    budget_options(solve_cmd);
    jobs_option(solve_cmd);

    auto verify_cmd = app.add_subcommand("verify", "Check that a colouring is perfect");
    graph_option(verify_cmd, true);
    verify_cmd->add_option("--colouring", s.colouring, "Colouring file (JSON array or 'vertex colour' lines)")->required();
    verify_cmd->add_option("--matrix", s.matrix, "Exit 1 unless the colouring has this matrix");

    auto lift_cmd = app.add_subcommand("lift", "Double a hypercube colouring along a new coordinate");
    lift_cmd->add_option("--colouring", s.colouring, "Colouring of a hypercube")->required();
    lift_cmd->add_option("--perm", s.permutation, "Colour involution in cycle notation, e.g. \"(1 2)\"");
    lift_cmd->add_option("--output", s.output, "Write the lifted colouring here");

    auto repro = app.add_subcommand("reproduce", "Recompute the published tables and lists and compare");
    repro->add_option("target", s.target, "table1, table2, lists, appendix or all")
        ->check(CLI::IsMember({ "table1", "table2", "lists", "appendix", "all" }));
    repro->add_option("--db", s.db, "Results store used as a cache and updated");
    budget_options(repro);
    jobs_option(repro);

    auto status = app.add_subcommand("status", "Summarise a results store");
    status->add_option("--db", s.db, "Results store")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (*gen)
            return run_gen_graph(s);
        if (*cand)
            return run_candidates(s);
        if (*sieve)
            return run_sieve(s);
        if (*solve_cmd)
            return run_solve(s);
        if (*verify_cmd)
            return run_verify(s);
        if (*lift_cmd)
            return run_lift(s);
        if (*repro)
            return run_reproduce(s);
        if (*status)
            return run_status(s);
    }
    catch (const IncompleteError & e) {
        std::cerr << "perfcol: " << e.what() << '\n';
        return exit_budget;
    }
    catch (const std::invalid_argument & e) {
        std::cerr << "perfcol: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const FormatError & e) {
        std::cerr << "perfcol: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const StoreError & e) {
        std::cerr << "perfcol: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
