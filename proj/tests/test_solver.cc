#include <perfcol/colouring.hh>
#include <perfcol/enumerate.hh>
#include <perfcol/error.hh>
#include <perfcol/polynomial.hh>
#include <perfcol/solver.hh>

#include "oracle.hh"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace perfcol;

namespace
{
    auto read_data(const std::string & name) -> std::string
    {
        std::ifstream in(std::string(PERFCOL_TEST_DATA) + "/" + name);
        REQUIRE(in);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    auto candidates(const Graph & g, int m) -> std::vector<ColourMatrix>
    {
        auto all = enumerate_candidates(*regularity(g), m);
        return spectral_filter(all, g);
    }

    auto realizable(const std::vector<CandidateRecord> & records) -> std::set<ColourMatrix>
    {
        std::set<ColourMatrix> out;
        for (auto & r : records)
            if (r.status == Status::realizable)
                out.insert(r.matrix);
        return out;
    }
}

TEST_CASE("verify the three-colouring of the 3-cube")
{
    auto expected = parse_matrix("0,1,2;1,0,2;1,1,1");
    for (auto name : { "cube3_three_colours.json", "cube3_three_colours.txt" }) {
        auto c = parse_colouring(read_data(name));
        CHECK(c.colours() == 3);
        auto result = verify(hypercube(3), c);
        REQUIRE(result);
        CHECK(*result.matrix == expected);
    }
}

TEST_CASE("verify rejects")
{
    auto one = verify(hypercube(4), Colouring(1, std::vector<int>(16, 0)));
    REQUIRE(one);
    CHECK(*one.matrix == ColourMatrix{ { 4 } });

    std::vector<int> single(8, 0);
    single[0] = 1;
    auto bad = verify(hypercube(3), Colouring(2, single));
    CHECK_FALSE(bad);
    REQUIRE(bad.conflict);
    CHECK_FALSE(bad.explanation().empty());

    auto unused = verify(hypercube(3), Colouring(3, std::vector<int>(8, 0)));
    CHECK_FALSE(unused);
    CHECK(unused.unused_colour);

    CHECK_THROWS_AS(verify(hypercube(3), Colouring(1, std::vector<int>(4, 0))), ParameterError);
    CHECK_THROWS_AS(Colouring(2, { 0, 2 }), ParameterError);
    CHECK_THROWS_AS(parse_colouring("[1, 0]"), FormatError);
}

TEST_CASE("colouring json round trip")
{
    Colouring c(3, { 0, 1, 2, 2, 2, 2, 1, 0 });
    CHECK(to_json(c).dump() == "[1,2,3,3,3,3,2,1]");
    CHECK(colouring_from_json(to_json(c)).assignment() == c.assignment());
}

TEST_CASE("published solve examples")
{
    auto r = solve(hypercube(4), parse_matrix("0,4;2,2"));
    CHECK(r.verdict == Verdict::unsat);
    REQUIRE(r.class_size_failure);

    SolveOptions raw;
    raw.use_class_sizes = false;
    CHECK(solve(hypercube(4), parse_matrix("0,4;2,2"), raw).verdict == Verdict::unsat);

    for (auto [g, text] : { std::pair{ hypercube(3), "0,1,2;1,0,2;1,1,1" }, std::pair{ hypercube(5), "0,5,0;1,0,4;0,2,3" },
             std::pair{ complete(5), "0,4;1,3" } }) {
        auto a = parse_matrix(text);
        auto out = solve(g, a);
        CAPTURE(text);
        REQUIRE(out.verdict == Verdict::sat);
        REQUIRE(out.witnesses.size() == 1);
        CHECK(*verify(g, out.witnesses[0]).matrix == a);
    }
}

TEST_CASE("the second 5-cube two-colour case needs search")
{
    auto out = solve(hypercube(5), parse_matrix("0,5;3,2"));
    CHECK(out.verdict == Verdict::unsat);
    CHECK_FALSE(out.class_size_failure);
    CHECK(out.stats.nodes > 0);
}

TEST_CASE("class sizes show up in a three-colour 5-cube witness")
{
    auto out = solve(hypercube(5), parse_matrix("0,5,0;1,0,4;0,2,3"));
    REQUIRE(out.verdict == Verdict::sat);
    CHECK(out.witnesses[0].class_sizes() == std::vector<int>{ 2, 10, 20 });
}

TEST_CASE("preconditions")
{
    CHECK_THROWS_AS(solve(hypercube(4), parse_matrix("0,5;1,4")), PreconditionError);
    CHECK_THROWS_AS(solve(hypercube(4), parse_matrix("0,4;0,4")), PreconditionError);
    CHECK_THROWS_AS(parse_search_mode("most"), ParameterError);
}

TEST_CASE("budget is never reported as UNSAT")
{
    SolveOptions tight;
    tight.node_budget = 3;
    tight.use_class_sizes = false;
    auto out = solve(hypercube(5), parse_matrix("0,5;3,2"), tight);
    CHECK(out.verdict == Verdict::budget_exceeded);
    CHECK(out.stats.nodes <= 3);

    auto records = decide_all(hypercube(5), { parse_matrix("0,5;3,2") }, { .node_budget = 3 });
    REQUIRE(records.size() == 1);
    CHECK(records[0].status == Status::unknown);
    CHECK(certificate_kind(records[0].certificate) == "budget-exceeded");
}

TEST_CASE("counting")
{
    // Two-colourings of the 3-cube by bipartition: two labelled solutions.
    SolveOptions count;
    count.mode = SearchMode::count;
    auto out = solve(hypercube(3), parse_matrix("0,3;3,0"), count);
    CHECK(out.verdict == Verdict::sat);
    CHECK(out.solutions == 2);

    // K_5 with classes {1,4}: five labelled colourings.
    out = solve(complete(5), parse_matrix("0,4;1,3"), count);
    CHECK(out.solutions == 5);

    // Labelled count against brute force on the 3-cube.
    for (int m : { 2, 3 })
        for (auto & a : candidates(hypercube(3), m)) {
            std::uint64_t brute = 0;
            std::vector<int> colour(8, 0);
            while (true) {
                if (auto q = oracle::quotient(hypercube(3), colour, m); q && *q == a)
                    ++brute;
                int v = 0;
                while (v < 8 && ++colour[v] == m)
                    colour[v++] = 0;
                if (v == 8)
                    break;
            }
            CAPTURE(to_string(a));
            CHECK(solve(hypercube(3), a, count).solutions == brute);

            SolveOptions all = count;
            all.mode = SearchMode::all;
            auto listed = solve(hypercube(3), a, all);
            CHECK(listed.witnesses.size() == brute);
            for (auto & w : listed.witnesses)
                CHECK(*verify(hypercube(3), w).matrix == a);
        }
}

TEST_CASE("oracle equivalence")
{
    auto check = [](const Graph & g, int m) {
        CAPTURE(g.id());
        CAPTURE(m);
        auto records = decide_all(g, candidates(g, m));
        for (auto & r : records)
            CHECK(r.status != Status::unknown);
        CHECK(realizable(records) == oracle::realizable(g, m));
    };
    for (int m = 1 ; m <= 4 ; ++m)
        check(hypercube(3), m);
    for (int m = 1 ; m <= 5 ; ++m)
        check(complete(5), m);
    check(hypercube(4), 2);
}

TEST_CASE("sieve exclusions agree with plain search")
{
    for (auto [g, top] : { std::pair{ hypercube(4), 3 }, std::pair{ hypercube(5), 3 } }) {
        std::vector<ColourMatrix> all;
        for (int m = 2 ; m <= top ; ++m)
            for (auto & a : candidates(g, m))
                all.push_back(a);
        for (auto & r : decide_all(g, all)) {
            auto kind = certificate_kind(r.certificate);
            if (kind != "class-size" && kind != "parity" && kind != "merge")
                continue;
            SolveOptions raw;
            raw.use_class_sizes = false;
            CAPTURE(to_string(r.matrix));
            CHECK(solve(g, r.matrix, raw).verdict == Verdict::unsat);
        }
    }
}

TEST_CASE("published realizable counts")
{
    CHECK(realizable(decide_all(hypercube(4), candidates(hypercube(4), 2))).size() == 5);
    CHECK(realizable(decide_all(hypercube(5), candidates(hypercube(5), 3))).size() == 8);
    CHECK(realizable(decide_all(complete(6), candidates(complete(6), 6))).size() == 1);
}

TEST_CASE("deterministic single-threaded and independent of jobs")
{
    auto g = hypercube(5);
    std::vector<ColourMatrix> all;
    for (int m = 2 ; m <= 3 ; ++m)
        for (auto & a : candidates(g, m))
            all.push_back(a);
    auto one = decide_all(g, all);
    auto again = decide_all(g, all);
    auto many = decide_all(g, all, { .jobs = 4 });
    REQUIRE(one.size() == again.size());
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0 ; i < one.size() ; ++i) {
        CHECK(to_json(one[i]) == to_json(again[i]));
        CHECK(one[i].nodes == again[i].nodes);
        CHECK(to_json(one[i]) == to_json(many[i]));
    }
}
