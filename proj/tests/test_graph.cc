#include <perfcol/error.hh>
#include <perfcol/graph.hh>

#include <doctest.h>

#include <bit>

using namespace perfcol;

TEST_CASE("hypercube sizes")
{
    for (int d = 1 ; d <= 10 ; ++d) {
        auto g = hypercube(d);
        CHECK(g.size() == 1 << d);
        CHECK(g.edge_count() == std::int64_t(d) << (d - 1));
        CHECK(regularity(g) == d);
        CHECK(is_connected(g));
    }
    CHECK(hypercube(1).adjacent(0, 1));
    CHECK(hypercube(4).id() == "hypercube:4");
}

TEST_CASE("hypercube adjacency is xor by a power of two")
{
    auto g = hypercube(5);
    for (int u = 0 ; u < g.size() ; ++u)
        for (int v = 0 ; v < g.size() ; ++v)
            CHECK(g.adjacent(u, v) == std::has_single_bit(unsigned(u ^ v)));
}

TEST_CASE("hypercube is bipartite by popcount parity")
{
    auto g = hypercube(5);
    int even = 0;
    for (int u = 0 ; u < g.size() ; ++u) {
        even += std::popcount(unsigned(u)) % 2 == 0;
        for (int v : g.neighbours(u))
            CHECK(std::popcount(unsigned(u)) % 2 != std::popcount(unsigned(v)) % 2);
    }
    CHECK(even == 16);
}

TEST_CASE("hypercube range")
{
    CHECK_THROWS_AS(hypercube(0), ParameterError);
    CHECK_THROWS_AS(hypercube(21), ParameterError);
}

TEST_CASE("complete graphs")
{
    CHECK(complete(2).edge_count() == 1);
    CHECK(complete(5).edge_count() == 10);
    CHECK(regularity(complete(5)) == 4);
    CHECK(complete(6).edge_count() == 15);
    CHECK(regularity(complete(6)) == 5);
    CHECK_THROWS_AS(complete(0), ParameterError);
}

TEST_CASE("edge lists")
{
    auto triangle = load_edge_list("0 1\n1 2\n2 0");
    CHECK(edges(triangle) == edges(complete(3)));

    auto cube = load_edge_list(
        "# 3-cube\n0 1\n0 2\n0 4\n1 3\n1 5\n2 3\n2 6\n3 7\n4 5\n4 6\n5 7\n6 7\n");
    CHECK(cube.size() == 8);
    CHECK(regularity(cube) == 3);
    CHECK(edges(cube) == edges(hypercube(3)));

    auto duplicated = load_edge_list("0 1\n1 0\n\n0 1 # again\n");
    CHECK(duplicated.edge_count() == 1);

    CHECK_THROWS_AS(load_edge_list("0 0"), FormatError);
    CHECK_THROWS_AS(load_edge_list("0 x"), FormatError);
    CHECK_THROWS_AS(load_edge_list("0 1.5"), FormatError);
    CHECK_THROWS_AS(load_edge_list(""), FormatError);
}

TEST_CASE("adjacency is symmetric")
{
    for (auto & g : { hypercube(4), complete(6), load_edge_list("0 3\n3 1\n1 2") })
        for (int u = 0 ; u < g.size() ; ++u)
            for (int v : g.neighbours(u))
                CHECK(g.adjacent(v, u));
}

TEST_CASE("regularity")
{
    CHECK(regularity(hypercube(4)) == 4);
    CHECK(regularity(complete(6)) == 5);
    CHECK_FALSE(regularity(load_edge_list("0 1\n1 2")).has_value());
}

TEST_CASE("graph arguments")
{
    CHECK(parse_graph_argument("hypercube:3").size() == 8);
    CHECK(parse_graph_argument("complete:5").id() == "complete:5");
    CHECK_THROWS(parse_graph_argument("hypercube:x"));
    CHECK_THROWS(parse_graph_argument("/nonexistent/graph.txt"));
}
