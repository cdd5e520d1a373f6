#include <perfcol/enumerate.hh>
#include <perfcol/error.hh>
#include <perfcol/graph.hh>
#include <perfcol/polynomial.hh>

#include "oracle.hh"

#include <doctest.h>

#include <set>

using namespace perfcol;

namespace
{
    auto as_set(const std::vector<ColourMatrix> & v) -> std::set<ColourMatrix>
    {
        return { v.begin(), v.end() };
    }
}

TEST_CASE("single colour")
{
    for (int k = 1 ; k <= 6 ; ++k)
        CHECK(enumerate_candidates(k, 1) == std::vector<ColourMatrix>{ ColourMatrix{ { k } } });
}

TEST_CASE("matches exhaustive enumeration")
{
    // Totals for 4- and 5-regular graphs agree with the published lists:
    // 10, 64, 485 and 15, 153, 2042.
    struct Case { int k, m; std::size_t total; };
    for (auto [k, m, total] : { Case{ 3, 2, 0 }, Case{ 3, 3, 0 }, Case{ 3, 4, 0 }, Case{ 4, 2, 10 }, Case{ 4, 3, 64 },
             Case{ 4, 4, 485 }, Case{ 5, 2, 15 }, Case{ 5, 3, 153 }, Case{ 5, 4, 2042 } }) {
        CAPTURE(k);
        CAPTURE(m);
        auto expected = oracle::candidates(k, m);
        auto got = enumerate_candidates(k, m);
        CHECK(as_set(got) == expected);
        CHECK(got.size() == expected.size());
        if (total)
            CHECK(got.size() == total);
        for (auto & a : got) {
            CHECK(weak_symmetry(a));
            CHECK(consistency(a));
            CHECK(irreducible(a));
            CHECK(canonical(a) == a);
            CHECK(a.degree() == k);
        }
    }
}

TEST_CASE("parallel enumeration gives the same list")
{
    CHECK(enumerate_candidates(5, 4, { .jobs = 3 }) == enumerate_candidates(5, 4));
}

TEST_CASE("budget exhaustion is reported")
{
    CHECK_THROWS_AS(enumerate_candidates(5, 4, { .node_budget = 100 }), IncompleteError);
    EnumerationStats stats;
    enumerate_candidates(4, 3, {}, &stats);
    CHECK(stats.nodes > 0);
}

TEST_CASE("spectral filtering of the enumerated lists")
{
    auto count = [](int k, int m, const Graph & g) {
        auto all = enumerate_candidates(k, m);
        return spectral_filter(all, g).size();
    };
    CHECK(count(4, 2, hypercube(4)) == 6);
    CHECK(count(4, 3, hypercube(4)) == 10);
    CHECK(count(4, 4, hypercube(4)) == 23);
    CHECK(count(5, 2, hypercube(5)) == 9);
    CHECK(count(5, 3, hypercube(5)) == 16);
    CHECK(count(5, 4, hypercube(5)) == 57);
    CHECK(count(4, 2, complete(5)) == 2);
    CHECK(count(4, 3, complete(5)) == 2);
    CHECK(count(4, 4, complete(5)) == 1);
    CHECK(count(5, 2, complete(6)) == 3);
    CHECK(count(5, 3, complete(6)) == 3);
    CHECK(count(5, 4, complete(6)) == 2);
}

TEST_CASE("parameter checks")
{
    CHECK_THROWS_AS(enumerate_candidates(0, 2), ParameterError);
    CHECK_THROWS_AS(enumerate_candidates(4, 0), ParameterError);
}
