#include <perfcol/enumerate.hh>
#include <perfcol/error.hh>
#include <perfcol/polynomial.hh>
#include <perfcol/sieve.hh>

#include "oracle.hh"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace perfcol;

namespace
{
    auto filtered(const Graph & g, int m) -> std::vector<ColourMatrix>
    {
        auto all = enumerate_candidates(*regularity(g), m);
        return spectral_filter(all, g);
    }

    auto as_v(const ClassSizes & s) -> std::vector<int>
    {
        return { s.v.begin(), s.v.end() };
    }
}

TEST_CASE("class sizes, two colours")
{
    auto bad = solve_balance(parse_matrix("0,5;1,4"), 32);
    CHECK(bad.verdict == BalanceVerdict::non_integral);
    CHECK(bad.explanation() == "v1 = 16/3 is not an integer");
    CHECK_FALSE(class_sizes(parse_matrix("0,5;1,4"), 32));

    auto good = class_sizes(parse_matrix("0,5;3,2"), 32);
    REQUIRE(good);
    CHECK(good->v == std::vector<std::int64_t>{ 12, 20 });

    CHECK_FALSE(class_sizes(parse_matrix("0,4;2,2"), 16));
}

TEST_CASE("class sizes, three colours")
{
    auto a = parse_matrix("0,5,0;1,0,4;0,2,3");
    auto sizes = class_sizes(a, 32);
    REQUIRE(sizes);
    CHECK(sizes->v == std::vector<std::int64_t>{ 2, 10, 20 });
    auto brute = oracle::class_sizes(a, 32);
    REQUIRE(brute.size() == 1);
    CHECK(brute.front() == as_v(*sizes));
}

TEST_CASE("class sizes agree with brute force")
{
    // Every irreducible candidate of small degree, on a few vertex counts.
    for (int k : { 3, 4 })
        for (int m : { 2, 3 })
            for (auto & a : enumerate_candidates(k, m))
                for (int n : { 8, 12, 16 }) {
                    auto brute = oracle::class_sizes(a, n);
                    auto sizes = class_sizes(a, n);
                    CAPTURE(to_string(a));
                    CAPTURE(n);
                    // Irreducible systems have at most one solution.
                    REQUIRE(brute.size() <= 1);
                    CHECK(bool(sizes) == ! brute.empty());
                    if (sizes)
                        CHECK(as_v(*sizes) == brute.front());
                }
}

TEST_CASE("parity rule")
{
    // v = (3,3) on six vertices leaves 3 * 1 internal edge ends.
    auto solution = solve_balance(parse_matrix("1,2;2,1"), 6);
    CHECK(solution.verdict == BalanceVerdict::parity);
    CHECK(solution.parity_colour == 0);
    CHECK_FALSE(class_sizes(parse_matrix("1,2;2,1"), 6));
    CHECK(class_sizes(parse_matrix("1,2;2,1"), 8));
}

TEST_CASE("merge exclusion")
{
    ExcludedSet cube4{ canonical(parse_matrix("0,4;2,2")) };
    auto cert = merge_exclude(parse_matrix("0,0,4;0,0,4;1,1,2"), cube4);
    REQUIRE(cert);
    CHECK(cert->first == 0);
    CHECK(cert->second == 1);
    CHECK(canonical(cert->merged) == canonical(parse_matrix("0,4;2,2")));

    ExcludedSet cube5{ canonical(parse_matrix("0,5;1,4")) };
    auto a = parse_matrix("0,1,4;1,0,4;1,1,3");
    cert = merge_exclude(a, cube5);
    REQUIRE(cert);
    // Colours 1 and 3 merge to the same excluded class as colours 2 and 3.
    CHECK(cert->first == 0);
    CHECK(cert->second == 2);
    CHECK(cube5.contains(canonical(cert->merged)));
    CHECK(canonical(*merge_colours(a, 1, 2)) == canonical(parse_matrix("0,5;1,4")));

    CHECK_FALSE(merge_exclude(parse_matrix("0,2,2;2,0,2;1,1,2"), cube4));
    CHECK_FALSE(merge_exclude(parse_matrix("0,0,4;0,0,4;1,1,2"), {}));
}

TEST_CASE("sieve on the 4-cube, two colours")
{
    auto g = hypercube(4);
    ExcludedSet excluded;
    auto result = sieve_pass(filtered(g, 2), g, excluded);
    REQUIRE(result.excluded.size() == 1);
    CHECK(result.excluded[0].matrix == canonical(parse_matrix("0,4;2,2")));
    CHECK(certificate_kind(result.excluded[0].certificate) == "class-size");
    CHECK(result.survivors.size() == 5);
    CHECK(excluded.contains(canonical(parse_matrix("0,4;2,2"))));
}

TEST_CASE("sieve on the 5-cube, two colours")
{
    auto g = hypercube(5);
    ExcludedSet excluded;
    auto result = sieve_pass(filtered(g, 2), g, excluded);
    std::set<ColourMatrix> out;
    for (auto & r : result.excluded)
        out.insert(r.matrix);
    CHECK(out == std::set<ColourMatrix>{ canonical(parse_matrix("0,5;1,4")), canonical(parse_matrix("1,4;2,3")) });
    // The six realizable matrices plus [[0,5],[3,2]], which only search rules out.
    CHECK(result.survivors.size() == 7);
    CHECK(std::ranges::find(result.survivors, canonical(parse_matrix("0,5;3,2"))) != result.survivors.end());
}

TEST_CASE("sieve of nothing")
{
    ExcludedSet excluded;
    auto result = sieve_pass({}, hypercube(4), excluded);
    CHECK(result.excluded.empty());
    CHECK(result.survivors.empty());
}

TEST_CASE("sieve is independent of input order")
{
    auto g = hypercube(5);
    std::vector<ColourMatrix> input;
    for (int m : { 2, 3, 4 })
        for (auto & a : filtered(g, m))
            input.push_back(a);

    ExcludedSet first;
    auto reference = sieve_pass(input, g, first);
    std::mt19937 rng(7);
    for (int round = 0 ; round < 5 ; ++round) {
        std::ranges::shuffle(input, rng);
        ExcludedSet excluded;
        auto result = sieve_pass(input, g, excluded);
        CHECK(result.survivors == reference.survivors);
        CHECK(excluded == first);
        REQUIRE(result.excluded.size() == reference.excluded.size());
        for (std::size_t i = 0 ; i < result.excluded.size() ; ++i)
            CHECK(to_json(result.excluded[i]) == to_json(reference.excluded[i]));
    }
}

TEST_CASE("record json round trip")
{
    auto g = hypercube(5);
    ExcludedSet excluded{ canonical(parse_matrix("0,5;1,4")) };
    auto result = sieve_pass(filtered(g, 3), g, excluded);
    REQUIRE_FALSE(result.excluded.empty());
    for (auto & r : result.excluded) {
        auto back = record_from_json(to_json(r), g.id());
        CHECK(to_json(back) == to_json(r));
        CHECK(back.status == Status::excluded);
    }
    CHECK_THROWS_AS(record_from_json(nlohmann::json{ { "matrix", 3 } }, g.id()), FormatError);
}
