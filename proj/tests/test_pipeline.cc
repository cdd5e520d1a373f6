#include <perfcol/error.hh>
#include <perfcol/pipeline.hh>

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace perfcol;
using nlohmann::json;

namespace
{
    auto scratch(const std::string & name) -> std::filesystem::path
    {
        auto dir = std::filesystem::temp_directory_path() / ("perfcol-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
        return dir / name;
    }

    auto slurp(const std::filesystem::path & p) -> std::string
    {
        std::ifstream in(p);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    auto small_store() -> ResultsStore
    {
        ResultsStore store;
        analyse(hypercube(4), 4, store);
        analyse(hypercube(5), 3, store);
        return store;
    }

    // First record in the store JSON whose certificate has the given kind.
    auto find_record(json & j, const std::string & kind) -> json *
    {
        for (auto & g : j["graphs"])
            for (auto & c : g["colour_counts"])
                for (auto & r : c["records"])
                    if (r["certificate"]["kind"] == kind)
                        return &r;
        return nullptr;
    }
}

TEST_CASE("bundled fixtures")
{
    auto & f = bundled_fixtures();
    CHECK(f.spectra.size() == 4);
    CHECK(f.lists.size() == 16);
    CHECK(f.count_columns == std::vector<std::string>{ "complete:5", "complete:6", "hypercube:4", "hypercube:5" });
    auto & row3 = f.counts.at(3);
    CHECK(row3[2].realizable == 5);
    CHECK(row3[2].candidates == 10);
    CHECK_FALSE(f.counts.at(4)[3].realizable);
    CHECK(f.counts.at(4)[3].candidates == 57);

    auto appendix = f.list("hypercube:5", 4, "candidates");
    REQUIRE(appendix);
    CHECK(appendix->matrices.size() == 57);
    CHECK(std::is_sorted(appendix->matrices.begin(), appendix->matrices.end()));
    for (auto & a : appendix->matrices)
        CHECK(canonical(a) == a);
    CHECK(f.list("hypercube:4", 2, "realizable")->matrices.size() == 5);
    CHECK(f.list("hypercube:5", 3, "realizable")->matrices.size() == 8);
    CHECK_FALSE(f.list("hypercube:6", 2, "candidates"));
}

TEST_CASE("fixtures canonicalize on load")
{
    json j{
        { "table1", json::array() },
        { "table2", { { "columns", json::array() }, { "rows", json::array() } } },
        { "lists",
            { { { "graph", "hypercube:4" }, { "colours", 2 }, { "kind", "candidates" }, { "locus", "test" },
                { "matrices", { { { 2, 2 }, { 4, 0 } }, { { 0, 4 }, { 4, 0 } } } } } } },
    };
    auto f = fixtures_from_json(j);
    REQUIRE(f.lists.size() == 1);
    CHECK(f.lists[0].matrices == std::vector<ColourMatrix>{ parse_matrix("0,4;2,2"), parse_matrix("0,4;4,0") });
    CHECK_THROWS_AS(fixtures_from_json(json{ { "lists", 1 } }), FormatError);
}

TEST_CASE("store round trip is byte stable")
{
    ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    auto store = small_store();
    auto path = scratch("round.json");
    save_store(store, path);
    CHECK(store.generated_at == "2023-11-14T22:13:20Z");
    auto first = slurp(path);

    auto loaded = load_store(path);
    save_store(loaded, path);
    CHECK(slurp(path) == first);

    // Asking again for work already stored changes nothing.
    analyse(hypercube(4), 3, loaded);
    analyse(hypercube(5), 2, loaded);
    save_store(loaded, path);
    CHECK(slurp(path) == first);

    auto j = json::parse(first);
    CHECK(j["schema"] == store_schema);
    CHECK(j["toolkit_version"] == toolkit_version);
    REQUIRE(j["graphs"].size() == 2);
    CHECK(j["graphs"][0]["id"] == "hypercube:4");
    CHECK(j["graphs"][0]["colour_counts"][1]["realizable"] == 5);
    CHECK(j["graphs"][1]["colour_counts"][1]["candidates"] == 16);
    ::unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("missing store is empty")
{
    auto store = load_store(scratch("absent.json"));
    CHECK(store.graphs().empty());
}

TEST_CASE("tampered stores fail loudly")
{
    auto good = to_json(small_store());
    CHECK_NOTHROW(store_from_json(good));

    SUBCASE("witness")
    {
        auto j = good;
        auto r = find_record(j, "witness");
        REQUIRE(r);
        auto & colours = (*r)["certificate"]["colouring"];
        colours[0] = colours[0] == 1 ? 2 : 1;
        CHECK_THROWS_AS(store_from_json(j), StoreError);
    }
    SUBCASE("class size")
    {
        auto j = good;
        auto r = find_record(j, "class-size");
        REQUIRE(r);
        (*r)["matrix"] = json{ { 0, 4 }, { 4, 0 } };
        CHECK_THROWS_AS(store_from_json(j), StoreError);
    }
    SUBCASE("merge")
    {
        // The sieve meets this one by class sizes first; swap in the merge
        // argument instead, which is just as valid.
        auto j = good;
        json * r = nullptr;
        for (auto & c : j["graphs"][1]["colour_counts"])
            for (auto & record : c["records"])
                if (record["matrix"] == json{ { 0, 1, 4 }, { 1, 0, 4 }, { 1, 1, 3 } })
                    r = &record;
        REQUIRE(r);
        (*r)["certificate"] = { { "kind", "merge" }, { "colours", { 2, 3 } }, { "merged", { { 0, 5 }, { 1, 4 } } } };
        CHECK_NOTHROW(store_from_json(j));

        (*r)["certificate"]["merged"] = json{ { 0, 5 }, { 5, 0 } };
        CHECK_THROWS_AS(store_from_json(j), StoreError);
        (*r)["certificate"]["merged"] = json{ { 1, 4 }, { 2, 3 } };
        CHECK_THROWS_AS(store_from_json(j), StoreError);
        (*r)["certificate"]["colours"] = json{ 1, 2 };
        CHECK_NOTHROW(store_from_json(j));
    }
    SUBCASE("status without witness")
    {
        auto j = good;
        auto r = find_record(j, "search-exhausted");
        REQUIRE(r);
        (*r)["status"] = "realizable";
        CHECK_THROWS_AS(store_from_json(j), StoreError);
    }
    SUBCASE("schema")
    {
        auto j = good;
        j["schema"] = "something-else/9";
        CHECK_THROWS_AS(store_from_json(j), StoreError);
    }
    SUBCASE("not json")
    {
        auto path = scratch("garbage.json");
        std::ofstream(path) << "{ not json";
        CHECK_THROWS_AS(load_store(path), StoreError);
    }
}

TEST_CASE("custom graphs keep their edges")
{
    // Petersen graph, cubic on ten vertices.
    auto g = load_edge_list("0 1\n1 2\n2 3\n3 4\n4 0\n0 5\n1 6\n2 7\n3 8\n4 9\n5 7\n7 9\n9 6\n6 8\n8 5\n");
    ResultsStore store;
    auto & records = analyse(g, 2, store);
    CHECK_FALSE(records.empty());
    auto back = store_from_json(to_json(store));
    auto & entry = back.graphs().at(g.id());
    CHECK(entry.edges.size() == 15);
    CHECK(edges(entry.rebuild()) == edges(g));
}

TEST_CASE("analysis of small cases")
{
    ResultsStore store;
    auto & two = analyse(hypercube(4), 2, store);
    CHECK(two.size() == 6);
    CHECK(store.find("hypercube:4", 2) == &two);
    CHECK(store.excluded("hypercube:4").contains(parse_matrix("0,4;2,2")));
    CHECK(spectral_candidates(complete(5), 6).empty());
    CHECK(analyse(complete(5), 6, store).empty());
}

TEST_CASE("reproduce")
{
    ResultsStore store;
    auto t1 = reproduce(Target::table1, store);
    CHECK_FALSE(t1.mismatch);
    auto t2 = reproduce(Target::table2, store);
    bool found = false;
    for (auto & line : t2.lines)
        found = found || line.find("5/10") != std::string::npos;
    CHECK(found);
    CHECK_FALSE(t2.incomplete);
    auto lists = reproduce(Target::lists, store);
    CHECK_FALSE(lists.mismatch);
    auto appendix = reproduce(Target::appendix, store);
    CHECK_FALSE(appendix.mismatch);

    CHECK(parse_target("appendix") == Target::appendix);
    CHECK_THROWS_AS(parse_target("table3"), ParameterError);
    CHECK(display_name("hypercube:4") == "4-cube");
    CHECK(display_name("complete:6") == "5-simplex");
    CHECK(display_name("custom:10") == "custom:10");
}
