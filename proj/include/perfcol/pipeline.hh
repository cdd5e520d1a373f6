#pragma once

#include <perfcol/colour_matrix.hh>
#include <perfcol/graph.hh>
#include <perfcol/polynomial.hh>
#include <perfcol/sieve.hh>
#include <perfcol/solver.hh>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace perfcol
{
    inline constexpr const char * toolkit_version = "1.0.0";
    inline constexpr const char * store_schema = "perfcol-results/1";

    // ---- fixtures --------------------------------------------------------

    struct SpectrumFixture
    {
        std::string graph;
        std::string locus;
        std::vector<std::pair<std::int64_t, int>> eigenvalues;
    };

    struct CountCell
    {
        std::optional<int> realizable;
        std::optional<int> candidates;
    };

    struct ListFixture
    {
        std::string graph;
        int colours = 0;
        /// "candidates" or "realizable"
        std::string kind;
        std::string locus;
        /// Canonicalized and sorted on load.
        std::vector<ColourMatrix> matrices;
    };

    struct Fixtures
    {
        std::vector<SpectrumFixture> spectra;
        std::vector<std::string> count_columns;
        /// colours -> one cell per column
        std::map<int, std::vector<CountCell>> counts;
        std::vector<ListFixture> lists;

        auto list(const std::string & graph, int colours, const std::string & kind) const -> const ListFixture *;
    };

    auto fixtures_from_json(const nlohmann::json & j) -> Fixtures;
    /// The copy compiled into the library.
    auto bundled_fixtures() -> const Fixtures &;

    // ---- results store ---------------------------------------------------

    struct GraphResults
    {
        std::string graph_id;
        int vertices = 0;
        int degree = 0;
        /// Edge list, kept only for graphs that are not a built-in family.
        std::vector<std::pair<int, int>> edges;
        /// colours -> records sorted by matrix
        std::map<int, std::vector<CandidateRecord>> records;

        auto rebuild() const -> Graph;
    };

    class ResultsStore
    {
    public:
        auto graphs() const -> const std::map<std::string, GraphResults> & { return _graphs; }
        auto find(const std::string & graph_id, int colours) const -> const std::vector<CandidateRecord> *;
        auto put(const Graph & g, int colours, std::vector<CandidateRecord> records) -> void;

        /// Matrices of every colour count recorded as excluded on this graph.
        auto excluded(const std::string & graph_id) const -> ExcludedSet;
        auto known(const std::string & graph_id) const -> std::map<ColourMatrix, CandidateRecord>;

        std::string generated_at;

    private:
        std::map<std::string, GraphResults> _graphs;
        friend auto store_from_json(const nlohmann::json & j) -> ResultsStore;
    };

    /// Keys and records come out in a fixed order, so equal stores give equal bytes.
    auto to_json(const ResultsStore & store) -> nlohmann::json;

    /// Re-verifies every witness, merge and class-size certificate;
    /// throws StoreError on the first one that fails.
    auto store_from_json(const nlohmann::json & j) -> ResultsStore;

    /// A missing file gives an empty store.
    auto load_store(const std::filesystem::path & path) -> ResultsStore;
    auto save_store(ResultsStore & store, const std::filesystem::path & path) -> void;

    /// ISO 8601 UTC; SOURCE_DATE_EPOCH overrides the clock.
    auto timestamp() -> std::string;

    // ---- analysis --------------------------------------------------------

    struct AnalysisOptions
    {
        std::uint64_t node_budget = default_node_budget;
        /// 0 means unlimited.
        std::uint64_t enumeration_budget = 0;
        int jobs = 1;
    };

    /// Candidates for g with m colours: the enumerated matrices whose
    /// characteristic polynomial divides that of g (every enumerated
    /// matrix when g is too large for exact spectra).
    auto spectral_candidates(const Graph & g, int colours, const AnalysisOptions & options = {}) -> std::vector<ColourMatrix>;

    /// Decides every candidate for 2..m colours on g, reusing decided
    /// records from the store and writing results back.
    auto analyse(const Graph & g, int colours, ResultsStore & store, const AnalysisOptions & options = {})
        -> const std::vector<CandidateRecord> &;

    // ---- reproduction ----------------------------------------------------

    enum class Target
    {
        table1,
        table2,
        lists,
        appendix,
        all
    };

    auto parse_target(std::string_view text) -> Target;

    struct Report
    {
        std::vector<std::string> lines;
        nlohmann::json json = nlohmann::json::object();
        bool mismatch = false;
        bool incomplete = false;
    };

    /// "4-cube" for hypercube:4, "5-simplex" for complete:6, else the id.
    auto display_name(const std::string & graph_id) -> std::string;

    auto reproduce(Target target, ResultsStore & store, const AnalysisOptions & options = {},
        const Fixtures & fixtures = bundled_fixtures()) -> Report;
}
