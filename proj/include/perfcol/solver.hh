#pragma once

#include <perfcol/colour_matrix.hh>
#include <perfcol/colouring.hh>
#include <perfcol/graph.hh>
#include <perfcol/sieve.hh>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace perfcol
{
    inline constexpr std::uint64_t default_node_budget = 1'000'000'000;

    enum class SearchMode
    {
        first,
        count,
        all
    };

    enum class Verdict
    {
        sat,
        unsat,
        budget_exceeded
    };

    auto to_string(Verdict v) -> std::string;
    auto to_string(SearchMode m) -> std::string;
    auto parse_search_mode(std::string_view text) -> SearchMode;

    struct SolveOptions
    {
        SearchMode mode = SearchMode::first;
        std::uint64_t node_budget = default_node_budget;
        /// Use exact class sizes from the balance system when the graph is
        /// connected. Off only for cross-checking the sieve.
        bool use_class_sizes = true;
        /// Fix the colour of vertex 0 and sort the colours of its neighbours
        /// on vertex-transitive families. Only applies to mode first.
        bool symmetry_breaking = true;
        /// mode all keeps at most this many witnesses; counting continues.
        std::size_t max_witnesses = 100'000;
    };

    struct SearchStats
    {
        std::uint64_t nodes = 0;
        int max_depth = 0;
        double seconds = 0;
    };

    struct SearchOutcome
    {
        Verdict verdict = Verdict::unsat;
        std::vector<Colouring> witnesses;
        /// Perfect colourings found (labelled, every colour used).
        std::uint64_t solutions = 0;
        SearchStats stats;
        /// Set when the balance system alone rules the matrix out.
        std::optional<std::string> class_size_failure;
    };

    /// Complete search for perfect colourings of g with matrix a. Throws
    /// PreconditionError unless g is a-regular and a is weakly symmetric and
    /// consistent. UNSAT is only reported when the search space was exhausted.
    auto solve(const Graph & g, const ColourMatrix & a, const SolveOptions & options = {}) -> SearchOutcome;

    struct DecideOptions
    {
        std::uint64_t node_budget = default_node_budget;
        int jobs = 1;
        /// Matrices already proven unrealizable on this graph.
        ExcludedSet excluded;
        /// Decided records (from a store) reused instead of searching again.
        std::map<ColourMatrix, CandidateRecord> known;
    };

    /// Sieve then search for every candidate, in increasing colour count so
    /// exclusions feed the merge rule. Records come back sorted by matrix.
    auto decide_all(const Graph & g, std::vector<ColourMatrix> candidates, DecideOptions options = {})
        -> std::vector<CandidateRecord>;
}
