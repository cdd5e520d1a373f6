#pragma once

#include <perfcol/colour_matrix.hh>

#include <cstdint>
#include <vector>

namespace perfcol
{
    struct EnumerationOptions
    {
        /// Rows placed before giving up with IncompleteError; 0 means unlimited.
        std::uint64_t node_budget = 0;
        int jobs = 1;
    };

    struct EnumerationStats
    {
        std::uint64_t nodes = 0;
    };

    /// All canonical m x m matrices with row sums k that are weakly symmetric,
    /// consistent and irreducible, in increasing order. Throws IncompleteError
    /// when the budget runs out; never returns a partial list.
    auto enumerate_candidates(int degree, int colours, const EnumerationOptions & options = {},
        EnumerationStats * stats = nullptr) -> std::vector<ColourMatrix>;
}
