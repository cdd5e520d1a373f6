#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace perfcol
{
    enum class GraphFamily
    {
        hypercube,
        complete,
        custom
    };

    inline constexpr int max_hypercube_dimension = 20;
    inline constexpr int max_vertices = 1 << 20;
    // complete graphs are stored edge by edge, so they get a tighter bound
    inline constexpr int max_complete_order = 4096;

    /// Finite simple undirected graph on vertices 0..n-1. Immutable once built;
    /// neighbour lists are sorted, so witnesses and search orders are reproducible.
    class Graph
    {
    public:
        Graph() = default;

        /// Builds from an edge list. Duplicate edges are merged; loops and
        /// out-of-range endpoints throw FormatError.
        Graph(int vertices, std::span<const std::pair<int, int>> edges,
            GraphFamily family = GraphFamily::custom, int parameter = 0);

        auto size() const -> int { return _size; }
        auto degree(int v) const -> int { return _offsets[v + 1] - _offsets[v]; }
        auto neighbours(int v) const -> std::span<const int>
        {
            return { _targets.data() + _offsets[v], _targets.data() + _offsets[v + 1] };
        }
        auto adjacent(int u, int v) const -> bool;
        auto edge_count() const -> std::int64_t { return std::int64_t(_targets.size()) / 2; }

        auto family() const -> GraphFamily { return _family; }
        auto parameter() const -> int { return _parameter; }

        /// "hypercube:4", "complete:5", or "custom:<n>".
        auto id() const -> std::string;

        /// True for the built-in vertex-transitive families whose vertex
        /// stabiliser acts as the full symmetric group on the neighbours of 0.
        auto neighbourhood_symmetric() const -> bool { return _family != GraphFamily::custom; }

    private:
        int _size = 0;
        GraphFamily _family = GraphFamily::custom;
        int _parameter = 0;
        std::vector<int> _offsets{ 0 };
        std::vector<int> _targets;
    };

    /// Edge graph of the d-cube: u ~ v iff u xor v is a power of two.
    auto hypercube(int dimension) -> Graph;

    auto complete(int vertices) -> Graph;

    /// Parses "u v" lines; blank lines and '#' comments are skipped.
    auto load_edge_list(std::string_view text) -> Graph;

    auto regularity(const Graph & g) -> std::optional<int>;

    auto is_connected(const Graph & g) -> bool;

    /// Dense 0/1 adjacency, row-major, for spectral work on small graphs.
    auto adjacency_entries(const Graph & g) -> std::vector<std::int64_t>;

    /// Edges (u < v) in increasing order.
    auto edges(const Graph & g) -> std::vector<std::pair<int, int>>;

    /// Accepts "hypercube:<d>", "complete:<n>", or a path to an edge-list file.
    auto parse_graph_argument(std::string_view argument) -> Graph;
}
