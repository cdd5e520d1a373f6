#pragma once

#include <perfcol/colour_matrix.hh>
#include <perfcol/graph.hh>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace perfcol
{
    /// Total map vertex -> colour in 0..m-1. Files and JSON use 1..m.
    class Colouring
    {
    public:
        Colouring() = default;
        Colouring(int colours, std::vector<int> assignment, std::string graph_id = {});

        auto colours() const -> int { return _colours; }
        auto size() const -> int { return int(_assignment.size()); }
        auto operator[](int v) const -> int { return _assignment[v]; }
        auto assignment() const -> const std::vector<int> & { return _assignment; }
        auto graph_id() const -> const std::string & { return _graph_id; }

        auto class_sizes() const -> std::vector<int>;

        auto operator==(const Colouring &) const -> bool = default;

    private:
        int _colours = 0;
        std::vector<int> _assignment;
        std::string _graph_id;
    };

    struct VerifyResult
    {
        std::optional<ColourMatrix> matrix;
        /// Same colour, different neighbour-colour profile.
        std::optional<std::pair<int, int>> conflict;
        std::optional<int> unused_colour;

        explicit operator bool() const { return matrix.has_value(); }
        auto explanation() const -> std::string;
    };

    /// The colour adjacency matrix if the colouring is perfect and uses every colour.
    auto verify(const Graph & g, const Colouring & c) -> VerifyResult;

    /// JSON array of 1-based colours, index = vertex.
    auto to_json(const Colouring & c) -> nlohmann::json;

    /// Colour count is the largest colour index present unless given.
    auto colouring_from_json(const nlohmann::json & j, std::optional<int> colours = std::nullopt) -> Colouring;

    /// Accepts the JSON array form or "vertex colour" lines ('#' comments allowed).
    auto parse_colouring(std::string_view text, std::optional<int> colours = std::nullopt) -> Colouring;
}
