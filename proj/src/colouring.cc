#include <perfcol/colouring.hh>
#include <perfcol/error.hh>

#include <algorithm>
#include <sstream>

namespace perfcol
{
    Colouring::Colouring(int colours, std::vector<int> assignment, std::string graph_id) :
        _colours(colours),
        _assignment(std::move(assignment)),
        _graph_id(std::move(graph_id))
    {
        if (colours < 1 || colours > max_colours)
            throw ParameterError("colour count " + std::to_string(colours) + " outside 1.." + std::to_string(max_colours));
        for (std::size_t v = 0 ; v < _assignment.size() ; ++v)
            if (_assignment[v] < 0 || _assignment[v] >= colours)
                throw ParameterError("vertex " + std::to_string(v) + " has colour " + std::to_string(_assignment[v] + 1)
                    + ", outside 1.." + std::to_string(colours));
    }

    auto Colouring::class_sizes() const -> std::vector<int>
    {
        std::vector<int> sizes(_colours, 0);
        for (int c : _assignment)
            ++sizes[c];
        return sizes;
    }

    auto VerifyResult::explanation() const -> std::string
    {
        if (matrix)
            return "perfect with colour adjacency matrix " + to_string(*matrix);
        if (unused_colour)
            return "colour " + std::to_string(*unused_colour + 1) + " is never used";
        if (conflict)
            return "vertices " + std::to_string(conflict->first) + " and " + std::to_string(conflict->second)
                + " share a colour but see different neighbour colours";
        return "not perfect";
    }

    auto verify(const Graph & g, const Colouring & c) -> VerifyResult
    {
        if (c.size() != g.size())
            throw ParameterError("colouring covers " + std::to_string(c.size()) + " vertices, graph has "
                + std::to_string(g.size()));

        int m = c.colours();
        VerifyResult result;
        auto sizes = c.class_sizes();
        if (auto it = std::find(sizes.begin(), sizes.end(), 0) ; it != sizes.end()) {
            result.unused_colour = int(it - sizes.begin());
            return result;
        }

        ColourMatrix a(m);
        std::vector<int> representative(m, -1);
        std::vector<int> profile(m);
        for (int v = 0 ; v < g.size() ; ++v) {
            std::fill(profile.begin(), profile.end(), 0);
            for (int w : g.neighbours(v))
                ++profile[c[w]];
            int i = c[v];
            if (representative[i] < 0) {
                representative[i] = v;
                for (int j = 0 ; j < m ; ++j)
                    a.at(i, j) = profile[j];
            }
            else
                for (int j = 0 ; j < m ; ++j)
                    if (a(i, j) != profile[j]) {
                        result.conflict = std::pair{ representative[i], v };
                        return result;
                    }
        }
        result.matrix = std::move(a);
        return result;
    }

    auto to_json(const Colouring & c) -> nlohmann::json
    {
        auto result = nlohmann::json::array();
        for (int x : c.assignment())
            result.push_back(x + 1);
        return result;
    }

    auto colouring_from_json(const nlohmann::json & j, std::optional<int> colours) -> Colouring
    {
        if (! j.is_array())
            throw FormatError("colouring JSON must be an array of colours");
        std::vector<int> assignment;
        int largest = 0;
        for (auto & x : j) {
            if (! x.is_number_integer() || x.get<int>() < 1)
                throw FormatError("colouring entries must be integers >= 1");
            assignment.push_back(x.get<int>() - 1);
            largest = std::max(largest, x.get<int>());
        }
        return Colouring(colours.value_or(largest), std::move(assignment));
    }

    auto parse_colouring(std::string_view text, std::optional<int> colours) -> Colouring
    {
        auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string_view::npos && text[first] == '[') {
            auto parsed = nlohmann::json::parse(text, nullptr, false);
            if (parsed.is_discarded())
                throw FormatError("colouring is not valid JSON");
            return colouring_from_json(parsed, colours);
        }

        std::vector<std::pair<int, int>> pairs;
        std::istringstream in{ std::string(text) };
        std::string line;
        int line_number = 0;
        while (std::getline(in, line)) {
            ++line_number;
            if (auto hash = line.find('#') ; hash != std::string::npos)
                line.erase(hash);
            std::istringstream fields(line);
            long long v, colour;
            if (! (fields >> v))
                continue;
            std::string extra;
            if (! (fields >> colour) || (fields >> extra) || v < 0 || colour < 1 || v >= max_vertices || colour > max_colours)
                throw FormatError("line " + std::to_string(line_number) + ": expected 'vertex colour'");
            pairs.emplace_back(int(v), int(colour));
        }
        if (pairs.empty())
            throw FormatError("colouring is empty");

        std::sort(pairs.begin(), pairs.end());
        std::vector<int> assignment;
        int largest = 0;
        for (std::size_t i = 0 ; i < pairs.size() ; ++i) {
            if (pairs[i].first != int(i))
                throw FormatError("colouring must list each vertex 0..n-1 exactly once");
            assignment.push_back(pairs[i].second - 1);
            largest = std::max(largest, pairs[i].second);
        }
        return Colouring(colours.value_or(largest), std::move(assignment));
    }
}
