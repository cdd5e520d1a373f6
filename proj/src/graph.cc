#include <perfcol/error.hh>
#include <perfcol/graph.hh>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>

namespace perfcol
{
    Graph::Graph(int vertices, std::span<const std::pair<int, int>> edge_list, GraphFamily family, int parameter) :
        _size(vertices),
        _family(family),
        _parameter(parameter)
    {
        if (vertices < 0 || vertices > max_vertices)
            throw ParameterError("vertex count " + std::to_string(vertices) + " out of range");

        std::vector<std::pair<int, int>> arcs;
        arcs.reserve(edge_list.size() * 2);
        for (auto [u, v] : edge_list) {
            if (u < 0 || v < 0 || u >= vertices || v >= vertices)
                throw FormatError("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
            if (u == v)
                throw FormatError("self-loop at vertex " + std::to_string(u));
            arcs.emplace_back(u, v);
            arcs.emplace_back(v, u);
        }
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

        _offsets.assign(vertices + 1, 0);
        for (auto & [u, v] : arcs)
            ++_offsets[u + 1];
        for (int v = 0 ; v < vertices ; ++v)
            _offsets[v + 1] += _offsets[v];
        _targets.reserve(arcs.size());
        for (auto & [u, v] : arcs)
            _targets.push_back(v);
    }

    auto Graph::adjacent(int u, int v) const -> bool
    {
        auto n = neighbours(u);
        return std::binary_search(n.begin(), n.end(), v);
    }

    auto Graph::id() const -> std::string
    {
        switch (_family) {
            case GraphFamily::hypercube: return "hypercube:" + std::to_string(_parameter);
            case GraphFamily::complete: return "complete:" + std::to_string(_parameter);
            case GraphFamily::custom: break;
        }
        return "custom:" + std::to_string(_size);
    }

    auto hypercube(int dimension) -> Graph
    {
        if (dimension < 1 || dimension > max_hypercube_dimension)
            throw ParameterError("hypercube dimension " + std::to_string(dimension) + " outside 1.."
                + std::to_string(max_hypercube_dimension));

        int n = 1 << dimension;
        std::vector<std::pair<int, int>> e;
        e.reserve(std::size_t(n) * dimension / 2);
        for (int u = 0 ; u < n ; ++u)
            for (int b = 0 ; b < dimension ; ++b)
                if (int v = u ^ (1 << b) ; u < v)
                    e.emplace_back(u, v);
        return Graph(n, e, GraphFamily::hypercube, dimension);
    }

    auto complete(int vertices) -> Graph
    {
        if (vertices < 1 || vertices > max_complete_order)
            throw ParameterError("complete graph order " + std::to_string(vertices) + " outside 1.."
                + std::to_string(max_complete_order));

        std::vector<std::pair<int, int>> e;
        for (int u = 0 ; u < vertices ; ++u)
            for (int v = u + 1 ; v < vertices ; ++v)
                e.emplace_back(u, v);
        return Graph(vertices, e, GraphFamily::complete, vertices);
    }

    namespace
    {
        auto parse_vertex(std::string_view token, int line) -> int
        {
            int value = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || ptr != token.data() + token.size() || value < 0)
                throw FormatError("line " + std::to_string(line) + ": '" + std::string(token)
                    + "' is not a nonnegative integer");
            return value;
        }
    }

    auto load_edge_list(std::string_view text) -> Graph
    {
        std::vector<std::pair<int, int>> e;
        int max_index = -1;
        int line_number = 0;

        std::istringstream in{ std::string(text) };
        std::string line;
        while (std::getline(in, line)) {
            ++line_number;
            if (auto hash = line.find('#') ; hash != std::string::npos)
                line.erase(hash);

            std::istringstream fields(line);
            std::vector<std::string> tokens;
            for (std::string t ; fields >> t ; )
                tokens.push_back(t);
            if (tokens.empty())
                continue;
            if (tokens.size() != 2)
                throw FormatError("line " + std::to_string(line_number) + ": expected two vertex indices");

            int u = parse_vertex(tokens[0], line_number), v = parse_vertex(tokens[1], line_number);
            if (u == v)
                throw FormatError("line " + std::to_string(line_number) + ": self-loop at vertex " + std::to_string(u));
            if (std::max(u, v) >= max_vertices)
                throw FormatError("line " + std::to_string(line_number) + ": vertex index too large");
            max_index = std::max({ max_index, u, v });
            e.emplace_back(u, v);
        }

        if (e.empty())
            throw FormatError("edge list contains no edges");
        return Graph(max_index + 1, e);
    }

    auto regularity(const Graph & g) -> std::optional<int>
    {
        if (g.size() == 0)
            return std::nullopt;
        int k = g.degree(0);
        for (int v = 1 ; v < g.size() ; ++v)
            if (g.degree(v) != k)
                return std::nullopt;
        return k;
    }

    auto is_connected(const Graph & g) -> bool
    {
        if (g.size() == 0)
            return true;
        std::vector<char> seen(g.size(), 0);
        std::queue<int> todo;
        todo.push(0);
        seen[0] = 1;
        int reached = 1;
        while (! todo.empty()) {
            int v = todo.front();
            todo.pop();
            for (int w : g.neighbours(v))
                if (! seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    todo.push(w);
                }
        }
        return reached == g.size();
    }

    auto adjacency_entries(const Graph & g) -> std::vector<std::int64_t>
    {
        std::vector<std::int64_t> result(std::size_t(g.size()) * g.size(), 0);
        for (int v = 0 ; v < g.size() ; ++v)
            for (int w : g.neighbours(v))
                result[std::size_t(v) * g.size() + w] = 1;
        return result;
    }

    auto edges(const Graph & g) -> std::vector<std::pair<int, int>>
    {
        std::vector<std::pair<int, int>> result;
        result.reserve(g.edge_count());
        for (int v = 0 ; v < g.size() ; ++v)
            for (int w : g.neighbours(v))
                if (v < w)
                    result.emplace_back(v, w);
        return result;
    }

    auto parse_graph_argument(std::string_view argument) -> Graph
    {
        auto family_parameter = [&](std::string_view prefix) -> std::optional<int> {
            if (! argument.starts_with(prefix))
                return std::nullopt;
            auto rest = argument.substr(prefix.size());
            int value = 0;
            auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
            if (ec != std::errc{} || ptr != rest.data() + rest.size())
                throw FormatError("bad graph parameter in '" + std::string(argument) + "'");
            return value;
        };

        if (auto d = family_parameter("hypercube:"))
            return hypercube(*d);
        if (auto n = family_parameter("complete:"))
            return complete(*n);

        std::ifstream file{ std::string(argument) };
        if (! file)
            throw FormatError("'" + std::string(argument) + "' is neither a graph family nor a readable file");
        std::stringstream buffer;
        buffer << file.rdbuf();
        return load_edge_list(buffer.str());
    }
}
