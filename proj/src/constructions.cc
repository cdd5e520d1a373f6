#include <perfcol/constructions.hh>

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <set>

namespace perfcol
{
    auto identity_permutation(int colours) -> Permutation
    {
        Permutation pi(colours);
        std::iota(pi.begin(), pi.end(), 0);
        return pi;
    }

    auto parse_permutation(std::string_view text, int colours) -> Permutation
    {
        auto pi = identity_permutation(colours);
        std::vector<char> moved(colours, 0);
        std::size_t pos = 0;
        auto skip_space = [&] {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
                ++pos;
        };
        auto fail = [&](const std::string & why) {
            throw FormatError("permutation '" + std::string(text) + "': " + why);
        };

        skip_space();
        if (pos == text.size())
            fail("empty; write () for the identity");
        while (pos < text.size()) {
            if (text[pos] != '(')
                fail("expected '('");
            ++pos;
            std::vector<int> cycle;
            while (true) {
                skip_space();
                if (pos == text.size())
                    fail("unclosed cycle");
                if (text[pos] == ')') {
                    ++pos;
                    break;
                }
                if (text[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (! std::isdigit(static_cast<unsigned char>(text[pos])))
                    fail("unexpected character '" + std::string(1, text[pos]) + "'");
                int x = 0;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    x = std::min(x * 10 + (text[pos++] - '0'), 1000);
                if (x < 1 || x > colours)
                    fail("colour " + std::to_string(x) + " outside 1.." + std::to_string(colours));
                if (moved[x - 1])
                    fail("colour " + std::to_string(x) + " appears twice");
                moved[x - 1] = 1;
                cycle.push_back(x - 1);
            }
            for (std::size_t i = 0 ; i < cycle.size() ; ++i)
                pi[cycle[i]] = cycle[(i + 1) % cycle.size()];
            skip_space();
        }
        return pi;
    }

    auto to_string(const Permutation & pi) -> std::string
    {
        std::string s;
        std::vector<char> seen(pi.size(), 0);
        for (std::size_t i = 0 ; i < pi.size() ; ++i) {
            if (seen[i] || pi[i] == int(i))
                continue;
            s += "(";
            for (int x = int(i) ; ! seen[x] ; x = pi[x]) {
                seen[x] = 1;
                s += (s.back() == '(' ? "" : " ") + std::to_string(x + 1);
            }
            s += ")";
        }
        return s.empty() ? "()" : s;
    }

    auto is_involution(const Permutation & pi) -> bool
    {
        for (std::size_t i = 0 ; i < pi.size() ; ++i)
            if (pi[i] < 0 || pi[i] >= int(pi.size()) || pi[pi[i]] != int(i))
                return false;
        return true;
    }

    auto lift_matrix(const ColourMatrix & a, const Permutation & pi) -> ColourMatrix
    {
        if (int(pi.size()) != a.order())
            throw ParameterError("permutation acts on " + std::to_string(pi.size()) + " colours, matrix has "
                + std::to_string(a.order()));
        auto b = a;
        for (int i = 0 ; i < a.order() ; ++i)
            ++b.at(i, pi[i]);
        return b;
    }

    auto lift(const Colouring & c, const Permutation & pi) -> Colouring
    {
        int n = c.size();
        if (n < 1 || ! std::has_single_bit(unsigned(n)))
            throw PreconditionError("colouring has " + std::to_string(n) + " vertices, not a hypercube");
        int d = std::countr_zero(unsigned(n));
        if (d + 1 > max_hypercube_dimension)
            throw ParameterError("lift would exceed dimension " + std::to_string(max_hypercube_dimension));
        if (int(pi.size()) != c.colours())
            throw PreconditionError("permutation acts on " + std::to_string(pi.size()) + " colours, colouring uses "
                + std::to_string(c.colours()));
        if (! is_involution(pi))
            throw PreconditionError("permutation " + to_string(pi) + " is not an involution");

        auto check = verify(hypercube(d), c);
        if (! check)
            throw PreconditionError("colouring is not perfect on the " + std::to_string(d) + "-cube: " + check.explanation());
        auto & a = *check.matrix;
        if (a.permuted(pi) != a)
            throw PreconditionError("permutation " + to_string(pi) + " does not fix " + to_string(a) + " under conjugation");

        std::vector<int> doubled(2 * std::size_t(n));
        for (int v = 0 ; v < n ; ++v) {
            doubled[v] = c[v];
            doubled[v + n] = pi[c[v]];
        }
        return Colouring(c.colours(), std::move(doubled), hypercube(d + 1).id());
    }

    namespace
    {
        auto cycle_text(const std::vector<int> & cycle) -> std::string
        {
            std::string s = "(";
            for (std::size_t i = 0 ; i < cycle.size() ; ++i)
                s += (i ? "," : "") + std::to_string(cycle[i]);
            return s + ")";
        }
    }

    NotBipartiteError::NotBipartiteError(std::vector<int> cycle) :
        PreconditionError("graph is not bipartite: odd cycle " + cycle_text(cycle)),
        _cycle(std::move(cycle))
    {
    }

    auto bipartition_colouring(const Graph & g) -> Colouring
    {
        int n = g.size();
        std::vector<int> side(n, -1), parent(n, -1), depth(n, 0);
        for (int root = 0 ; root < n ; ++root) {
            if (side[root] >= 0)
                continue;
            side[root] = 0;
            std::vector<int> queue{ root };
            for (std::size_t head = 0 ; head < queue.size() ; ++head) {
                int u = queue[head];
                for (int v : g.neighbours(u)) {
                    if (side[v] < 0) {
                        side[v] = 1 - side[u];
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    else if (side[v] == side[u]) {
                        // tree paths from u and v up to their common ancestor
                        std::vector<int> up, down;
                        int x = u, y = v;
                        while (depth[x] > depth[y])
                            up.push_back(x), x = parent[x];
                        while (depth[y] > depth[x])
                            down.push_back(y), y = parent[y];
                        while (x != y) {
                            up.push_back(x), x = parent[x];
                            down.push_back(y), y = parent[y];
                        }
                        up.push_back(x);
                        up.insert(up.end(), down.rbegin(), down.rend());
                        auto smallest = std::min_element(up.begin(), up.end());
                        std::rotate(up.begin(), smallest, up.end());
                        if (up.size() > 2 && up.back() < up[1])
                            std::reverse(up.begin() + 1, up.end());
                        throw NotBipartiteError(std::move(up));
                    }
                }
            }
        }
        return Colouring(2, std::move(side), g.id());
    }

    Partition::Partition(std::vector<int> parts) :
        _parts(std::move(parts))
    {
        if (_parts.empty())
            throw ParameterError("partition needs at least one part");
        for (int x : _parts)
            if (x < 1)
                throw ParameterError("partition parts must be positive");
        std::sort(_parts.begin(), _parts.end(), std::greater<>());
    }

    auto Partition::total() const -> int
    {
        return std::accumulate(_parts.begin(), _parts.end(), 0);
    }

    auto partition_to_matrix(const Partition & p) -> ColourMatrix
    {
        int m = int(p.parts().size());
        if (m > max_colours)
            throw ParameterError("partition has more than " + std::to_string(max_colours) + " parts");
        ColourMatrix a(m);
        for (int i = 0 ; i < m ; ++i)
            for (int j = 0 ; j < m ; ++j)
                a.at(i, j) = p.parts()[j] - (i == j ? 1 : 0);
        return a;
    }

    auto matrix_to_partition(const ColourMatrix & a, int vertices) -> std::optional<Partition>
    {
        int m = a.order();
        if (m == 0)
            return std::nullopt;
        std::vector<int> parts(m);
        for (int j = 0 ; j < m ; ++j) {
            parts[j] = a(j, j) + 1;
            for (int i = 0 ; i < m ; ++i)
                if (i != j && a(i, j) != parts[j])
                    return std::nullopt;
        }
        if (std::accumulate(parts.begin(), parts.end(), 0) != vertices)
            return std::nullopt;
        return Partition(std::move(parts));
    }

    auto simplex_census(int vertices, int colours) -> std::vector<ColourMatrix>
    {
        if (vertices < 1 || colours < 1)
            throw ParameterError("census needs positive vertex and colour counts");
        if (colours > max_colours)
            throw ParameterError("colour count " + std::to_string(colours) + " outside 1.." + std::to_string(max_colours));
        std::set<ColourMatrix> found;
        std::vector<int> parts;
        auto split = [&](auto & self, int left, int slots, int largest) -> void {
            if (slots == 0) {
                if (left == 0)
                    found.insert(canonical(partition_to_matrix(Partition(parts))));
                return;
            }
            for (int x = std::min(largest, left - (slots - 1)) ; x >= 1 ; --x) {
                parts.push_back(x);
                self(self, left - x, slots - 1, x);
                parts.pop_back();
            }
        };
        split(split, vertices, colours, vertices);
        return { found.begin(), found.end() };
    }
}
