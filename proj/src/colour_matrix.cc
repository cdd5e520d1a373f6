#include <perfcol/colour_matrix.hh>
#include <perfcol/error.hh>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <numeric>

namespace perfcol
{
    namespace
    {
        auto check_order(int order) -> void
        {
            if (order < 0 || order > max_colours)
                throw ParameterError("matrix order " + std::to_string(order) + " outside 0.." + std::to_string(max_colours));
        }
    }

    ColourMatrix::ColourMatrix(int order) :
        _order(order)
    {
        check_order(order);
        _entries.assign(std::size_t(order) * order, 0);
    }

    ColourMatrix::ColourMatrix(int order, std::vector<int> entries) :
        _order(order),
        _entries(std::move(entries))
    {
        check_order(order);
        if (_entries.size() != std::size_t(order) * order)
            throw FormatError("matrix of order " + std::to_string(order) + " needs " + std::to_string(order * order)
                + " entries, got " + std::to_string(_entries.size()));
        if (std::any_of(_entries.begin(), _entries.end(), [](int x) { return x < 0; }))
            throw FormatError("matrix entries must be nonnegative");
    }

    ColourMatrix::ColourMatrix(std::initializer_list<std::initializer_list<int>> rows)
    {
        std::vector<int> flat;
        for (auto & r : rows) {
            if (r.size() != rows.size())
                throw FormatError("matrix rows must all have length " + std::to_string(rows.size()));
            flat.insert(flat.end(), r.begin(), r.end());
        }
        *this = ColourMatrix(int(rows.size()), std::move(flat));
    }

    auto ColourMatrix::row_sum(int i) const -> int
    {
        return std::accumulate(_entries.begin() + i * _order, _entries.begin() + (i + 1) * _order, 0);
    }

    auto ColourMatrix::degree() const -> std::optional<int>
    {
        if (_order == 0)
            return std::nullopt;
        int k = row_sum(0);
        for (int i = 1 ; i < _order ; ++i)
            if (row_sum(i) != k)
                return std::nullopt;
        return k;
    }

    auto ColourMatrix::permuted(std::span<const int> perm) const -> ColourMatrix
    {
        ColourMatrix result(_order);
        for (int i = 0 ; i < _order ; ++i)
            for (int j = 0 ; j < _order ; ++j)
                result.at(i, j) = (*this)(perm[i], perm[j]);
        return result;
    }

    auto weak_symmetry(const ColourMatrix & a) -> bool
    {
        for (int i = 0 ; i < a.order() ; ++i)
            for (int j = i + 1 ; j < a.order() ; ++j)
                if ((a(i, j) == 0) != (a(j, i) == 0))
                    return false;
        return true;
    }

    auto consistency(const ColourMatrix & a) -> bool
    {
        // Every cycle of length >= 3 is visited once per rotation class by
        // fixing its smallest index first; 2-cycles hold trivially.
        int m = a.order();
        std::vector<int> cycle;
        std::vector<char> used(m, 0);

        std::function<bool(long long, long long)> extend = [&](long long forward, long long backward) -> bool {
            int first = cycle.front(), last = cycle.back();
            if (cycle.size() >= 3 && forward * a(last, first) != backward * a(first, last))
                return false;
            for (int next = first + 1 ; next < m ; ++next) {
                if (used[next])
                    continue;
                used[next] = 1;
                cycle.push_back(next);
                bool ok = extend(forward * a(last, next), backward * a(next, last));
                cycle.pop_back();
                used[next] = 0;
                if (! ok)
                    return false;
            }
            return true;
        };

        for (int start = 0 ; start < m ; ++start) {
            cycle.assign(1, start);
            used.assign(m, 0);
            used[start] = 1;
            if (! extend(1, 1))
                return false;
        }
        return true;
    }

    auto irreducible(const ColourMatrix & a) -> bool
    {
        int m = a.order();
        if (m == 0)
            return false;
        std::vector<char> seen(m, 0);
        std::vector<int> stack{ 0 };
        seen[0] = 1;
        int reached = 1;
        while (! stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0 ; j < m ; ++j)
                if (! seen[j] && (a(i, j) != 0 || a(j, i) != 0)) {
                    seen[j] = 1;
                    ++reached;
                    stack.push_back(j);
                }
        }
        return reached == m;
    }

    auto canonicalize(const ColourMatrix & a) -> CanonicalForm
    {
        int m = a.order();
        std::vector<int> identity(m);
        std::iota(identity.begin(), identity.end(), 0);
        CanonicalForm best{ a, identity };
        if (m <= 1)
            return best;

        // Depth-first over permutations, placing perm[t] at step t. Entry
        // (0, t) of the candidate is then known, so a branch whose row-0
        // prefix already exceeds the current best is cut.
        std::vector<int> perm(m);
        std::vector<char> used(m, 0);

        auto compare_prefix = [&](int t) {
            for (int j = 0 ; j <= t ; ++j)
                if (int x = a(perm[0], perm[j]), y = best.matrix(0, j) ; x != y)
                    return x < y ? -1 : 1;
            return 0;
        };
        auto compare_full = [&] {
            for (int i = 0 ; i < m ; ++i)
                for (int j = 0 ; j < m ; ++j)
                    if (int x = a(perm[i], perm[j]), y = best.matrix(i, j) ; x != y)
                        return x < y ? -1 : 1;
            return 0;
        };

        std::function<void(int)> place = [&](int t) {
            if (t == m) {
                if (compare_full() < 0) {
                    best.matrix = a.permuted(perm);
                    best.permutation = perm;
                }
                return;
            }
            for (int c = 0 ; c < m ; ++c) {
                if (used[c])
                    continue;
                perm[t] = c;
                if (compare_prefix(t) > 0)
                    continue;
                used[c] = 1;
                place(t + 1);
                used[c] = 0;
            }
        };

        place(0);
        return best;
    }

    auto canonical(const ColourMatrix & a) -> ColourMatrix
    {
        return canonicalize(a).matrix;
    }

    auto merge_colours(const ColourMatrix & a, int first, int second) -> std::optional<ColourMatrix>
    {
        int m = a.order();
        if (first == second || first < 0 || second < 0 || first >= m || second >= m)
            throw ParameterError("merge needs two distinct colours in range");

        int i = std::min(first, second), j = std::max(first, second);
        for (int l = 0 ; l < m ; ++l)
            if (l != i && l != j && a(i, l) != a(j, l))
                return std::nullopt;
        if (a(i, i) + a(i, j) != a(j, i) + a(j, j))
            return std::nullopt;

        // old index -> new index; j collapses onto i
        std::vector<int> target(m);
        for (int l = 0, next = 0 ; l < m ; ++l)
            target[l] = (l == j) ? -1 : next++;
        target[j] = target[i];

        ColourMatrix result(m - 1);
        for (int r = 0 ; r < m ; ++r) {
            if (r == j)
                continue;
            for (int c = 0 ; c < m ; ++c)
                result.at(target[r], target[c]) += a(r, c);
        }
        return result;
    }

    auto to_string(const ColourMatrix & a) -> std::string
    {
        std::string s;
        for (int i = 0 ; i < a.order() ; ++i) {
            if (i > 0)
                s += ';';
            for (int j = 0 ; j < a.order() ; ++j) {
                if (j > 0)
                    s += ',';
                s += std::to_string(a(i, j));
            }
        }
        return s;
    }

    auto to_json(const ColourMatrix & a) -> nlohmann::json
    {
        auto rows = nlohmann::json::array();
        for (int i = 0 ; i < a.order() ; ++i) {
            auto row = nlohmann::json::array();
            for (int j = 0 ; j < a.order() ; ++j)
                row.push_back(a(i, j));
            rows.push_back(std::move(row));
        }
        return rows;
    }

    auto matrix_from_json(const nlohmann::json & j) -> ColourMatrix
    {
        if (! j.is_array())
            throw FormatError("matrix JSON must be an array of rows");
        int m = int(j.size());
        std::vector<int> flat;
        for (auto & row : j) {
            if (! row.is_array() || int(row.size()) != m)
                throw FormatError("matrix JSON must be square");
            for (auto & x : row) {
                if (! x.is_number_integer())
                    throw FormatError("matrix entries must be integers");
                flat.push_back(x.get<int>());
            }
        }
        return ColourMatrix(m, std::move(flat));
    }

    auto parse_matrix(std::string_view text) -> ColourMatrix
    {
        std::string compact;
        for (char c : text)
            if (! std::isspace(static_cast<unsigned char>(c)))
                compact += c;
        if (compact.empty())
            throw FormatError("empty matrix");

        if (compact.front() == '[') {
            auto parsed = nlohmann::json::parse(compact, nullptr, false);
            if (parsed.is_discarded())
                throw FormatError("matrix is not valid JSON: " + std::string(text));
            return matrix_from_json(parsed);
        }

        std::vector<std::vector<int>> rows(1);
        std::size_t pos = 0;
        while (pos <= compact.size()) {
            auto end = compact.find_first_of(",;", pos);
            if (end == std::string::npos)
                end = compact.size();
            std::string_view token(compact.data() + pos, end - pos);
            int value = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
                throw FormatError("bad matrix entry '" + std::string(token) + "' in '" + std::string(text) + "'");
            rows.back().push_back(value);
            if (end < compact.size() && compact[end] == ';')
                rows.emplace_back();
            pos = end + 1;
        }

        int m = int(rows.size());
        std::vector<int> flat;
        for (auto & r : rows) {
            if (int(r.size()) != m)
                throw FormatError("matrix '" + std::string(text) + "' is not square");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        return ColourMatrix(m, std::move(flat));
    }
}
