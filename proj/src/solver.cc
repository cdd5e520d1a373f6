#include <perfcol/error.hh>
#include <perfcol/solver.hh>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <deque>
#include <thread>

namespace perfcol
{
    auto to_string(Verdict v) -> std::string
    {
        switch (v) {
            case Verdict::sat: return "SAT";
            case Verdict::unsat: return "UNSAT";
            case Verdict::budget_exceeded: return "BUDGET_EXCEEDED";
        }
        return {};
    }

    auto to_string(SearchMode m) -> std::string
    {
        switch (m) {
            case SearchMode::first: return "first";
            case SearchMode::count: return "count";
            case SearchMode::all: return "all";
        }
        return {};
    }

    auto parse_search_mode(std::string_view text) -> SearchMode
    {
        if (text == "first")
            return SearchMode::first;
        if (text == "count")
            return SearchMode::count;
        if (text == "all")
            return SearchMode::all;
        throw ParameterError("search mode must be first, count or all, not '" + std::string(text) + "'");
    }

    namespace
    {
        auto bfs_order(const Graph & g) -> std::vector<int>
        {
            std::vector<int> order;
            std::vector<char> seen(g.size(), 0);
            for (int root = 0 ; root < g.size() ; ++root) {
                if (seen[root])
                    continue;
                seen[root] = 1;
                std::size_t head = order.size();
                order.push_back(root);
                while (head < order.size()) {
                    int v = order[head++];
                    for (int w : g.neighbours(v))
                        if (! seen[w]) {
                            seen[w] = 1;
                            order.push_back(w);
                        }
                }
            }
            return order;
        }

        class Searcher
        {
        public:
            Searcher(const Graph & g, const ColourMatrix & a, std::vector<int> limit, const SolveOptions & options) :
                _g(g), _n(g.size()), _m(a.order()), _a(a.entries()), _options(options),
                _order(bfs_order(g)), _colour(_n, -1), _count(std::size_t(_n) * _m, 0), _full(_n, 0),
                _free(_n), _class_count(_m, 0), _limit(std::move(limit)), _choices(_n + 1, 0)
            {
                for (int v = 0 ; v < _n ; ++v)
                    _free[v] = g.degree(v);
                _all = (std::uint32_t(1) << _m) - 1;

                _symmetric = options.mode == SearchMode::first && options.symmetry_breaking
                    && g.neighbourhood_symmetric() && _n > 0;
                if (_symmetric) {
                    _first_colour = int(std::min_element(_limit.begin(), _limit.end()) - _limit.begin());
                    _neighbourhood_end = g.degree(0);
                }
            }

            auto run(SearchOutcome & out) -> void
            {
                if (_n == 0)
                    return;
                int p = 0;
                _choices[0] = choices(0);
                while (true) {
                    if (_choices[p] == 0) {
                        if (p == 0)
                            break;
                        --p;
                        unassign(_order[p]);
                        continue;
                    }
                    int c = std::countr_zero(_choices[p]);
                    _choices[p] &= _choices[p] - 1;
                    if (out.stats.nodes == _options.node_budget) {
                        out.verdict = Verdict::budget_exceeded;
                        return;
                    }
                    ++out.stats.nodes;

                    int u = _order[p];
                    assign(u, c);
                    if (! consistent_after(u)) {
                        unassign(u);
                        continue;
                    }
                    out.stats.max_depth = std::max(out.stats.max_depth, p + 1);
                    if (p + 1 == _n) {
                        ++out.solutions;
                        if (_options.mode != SearchMode::count && out.witnesses.size() < _options.max_witnesses)
                            out.witnesses.emplace_back(_m, _colour, _g.id());
                        if (_options.mode == SearchMode::first)
                            break;
                        unassign(u);
                        continue;
                    }
                    ++p;
                    _choices[p] = choices(p);
                }
                out.verdict = out.solutions > 0 ? Verdict::sat : Verdict::unsat;
            }

        private:
            const Graph & _g;
            int _n, _m;
            const std::vector<int> & _a;
            const SolveOptions & _options;
            std::vector<int> _order;
            std::vector<int> _colour;
            std::vector<int> _count;           // coloured neighbours of v with colour j
            std::vector<std::uint32_t> _full;  // colours a coloured vertex needs no more of
            std::vector<int> _free;            // uncoloured neighbours
            std::vector<int> _class_count;
            std::vector<int> _limit;
            std::vector<std::uint32_t> _choices;
            std::uint32_t _all = 0;
            int _coloured = 0;
            bool _symmetric = false;
            int _first_colour = 0, _neighbourhood_end = 0;

            auto need(int v, int j) const -> int { return _a[_colour[v] * _m + j] - _count[v * _m + j]; }

            auto assign(int u, int c) -> void
            {
                _colour[u] = c;
                ++_class_count[c];
                ++_coloured;
                std::uint32_t full = 0;
                for (int j = 0 ; j < _m ; ++j)
                    if (_count[u * _m + j] == _a[c * _m + j])
                        full |= std::uint32_t(1) << j;
                _full[u] = full;
                for (int w : _g.neighbours(u)) {
                    ++_count[w * _m + c];
                    --_free[w];
                    if (_colour[w] >= 0 && _count[w * _m + c] == _a[_colour[w] * _m + c])
                        _full[w] |= std::uint32_t(1) << c;
                }
            }

            auto unassign(int u) -> void
            {
                int c = _colour[u];
                for (int w : _g.neighbours(u)) {
                    if (_colour[w] >= 0 && _count[w * _m + c] == _a[_colour[w] * _m + c])
                        _full[w] &= ~(std::uint32_t(1) << c);
                    --_count[w * _m + c];
                    ++_free[w];
                }
                --_class_count[c];
                --_coloured;
                _colour[u] = -1;
            }

            // Colours an uncoloured vertex could still take.
            auto domain(int x) const -> std::uint32_t
            {
                std::uint32_t forbidden = 0;
                for (int y : _g.neighbours(x))
                    if (_colour[y] >= 0)
                        forbidden |= _full[y];
                std::uint32_t result = 0;
                for (int c = 0 ; c < _m ; ++c) {
                    if (forbidden >> c & 1 || _class_count[c] >= _limit[c])
                        continue;
                    bool fits = true;
                    for (int j = 0 ; j < _m && fits ; ++j)
                        fits = _count[x * _m + j] <= _a[c * _m + j];
                    if (fits)
                        result |= std::uint32_t(1) << c;
                }
                return result;
            }

            auto choices(int p) const -> std::uint32_t
            {
                auto d = domain(_order[p]);
                if (_symmetric) {
                    if (p == 0)
                        d &= std::uint32_t(1) << _first_colour;
                    else if (p >= 2 && p <= _neighbourhood_end)
                        d &= _all << _colour[_order[p - 1]];
                }
                return d;
            }

            // Can the uncoloured neighbours of coloured v still supply its row?
            auto supplied(int v) const -> bool
            {
                if (_free[v] == 0)
                    return true;
                std::uint32_t wanted = ~_full[v] & _all;
                if (wanted == 0)
                    return false;
                int offer[max_colours] = {};
                for (int x : _g.neighbours(v)) {
                    if (_colour[x] >= 0)
                        continue;
                    auto d = domain(x) & wanted;
                    if (d == 0)
                        return false;
                    for (auto bits = d ; bits ; bits &= bits - 1)
                        ++offer[std::countr_zero(bits)];
                }
                for (auto bits = wanted ; bits ; bits &= bits - 1) {
                    int j = std::countr_zero(bits);
                    if (offer[j] < need(v, j))
                        return false;
                }
                return true;
            }

            auto consistent_after(int u) const -> bool
            {
                int remaining = _n - _coloured;
                int unused = 0;
                for (int c = 0 ; c < _m ; ++c)
                    unused += _class_count[c] == 0;
                if (unused > remaining)
                    return false;

                if (! supplied(u))
                    return false;
                for (int w : _g.neighbours(u)) {
                    if (_colour[w] >= 0) {
                        if (! supplied(w))
                            return false;
                    }
                    else if (domain(w) == 0)
                        return false;
                }
                return true;
            }
        };
    }

    auto solve(const Graph & g, const ColourMatrix & a, const SolveOptions & options) -> SearchOutcome
    {
        auto start = std::chrono::steady_clock::now();
        int m = a.order();
        if (m < 1 || m > max_colours)
            throw ParameterError("colour count " + std::to_string(m) + " outside 1.." + std::to_string(max_colours));
        auto k = regularity(g);
        if (! k || a.degree() != k)
            throw PreconditionError("graph " + g.id() + " is not regular of degree equal to the row sums of "
                + to_string(a));
        if (! weak_symmetry(a) || ! consistency(a))
            throw PreconditionError("matrix " + to_string(a) + " is not weakly symmetric and consistent");

        SearchOutcome out;
        std::vector<int> limit(m, std::max(0, g.size() - (m - 1)));
        if (options.use_class_sizes && is_connected(g)) {
            auto balance = solve_balance(a, g.size());
            if (auto sizes = balance.sizes()) {
                for (int i = 0 ; i < m ; ++i)
                    limit[i] = int(sizes->v[i]);
            }
            else {
                out.verdict = Verdict::unsat;
                out.class_size_failure = balance.explanation();
                return out;
            }
        }

        Searcher(g, a, std::move(limit), options).run(out);
        out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        for (auto & w : out.witnesses) {
            auto check = verify(g, w);
            if (! check || *check.matrix != a)
                throw std::logic_error("search produced a colouring that does not verify: " + check.explanation());
        }
        return out;
    }

    auto decide_all(const Graph & g, std::vector<ColourMatrix> candidates, DecideOptions options)
        -> std::vector<CandidateRecord>
    {
        if (! regularity(g))
            throw PreconditionError("graph " + g.id() + " is not regular");
        for (auto & a : candidates)
            a = canonical(a);
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        auto & excluded = options.excluded;
        std::vector<CandidateRecord> records;

        for (auto group_begin = candidates.begin() ; group_begin != candidates.end() ; ) {
            int m = group_begin->order();
            auto group_end = std::find_if(group_begin, candidates.end(), [&](auto & a) { return a.order() != m; });

            std::vector<ColourMatrix> fresh;
            for (auto it = group_begin ; it != group_end ; ++it) {
                auto known = options.known.find(*it);
                if (known != options.known.end() && known->second.status != Status::unknown) {
                    records.push_back(known->second);
                    if (known->second.status == Status::excluded)
                        excluded.insert(*it);
                }
                else
                    fresh.push_back(*it);
            }

            auto sieved = sieve_pass(std::move(fresh), g, excluded);
            records.insert(records.end(), sieved.excluded.begin(), sieved.excluded.end());

            auto & survivors = sieved.survivors;
            std::vector<CandidateRecord> solved(survivors.size());
            std::atomic<std::size_t> next{ 0 };
            auto worker = [&] {
                for (std::size_t i ; (i = next++) < survivors.size() ; ) {
                    SolveOptions so;
                    so.node_budget = options.node_budget;
                    auto outcome = solve(g, survivors[i], so);
                    auto & r = solved[i];
                    r.matrix = survivors[i];
                    r.graph_id = g.id();
                    r.nodes = outcome.stats.nodes;
                    r.max_depth = outcome.stats.max_depth;
                    r.seconds = outcome.stats.seconds;
                    switch (outcome.verdict) {
                        case Verdict::sat:
                            r.status = Status::realizable;
                            r.certificate = WitnessCertificate{ outcome.witnesses.front() };
                            break;
                        case Verdict::unsat:
                            r.status = Status::excluded;
                            r.certificate = SearchExhaustedCertificate{ outcome.stats.nodes };
                            break;
                        case Verdict::budget_exceeded:
                            r.status = Status::unknown;
                            r.certificate = BudgetExceededCertificate{ outcome.stats.nodes };
                            break;
                    }
                }
            };
            int jobs = std::max(1, std::min<int>(options.jobs, int(survivors.size())));
            if (jobs == 1)
                worker();
            else {
                std::vector<std::jthread> threads;
                for (int t = 0 ; t < jobs ; ++t)
                    threads.emplace_back(worker);
            }

            for (auto & r : solved) {
                if (r.status == Status::excluded)
                    excluded.insert(r.matrix);
                records.push_back(std::move(r));
            }
            group_begin = group_end;
        }

        std::sort(records.begin(), records.end(), [](auto & x, auto & y) { return x.matrix < y.matrix; });
        return records;
    }
}
