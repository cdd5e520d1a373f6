#include <perfcol/enumerate.hh>
#include <perfcol/error.hh>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace perfcol
{
    namespace
    {
        struct Budget
        {
            std::uint64_t limit;
            std::atomic<std::uint64_t> used{ 0 };
            std::atomic<bool> exhausted{ false };

            auto spend() -> bool
            {
                auto n = used.fetch_add(1, std::memory_order_relaxed) + 1;
                if (limit != 0 && n > limit) {
                    exhausted = true;
                    return false;
                }
                return ! exhausted.load(std::memory_order_relaxed);
            }
        };

        /// Row-by-row orderly generation. Row r is chosen once rows 0..r-1 are
        /// fixed; entries left of the diagonal inherit their zero pattern from
        /// the transposed entries already placed. After each row we test the
        /// colour cycles closed by that row, whether later rows can still meet
        /// their forced nonzeros, and whether some relabelling that only reads
        /// known rows is already lexicographically smaller.
        class Enumerator
        {
        public:
            Enumerator(int k, int m, Budget & budget) :
                _k(k), _m(m), _a(std::size_t(m) * m, 0), _budget(budget)
            {
            }

            auto rows_zero() -> std::vector<std::vector<int>>
            {
                std::vector<std::vector<int>> result;
                fill(0, 0, _k, [&] { result.emplace_back(_a.begin(), _a.begin() + _m); });
                return result;
            }

            auto run_from(const std::vector<int> & first_row) -> void
            {
                std::copy(first_row.begin(), first_row.end(), _a.begin());
                if (! _budget.spend())
                    return;
                if (row_acceptable(0))
                    descend(1);
            }

            auto results() -> std::vector<ColourMatrix> & { return _found; }

        private:
            int _k, _m;
            std::vector<int> _a;
            Budget & _budget;
            std::vector<ColourMatrix> _found;
            std::vector<int> _perm;
            std::vector<char> _used;

            auto at(int i, int j) -> int & { return _a[i * _m + j]; }

            auto lower_bound(int r, int j) -> int
            {
                if (j < r)
                    return at(j, r) == 0 ? 0 : 1;
                if (j == r && r > 0)
                    return at(0, 0);
                if (r == 0 && j >= 2)
                    return at(0, j - 1);
                return 0;
            }

            auto forced_zero(int r, int j) -> bool
            {
                return j < r && at(j, r) == 0;
            }

            template <typename Emit>
            auto fill(int r, int j, int remaining, const Emit & emit) -> void
            {
                if (j == _m) {
                    if (remaining == 0)
                        emit();
                    return;
                }
                if (forced_zero(r, j)) {
                    at(r, j) = 0;
                    fill(r, j + 1, remaining, emit);
                    return;
                }

                int rest_minimum = 0;
                for (int l = j + 1 ; l < _m ; ++l)
                    if (l < r && ! forced_zero(r, l))
                        rest_minimum += 1;
                    else if (l == r)
                        rest_minimum += at(0, 0);
                int lo = lower_bound(r, j);
                int hi = remaining - rest_minimum;
                if (j == _m - 1)
                    lo = std::max(lo, remaining), hi = std::min(hi, remaining);

                for (int x = lo ; x <= hi ; ++x) {
                    at(r, j) = x;
                    fill(r, j + 1, remaining - x, emit);
                }
            }

            auto descend(int r) -> void
            {
                if (r == _m) {
                    ColourMatrix candidate(_m, _a);
                    if (irreducible(candidate))
                        _found.push_back(std::move(candidate));
                    return;
                }
                fill(r, 0, _k, [&] {
                    if (! _budget.spend())
                        return;
                    if (row_acceptable(r))
                        descend(r + 1);
                });
            }

            auto row_acceptable(int r) -> bool
            {
                return cycles_through(r) && later_rows_feasible(r) && no_smaller_relabelling(r + 1);
            }

            // Consistency restricted to cycles whose largest index is r. Any
            // zero entry along a path zeroes both products (weak symmetry), so
            // such paths are dropped.
            auto cycles_through(int r) -> bool
            {
                std::vector<char> on_path(_m, 0);
                on_path[r] = 1;
                auto walk = [&](auto & self, int last, int length, long long forward, long long backward) -> bool {
                    if (length >= 3 && forward * at(last, r) != backward * at(r, last))
                        return false;
                    for (int next = 0 ; next < r ; ++next) {
                        if (on_path[next] || at(last, next) == 0)
                            continue;
                        on_path[next] = 1;
                        bool ok = self(self, next, length + 1, forward * at(last, next), backward * at(next, last));
                        on_path[next] = 0;
                        if (! ok)
                            return false;
                    }
                    return true;
                };
                return walk(walk, r, 1, 1, 1);
            }

            auto later_rows_feasible(int r) -> bool
            {
                for (int i = r + 1 ; i < _m ; ++i) {
                    int forced = at(0, 0);
                    for (int j = 0 ; j <= r ; ++j)
                        if (at(j, i) != 0)
                            ++forced;
                    if (forced > _k)
                        return false;
                }
                return true;
            }

            // Searches relabellings perm whose permuted rows can be read from
            // the first `known` rows. Returns false as soon as one yields a
            // strictly smaller row-major prefix.
            auto no_smaller_relabelling(int known) -> bool
            {
                _perm.assign(_m, 0);
                _used.assign(_m, 0);
                auto place = [&](auto & self, int t) -> bool {
                    if (t == _m) {
                        // Rows past `known` hold stale values, so comparison stops there.
                        for (int i = 1 ; i < known && _perm[i] < known ; ++i)
                            for (int j = 0 ; j < _m ; ++j) {
                                int x = at(_perm[i], _perm[j]), y = at(i, j);
                                if (x < y)
                                    return false;
                                if (x > y)
                                    return true;
                            }
                        return true;
                    }
                    for (int c = 0 ; c < _m ; ++c) {
                        if (_used[c] || (t == 0 && c >= known))
                            continue;
                        _perm[t] = c;
                        int x = at(_perm[0], c), y = at(0, t);
                        if (x > y)
                            continue;
                        if (x < y)
                            return false;
                        _used[c] = 1;
                        bool ok = self(self, t + 1);
                        _used[c] = 0;
                        if (! ok)
                            return false;
                    }
                    return true;
                };
                return place(place, 0);
            }
        };
    }

    auto enumerate_candidates(int degree, int colours, const EnumerationOptions & options, EnumerationStats * stats)
        -> std::vector<ColourMatrix>
    {
        if (degree < 1)
            throw ParameterError("degree must be positive");
        if (colours < 1 || colours > max_colours)
            throw ParameterError("colour count " + std::to_string(colours) + " outside 1.." + std::to_string(max_colours));

        Budget budget{ options.node_budget };
        auto first_rows = Enumerator(degree, colours, budget).rows_zero();

        std::vector<ColourMatrix> all;
        std::mutex merge_lock;
        std::atomic<std::size_t> next{ 0 };
        auto worker = [&] {
            Enumerator e(degree, colours, budget);
            for (std::size_t i ; (i = next++) < first_rows.size() && ! budget.exhausted ; )
                e.run_from(first_rows[i]);
            std::lock_guard guard(merge_lock);
            auto & mine = e.results();
            all.insert(all.end(), std::make_move_iterator(mine.begin()), std::make_move_iterator(mine.end()));
        };

        int jobs = std::max(1, std::min<int>(options.jobs, int(first_rows.size())));
        if (jobs == 1)
            worker();
        else {
            std::vector<std::jthread> threads;
            for (int t = 0 ; t < jobs ; ++t)
                threads.emplace_back(worker);
        }

        if (stats)
            stats->nodes = budget.used;
        if (budget.exhausted)
            throw IncompleteError("candidate enumeration for degree " + std::to_string(degree) + " with "
                + std::to_string(colours) + " colours exceeded its budget of "
                + std::to_string(options.node_budget) + " nodes");

        std::sort(all.begin(), all.end());
        return all;
    }
}
