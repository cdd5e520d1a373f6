#include <perfcol/error.hh>
#include <perfcol/sieve.hh>

#include <algorithm>
#include <deque>

namespace perfcol
{
    namespace
    {
        auto is_integer(const Rational & q) -> bool
        {
            return denominator(q) == 1;
        }

        template <class... F>
        struct overloaded : F...
        {
            using F::operator()...;
        };
    }

    auto BalanceSolution::sizes() const -> std::optional<ClassSizes>
    {
        if (verdict != BalanceVerdict::integral)
            return std::nullopt;
        ClassSizes result;
        for (auto & q : fractions)
            result.v.push_back(static_cast<std::int64_t>(numerator(q)));
        return result;
    }

    auto BalanceSolution::explanation() const -> std::string
    {
        switch (verdict) {
            case BalanceVerdict::integral: {
                std::string s = "class sizes (";
                for (std::size_t i = 0 ; i < fractions.size() ; ++i)
                    s += (i ? ", " : "") + fractions[i].str();
                return s + ")";
            }
            case BalanceVerdict::non_integral:
                for (std::size_t i = 0 ; i < fractions.size() ; ++i)
                    if (! is_integer(fractions[i]))
                        return "v" + std::to_string(i + 1) + " = " + fractions[i].str() + " is not an integer";
                break;
            case BalanceVerdict::parity:
                return "colour " + std::to_string(*parity_colour + 1) + " has " + fractions[*parity_colour].str()
                    + " vertices, so its internal edge ends are odd in number";
            case BalanceVerdict::inconsistent:
                return "the class-size balance system has no positive solution";
            case BalanceVerdict::reducible:
                return "matrix is reducible";
        }
        return {};
    }

    auto solve_balance(const ColourMatrix & a, std::int64_t vertices) -> BalanceSolution
    {
        int m = a.order();
        BalanceSolution result;
        if (m == 0 || ! irreducible(a)) {
            result.verdict = BalanceVerdict::reducible;
            return result;
        }

        // w_j = w_i a_ij / a_ji along a breadth-first spanning tree from colour 0
        std::vector<Rational> w(m, 0);
        std::vector<char> reached(m, 0);
        std::deque<int> queue{ 0 };
        w[0] = 1;
        reached[0] = 1;
        while (! queue.empty()) {
            int i = queue.front();
            queue.pop_front();
            for (int j = 0 ; j < m ; ++j)
                if (j != i && ! reached[j] && a(i, j) != 0) {
                    if (a(j, i) == 0) {
                        result.verdict = BalanceVerdict::inconsistent;
                        return result;
                    }
                    w[j] = w[i] * a(i, j) / a(j, i);
                    reached[j] = 1;
                    queue.push_back(j);
                }
        }
        for (int i = 0 ; i < m ; ++i)
            for (int j = 0 ; j < m ; ++j)
                if (w[i] * a(i, j) != w[j] * a(j, i)) {
                    result.verdict = BalanceVerdict::inconsistent;
                    return result;
                }

        Rational total = 0;
        for (auto & x : w)
            total += x;
        for (auto & x : w)
            result.fractions.push_back(x * vertices / total);

        if (! std::all_of(result.fractions.begin(), result.fractions.end(), is_integer)) {
            result.verdict = BalanceVerdict::non_integral;
            return result;
        }
        for (int i = 0 ; i < m ; ++i)
            if (numerator(result.fractions[i]) * a(i, i) % 2 != 0) {
                result.verdict = BalanceVerdict::parity;
                result.parity_colour = i;
                return result;
            }
        result.verdict = BalanceVerdict::integral;
        return result;
    }

    auto class_sizes(const ColourMatrix & a, std::int64_t vertices) -> std::optional<ClassSizes>
    {
        return solve_balance(a, vertices).sizes();
    }

    auto to_string(Status s) -> std::string
    {
        switch (s) {
            case Status::realizable: return "realizable";
            case Status::excluded: return "excluded";
            case Status::unknown: return "unknown";
        }
        return {};
    }

    auto certificate_kind(const Certificate & c) -> std::string
    {
        return std::visit(overloaded{
            [](const std::monostate &) { return std::string("none"); },
            [](const WitnessCertificate &) { return std::string("witness"); },
            [](const ClassSizeCertificate &) { return std::string("class-size"); },
            [](const ParityCertificate &) { return std::string("parity"); },
            [](const MergeCertificate &) { return std::string("merge"); },
            [](const SearchExhaustedCertificate &) { return std::string("search-exhausted"); },
            [](const BudgetExceededCertificate &) { return std::string("budget-exceeded"); },
        }, c);
    }

    auto describe(const CandidateRecord & r) -> std::string
    {
        return std::visit(overloaded{
            [](const std::monostate &) { return std::string("not yet decided"); },
            [](const WitnessCertificate &) { return std::string("witness colouring"); },
            [](const ClassSizeCertificate & c) { return c.detail; },
            [](const ParityCertificate & c) { return c.detail; },
            [](const MergeCertificate & c) {
                return "merging colours " + std::to_string(c.first + 1) + " and " + std::to_string(c.second + 1)
                    + " gives excluded " + to_string(canonical(c.merged));
            },
            [](const SearchExhaustedCertificate & c) {
                return "search exhausted after " + std::to_string(c.nodes) + " nodes";
            },
            [](const BudgetExceededCertificate & c) {
                return "budget exceeded after " + std::to_string(c.nodes) + " nodes";
            },
        }, r.certificate);
    }

    auto to_json(const CandidateRecord & r, bool with_timing) -> nlohmann::json
    {
        nlohmann::json cert{ { "kind", certificate_kind(r.certificate) } };
        std::visit(overloaded{
            [](const std::monostate &) {},
            [&](const WitnessCertificate & c) { cert["colouring"] = to_json(c.colouring); },
            [&](const ClassSizeCertificate & c) {
                auto fractions = nlohmann::json::array();
                for (auto & q : c.fractions)
                    fractions.push_back(q.str());
                cert["fractions"] = fractions;
                cert["detail"] = c.detail;
            },
            [&](const ParityCertificate & c) {
                cert["colour"] = c.colour + 1;
                cert["size"] = c.size;
                cert["detail"] = c.detail;
            },
            [&](const MergeCertificate & c) {
                cert["colours"] = { c.first + 1, c.second + 1 };
                cert["merged"] = to_json(canonical(c.merged));
            },
            [&](const SearchExhaustedCertificate & c) { cert["nodes"] = c.nodes; },
            [&](const BudgetExceededCertificate & c) { cert["nodes"] = c.nodes; },
        }, r.certificate);

        nlohmann::json j{
            { "matrix", to_json(r.matrix) },
            { "status", to_string(r.status) },
            { "certificate", cert },
            { "nodes", r.nodes },
            { "max_depth", r.max_depth },
        };
        if (with_timing)
            j["seconds"] = r.seconds;
        return j;
    }

    auto record_from_json(const nlohmann::json & j, const std::string & graph_id) -> CandidateRecord
    {
        try {
            CandidateRecord r;
            r.matrix = matrix_from_json(j.at("matrix"));
            r.graph_id = graph_id;
            auto status = j.at("status").get<std::string>();
            if (status == "realizable")
                r.status = Status::realizable;
            else if (status == "excluded")
                r.status = Status::excluded;
            else if (status == "unknown")
                r.status = Status::unknown;
            else
                throw FormatError("unknown status '" + status + "'");
            r.nodes = j.value("nodes", std::uint64_t(0));
            r.max_depth = j.value("max_depth", 0);

            auto & cert = j.at("certificate");
            auto kind = cert.at("kind").get<std::string>();
            if (kind == "witness")
                r.certificate = WitnessCertificate{ colouring_from_json(cert.at("colouring"), r.matrix.order()) };
            else if (kind == "class-size") {
                ClassSizeCertificate c;
                for (auto & q : cert.at("fractions"))
                    c.fractions.emplace_back(q.get<std::string>());
                c.detail = cert.at("detail").get<std::string>();
                r.certificate = std::move(c);
            }
            else if (kind == "parity")
                r.certificate = ParityCertificate{ cert.at("colour").get<int>() - 1, cert.at("size").get<std::int64_t>(),
                    cert.at("detail").get<std::string>() };
            else if (kind == "merge") {
                auto colours = cert.at("colours");
                r.certificate = MergeCertificate{ colours.at(0).get<int>() - 1, colours.at(1).get<int>() - 1,
                    matrix_from_json(cert.at("merged")) };
            }
            else if (kind == "search-exhausted")
                r.certificate = SearchExhaustedCertificate{ cert.at("nodes").get<std::uint64_t>() };
            else if (kind == "budget-exceeded")
                r.certificate = BudgetExceededCertificate{ cert.at("nodes").get<std::uint64_t>() };
            else if (kind != "none")
                throw FormatError("unknown certificate kind '" + kind + "'");
            return r;
        }
        catch (const nlohmann::json::exception & e) {
            throw FormatError(std::string("malformed candidate record: ") + e.what());
        }
        catch (const std::runtime_error & e) {
            // cpp_rational reports bad fraction text this way
            if (dynamic_cast<const FormatError *>(&e))
                throw;
            throw FormatError(std::string("malformed candidate record: ") + e.what());
        }
    }

    auto merge_exclude(const ColourMatrix & candidate, const ExcludedSet & excluded) -> std::optional<MergeCertificate>
    {
        for (int i = 0 ; i < candidate.order() ; ++i)
            for (int j = i + 1 ; j < candidate.order() ; ++j)
                if (auto merged = merge_colours(candidate, i, j))
                    if (excluded.contains(canonical(*merged)))
                        return MergeCertificate{ i, j, *merged };
        return std::nullopt;
    }

    namespace
    {
        auto balance_exclude(const ColourMatrix & candidate, std::int64_t vertices) -> std::optional<Certificate>
        {
            auto solution = solve_balance(candidate, vertices);
            switch (solution.verdict) {
                case BalanceVerdict::non_integral:
                case BalanceVerdict::inconsistent:
                    return ClassSizeCertificate{ solution.fractions, solution.explanation() };
                case BalanceVerdict::parity: {
                    int i = *solution.parity_colour;
                    return ParityCertificate{ i, static_cast<std::int64_t>(numerator(solution.fractions[i])),
                        solution.explanation() };
                }
                default:
                    return std::nullopt;
            }
        }
    }

    auto class_size_exclude(const ColourMatrix & candidate, const Graph & g) -> std::optional<Certificate>
    {
        if (! is_connected(g))
            return std::nullopt;
        return balance_exclude(candidate, g.size());
    }

    auto sieve_pass(std::vector<ColourMatrix> candidates, const Graph & g, ExcludedSet & excluded) -> SieveResult
    {
        for (auto & a : candidates)
            a = canonical(a);
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        SieveResult result;
        auto exclude = [&](const ColourMatrix & a, Certificate certificate) {
            result.excluded.push_back({ a, g.id(), Status::excluded, std::move(certificate) });
            excluded.insert(a);
        };

        bool connected = is_connected(g);
        std::vector<ColourMatrix> pending;
        for (auto & a : candidates) {
            if (auto certificate = connected ? balance_exclude(a, g.size()) : std::nullopt)
                exclude(a, std::move(*certificate));
            else
                pending.push_back(a);
        }

        // Merges lower the colour count, so one sweep in increasing order
        // already reaches the fixed point; the loop makes that explicit.
        for (bool changed = true ; changed ; ) {
            changed = false;
            std::vector<ColourMatrix> remaining;
            for (auto & a : pending) {
                if (auto certificate = merge_exclude(a, excluded)) {
                    exclude(a, std::move(*certificate));
                    changed = true;
                }
                else
                    remaining.push_back(a);
            }
            pending = std::move(remaining);
        }

        std::sort(result.excluded.begin(), result.excluded.end(),
            [](auto & x, auto & y) { return x.matrix < y.matrix; });
        result.survivors = std::move(pending);
        return result;
    }
}
