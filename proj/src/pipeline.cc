#include <perfcol/enumerate.hh>
#include <perfcol/error.hh>
#include <perfcol/pipeline.hh>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace perfcol
{
    extern const char * const bundled_fixture_text;

    // ---- fixtures --------------------------------------------------------

    auto Fixtures::list(const std::string & graph, int colours, const std::string & kind) const -> const ListFixture *
    {
        for (auto & l : lists)
            if (l.graph == graph && l.colours == colours && l.kind == kind)
                return &l;
        return nullptr;
    }

    auto fixtures_from_json(const nlohmann::json & j) -> Fixtures
    {
        try {
            Fixtures f;
            for (auto & s : j.at("table1")) {
                SpectrumFixture fixture{ s.at("graph"), s.at("locus"), {} };
                for (auto & e : s.at("eigenvalues"))
                    fixture.eigenvalues.emplace_back(e.at(0).get<std::int64_t>(), e.at(1).get<int>());
                f.spectra.push_back(std::move(fixture));
            }
            auto & counts = j.at("table2");
            f.count_columns = counts.at("columns").get<std::vector<std::string>>();
            for (auto & row : counts.at("rows")) {
                std::vector<CountCell> cells;
                for (auto & c : row.at("cells")) {
                    CountCell cell;
                    if (! c.at("realizable").is_null())
                        cell.realizable = c.at("realizable").get<int>();
                    if (! c.at("candidates").is_null())
                        cell.candidates = c.at("candidates").get<int>();
                    cells.push_back(cell);
                }
                if (cells.size() != f.count_columns.size())
                    throw FormatError("fixture count row has the wrong number of cells");
                f.counts[row.at("colours").get<int>()] = std::move(cells);
            }
            for (auto & l : j.at("lists")) {
                ListFixture fixture{ l.at("graph"), l.at("colours"), l.at("kind"), l.at("locus"), {} };
                for (auto & a : l.at("matrices"))
                    fixture.matrices.push_back(canonical(matrix_from_json(a)));
                std::sort(fixture.matrices.begin(), fixture.matrices.end());
                f.lists.push_back(std::move(fixture));
            }
            return f;
        }
        catch (const nlohmann::json::exception & e) {
            throw FormatError(std::string("malformed fixtures: ") + e.what());
        }
    }

    auto bundled_fixtures() -> const Fixtures &
    {
        static const Fixtures fixtures = fixtures_from_json(nlohmann::json::parse(bundled_fixture_text));
        return fixtures;
    }

    // ---- results store ---------------------------------------------------

    auto GraphResults::rebuild() const -> Graph
    {
        if (graph_id.starts_with("custom:"))
            return Graph(vertices, edges);
        return parse_graph_argument(graph_id);
    }

    auto ResultsStore::find(const std::string & graph_id, int colours) const -> const std::vector<CandidateRecord> *
    {
        auto g = _graphs.find(graph_id);
        if (g == _graphs.end())
            return nullptr;
        auto r = g->second.records.find(colours);
        return r == g->second.records.end() ? nullptr : &r->second;
    }

    auto ResultsStore::put(const Graph & g, int colours, std::vector<CandidateRecord> records) -> void
    {
        auto & entry = _graphs[g.id()];
        if (entry.graph_id.empty()) {
            entry.graph_id = g.id();
            entry.vertices = g.size();
            entry.degree = regularity(g).value_or(-1);
            if (g.family() == GraphFamily::custom)
                entry.edges = edges(g);
        }
        std::sort(records.begin(), records.end(), [](auto & x, auto & y) { return x.matrix < y.matrix; });
        entry.records[colours] = std::move(records);
    }

    auto ResultsStore::excluded(const std::string & graph_id) const -> ExcludedSet
    {
        ExcludedSet result;
        if (auto g = _graphs.find(graph_id) ; g != _graphs.end())
            for (auto & [m, records] : g->second.records)
                for (auto & r : records)
                    if (r.status == Status::excluded)
                        result.insert(r.matrix);
        return result;
    }

    auto ResultsStore::known(const std::string & graph_id) const -> std::map<ColourMatrix, CandidateRecord>
    {
        std::map<ColourMatrix, CandidateRecord> result;
        if (auto g = _graphs.find(graph_id) ; g != _graphs.end())
            for (auto & [m, records] : g->second.records)
                for (auto & r : records)
                    if (r.status != Status::unknown)
                        result.emplace(r.matrix, r);
        return result;
    }

    auto to_json(const ResultsStore & store) -> nlohmann::json
    {
        auto graphs = nlohmann::json::array();
        for (auto & [id, entry] : store.graphs()) {
            nlohmann::json g{ { "id", id }, { "vertices", entry.vertices }, { "degree", entry.degree } };
            if (entry.vertices <= max_char_poly_order)
                g["char_poly"] = to_json(char_poly(entry.rebuild()));
            if (! entry.edges.empty()) {
                auto e = nlohmann::json::array();
                for (auto [u, v] : entry.edges)
                    e.push_back({ u, v });
                g["edges"] = e;
            }
            auto counts = nlohmann::json::array();
            for (auto & [m, records] : entry.records) {
                int tally[3] = {};
                auto list = nlohmann::json::array();
                for (auto & r : records) {
                    ++tally[int(r.status)];
                    list.push_back(to_json(r));
                }
                counts.push_back({
                    { "colours", m },
                    { "candidates", records.size() },
                    { "realizable", tally[int(Status::realizable)] },
                    { "excluded", tally[int(Status::excluded)] },
                    { "unknown", tally[int(Status::unknown)] },
                    { "records", list },
                });
            }
            g["colour_counts"] = counts;
            graphs.push_back(g);
        }
        return {
            { "schema", store_schema },
            { "toolkit_version", toolkit_version },
            { "generated_at", store.generated_at },
            { "graphs", graphs },
        };
    }

    namespace
    {
        auto check_record(const Graph & g, const CandidateRecord & r, const std::string & where) -> void
        {
            auto fail = [&](const std::string & why) { throw StoreError(where + ": " + why); };
            if (canonical(r.matrix) != r.matrix)
                fail("matrix is not in canonical form");
            auto kind = certificate_kind(r.certificate);
            switch (r.status) {
                case Status::realizable: {
                    auto * w = std::get_if<WitnessCertificate>(&r.certificate);
                    if (! w)
                        fail("realizable record carries a " + kind + " certificate");
                    if (w->colouring.size() != g.size())
                        fail("witness has the wrong number of vertices");
                    auto check = verify(g, w->colouring);
                    if (! check)
                        fail("witness does not verify: " + check.explanation());
                    if (*check.matrix != r.matrix)
                        fail("witness verifies to " + to_string(*check.matrix));
                    break;
                }
                case Status::excluded:
                    if (std::holds_alternative<ClassSizeCertificate>(r.certificate)
                        || std::holds_alternative<ParityCertificate>(r.certificate)) {
                        if (! is_connected(g) || class_sizes(r.matrix, g.size()))
                            fail("class-size certificate does not hold");
                    }
                    else if (auto * m = std::get_if<MergeCertificate>(&r.certificate)) {
                        if (m->first < 0 || m->second >= r.matrix.order() || m->first >= m->second)
                            fail("merge certificate names colours out of range");
                        auto merged = merge_colours(r.matrix, m->first, m->second);
                        if (! merged || canonical(*merged) != canonical(m->merged))
                            fail("merge certificate does not reproduce its merged matrix");
                    }
                    else if (! std::holds_alternative<SearchExhaustedCertificate>(r.certificate))
                        fail("excluded record carries a " + kind + " certificate");
                    break;
                case Status::unknown:
                    if (! std::holds_alternative<BudgetExceededCertificate>(r.certificate)
                        && ! std::holds_alternative<std::monostate>(r.certificate))
                        fail("unknown record carries a " + kind + " certificate");
                    break;
            }
        }
    }

    auto store_from_json(const nlohmann::json & j) -> ResultsStore
    {
        ResultsStore store;
        try {
            if (j.at("schema") != store_schema)
                throw StoreError("unsupported store schema " + j.at("schema").dump());
            store.generated_at = j.value("generated_at", "");
            for (auto & gj : j.at("graphs")) {
                GraphResults entry;
                entry.graph_id = gj.at("id");
                entry.vertices = gj.at("vertices");
                entry.degree = gj.at("degree");
                if (gj.contains("edges"))
                    for (auto & e : gj.at("edges"))
                        entry.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
                auto g = entry.rebuild();
                if (g.size() != entry.vertices || regularity(g).value_or(-1) != entry.degree)
                    throw StoreError("graph " + entry.graph_id + " does not match its recorded size and degree");

                for (auto & cj : gj.at("colour_counts")) {
                    int m = cj.at("colours");
                    std::vector<CandidateRecord> records;
                    for (auto & rj : cj.at("records")) {
                        auto r = record_from_json(rj, entry.graph_id);
                        if (r.matrix.order() != m)
                            throw StoreError("record " + to_string(r.matrix) + " filed under " + std::to_string(m) + " colours");
                        check_record(g, r, entry.graph_id + " " + to_string(r.matrix));
                        records.push_back(std::move(r));
                    }
                    entry.records[m] = std::move(records);
                }
                store._graphs[entry.graph_id] = std::move(entry);
            }
        }
        catch (const nlohmann::json::exception & e) {
            throw StoreError(std::string("malformed store: ") + e.what());
        }
        catch (const FormatError & e) {
            throw StoreError(std::string("malformed store: ") + e.what());
        }

        // merges must land on matrices the same store excludes
        for (auto & [id, entry] : store._graphs) {
            auto excluded = store.excluded(id);
            for (auto & [m, records] : entry.records)
                for (auto & r : records)
                    if (auto * c = std::get_if<MergeCertificate>(&r.certificate))
                        if (! excluded.contains(canonical(c->merged)))
                            throw StoreError(id + " " + to_string(r.matrix) + ": merge target " + to_string(canonical(c->merged))
                                + " is not recorded as excluded");
        }
        return store;
    }

    auto load_store(const std::filesystem::path & path) -> ResultsStore
    {
        if (! std::filesystem::exists(path))
            return {};
        std::ifstream in(path);
        if (! in)
            throw StoreError("cannot read " + path.string());
        auto j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded())
            throw StoreError(path.string() + " is not valid JSON");
        return store_from_json(j);
    }

    auto save_store(ResultsStore & store, const std::filesystem::path & path) -> void
    {
        store.generated_at = timestamp();
        auto temporary = path;
        temporary += ".tmp";
        {
            std::ofstream out(temporary);
            if (! out)
                throw StoreError("cannot write " + temporary.string());
            out << to_json(store).dump(1) << '\n';
            if (! out)
                throw StoreError("failed writing " + temporary.string());
        }
        std::filesystem::rename(temporary, path);
    }

    auto timestamp() -> std::string
    {
        std::time_t t;
        if (const char * epoch = std::getenv("SOURCE_DATE_EPOCH"))
            t = std::time_t(std::strtoll(epoch, nullptr, 10));
        else
            t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm utc{};
        gmtime_r(&t, &utc);
        std::ostringstream s;
        s << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
        return s.str();
    }

    // ---- analysis --------------------------------------------------------

    auto spectral_candidates(const Graph & g, int colours, const AnalysisOptions & options) -> std::vector<ColourMatrix>
    {
        auto k = regularity(g);
        if (! k)
            throw PreconditionError("graph " + g.id() + " is not regular");
        if (*k == 0)
            throw PreconditionError("graph " + g.id() + " has no edges");
        auto all = enumerate_candidates(*k, colours, { options.enumeration_budget, options.jobs });
        if (g.size() > max_char_poly_order)
            return all;
        if (colours > g.size())
            return {};
        return spectral_filter(all, char_poly(g));
    }

    auto analyse(const Graph & g, int colours, ResultsStore & store, const AnalysisOptions & options)
        -> const std::vector<CandidateRecord> &
    {
        for (int m = std::min(2, colours) ; m <= colours ; ++m) {
            auto * cached = store.find(g.id(), m);
            if (cached && std::none_of(cached->begin(), cached->end(), [](auto & r) { return r.status == Status::unknown; }))
                continue;
            DecideOptions decide;
            decide.node_budget = options.node_budget;
            decide.jobs = options.jobs;
            decide.excluded = store.excluded(g.id());
            decide.known = store.known(g.id());
            store.put(g, m, decide_all(g, spectral_candidates(g, m, options), std::move(decide)));
        }
        return *store.find(g.id(), colours);
    }

    // ---- reproduction ----------------------------------------------------

    auto parse_target(std::string_view text) -> Target
    {
        if (text == "table1")
            return Target::table1;
        if (text == "table2")
            return Target::table2;
        if (text == "lists")
            return Target::lists;
        if (text == "appendix")
            return Target::appendix;
        if (text == "all")
            return Target::all;
        throw ParameterError("target must be table1, table2, lists, appendix or all, not '" + std::string(text) + "'");
    }

    auto display_name(const std::string & graph_id) -> std::string
    {
        if (graph_id.starts_with("hypercube:"))
            return graph_id.substr(10) + "-cube";
        if (graph_id.starts_with("complete:")) {
            int n = std::stoi(graph_id.substr(9));
            return std::to_string(n - 1) + "-simplex";
        }
        return graph_id;
    }

    namespace
    {
        auto pad(std::string s, std::size_t width) -> std::string
        {
            if (s.size() < width)
                s.append(width - s.size(), ' ');
            return s;
        }

        auto spectrum_text(const std::vector<std::pair<std::int64_t, int>> & eigenvalues) -> std::string
        {
            std::string s;
            for (auto [value, multiplicity] : eigenvalues) {
                s += (s.empty() ? "" : ", ") + std::to_string(value);
                if (multiplicity > 1)
                    s += "^" + std::to_string(multiplicity);
            }
            return s;
        }

        auto reproduce_spectra(Report & report, const Fixtures & fixtures) -> void
        {
            report.lines.push_back("graph spectra (characteristic polynomial against the listed eigenvalues)");
            auto rows = nlohmann::json::array();
            for (auto & f : fixtures.spectra) {
                auto g = parse_graph_argument(f.graph);
                auto p = char_poly(g);
                Polynomial expected({ 1 });
                for (auto [value, multiplicity] : f.eigenvalues)
                    expected = expected * Polynomial::linear_power(value, multiplicity);
                bool match = p == expected;
                auto roots = integer_roots(p, *regularity(g));
                report.mismatch |= ! match;
                report.lines.push_back("  " + pad(display_name(f.graph), 11) + pad(spectrum_text(roots.roots), 34)
                    + (match ? "match" : "MISMATCH, listed " + spectrum_text(f.eigenvalues)));
                rows.push_back({ { "graph", f.graph }, { "char_poly", to_json(p) }, { "match", match } });
            }
            report.json["table1"] = rows;
        }

        auto reproduce_counts(Report & report, ResultsStore & store, const AnalysisOptions & options,
            const Fixtures & fixtures) -> void
        {
            report.lines.push_back("realizable / candidate matrices (* = beyond the published table, ? = undecided)");
            std::string header = "  m ";
            for (auto & column : fixtures.count_columns)
                header += pad(display_name(column), 14);
            report.lines.push_back(header);

            auto rows = nlohmann::json::array();
            std::vector<std::string> notes;
            for (auto & [m, expected_cells] : fixtures.counts) {
                std::string line = "  " + pad(std::to_string(m), 2);
                auto cells = nlohmann::json::array();
                for (std::size_t c = 0 ; c < fixtures.count_columns.size() ; ++c) {
                    auto & expected = expected_cells[c];
                    auto g = parse_graph_argument(fixtures.count_columns[c]);
                    int realizable = 0, unknown = 0, candidates = 0;
                    for (auto & r : analyse(g, m, store, options)) {
                        ++candidates;
                        realizable += r.status == Status::realizable;
                        unknown += r.status == Status::unknown;
                    }

                    bool beyond = ! expected.realizable.has_value();
                    bool match = true;
                    if (expected.candidates && *expected.candidates != candidates)
                        match = false;
                    if (expected.realizable && unknown == 0 && *expected.realizable != realizable)
                        match = false;
                    report.mismatch |= ! match;
                    report.incomplete |= unknown > 0;

                    std::string text = std::to_string(realizable) + (unknown ? "+" + std::to_string(unknown) + "?" : "");
                    if (expected.candidates || m <= 4)
                        text += "/" + std::to_string(candidates);
                    if (beyond)
                        text += "*";
                    if (! match) {
                        text += "!";
                        std::string published = expected.realizable ? std::to_string(*expected.realizable) : "?";
                        if (expected.candidates)
                            published += "/" + std::to_string(*expected.candidates);
                        notes.push_back("  ! " + display_name(g.id()) + ", " + std::to_string(m) + " colours: computed "
                            + std::to_string(realizable) + "/" + std::to_string(candidates) + ", published " + published);
                    }
                    line += pad(text, 14);

                    nlohmann::json cell{
                        { "graph", g.id() },
                        { "realizable", realizable },
                        { "candidates", candidates },
                        { "unknown", unknown },
                        { "beyond_published", beyond },
                        { "match", match },
                    };
                    cell["expected"] = {
                        { "realizable", expected.realizable ? nlohmann::json(*expected.realizable) : nlohmann::json() },
                        { "candidates", expected.candidates ? nlohmann::json(*expected.candidates) : nlohmann::json() },
                    };
                    cells.push_back(cell);
                }
                report.lines.push_back(line);
                rows.push_back({ { "colours", m }, { "cells", cells } });
            }
            report.lines.insert(report.lines.end(), notes.begin(), notes.end());
            report.json["table2"] = { { "columns", fixtures.count_columns }, { "rows", rows } };
        }

        auto compare_list(Report & report, ResultsStore & store, const AnalysisOptions & options, const ListFixture & list)
            -> nlohmann::json
        {
            auto g = parse_graph_argument(list.graph);
            auto & records = analyse(g, list.colours, store, options);
            std::set<ColourMatrix> computed;
            int unknown = 0;
            for (auto & r : records) {
                if (list.kind == "candidates" || r.status == Status::realizable)
                    computed.insert(r.matrix);
                unknown += r.status == Status::unknown;
            }
            std::set<ColourMatrix> listed(list.matrices.begin(), list.matrices.end());

            std::vector<std::string> missing, extra;
            for (auto & a : listed)
                if (! computed.contains(a))
                    missing.push_back(to_string(a));
            for (auto & a : computed)
                if (! listed.contains(a))
                    extra.push_back(to_string(a));

            bool undecided = list.kind == "realizable" && unknown > 0;
            bool match = missing.empty() && extra.empty();
            if (undecided && extra.empty())
                report.incomplete = true;
            else
                report.mismatch |= ! match;

            std::string verdict = match ? "match" : undecided && extra.empty() ? "incomplete" : "MISMATCH";
            report.lines.push_back("  " + pad(list.locus + ":", 48) + std::to_string(computed.size()) + " computed, "
                + std::to_string(listed.size()) + " listed, " + verdict);
            for (auto & a : missing)
                report.lines.push_back("      listed only: " + a);
            for (auto & a : extra)
                report.lines.push_back("      computed only: " + a);

            auto matrices = nlohmann::json::array();
            for (auto & a : computed)
                matrices.push_back(to_json(a));
            return {
                { "graph", list.graph },
                { "colours", list.colours },
                { "kind", list.kind },
                { "locus", list.locus },
                { "computed", matrices },
                { "missing", missing },
                { "extra", extra },
                { "match", match },
            };
        }

        auto is_appendix(const ListFixture & l) -> bool
        {
            return l.graph == "hypercube:5" && l.colours == 4;
        }

        auto reproduce_lists(Report & report, ResultsStore & store, const AnalysisOptions & options,
            const Fixtures & fixtures, bool appendix) -> void
        {
            report.lines.push_back(appendix ? "5-cube, 4 colours (canonical forms)" : "matrix lists (canonical forms)");
            auto results = nlohmann::json::array();
            for (auto & list : fixtures.lists)
                if (is_appendix(list) == appendix)
                    results.push_back(compare_list(report, store, options, list));

            if (appendix) {
                int realizable = 0, unknown = 0, excluded = 0;
                for (auto & r : analyse(parse_graph_argument("hypercube:5"), 4, store, options)) {
                    realizable += r.status == Status::realizable;
                    excluded += r.status == Status::excluded;
                    unknown += r.status == Status::unknown;
                }
                report.lines.push_back("  beyond the published list: " + std::to_string(realizable) + " realizable, "
                    + std::to_string(excluded) + " excluded, " + std::to_string(unknown) + " undecided");
                report.incomplete |= unknown > 0;
                report.json["appendix"] = results;
                report.json["appendix_status"] = { { "realizable", realizable }, { "excluded", excluded }, { "unknown", unknown } };
            }
            else
                report.json["lists"] = results;
        }
    }

    auto reproduce(Target target, ResultsStore & store, const AnalysisOptions & options, const Fixtures & fixtures) -> Report
    {
        Report report;
        if (target == Target::table1 || target == Target::all)
            reproduce_spectra(report, fixtures);
        if (target == Target::table2 || target == Target::all)
            reproduce_counts(report, store, options, fixtures);
        if (target == Target::lists || target == Target::all)
            reproduce_lists(report, store, options, fixtures, false);
        if (target == Target::appendix || target == Target::all)
            reproduce_lists(report, store, options, fixtures, true);
        report.json["mismatch"] = report.mismatch;
        report.json["incomplete"] = report.incomplete;
        return report;
    }
}
