#pragma once

#include <perfcol/colour_matrix.hh>
#include <perfcol/colouring.hh>
#include <perfcol/graph.hh>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace perfcol
{
    using Rational = boost::multiprecision::cpp_rational;

    /// Canonical matrices proven unrealizable on one graph.
    using ExcludedSet = std::set<ColourMatrix>;

    /// v_i vertices of colour i; v_i a_ij = v_j a_ji and v_i a_ii is even.
    struct ClassSizes
    {
        std::vector<std::int64_t> v;

        auto operator==(const ClassSizes &) const -> bool = default;
    };

    enum class BalanceVerdict
    {
        integral,
        non_integral,
        parity,
        inconsistent,
        reducible
    };

    struct BalanceSolution
    {
        BalanceVerdict verdict = BalanceVerdict::reducible;
        /// Scaled to sum n; empty unless the system has a positive solution.
        std::vector<Rational> fractions;
        /// Colour whose class would have an odd number of internal edge ends.
        std::optional<int> parity_colour;

        auto sizes() const -> std::optional<ClassSizes>;
        /// e.g. "v1 = 16/3".
        auto explanation() const -> std::string;
    };

    /// Solves the balance system exactly by propagating ratios along a
    /// spanning tree of the support graph and checking every other edge.
    auto solve_balance(const ColourMatrix & a, std::int64_t vertices) -> BalanceSolution;

    auto class_sizes(const ColourMatrix & a, std::int64_t vertices) -> std::optional<ClassSizes>;

    // Certificates. Colours inside are 0-based; JSON output uses 1-based.
    struct WitnessCertificate
    {
        Colouring colouring;
    };
    struct ClassSizeCertificate
    {
        std::vector<Rational> fractions;
        std::string detail;
    };
    struct ParityCertificate
    {
        int colour;
        std::int64_t size;
        std::string detail;
    };
    struct MergeCertificate
    {
        int first, second;
        ColourMatrix merged;
    };
    struct SearchExhaustedCertificate
    {
        std::uint64_t nodes;
    };
    struct BudgetExceededCertificate
    {
        std::uint64_t nodes;
    };

    using Certificate = std::variant<std::monostate, WitnessCertificate, ClassSizeCertificate, ParityCertificate,
        MergeCertificate, SearchExhaustedCertificate, BudgetExceededCertificate>;

    enum class Status
    {
        realizable,
        excluded,
        unknown
    };

    auto to_string(Status s) -> std::string;

    struct CandidateRecord
    {
        ColourMatrix matrix;
        std::string graph_id;
        Status status = Status::unknown;
        Certificate certificate;
        std::uint64_t nodes = 0;
        int max_depth = 0;
        double seconds = 0;
    };

    /// Certificate kind as written to JSON: "witness", "class-size", ...
    auto certificate_kind(const Certificate & c) -> std::string;
    auto describe(const CandidateRecord & r) -> std::string;

    /// Timing is left out unless asked for, so stored bytes stay stable.
    auto to_json(const CandidateRecord & r, bool with_timing = false) -> nlohmann::json;
    auto record_from_json(const nlohmann::json & j, const std::string & graph_id) -> CandidateRecord;

    /// A merge of two colours of the candidate whose canonical form is in
    /// excluded, if there is one.
    auto merge_exclude(const ColourMatrix & candidate, const ExcludedSet & excluded) -> std::optional<MergeCertificate>;

    /// Exclusion by class sizes alone; only sound on connected graphs.
    auto class_size_exclude(const ColourMatrix & candidate, const Graph & g) -> std::optional<Certificate>;

    struct SieveResult
    {
        std::vector<CandidateRecord> excluded;
        std::vector<ColourMatrix> survivors;
    };

    /// Class sizes, then merges to a fixed point. Candidates are taken in
    /// increasing colour count; each exclusion enters `excluded`.
    auto sieve_pass(std::vector<ColourMatrix> candidates, const Graph & g, ExcludedSet & excluded) -> SieveResult;
}
