#pragma once

#include <perfcol/colour_matrix.hh>
#include <perfcol/graph.hh>

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace perfcol
{
    using BigInt = boost::multiprecision::cpp_int;

    inline constexpr int max_char_poly_order = 64;

    /// Integer polynomial, coefficients stored constant term first.
    class Polynomial
    {
    public:
        Polynomial() = default;
        explicit Polynomial(std::vector<BigInt> coefficients);

        auto degree() const -> int { return int(_coefficients.size()) - 1; }
        auto coefficient(int power) const -> const BigInt & { return _coefficients[power]; }
        auto coefficients() const -> const std::vector<BigInt> & { return _coefficients; }
        auto monic() const -> bool { return ! _coefficients.empty() && _coefficients.back() == 1; }
        auto evaluate(const BigInt & x) const -> BigInt;

        auto operator*(const Polynomial & other) const -> Polynomial;
        auto operator==(const Polynomial & other) const -> bool = default;

        /// (x - root)^multiplicity.
        static auto linear_power(const BigInt & root, int multiplicity) -> Polynomial;

    private:
        std::vector<BigInt> _coefficients;
        auto trim() -> void;
    };

    /// det(xI - M) for a square integer matrix given row-major.
    auto char_poly(std::span<const std::int64_t> entries, int order) -> Polynomial;
    auto char_poly(const ColourMatrix & a) -> Polynomial;
    auto char_poly(const Graph & g) -> Polynomial;

    /// True iff divisor divides dividend exactly; both must be monic.
    auto divides(const Polynomial & divisor, const Polynomial & dividend) -> bool;

    /// Integer roots in [-bound, bound] with multiplicities, plus the cofactor
    /// left after dividing them out.
    struct IntegerRoots
    {
        std::vector<std::pair<std::int64_t, int>> roots;
        Polynomial cofactor;
    };
    auto integer_roots(const Polynomial & p, std::int64_t bound) -> IntegerRoots;

    /// Candidates whose characteristic polynomial divides that of the graph.
    auto spectral_filter(std::span<const ColourMatrix> candidates, const Polynomial & graph_poly)
        -> std::vector<ColourMatrix>;
    auto spectral_filter(std::span<const ColourMatrix> candidates, const Graph & g) -> std::vector<ColourMatrix>;

    /// Coefficients as a JSON array, constant first. Values beyond 64 bits are
    /// written as decimal strings.
    auto to_json(const Polynomial & p) -> nlohmann::json;

    /// e.g. "x^2 - 4x".
    auto to_string(const Polynomial & p) -> std::string;
}
