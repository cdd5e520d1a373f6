#include <perfcol/error.hh>
#include <perfcol/polynomial.hh>

#include <algorithm>
#include <limits>

namespace perfcol
{
    Polynomial::Polynomial(std::vector<BigInt> coefficients) :
        _coefficients(std::move(coefficients))
    {
        trim();
    }

    auto Polynomial::trim() -> void
    {
        while (! _coefficients.empty() && _coefficients.back() == 0)
            _coefficients.pop_back();
    }

    auto Polynomial::evaluate(const BigInt & x) const -> BigInt
    {
        BigInt value = 0;
        for (auto it = _coefficients.rbegin() ; it != _coefficients.rend() ; ++it)
            value = value * x + *it;
        return value;
    }

    auto Polynomial::operator*(const Polynomial & other) const -> Polynomial
    {
        if (_coefficients.empty() || other._coefficients.empty())
            return Polynomial{};
        std::vector<BigInt> product(_coefficients.size() + other._coefficients.size() - 1, 0);
        for (std::size_t i = 0 ; i < _coefficients.size() ; ++i)
            for (std::size_t j = 0 ; j < other._coefficients.size() ; ++j)
                product[i + j] += _coefficients[i] * other._coefficients[j];
        return Polynomial(std::move(product));
    }

    auto Polynomial::linear_power(const BigInt & root, int multiplicity) -> Polynomial
    {
        Polynomial result({ 1 });
        Polynomial linear({ -root, 1 });
        for (int i = 0 ; i < multiplicity ; ++i)
            result = result * linear;
        return result;
    }

    auto char_poly(std::span<const std::int64_t> entries, int order) -> Polynomial
    {
        if (order < 1 || order > max_char_poly_order)
            throw ParameterError("characteristic polynomial order " + std::to_string(order) + " outside 1.."
                + std::to_string(max_char_poly_order));
        if (entries.size() != std::size_t(order) * order)
            throw FormatError("matrix entry count does not match its order");

        auto a = [&](int i, int j) -> BigInt { return entries[std::size_t(i) * order + j]; };

        // Samuelson-Berkowitz: the characteristic polynomial of the trailing
        // principal submatrix is extended one leading row/column at a time by
        // a lower-triangular Toeplitz product. Coefficients here run highest
        // degree first.
        std::vector<BigInt> poly{ 1, -a(order - 1, order - 1) };
        for (int k = order - 2 ; k >= 0 ; --k) {
            int s = order - k - 1;
            std::vector<BigInt> toeplitz(s + 2);
            toeplitz[0] = 1;
            toeplitz[1] = -a(k, k);

            std::vector<BigInt> column(s), next(s);
            for (int i = 0 ; i < s ; ++i)
                column[i] = a(k + 1 + i, k);
            for (int power = 0 ; power < s ; ++power) {
                BigInt dot = 0;
                for (int i = 0 ; i < s ; ++i)
                    dot += a(k, k + 1 + i) * column[i];
                toeplitz[power + 2] = -dot;
                if (power + 1 < s) {
                    for (int i = 0 ; i < s ; ++i) {
                        BigInt sum = 0;
                        for (int j = 0 ; j < s ; ++j)
                            sum += a(k + 1 + i, k + 1 + j) * column[j];
                        next[i] = std::move(sum);
                    }
                    std::swap(column, next);
                }
            }

            std::vector<BigInt> extended(s + 2, 0);
            for (int i = 0 ; i < s + 2 ; ++i)
                for (int j = std::max(0, i - 1 - s) ; j <= std::min(i, s) ; ++j)
                    extended[i] += toeplitz[i - j] * poly[j];
            poly = std::move(extended);
        }

        std::reverse(poly.begin(), poly.end());
        return Polynomial(std::move(poly));
    }

    auto char_poly(const ColourMatrix & a) -> Polynomial
    {
        std::vector<std::int64_t> entries(a.entries().begin(), a.entries().end());
        return char_poly(entries, a.order());
    }

    auto char_poly(const Graph & g) -> Polynomial
    {
        if (g.size() > max_char_poly_order)
            throw ParameterError("graph has " + std::to_string(g.size()) + " vertices; characteristic polynomials are limited to order "
                + std::to_string(max_char_poly_order));
        return char_poly(adjacency_entries(g), g.size());
    }

    auto divides(const Polynomial & divisor, const Polynomial & dividend) -> bool
    {
        if (! divisor.monic() || ! dividend.monic())
            throw ParameterError("divisibility is defined here for monic polynomials only");
        int d = divisor.degree(), n = dividend.degree();
        if (d > n)
            return false;

        std::vector<BigInt> remainder = dividend.coefficients();
        for (int i = n ; i >= d ; --i) {
            BigInt q = remainder[i];
            if (q == 0)
                continue;
            for (int j = 0 ; j <= d ; ++j)
                remainder[i - d + j] -= q * divisor.coefficient(j);
        }
        return std::all_of(remainder.begin(), remainder.begin() + d, [](const BigInt & c) { return c == 0; });
    }

    auto integer_roots(const Polynomial & p, std::int64_t bound) -> IntegerRoots
    {
        IntegerRoots result;
        std::vector<BigInt> current = p.coefficients();
        for (std::int64_t r = -bound ; r <= bound ; ++r) {
            int multiplicity = 0;
            while (current.size() > 1 && Polynomial(current).evaluate(r) == 0) {
                // synthetic division by (x - r)
                std::vector<BigInt> quotient(current.size() - 1);
                BigInt carry = 0;
                for (std::size_t i = current.size() - 1 ; i >= 1 ; --i) {
                    carry = current[i] + carry * r;
                    quotient[i - 1] = carry;
                }
                current = std::move(quotient);
                ++multiplicity;
            }
            if (multiplicity > 0)
                result.roots.emplace_back(r, multiplicity);
        }
        result.cofactor = Polynomial(std::move(current));
        return result;
    }

    auto spectral_filter(std::span<const ColourMatrix> candidates, const Polynomial & graph_poly) -> std::vector<ColourMatrix>
    {
        std::vector<ColourMatrix> kept;
        for (auto & a : candidates)
            if (divides(char_poly(a), graph_poly))
                kept.push_back(a);
        return kept;
    }

    auto spectral_filter(std::span<const ColourMatrix> candidates, const Graph & g) -> std::vector<ColourMatrix>
    {
        return spectral_filter(candidates, char_poly(g));
    }

    auto to_json(const Polynomial & p) -> nlohmann::json
    {
        auto result = nlohmann::json::array();
        for (auto & c : p.coefficients()) {
            if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
                result.push_back(static_cast<std::int64_t>(c));
            else
                result.push_back(c.str());
        }
        return result;
    }

    auto to_string(const Polynomial & p) -> std::string
    {
        if (p.degree() < 0)
            return "0";
        std::string s;
        for (int power = p.degree() ; power >= 0 ; --power) {
            BigInt c = p.coefficient(power);
            if (c == 0)
                continue;
            bool negative = c < 0;
            BigInt magnitude = negative ? BigInt(-c) : c;
            if (s.empty())
                s += negative ? "-" : "";
            else
                s += negative ? " - " : " + ";
            if (magnitude != 1 || power == 0)
                s += magnitude.str();
            if (power >= 1)
                s += "x";
            if (power >= 2)
                s += "^" + std::to_string(power);
        }
        return s;
    }
}
