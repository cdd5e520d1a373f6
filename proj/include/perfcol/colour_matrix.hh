#pragma once

#include <compare>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace perfcol
{
    inline constexpr int max_colours = 16;

    /// Square nonnegative integer matrix a_ij: vertices of colour i have a_ij
    /// neighbours of colour j. Indices are 0-based in code; text forms and
    /// certificates shown to people use 1-based colours.
    class ColourMatrix
    {
    public:
        ColourMatrix() = default;
        explicit ColourMatrix(int order);
        ColourMatrix(int order, std::vector<int> entries);
        ColourMatrix(std::initializer_list<std::initializer_list<int>> rows);

        auto order() const -> int { return _order; }
        auto operator()(int i, int j) const -> int { return _entries[i * _order + j]; }
        auto at(int i, int j) -> int & { return _entries[i * _order + j]; }
        auto entries() const -> const std::vector<int> & { return _entries; }

        auto row_sum(int i) const -> int;

        /// Common row sum, if every row has the same one.
        auto degree() const -> std::optional<int>;

        /// Simultaneous row/column relabelling: result(i, j) = (*this)(perm[i], perm[j]).
        auto permuted(std::span<const int> perm) const -> ColourMatrix;

        /// Orders by size first, then row-major entries.
        auto operator<=>(const ColourMatrix &) const = default;

    private:
        int _order = 0;
        std::vector<int> _entries;
    };

    struct CanonicalForm
    {
        ColourMatrix matrix;
        /// matrix == original.permuted(permutation)
        std::vector<int> permutation;
    };

    /// a_ij == 0 iff a_ji == 0.
    auto weak_symmetry(const ColourMatrix & a) -> bool;

    /// Products of entries around every colour cycle agree with the reversed cycle.
    auto consistency(const ColourMatrix & a) -> bool;

    /// Support graph on colours is connected.
    auto irreducible(const ColourMatrix & a) -> bool;

    /// Lexicographically least row-major form over all colour permutations.
    auto canonicalize(const ColourMatrix & a) -> CanonicalForm;

    auto canonical(const ColourMatrix & a) -> ColourMatrix;

    /// Fuses colours first and second (0-based) into one class placed at the
    /// smaller index. Absent unless the fused colouring stays perfect.
    auto merge_colours(const ColourMatrix & a, int first, int second) -> std::optional<ColourMatrix>;

    /// "0,4;2,2".
    auto to_string(const ColourMatrix & a) -> std::string;

    /// Accepts "0,4;2,2" (whitespace ignored) or JSON "[[0,4],[2,2]]".
    auto parse_matrix(std::string_view text) -> ColourMatrix;

    auto to_json(const ColourMatrix & a) -> nlohmann::json;
    auto matrix_from_json(const nlohmann::json & j) -> ColourMatrix;
}
