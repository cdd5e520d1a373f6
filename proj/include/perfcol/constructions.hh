#pragma once

#include <perfcol/colour_matrix.hh>
#include <perfcol/colouring.hh>
#include <perfcol/error.hh>
#include <perfcol/graph.hh>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perfcol
{
    /// Colour permutation as an image vector, 0-based.
    using Permutation = std::vector<int>;

    /// Cycle notation over colours 1..m: "(1 2)(3 4)", "()" for the identity.
    auto parse_permutation(std::string_view text, int colours) -> Permutation;
    auto to_string(const Permutation & pi) -> std::string;

    auto identity_permutation(int colours) -> Permutation;
    auto is_involution(const Permutation & pi) -> bool;

    /// A + P(pi), P(pi)_ij = 1 iff pi(i) = j.
    auto lift_matrix(const ColourMatrix & a, const Permutation & pi) -> ColourMatrix;

    /// Doubles a colouring of the d-cube along the new top bit: the lower
    /// half copies c, the upper half carries pi of it. Throws
    /// PreconditionError unless c is perfect, pi is an involution, and pi
    /// fixes the matrix of c under conjugation.
    auto lift(const Colouring & c, const Permutation & pi) -> Colouring;

    class NotBipartiteError : public PreconditionError
    {
    public:
        NotBipartiteError(std::vector<int> cycle);
        auto cycle() const -> const std::vector<int> & { return _cycle; }

    private:
        std::vector<int> _cycle;
    };

    /// Two-colouring by sides, each component rooted at its least vertex
    /// with colour 1. Throws NotBipartiteError carrying an odd cycle.
    auto bipartition_colouring(const Graph & g) -> Colouring;

    /// Positive parts in non-increasing order.
    class Partition
    {
    public:
        explicit Partition(std::vector<int> parts);
        auto parts() const -> const std::vector<int> & { return _parts; }
        auto total() const -> int;
        auto operator==(const Partition &) const -> bool = default;

    private:
        std::vector<int> _parts;
    };

    /// Colour matrix of the colouring of K_n with classes of the given sizes.
    auto partition_to_matrix(const Partition & p) -> ColourMatrix;

    /// Present iff a_ij = p_j off the diagonal and a_ii = p_i - 1 for
    /// positive p summing to n.
    auto matrix_to_partition(const ColourMatrix & a, int vertices) -> std::optional<Partition>;

    /// Canonical matrices of every partition of n into m parts, sorted.
    auto simplex_census(int vertices, int colours) -> std::vector<ColourMatrix>;
}
