#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "emd/gf2m.hpp"

namespace emd {

/// Dense matrix over GF(2^m), row major.
struct GfMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint16_t> a;

    GfMatrix() = default;
    GfMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    std::uint16_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    std::uint16_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    bool operator==(const GfMatrix&) const = default;
};

/// Systematic generator [I_k | A] of a punctured (n, k) Reed-Solomon code.
///
/// The mother code is the (q-1, k) evaluation code at points
/// alpha^0, ..., alpha^(q-2); puncturing keeps the first n coordinates,
/// and row reduction brings the result to systematic form. Every k x k
/// column submatrix of the result is nonsingular.
///
/// Requires 1 <= k <= n <= 2^m - 1. Throws std::invalid_argument on a
/// dimension error and when the field is too small for n.
GfMatrix build_systematic_generator(int n, int k, const Field& f);

/// Rotates columns right by i: column j of the output is column
/// (j - i mod n) of the input. Requires 0 <= i < cols.
GfMatrix shift_generator(const GfMatrix& g, int i);

/// Recovers the message p from >= k received (position, symbol) pairs of
/// the codeword p * g. When more than k symbols arrive, the k lowest
/// positions are used and the remainder is verified. Throws
/// std::invalid_argument on fewer than k distinct positions and
/// InconsistentCodeword when the extra symbols do not match.
std::vector<std::uint16_t> erasure_decode(
    const std::vector<std::pair<int, std::uint16_t>>& received, const GfMatrix& g,
    const Field& f);

/// Encode helper: y = p * g (length cols).
std::vector<std::uint16_t> encode_message(const std::vector<std::uint16_t>& p,
                                          const GfMatrix& g, const Field& f);

/// The n column-shifted generators g[i] = shift_generator(g[0], i), with
/// g[0] systematic. Immutable after construction.
struct GeneratorSet {
    int n = 0;
    int k = 0;
    Field field;
    std::vector<GfMatrix> g;

    GeneratorSet(int n_, int k_, const Field& f);
};

}  // namespace emd
