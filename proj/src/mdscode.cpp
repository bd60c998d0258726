#include "emd/mdscode.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "emd/errors.hpp"

namespace emd {

GfMatrix build_systematic_generator(int n, int k, const Field& f) {
    if (k < 1 || k > n) throw std::invalid_argument("generator: need 1 <= k <= n");
    const int max_n = static_cast<int>(f.order()) - 1;
    if (n > max_n)
        throw std::invalid_argument("field too small: n = " + std::to_string(n) +
                                    " exceeds 2^m - 1 = " + std::to_string(max_n));

    // Evaluation-form rows g[i][j] = (alpha^j)^i, truncated to the first n
    // points of the length-(q-1) mother code.
    GfMatrix g(k, n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j)
            g.at(i, j) = f.alpha_pow(static_cast<std::uint32_t>(i) * j);

    // Gauss-Jordan on the left k x k block. The block is Vandermonde with
    // distinct points, hence invertible.
    for (int col = 0; col < k; ++col) {
        int pivot = -1;
        for (int r = col; r < k; ++r)
            if (g.at(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) throw std::logic_error("singular systematic block");
        if (pivot != col)
            for (int c = 0; c < n; ++c) std::swap(g.at(pivot, c), g.at(col, c));
        const std::uint16_t piv_inv = f.inv(g.at(col, col));
        for (int c = 0; c < n; ++c) g.at(col, c) = f.mul(g.at(col, c), piv_inv);
        for (int r = 0; r < k; ++r) {
            if (r == col || g.at(r, col) == 0) continue;
            const std::uint16_t factor = g.at(r, col);
            for (int c = 0; c < n; ++c)
                g.at(r, c) = f.add(g.at(r, c), f.mul(factor, g.at(col, c)));
        }
    }
    return g;
}

GfMatrix shift_generator(const GfMatrix& g, int i) {
    if (i < 0 || i >= g.cols) throw std::out_of_range("shift index out of range");
    GfMatrix out(g.rows, g.cols);
    for (int c = 0; c < g.cols; ++c) {
        const int src = (c - i % g.cols + g.cols) % g.cols;
        for (int r = 0; r < g.rows; ++r) out.at(r, c) = g.at(r, src);
    }
    return out;
}

std::vector<std::uint16_t> encode_message(const std::vector<std::uint16_t>& p,
                                          const GfMatrix& g, const Field& f) {
    if (static_cast<int>(p.size()) != g.rows)
        throw std::invalid_argument("encode_message: message length mismatch");
    std::vector<std::uint16_t> y(g.cols, 0);
    for (int c = 0; c < g.cols; ++c) {
        std::uint16_t acc = 0;
        for (int r = 0; r < g.rows; ++r) acc = f.add(acc, f.mul(p[r], g.at(r, c)));
        y[c] = acc;
    }
    return y;
}

std::vector<std::uint16_t> erasure_decode(
    const std::vector<std::pair<int, std::uint16_t>>& received, const GfMatrix& g,
    const Field& f) {
    const int k = g.rows;
    std::vector<std::pair<int, std::uint16_t>> rx = received;
    std::sort(rx.begin(), rx.end());
    for (std::size_t i = 1; i < rx.size(); ++i)
        if (rx[i].first == rx[i - 1].first && rx[i].second != rx[i - 1].second)
            throw InconsistentCodeword("conflicting symbols at position " +
                                       std::to_string(rx[i].first));
    rx.erase(std::unique(rx.begin(), rx.end()), rx.end());
    for (const auto& [pos, sym] : rx) {
        (void)sym;
        if (pos < 0 || pos >= g.cols) throw std::out_of_range("symbol position out of range");
    }
    if (static_cast<int>(rx.size()) < k)
        throw std::invalid_argument("erasure_decode: need at least k = " + std::to_string(k) +
                                    " distinct positions, got " + std::to_string(rx.size()));

    // Solve p * G_sub = y over the k lowest received positions, i.e.
    // G_sub^T x = y with Gaussian elimination.
    GfMatrix m(k, k + 1);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) m.at(r, c) = g.at(c, rx[r].first);
        m.at(r, k) = rx[r].second;
    }
    for (int col = 0; col < k; ++col) {
        int pivot = -1;
        for (int r = col; r < k; ++r)
            if (m.at(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) throw InconsistentCodeword("singular column submatrix");
        if (pivot != col)
            for (int c = col; c <= k; ++c) std::swap(m.at(pivot, c), m.at(col, c));
        const std::uint16_t piv_inv = f.inv(m.at(col, col));
        for (int c = col; c <= k; ++c) m.at(col, c) = f.mul(m.at(col, c), piv_inv);
        for (int r = 0; r < k; ++r) {
            if (r == col || m.at(r, col) == 0) continue;
            const std::uint16_t factor = m.at(r, col);
            for (int c = col; c <= k; ++c)
                m.at(r, c) = f.add(m.at(r, c), f.mul(factor, m.at(col, c)));
        }
    }
    std::vector<std::uint16_t> p(k);
    for (int r = 0; r < k; ++r) p[r] = m.at(r, k);

    // Verify the symbols beyond the first k against the recovered message.
    for (std::size_t i = k; i < rx.size(); ++i) {
        std::uint16_t acc = 0;
        for (int r = 0; r < k; ++r) acc = f.add(acc, f.mul(p[r], g.at(r, rx[i].first)));
        if (acc != rx[i].second)
            throw InconsistentCodeword("received symbol at position " +
                                       std::to_string(rx[i].first) +
                                       " is inconsistent with the decoded message");
    }
    return p;
}

GeneratorSet::GeneratorSet(int n_, int k_, const Field& f) : n(n_), k(k_), field(f) {
    g.reserve(static_cast<std::size_t>(n));
    g.push_back(build_systematic_generator(n, k, field));
    for (int i = 1; i < n; ++i) g.push_back(shift_generator(g[0], i));
}

}  // namespace emd
