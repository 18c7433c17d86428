#pragma once

// Hand-rolled generators for the property and acceptance tests. Only raw
// std::mt19937_64 output is used, so every sequence is identical across
// standard library implementations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "spmvsel/coo.hpp"

namespace spmvsel::testgen {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    /// Uniform in [0, n); 0 when n is 0.
    std::uint64_t below(std::uint64_t n) { return n ? eng_() % n : 0; }
    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 eng_;
};

/// The 4x4 running example: rows [0 6 1 0], [2 0 8 3], [0 0 4 0], [0 7 5 0].
inline CooMatrix running_example() {
    return CooMatrix(4, 4, {0, 0, 1, 1, 1, 2, 3, 3}, {1, 2, 0, 2, 3, 2, 1, 2},
                     {6, 1, 2, 8, 3, 4, 7, 5});
}

enum class Values { Signed, Positive };

inline double random_value(Gen& g, Values kind) {
    if (kind == Values::Positive)
        return g.uniform(0.25, 4.0);
    if (g.chance(0.2))
        return static_cast<double>(static_cast<std::int64_t>(g.between(1, 9)) *
                                   (g.chance(0.5) ? 1 : -1));
    double v = 0.0;
    while (v == 0.0)
        v = g.uniform(-1.0, 1.0);
    return v;
}

struct RandomMatrixSpec {
    Index max_dim = 256;
    double min_density = 0.001;
    double max_density = 0.2;
    Values values = Values::Signed;
};

/// Random pattern with some forced empty rows and columns, and a fully dense
/// row in roughly a third of the draws.
inline CooMatrix random_matrix(Gen& g, const RandomMatrixSpec& s = {}) {
    const auto rows = static_cast<Index>(g.between(1, s.max_dim));
    const auto cols = static_cast<Index>(g.between(1, s.max_dim));
    const double density =
        s.min_density * std::pow(s.max_density / s.min_density, g.unit());
    std::vector<bool> empty_row(rows), empty_col(cols);
    for (Index r = 0; r < rows; ++r)
        empty_row[r] = g.chance(0.1);
    for (Index c = 0; c < cols; ++c)
        empty_col[c] = g.chance(0.1);
    const Index dense_row = g.chance(0.35) ? static_cast<Index>(g.below(rows)) : rows;

    std::vector<Triplet> t;
    for (Index r = 0; r < rows; ++r) {
        if (empty_row[r] && r != dense_row)
            continue;
        for (Index c = 0; c < cols; ++c) {
            if (empty_col[c])
                continue;
            if (r == dense_row || g.chance(density))
                t.push_back({r, c, random_value(g, s.values)});
        }
    }
    return canonicalize(std::move(t), rows, cols);
}

/// Degenerate shapes every property run should include.
inline std::vector<CooMatrix> edge_matrices(Values values = Values::Signed) {
    Gen g(99);
    std::vector<CooMatrix> out;
    out.push_back(running_example());
    out.push_back(CooMatrix(1, 1));
    out.push_back(CooMatrix(1, 1, {0}, {0}, {random_value(g, values)}));
    out.push_back(CooMatrix(7, 5));
    std::vector<Triplet> row, col, diag, one_dense;
    for (Index c = 0; c < 200; ++c)
        row.push_back({0, c, random_value(g, values)});
    for (Index r = 0; r < 200; ++r)
        col.push_back({r, 0, random_value(g, values)});
    for (Index r = 0; r < 100; ++r)
        diag.push_back({r, r, random_value(g, values)});
    for (Index c = 0; c < 64; ++c)
        one_dense.push_back({31, c, random_value(g, values)});
    out.push_back(canonicalize(row, 1, 200));
    out.push_back(canonicalize(col, 200, 1));
    out.push_back(canonicalize(diag, 100, 100));
    out.push_back(canonicalize(one_dense, 64, 64));
    return out;
}

/// Edge shapes followed by random draws, `count` matrices in total.
inline std::vector<CooMatrix> property_corpus(std::size_t count, std::uint64_t seed,
                                              Values values = Values::Signed) {
    std::vector<CooMatrix> out = edge_matrices(values);
    Gen g(seed);
    RandomMatrixSpec spec;
    spec.values = values;
    while (out.size() < count)
        out.push_back(random_matrix(g, spec));
    out.resize(std::min(out.size(), count));
    return out;
}

inline std::vector<double> random_vector(Gen& g, std::size_t n, Values values = Values::Signed) {
    std::vector<double> x(n);
    for (auto& v : x)
        v = random_value(g, values);
    return x;
}

/// Row lengths drawn from one of six structural families, then random
/// distinct columns per row. Used for the synthetic selection corpus.
inline CooMatrix structured_matrix(Gen& g) {
    const auto family = g.below(6);
    const auto rows = static_cast<Index>(g.between(32, 512));
    const auto cols = std::max<Index>(8, static_cast<Index>(rows * g.uniform(0.5, 2.0)));
    const auto k = static_cast<std::int64_t>(std::min<std::uint64_t>(g.between(1, 32), cols));

    std::vector<std::int64_t> len(rows, k);
    switch (family) {
    case 0:
        break;
    case 1:
        for (auto& l : len)
            l = k + static_cast<std::int64_t>(g.below(3)) - 1;
        break;
    case 2:
        for (auto& l : len)
            l = static_cast<std::int64_t>(g.below(2 * k + 1));
        break;
    case 3:
        // Heavy tail: Pareto(1.5) scaled so typical rows have about k/2 entries.
        for (auto& l : len)
            l = static_cast<std::int64_t>((std::pow(1.0 - g.unit(), -1.0 / 1.5) - 1.0) * k / 2.0) + 1;
        break;
    case 4: {
        const auto heavy = g.between(1, 3);
        for (std::uint64_t h = 0; h < heavy; ++h)
            len[g.below(rows)] = cols / 2;
        break;
    }
    default:
        for (auto& l : len)
            l = g.chance(0.3) ? 0 : k + static_cast<std::int64_t>(g.below(5)) - 2;
        break;
    }

    std::vector<Index> pool(cols);
    std::vector<Triplet> t;
    for (Index r = 0; r < rows; ++r) {
        const auto n = static_cast<Index>(std::clamp<std::int64_t>(len[r], 0, cols));
        for (Index c = 0; c < cols; ++c)
            pool[c] = c;
        for (Index i = 0; i < n; ++i) {
            std::swap(pool[i], pool[i + g.below(cols - i)]);
            t.push_back({r, pool[i], random_value(g, Values::Positive)});
        }
    }
    return canonicalize(std::move(t), rows, cols);
}

} // namespace spmvsel::testgen
