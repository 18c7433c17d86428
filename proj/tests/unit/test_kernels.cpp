#include <doctest.h>

#include <cmath>

#include "spmvsel/error.hpp"
#include "spmvsel/kernels.hpp"
#include "support/generators.hpp"

using namespace spmvsel;

namespace {

/// Componentwise |y - ref| <= tol * sum_k |a_ik x_k|, the natural scale of
/// rounding error under reordered summation.
bool close_to_oracle(const CooMatrix& a, std::span<const double> x, std::span<const double> y,
                     double tol) {
    const DenseVector ref = dense_spmv_oracle(a, x);
    std::vector<double> scale(a.n_rows(), 0.0);
    for (std::size_t k = 0; k < a.nnz(); ++k)
        scale[a.row()[k]] += std::fabs(a.data()[k] * x[a.col()[k]]);
    for (Index r = 0; r < a.n_rows(); ++r)
        if (std::fabs(y[r] - ref[r]) > tol * scale[r])
            return false;
    return true;
}

} // namespace

TEST_CASE("every kernel reproduces the running example") {
    const CooMatrix a = testgen::running_example();
    const std::vector<double> x(4, 1.0);
    const FormatParams p{2, 2, 2, 4};
    for (auto tag : kAllFormats)
        for (int w : {1, 2, 4}) {
            CAPTURE(format_name(tag));
            CHECK(spmv(tag, convert(a, tag, p), x, ExecPolicy{w}) == std::vector<double>{7, 13, 4, 12});
        }
}

TEST_CASE("kernels match the oracle on signed random matrices") {
    const auto corpus = testgen::property_corpus(120, 77);
    testgen::Gen g(78);
    const FormatParams params[] = {{}, {2, 3, 4, 8}, {1, 1, 1, 0}};
    for (const auto& a : corpus) {
        const auto x = testgen::random_vector(g, a.n_cols());
        for (const auto& p : params)
            for (auto tag : kAllFormats) {
                const FormatMatrix m = convert(a, tag, p);
                const DenseVector seq = spmv(tag, m, x, ExecPolicy::sequential());
                CAPTURE(format_name(tag));
                CHECK(close_to_oracle(a, x, seq, 1e-13));
                for (int w : {2, 3, 4, 7}) {
                    // The parallel kernels share the serial task decomposition.
                    CHECK(spmv(tag, m, x, ExecPolicy::parallel(w)) == seq);
                }
            }
    }
}

TEST_CASE("CSR sums each row in stored order, exactly like the oracle") {
    const auto corpus = testgen::property_corpus(40, 3);
    testgen::Gen g(4);
    for (const auto& a : corpus) {
        const auto x = testgen::random_vector(g, a.n_cols());
        const DenseVector ref = dense_spmv_oracle(a, x);
        CHECK(spmv(FormatTag::Csr, convert(a, FormatTag::Csr), x) == ref);
    }
}

TEST_CASE("dimension and tag mismatches throw") {
    const CooMatrix a = testgen::running_example();
    const FormatMatrix m = convert(a, FormatTag::Ell);
    std::vector<double> x(3, 1.0), y(4);
    CHECK_THROWS_AS(spmv(FormatTag::Ell, m, x, y), InvalidArgument);
    CHECK_THROWS_AS(spmv(FormatTag::Csr, m, std::vector<double>(4, 1.0)), InvalidArgument);
    CHECK_THROWS_AS(reference::spmv_csr(to_csr(a), std::vector<double>(4, 1.0), std::span<double>(y).subspan(0, 0)),
                    InvalidArgument);
}

TEST_CASE("task plans cover all work exactly once") {
    const auto corpus = testgen::property_corpus(40, 9);
    for (const auto& a : corpus)
        for (auto tag : kAllFormats)
            for (int w : {1, 4}) {
                const FormatMatrix m = convert(a, tag, FormatParams{2, 3, 4, 8});
                std::size_t nnz = 0;
                for (const auto& t : plan_tasks(m, w)) {
                    CHECK(t.begin <= t.end);
                    nnz += task_nnz(m, t);
                }
                CHECK(nnz == a.nnz());
            }
}

TEST_CASE("CSR5 tile pass stages only rows that cross tile boundaries") {
    const Csr5Matrix m = to_csr5(testgen::running_example(), 2, 2);
    std::vector<double> y(4);
    const auto partials = csr5_tile_pass(m, std::vector<double>(4, 1.0), y);
    // Row 1 starts in tile 0 (entry 2) and ends in tile 1 (entry 3).
    REQUIRE(partials.size() == 2);
    CHECK(partials[0].tile == 0);
    CHECK(partials[0].row == 1);
    CHECK(partials[0].sum == 10);
    CHECK(partials[1].tile == 1);
    CHECK(partials[1].row == 1);
    CHECK(partials[1].sum == 3);
    CHECK(y == std::vector<double>{7, 0, 4, 12});
}
