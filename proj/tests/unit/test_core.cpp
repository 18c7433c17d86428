#include <doctest.h>

#include <sstream>

#include "spmvsel/coo.hpp"
#include "spmvsel/error.hpp"
#include "spmvsel/matrix_market.hpp"
#include "support/generators.hpp"

using namespace spmvsel;

namespace {

CooMatrix parse(const std::string& text) {
    std::istringstream in(text);
    return read_matrix_market(in);
}

std::size_t error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST_CASE("CooMatrix rejects non-canonical input") {
    CHECK_THROWS_AS(CooMatrix(2, 2, {0, 0}, {1, 0}, {1.0, 2.0}), InvalidArgument);
    CHECK_THROWS_AS(CooMatrix(2, 2, {0, 0}, {1, 1}, {1.0, 2.0}), InvalidArgument);
    CHECK_THROWS_AS(CooMatrix(2, 2, {0}, {2}, {1.0}), InvalidArgument);
    CHECK_THROWS_AS(CooMatrix(2, 2, {0}, {1}, {0.0}), InvalidArgument);
    CHECK_THROWS_AS(CooMatrix(2, 2, {0, 1}, {1}, {1.0}), InvalidArgument);
    CHECK_NOTHROW(CooMatrix(2, 2, {0, 1}, {1, 0}, {1.0, 2.0}));
}

TEST_CASE("canonicalize sorts, sums duplicates and drops zeros") {
    const CooMatrix a = canonicalize({{1, 1, 2.0}, {0, 1, 1.0}, {1, 1, 3.0}, {0, 0, 4.0}, {0, 0, -4.0}}, 2, 2);
    CHECK(a.nnz() == 2);
    CHECK(std::vector<Index>(a.row().begin(), a.row().end()) == std::vector<Index>{0, 1});
    CHECK(std::vector<Index>(a.col().begin(), a.col().end()) == std::vector<Index>{1, 1});
    CHECK(std::vector<double>(a.data().begin(), a.data().end()) == std::vector<double>{1.0, 5.0});
    CHECK_THROWS_AS(canonicalize({{2, 0, 1.0}}, 2, 2), InvalidArgument);
}

TEST_CASE("dense oracle on the running example") {
    const CooMatrix a = testgen::running_example();
    const std::vector<double> x(4, 1.0);
    CHECK(dense_spmv_oracle(a, x) == std::vector<double>{7, 13, 4, 12});
    CHECK_THROWS_AS(dense_spmv_oracle(a, std::vector<double>(3, 1.0)), InvalidArgument);
    CHECK(row_nnz_histogram(a) == std::vector<Index>{2, 3, 1, 2});
}

TEST_CASE("Matrix Market: general real file") {
    const CooMatrix a = parse("%%MatrixMarket matrix coordinate real general\n"
                              "% comment\n"
                              "\n"
                              "4 4 8\n1 2 6\n1 3 1\n2 1 2\n2 3 8\n2 4 3\n3 3 4\n4 2 7\n4 3 5\n");
    CHECK(a == testgen::running_example());
}

TEST_CASE("Matrix Market: symmetric expansion mirrors off-diagonal entries") {
    const CooMatrix a = parse("%%MatrixMarket matrix coordinate real symmetric\n3 3 3\n1 1 2\n3 1 5\n2 2 1\n");
    CHECK(a.nnz() == 4);
    const std::vector<double> y = dense_spmv_oracle(a, std::vector<double>{1, 10, 100});
    CHECK(y == std::vector<double>{502, 10, 5});
}

TEST_CASE("Matrix Market: pattern and integer fields") {
    const CooMatrix p = parse("%%MatrixMarket matrix coordinate pattern general\n2 3 2\n1 3\n2 1\n");
    CHECK(std::vector<double>(p.data().begin(), p.data().end()) == std::vector<double>{1.0, 1.0});
    const CooMatrix i = parse("%%MatrixMarket matrix coordinate integer general\n2 2 1\n2 2 -7\n");
    CHECK(i.data()[0] == -7.0);
    const CooMatrix e = parse("%%MatrixMarket matrix coordinate real general\n5 6 0\n");
    CHECK(e.nnz() == 0);
    CHECK(e.n_rows() == 5);
    CHECK(e.n_cols() == 6);
}

TEST_CASE("Matrix Market: malformed input reports the offending line") {
    CHECK(error_line("garbage\n") == 1);
    CHECK(error_line("%%MatrixMarket matrix array real general\n2 2\n") == 1);
    CHECK(error_line("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n") == 1);
    CHECK(error_line("%%MatrixMarket matrix coordinate real hermitian\n1 1 1\n1 1 1\n") == 1);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n% c\n2 2\n") == 3);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n1 x 2\n") == 4);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n3 1 2\n") == 4);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n0 1 2\n") == 4);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1\n2 2 2\n") == 4);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1\n2 2 2\n") == 5);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n") == 3);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1\n") == 3);
    CHECK(error_line("%%MatrixMarket matrix coordinate real general\n") == 2);
    CHECK(error_line("") == 1);
}

TEST_CASE("Matrix Market: write then read is the identity") {
    testgen::Gen g(11);
    for (int i = 0; i < 30; ++i) {
        const CooMatrix a = testgen::random_matrix(g);
        std::stringstream s;
        write_matrix_market(s, a);
        CHECK(read_matrix_market(s) == a);
    }
}
