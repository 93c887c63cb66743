#include <catch2/catch.hpp>

#include "test_support.hpp"

using namespace projbound;
using test_support::random_pair;

TEST_CASE("constructors enforce shape and finiteness") {
    CHECK_THROWS_AS(ComplexMatrix(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(ComplexMatrix(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(ComplexMatrix(2, 2, {Complex(1, 0), Complex(0, 1)}), std::invalid_argument);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(ComplexMatrix(1, 2, {Complex(nan, 0), Complex(0, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex(0, inf)}), std::invalid_argument);
    CHECK_THROWS_AS((ComplexMatrix{{1.0, 2.0}, {3.0}}), std::invalid_argument);

    ComplexMatrix m{{1.0, 2.0}, {3.0, 4.0}};
    CHECK(m.rows() == 2);
    CHECK(m(1, 0) == Complex(3.0, 0.0));
}

TEST_CASE("arithmetic checks shapes") {
    ComplexMatrix a(2, 3), b(3, 2);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(a - b, std::invalid_argument);
    CHECK_THROWS_AS(a * a, std::invalid_argument);
    CHECK_NOTHROW(a * b);
}

TEST_CASE("norms and trace on reference matrices") {
    const ComplexMatrix eye = ComplexMatrix::identity(3);
    CHECK(frobenius_norm_sq(eye) == Approx(3.0).margin(0));
    CHECK(trace(eye) == Complex(3.0, 0.0));

    // E of the first diagonal example at eps = 1/2
    const ComplexMatrix e = ComplexMatrix::diagonal({-2.0 / 3.0, 1.0 / 20.0});
    CHECK(frobenius_norm_sq(e) == Approx(4.0 / 9.0 + 1.0 / 400.0).epsilon(1e-15));

    CHECK_THROWS_AS(trace(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("adjoint and product transpose rule") {
    Xoshiro256PlusPlus rng(3);
    const ComplexMatrix a = random_gaussian_matrix(rng, 4, 3);
    const ComplexMatrix b = random_gaussian_matrix(rng, 3, 5);
    const ComplexMatrix lhs = adjoint(a * b);
    const ComplexMatrix rhs = adjoint(b) * adjoint(a);
    CHECK(frobenius_norm(lhs - rhs) < 1e-13);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) CHECK(adjoint(a)(j, i) == std::conj(a(i, j)));
}

TEST_CASE("column slicing and block products") {
    Xoshiro256PlusPlus rng(11);
    const ComplexMatrix x = random_gaussian_matrix(rng, 5, 4);
    const ComplexMatrix y = random_gaussian_matrix(rng, 5, 3);

    const ComplexMatrix xb = columns(x, 1, 3);
    CHECK(xb.cols() == 2);
    CHECK(xb(0, 0) == x(0, 1));

    const double direct = frobenius_norm_sq(adjoint(columns(x, 1, 3)) * columns(y, 0, 2));
    const double blocked = adjoint_block_product_norm_sq(x, 1, 3, y, 0, 2);
    CHECK(blocked == Approx(direct).epsilon(1e-13));

    CHECK(adjoint_block_product_norm_sq(x, 2, 2, y, 0, 3) == 0.0);  // empty range
    CHECK_THROWS_AS(columns(x, 2, 2), std::invalid_argument);
}

TEST_CASE("compensated Frobenius sum matches wide dynamic range") {
    // entries spanning 12 orders of magnitude: the small squares must not be lost
    ComplexMatrix m(1, 3, {Complex(1e6, 0.0), Complex(1.0, 0.0), Complex(1e-6, 0.0)});
    const double expect = 1e12 + 1.0 + 1e-12;
    CHECK(frobenius_norm_sq(m) == Approx(expect).epsilon(1e-16));
}
