#include <cstring>
#include <random>
#include <vector>

#include <omp.h>

#include "doctest.h"
#include "rjm/kernels.hpp"
#include "test_support.hpp"

using namespace rjm;

TEST_CASE("parallel grid evaluation is bit-identical to the serial reference") {
    omp_set_num_threads(4);
    std::mt19937_64 rng(31);
    for (int k = 0; k < 10; ++k) {
        const CompiledPolynomial f(rjm::testing::random_polynomial(rng, 10, 6, 9));
        const auto xs = kernels::linspace(-3, 5, 97);
        const auto ys = kernels::geomspace(0.01, 40, 61);
        std::vector<double> a(xs.size() * ys.size()), b(a.size());
        kernels::evaluate_grid(f, xs, ys, a);
        kernels::evaluate_grid_serial(f, xs, ys, b);
        CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
        CHECK(kernels::count_sign_changes(a, xs.size(), ys.size()) ==
              kernels::count_sign_changes_serial(b, xs.size(), ys.size()));
        const auto m1 = kernels::argmin_abs(a);
        const auto m2 = kernels::argmin_abs_serial(b);
        CHECK(m1.index == m2.index);
        CHECK(m1.value == m2.value);
    }
}

TEST_CASE("argmin ties resolve to the lowest index") {
    omp_set_num_threads(4);
    std::vector<double> v(1000, 5.0);
    v[700] = -1.0;
    v[300] = 1.0;
    v[10] = std::numeric_limits<double>::quiet_NaN();
    CHECK(kernels::argmin_abs(v).index == 300);
    CHECK(kernels::argmin_abs_serial(v).index == 300);
    std::vector<double> none(4, std::numeric_limits<double>::infinity());
    CHECK(kernels::argmin_abs(none).index == none.size());
}

TEST_CASE("grid shape is validated") {
    std::vector<double> xs{0, 1}, ys{0, 1, 2}, out(5);
    CHECK_THROWS(kernels::evaluate_grid(CompiledPolynomial(), xs, ys, out));
}

TEST_CASE("spacing helpers hit both ends exactly") {
    const auto g = kernels::geomspace(1, 1000, 31);
    CHECK(g.front() == 1.0);
    CHECK(g.back() == 1000.0);
    CHECK(g[10] == doctest::Approx(10.0));
    const auto l = kernels::linspace(-4, 4, 257);
    CHECK(l[128] == 0.0);
}
