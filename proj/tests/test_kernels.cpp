#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gallagher/kernels.hpp"
#include "gallagher/verify.hpp"
#include "oracles.hpp"

using namespace gallagher;
namespace nb = std::numbers;

TEST_CASE("sinc: zeros at integers, 1 at 0, Taylor branch continuous") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(sinc(3.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(sinc(0.5) == doctest::Approx(2.0 / nb::pi).epsilon(1e-15));
    // just inside the series cutoff |pi x| = 1e-4 the Taylor branch must match
    // the direct quotient at the same point to well under a sinc'' step
    const double lo = 0.99e-4 / nb::pi, hi = 1.01e-4 / nb::pi;
    CHECK(sinc(lo) == doctest::Approx(std::sin(nb::pi * lo) / (nb::pi * lo))
                          .epsilon(1e-13));
    // and crossing the cutoff moves the value only by ~|lo-hi| * |sinc''| / 3
    CHECK(std::abs(sinc(lo) - sinc(hi)) < 1e-9);
    CHECK(sinc(lo) < 1.0);
}

TEST_CASE("kernel mass is 1 and support is as documented") {
    for (double d : {0.1, 1.0, 7.3}) {
        const Kernel rect{KernelShape::Rectangular, d};
        const Kernel ces{KernelShape::Cesaro, d};
        const double mr = oracle::simpson([&](double x) { return eval_kernel(rect, x); },
                                          -d, d, 1e-13);
        const double mc = oracle::simpson_kinks(
            [&](double x) { return eval_kernel(ces, x); }, {-d, 0.0, d}, -1.5 * d,
            1.5 * d, 1e-13);
        CHECK(mr == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(mc == doctest::Approx(1.0).epsilon(1e-10));

        CHECK(eval_kernel(rect, d / 2) == 1.0 / d);      // closed boundary
        CHECK(eval_kernel(rect, d / 2 + 1e-9) == 0.0);   // just outside
        CHECK(eval_kernel(ces, d) == 0.0);
        CHECK(eval_kernel(ces, 0.0) == doctest::Approx(1.0 / d));
        CHECK(eval_kernel(ces, -0.3 * d) == eval_kernel(ces, 0.3 * d));
    }
    CHECK_THROWS_AS(Kernel(KernelShape::Cesaro, 0.0), std::invalid_argument);
}

TEST_CASE("closed-form transform equals the Fourier integral") {
    Rng rng(7);
    for (int i = 0; i < 40; ++i) {
        const double d = rng.uniform(0.05, 5.0);
        const double y = rng.uniform(-4.0, 4.0);
        for (auto shape : {KernelShape::Rectangular, KernelShape::Cesaro}) {
            const Kernel k{shape, d};
            auto f = [&](double x) {
                return eval_kernel(k, x) * std::cos(2.0 * nb::pi * x * y);
            };
            const double direct =
                oracle::simpson_kinks(f, {-d, -d / 2, 0.0, d / 2, d}, -d, d, 1e-12);
            CHECK(transform(k, y) == doctest::Approx(direct).epsilon(1e-9).scale(1.0));
        }
    }
    // cesaro transform is the square of the rectangular one at matched scale
    const Kernel ces{KernelShape::Cesaro, 0.7};
    const Kernel rect{KernelShape::Rectangular, 0.7};
    for (double y : {0.0, 0.3, 1.9, -2.4})
        CHECK(transform(ces, y) ==
              doctest::Approx(transform(rect, y) * transform(rect, y)).epsilon(1e-14));
    CHECK(transform(ces, 0.0) == 1.0);
    CHECK(transform(ces, 1.3) >= 0.0);  // sinc^2 never dips below zero
}

TEST_CASE("autocorrelation matches the direct lag integral") {
    Rng rng(11);
    for (int i = 0; i < 25; ++i) {
        const double d = rng.uniform(0.1, 3.0);
        const double lag = rng.uniform(-2.5 * d, 2.5 * d);
        for (auto shape : {KernelShape::Rectangular, KernelShape::Cesaro}) {
            const Kernel k{shape, d};
            auto f = [&](double x) { return eval_kernel(k, x) * eval_kernel(k, x + lag); };
            const double direct = oracle::simpson_kinks(
                f, {-d, 0.0, d, -d - lag, -lag, d - lag}, -2.0 * d, 2.0 * d, 1e-12);
            CHECK(autocorrelation(k, lag) ==
                  doctest::Approx(direct).epsilon(1e-9).scale(1.0));
        }
    }

    const Kernel k{KernelShape::Cesaro, 1.0};
    CHECK(autocorrelation(k, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(autocorrelation(k, 2.0) == 0.0);
    CHECK(autocorrelation(k, -0.8) == autocorrelation(k, 0.8));
    const Kernel r{KernelShape::Rectangular, 0.5};
    CHECK(autocorrelation(r, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(autocorrelation(r, 0.5) == 0.0);
}

TEST_CASE("explicit constants") {
    CHECK(explicit_constant(0.5, KernelShape::Rectangular) ==
          doctest::Approx(nb::pi * nb::pi / 4.0).epsilon(1e-14));
    CHECK(explicit_constant(0.5, KernelShape::Cesaro) ==
          doctest::Approx(std::pow(nb::pi / 2.0, 4.0)).epsilon(1e-14));
    // direct formula (pi theta / sin pi theta)^k at a generic theta
    const double theta = 0.37;
    const double base = nb::pi * theta / std::sin(nb::pi * theta);
    CHECK(explicit_constant(theta, KernelShape::Rectangular) ==
          doctest::Approx(base * base).epsilon(1e-13));
    CHECK(explicit_constant(theta, KernelShape::Cesaro) ==
          doctest::Approx(base * base * base * base).epsilon(1e-13));
    // approaches 1 as theta -> 0, grows toward theta = 1
    CHECK(explicit_constant(1e-8, KernelShape::Cesaro) == doctest::Approx(1.0));
    CHECK(explicit_constant(0.9, KernelShape::Cesaro) >
          explicit_constant(0.5, KernelShape::Cesaro));
    CHECK_THROWS_AS(explicit_constant(1.0, KernelShape::Cesaro), std::invalid_argument);
    CHECK_THROWS_AS(explicit_constant(0.0, KernelShape::Cesaro), std::invalid_argument);
}

TEST_CASE("window params tie delta to theta/T") {
    const WindowParams w(50.0, 0.25);
    CHECK(w.delta == doctest::Approx(0.005).epsilon(1e-15));
    CHECK_THROWS_AS(WindowParams(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(WindowParams(10.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(WindowParams(10.0, 0.0), std::invalid_argument);
}
