#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corbit/oracle.hpp"
#include "corbit/orbit_series.hpp"
#include "support.hpp"

using namespace corbit;
using namespace corbit::orbits;

TEST_SUITE("l_coefficients") {
    TEST_CASE("l=2 gives sigma(m)/m") {
        auto c = l_coefficients(2, 12);
        CHECK(c[1] == Rat(1));
        CHECK(c[2] == Rat(3, 2));
        CHECK(c[3] == Rat(4, 3));
        for (int m = 1; m <= 12; ++m) CHECK(c[m] == Rat(testsupport::divisor_sigma(m), m));
    }

    TEST_CASE("l=3 pinned value and integrality of m c_m") {
        auto c = l_coefficients(3, 10);
        CHECK(c[2] == Rat(7, 2));
        CHECK(c[1] == Rat(1));
        for (int m = 1; m <= 10; ++m) {
            const Rat b = c[m] * m;
            CHECK(boost::multiprecision::denominator(b) == BigInt(1));
        }
    }

    TEST_CASE("l=1 is rejected") {
        CHECK_THROWS_AS(l_coefficients(1, 4), std::invalid_argument);
    }
}

TEST_SUITE("orbit_table") {
    TEST_CASE("pinned small rows") {
        auto t = build_orbit_table(2, 3, TableMode::exact);
        CHECK(t.a[2] == std::vector<BigInt>{0, 3, 1});
        CHECK(t.a[3] == std::vector<BigInt>{0, 8, 9, 1});
        auto t3 = build_orbit_table(3, 2, TableMode::exact);
        CHECK(t3.a[2] == std::vector<BigInt>{0, 7, 1});
    }

    TEST_CASE("rows match brute force on the whole feasible range") {
        for (int ell : {2, 3}) {
            const int n_top = ell == 2 ? 6 : 4;
            auto t = build_orbit_table(ell, n_top, TableMode::exact);
            for (int n = 0; n <= n_top; ++n) {
                auto ref = oracle::brute_force_counts(ell, n);
                CHECK(t.a[static_cast<std::size_t>(n)] == ref.a);
            }
        }
    }

    TEST_CASE("structural invariants hold to n=60") {
        auto t = build_orbit_table(2, 60, TableMode::exact);
        for (int n = 1; n <= 60; ++n) {
            const auto& row = t.a[static_cast<std::size_t>(n)];
            CHECK(row[0] == BigInt(0));
            CHECK(row[static_cast<std::size_t>(n)] == BigInt(1));
            for (const BigInt& v : row) CHECK(v >= 0);
        }
    }

    TEST_CASE("row sums give n! p(n) for pairs") {
        auto t = build_orbit_table(2, 60, TableMode::exact);
        auto p = oracle::partition_numbers(60);
        BigInt fact = 1;
        for (int n = 1; n <= 60; ++n) {
            fact *= n;
            BigInt total = 0;
            for (const BigInt& v : t.a[static_cast<std::size_t>(n)]) total += v;
            CHECK(total == fact * p[static_cast<std::size_t>(n)]);
        }
    }

    TEST_CASE("partition cross-check report") {
        auto t = build_orbit_table(2, 40, TableMode::exact);
        auto rep = h_at_one_vs_partitions(t);
        CHECK(rep.ok);
        CHECK(rep.first_mismatch == -1);
    }

    TEST_CASE("A(l,n,1) is nondecreasing in l for small n") {
        for (int n = 2; n <= 4; ++n) {
            BigInt prev = oracle::brute_force_counts(1, n).a[1];
            for (int ell : {2, 3}) {
                auto t = build_orbit_table(ell, n, TableMode::exact);
                CHECK(t.a[static_cast<std::size_t>(n)][1] >= prev);
                prev = t.a[static_cast<std::size_t>(n)][1];
            }
        }
    }

    TEST_CASE("float mode carries no integer counts") {
        auto t = build_orbit_table(2, 10, TableMode::floating);
        CHECK(t.a.empty());
        CHECK(t.h.size() == 11);
    }
}

TEST_SUITE("h_values") {
    TEST_CASE("exact evaluation at rational points") {
        auto t = build_orbit_table(2, 10, TableMode::exact);
        CHECK(h_value_exact(t, 0, Rat(5)) == Rat(1));
        // H_2(x) = (3x + x^2)/2
        CHECK(h_value_exact(t, 2, Rat(1)) == Rat(2));
        CHECK(h_value_exact(t, 2, Rat(1, 2)) == Rat(7, 8));
        // H_{2,n}(1) = p(n)
        auto p = oracle::partition_numbers(10);
        for (int n = 0; n <= 10; ++n)
            CHECK(h_value_exact(t, n, Rat(1)) == Rat(p[static_cast<std::size_t>(n)]));
    }

    TEST_CASE("log H float matches the exact table to 1e-10") {
        for (int ell : {2, 3}) {
            auto t = build_orbit_table(ell, 200, TableMode::exact);
            for (double x : {0.5, 1.0, 2.0}) {
                auto lh = log_h_float(ell, x, 200);
                Rat xr = x == 0.5 ? Rat(1, 2) : Rat(static_cast<int>(x));
                for (int n : {1, 7, 50, 123, 200}) {
                    const double ref = log_rat(h_value_exact(t, n, xr));
                    CHECK(std::abs(lh[static_cast<std::size_t>(n)] - ref) <=
                          1e-10 * std::max(1.0, std::abs(ref)));
                }
            }
        }
    }

    TEST_CASE("pinned float values") {
        auto lh = log_h_float(2, 1.0, 10);
        CHECK(lh[0] == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(lh[1] == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(lh[10] == doctest::Approx(3.7376696182833683).epsilon(1e-12));
    }

    TEST_CASE("growth law trend for pairs at x=1") {
        auto lh = log_h_float(2, 1.0, 10000);
        auto ratio = [&](int n) {
            return lh[static_cast<std::size_t>(n)] /
                   (2.0 * std::sqrt(testsupport::kZeta2 * n));
        };
        CHECK(std::abs(ratio(10000) - 1.0) < std::abs(ratio(100) - 1.0));
        CHECK(ratio(10000) > 0.9);
        CHECK(ratio(10000) < 1.0);
    }
}

TEST_SUITE("serialization") {
    TEST_CASE("json document carries decimal strings") {
        auto t = build_orbit_table(2, 3, TableMode::exact);
        auto doc = table_to_json(t);
        CHECK(doc.find("\"schema\"") != std::string::npos);
        CHECK(doc.find("\"9\"") != std::string::npos);
        CHECK(doc.find("\"ell\"") != std::string::npos);
    }

    TEST_CASE("csv row is stable") {
        auto t = build_orbit_table(2, 3, TableMode::exact);
        CHECK(row_to_csv(t, 3) == "3,0,8,9,1");
    }
}
