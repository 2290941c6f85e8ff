#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dioph/cyclotomic.hpp"
#include "test_oracles.hpp"

using namespace dioph;

TEST_CASE("euler_phi frozen values and oracle sweep") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    std::vector<std::int64_t> expect{1, 2, 2, 4, 4};
    for (int i = 1; i <= 5; ++i) CHECK(euler_phi(2 * i) == expect[i - 1]);
    CHECK_THROWS_AS(euler_phi(0), std::invalid_argument);
    for (std::int64_t n = 1; n <= 200; ++n) CHECK(euler_phi(n) == testo::gcd_count_phi(n));
}

TEST_CASE("cyclo_int frozen small cases") {
    CHECK(cyclo_int(1) == IntPoly({-1, 1}));
    CHECK(cyclo_int(2) == IntPoly({1, 1}));
    CHECK(cyclo_int(6) == IntPoly({1, -1, 1}));
    CHECK(cyclo_int(12) == IntPoly({1, 0, -1, 0, 1}));
    CHECK_THROWS_AS(cyclo_int(0), std::invalid_argument);
    CHECK_THROWS_AS(cyclo_int(3001), std::invalid_argument);
}

TEST_CASE("cyclo_int matches the Moebius-product oracle") {
    for (std::int64_t n = 1; n <= 120; ++n) {
        CHECK(cyclo_int(n) == testo::moebius_cyclo(n));
    }
    // first index with a coefficient outside {-1, 0, 1}
    IntPoly p105 = cyclo_int(105);
    CHECK(p105 == testo::moebius_cyclo(105));
    bool has_two = false;
    for (auto c : p105.c) has_two = has_two || c == -2 || c == 2;
    CHECK(has_two);
}

TEST_CASE("product identity and degree, moderate range") {
    for (std::int64_t n = 1; n <= 60; ++n) {
        IntPoly prod = IntPoly::one();
        for (std::int64_t d = 1; d <= n; ++d) {
            if (n % d == 0) prod = ipoly_mul(prod, cyclo_int(d));
        }
        IntPoly target;
        target.c.assign(n + 1, 0);
        target.c[0] = -1;
        target.c[n] = 1;
        REQUIRE(prod == target);
        REQUIRE(cyclo_int(n).deg() == euler_phi(n));
    }
}

TEST_CASE("fresh cache and global cache agree") {
    CycloCache fresh;
    for (std::int64_t n : {1, 7, 12, 30, 105}) {
        CHECK(cyclo_int(n, fresh) == cyclo_int(n));
        CHECK(cyclo_int(n, fresh) == cyclo_int(n, fresh));
    }
}

TEST_CASE("cyclo_mod frozen values") {
    CHECK(cyclo_mod(3, 4) == FpPoly({1, 0, 1}));
    // Phi_3 = x^2 + x + 1 stays fixed mod 3 and factors as (x+2)^2
    CHECK(cyclo_mod(3, 3) == FpPoly({1, 1, 1}));
    CHECK(cyclo_mod(3, 3) == poly_mul(FpPoly({2, 1}), FpPoly({2, 1}), 3));
    CHECK(poly_is_perfect_square(cyclo_mod(3, 3), 3));
    FpPoly p510 = cyclo_mod(5, 10);
    CHECK(p510 == FpPoly({1, 4, 1, 4, 1}));
    CHECK(poly_is_perfect_square(p510, 5));
    CHECK_THROWS_AS(cyclo_mod(4, 3), std::invalid_argument);
    CHECK_THROWS_AS(cyclo_mod(3, 0), std::invalid_argument);
}

TEST_CASE("cyclo_mod equals cyclo_int reduced") {
    for (std::int64_t p : {3, 5, 7}) {
        for (std::int64_t n = 1; n <= 120; ++n) {
            REQUIRE(cyclo_mod(p, n) == ipoly_reduce(cyclo_int(n), p));
        }
    }
}

TEST_CASE("square-freeness when p does not divide the index") {
    for (std::int64_t p : {3, 5, 7}) {
        for (std::int64_t n = 1; n <= 80; ++n) {
            if (n % p == 0) continue;
            FpPoly phi = cyclo_mod(p, n);
            REQUIRE(poly_gcd(phi, poly_derivative(phi, p), p).deg() == 0);
        }
    }
}

TEST_CASE("p-power closed form spot checks") {
    // n = p^a r: Phi_n = Phi_r^((p-1) p^(a-1)) mod p
    CHECK(cyclo_mod(3, 45) == poly_pow(cyclo_mod(3, 5), 2 * 3, 3));
    CHECK(cyclo_mod(7, 7) == poly_pow(FpPoly({6, 1}), 6, 7));  // (x-1)^6
    CHECK(cyclo_mod(5, 50) == poly_pow(cyclo_mod(5, 2), 4 * 5, 5));
}

TEST_CASE("phi_properties_check frozen trios") {
    auto r1 = phi_properties_check(3, 3, 4);
    CHECK(r1.is_square_when_p_divides);
    CHECK(r1.is_squarefree_when_p_coprime);
    CHECK(r1.coprime_pair);
    CHECK(r1.all());

    auto r2 = phi_properties_check(5, 2, 4);
    CHECK(r2.coprime_pair);

    auto r3 = phi_properties_check(7, 7, std::nullopt);
    CHECK(r3.is_square_when_p_divides);
}

TEST_CASE("phi properties sweep") {
    for (std::int64_t p : {3, 5}) {
        for (std::int64_t n = 1; n <= 40; ++n) {
            for (std::int64_t n2 = n + 1; n2 <= 40; ++n2) {
                REQUIRE(phi_properties_check(p, n, n2).all());
            }
        }
    }
}

TEST_CASE("integer polynomial overflow is reported") {
    IntPoly big({std::int64_t(1) << 62});
    CHECK_THROWS_AS(ipoly_mul(big, IntPoly({4})), std::overflow_error);
    CHECK_THROWS_AS(ipoly_mul(big, big), std::overflow_error);
}
