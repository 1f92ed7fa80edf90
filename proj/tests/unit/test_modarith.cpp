#include <doctest.h>

#include "dalg/modarith.hpp"
#include "dalg/error.hpp"

using namespace dalg;

TEST_CASE("deterministic primality") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(32749));
    CHECK(!is_prime_u64(32751));
    CHECK(is_prime_u64(0x7FFFFFFFull));          // 2^31 - 1
    CHECK(!is_prime_u64((1ull << 61) + 1));
    CHECK(is_prime_u64(2305843009213693951ull)); // 2^61 - 1
}

TEST_CASE("prev_prime walks downward") {
    CHECK(prev_prime(32768) == 32749);
    CHECK(prev_prime(32749) == 32719);
    CHECK(prev_prime(32719) == 32717);
    CHECK(prev_prime(1u << 30) == 1073741789);
}

TEST_CASE("invmod on composite moduli") {
    u64 m = 3 * 3 * 3 * 3; // 81
    u64 inv = invmod(2, m);
    CHECK(mulmod(2, inv, m) == 1);
    CHECK_THROWS_AS(invmod(3, m), ArithmeticError);
}

TEST_CASE("square roots mod primes and prime powers") {
    u64 r;
    REQUIRE(sqrtmod_prime(2, 7, r));
    CHECK(mulmod(r, r, 7) == 2);
    CHECK(!sqrtmod_prime(3, 7, r));
    // 13 = 1 mod 4 exercises the Tonelli-Shanks branch
    REQUIRE(sqrtmod_prime(10, 13, r));
    CHECK(mulmod(r, r, 13) == 10);

    u64 pr = 81;
    REQUIRE(sqrtmod_prime_power(4, 3, 4, pr, r));
    CHECK(mulmod(r, r, pr) == 4);
    REQUIRE(sqrtmod_prime_power(7, 3, 4, pr, r));
    CHECK(mulmod(r, r, pr) == 7);
}

TEST_CASE("ntt primes have the requested two-adicity") {
    auto ps = ntt_primes(3, 20);
    for (const auto& P : ps) {
        CHECK(is_prime_u64(P.q));
        CHECK(P.two_adicity >= 20);
        CHECK(((P.q - 1) >> P.two_adicity) % 2 == 1);
        // root really generates the group
        CHECK(powmod(P.root, (P.q - 1) / 2, P.q) == P.q - 1);
    }
}
