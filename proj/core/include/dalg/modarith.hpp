#ifndef DALG_MODARITH_HPP
#define DALG_MODARITH_HPP

#include <cstdint>
#include <vector>

namespace dalg {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((u128)a * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) {
    return a >= b ? a - b : a + (m - b);
}

u64 powmod(u64 a, u64 e, u64 m);

// Modular inverse of a mod m; requires gcd(a, m) == 1, throws otherwise.
// Works for any modulus, not just primes, which matters for Z/p^r.
u64 invmod(u64 a, u64 m);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(u64 n);

// Largest prime strictly below n (throws if none).
u64 prev_prime(u64 n);

// Square root mod an odd prime p via Tonelli-Shanks.
// Returns false if a is a non-residue.
bool sqrtmod_prime(u64 a, u64 p, u64& root);

// Square root of a unit mod p^r (p odd), by Hensel lifting the mod-p root.
bool sqrtmod_prime_power(u64 a, u64 p, unsigned r, u64 pr, u64& root);

// A prime q = c * 2^k + 1 suitable for radix-2 NTT, together with a
// primitive 2^k-th root of unity.
struct NttPrime {
    u64 q;
    u64 root;     // primitive root of the full multiplicative group
    unsigned two_adicity;
};

// Distinct NTT primes just below 2^62 whose two-adicity is at least `adicity`.
std::vector<NttPrime> ntt_primes(std::size_t count, unsigned adicity);

// Word-size primes just below 2^62 for multi-modular linear algebra.
std::vector<u64> working_primes(std::size_t count);

} // namespace dalg

#endif
