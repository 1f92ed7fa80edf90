#include "dalg/modarith.hpp"
#include "dalg/error.hpp"

namespace dalg {

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    i64 t = 0, newt = 1;
    i64 r = static_cast<i64>(m), newr = static_cast<i64>(a % m);
    while (newr != 0) {
        i64 q = r / newr;
        i64 tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1)
        throw ArithmeticError("invmod: element is not a unit");
    if (t < 0) t += static_cast<i64>(m);
    return static_cast<u64>(t);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This base set is a proven deterministic test for n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

u64 prev_prime(u64 n) {
    if (n <= 2) throw ArithmeticError("prev_prime: no prime below 2");
    u64 c = n - 1;
    if (c % 2 == 0 && c > 2) --c;
    for (; c >= 2; c -= (c == 3 ? 1 : 2)) {
        if (is_prime_u64(c)) return c;
    }
    throw ArithmeticError("prev_prime: no prime found");
}

bool sqrtmod_prime(u64 a, u64 p, u64& root) {
    a %= p;
    if (a == 0) { root = 0; return true; }
    if (p == 2) { root = a; return true; }
    if (powmod(a, (p - 1) / 2, p) != 1) return false;
    if (p % 4 == 3) {
        root = powmod(a, (p + 1) / 4, p);
        return true;
    }
    // Tonelli-Shanks
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s;
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        u64 i = 0;
        while (t2 != 1) { t2 = mulmod(t2, t2, p); ++i; }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    root = r;
    return true;
}

bool sqrtmod_prime_power(u64 a, u64 p, unsigned r, u64 pr, u64& root) {
    a %= pr;
    if (a % p == 0)
        throw ArithmeticError("sqrtmod_prime_power: argument must be a unit");
    u64 x;
    if (!sqrtmod_prime(a % p, p, x)) return false;
    // Hensel: x -> x - (x^2 - a) / (2x), doubling the p-adic precision
    // would also work, one step per power is plenty at these sizes.
    u64 mod = p;
    for (unsigned k = 1; k < r; ++k) {
        mod *= p;
        u64 fx = submod(mulmod(x, x, mod), a % mod, mod);
        u64 dinv = invmod(mulmod(2 % mod, x, mod), mod);
        x = submod(x, mulmod(fx, dinv, mod), mod);
    }
    root = x;
    return true;
}

static u64 primitive_root(u64 q) {
    // q is prime; factor q - 1 by trial division (q - 1 = c * 2^k with c
    // smooth enough in practice since our NTT primes have tiny odd parts).
    u64 n = q - 1;
    std::vector<u64> fac;
    u64 m = n;
    for (u64 d = 2; d * d <= m; d += (d == 2 ? 1 : 2)) {
        if (m % d == 0) {
            fac.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) fac.push_back(m);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (u64 f : fac) {
            if (powmod(g, n / f, q) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
}

std::vector<NttPrime> ntt_primes(std::size_t count, unsigned adicity) {
    std::vector<NttPrime> out;
    // Scan q = c * 2^adicity + 1 downward from 2^62.
    u64 step = 1ull << adicity;
    u64 c = (1ull << 62) / step;
    for (; out.size() < count && c > 0; --c) {
        u64 q = c * step + 1;
        if (!is_prime_u64(q)) continue;
        unsigned k = 0;
        u64 t = q - 1;
        while ((t & 1) == 0) { t >>= 1; ++k; }
        out.push_back({q, primitive_root(q), k});
    }
    if (out.size() < count)
        throw ArithmeticError("ntt_primes: prime pool exhausted");
    return out;
}

std::vector<u64> working_primes(std::size_t count) {
    std::vector<u64> out;
    u64 c = (1ull << 62) - 1;
    while (out.size() < count) {
        c = prev_prime(c);
        out.push_back(c);
    }
    return out;
}

} // namespace dalg
