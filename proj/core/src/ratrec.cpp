#include "dalg/ratrec.hpp"

#include "dalg/error.hpp"

namespace dalg {

mpz_class crt_pair(const mpz_class& a, const mpz_class& M, u64 b, u64 q) {
    // x = a + M * t with t = (b - a) / M mod q
    u64 am = mpz_fdiv_ui(a.get_mpz_t(), q);
    u64 mm = mpz_fdiv_ui(M.get_mpz_t(), q);
    u64 t = mulmod(submod(b % q, am, q), invmod(mm, q), q);
    mpz_class x = a + M * mpz_class(static_cast<unsigned long>(t));
    return x;
}

mpz_class symmetric_lift(const mpz_class& a, const mpz_class& M) {
    mpz_class r = a % M;
    if (r < 0) r += M;
    if (2 * r > M) r -= M;
    return r;
}

bool rational_reconstruct(const mpz_class& a, const mpz_class& M, mpq_class& out) {
    mpz_class bound;
    mpz_class half = M / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());

    mpz_class r0 = M, r1 = a % M;
    if (r1 < 0) r1 += M;
    mpz_class t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (t1 == 0) return false;
    mpz_class n = r1, d = t1;
    if (d < 0) { d = -d; n = -n; }
    if (d > bound) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (g != 1 && d != 1) {
        // require the representation to be canonical and d invertible mod M
        if (g != 1) return false;
    }
    mpz_class gm;
    mpz_gcd(gm.get_mpz_t(), d.get_mpz_t(), M.get_mpz_t());
    if (gm != 1) return false;
    out = mpq_class(n, d);
    out.canonicalize();
    return true;
}

bool rational_reconstruct_vec(const std::vector<mpz_class>& a, const mpz_class& M,
                              std::vector<mpq_class>& out) {
    out.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!rational_reconstruct(a[i], M, out[i])) return false;
    return true;
}

} // namespace dalg
