#include "dalg/series.hpp"

#include <algorithm>

namespace dalg {

// ---- scalar ring helpers, overloaded on the coefficient type ----

static mpz_class s_add(const Domain&, const mpz_class& a, const mpz_class& b) { return a + b; }
static mpq_class s_add(const Domain&, const mpq_class& a, const mpq_class& b) { return a + b; }
static u64 s_add(const Domain& d, u64 a, u64 b) { return addmod(a, b, d.pr); }

static mpz_class s_sub(const Domain&, const mpz_class& a, const mpz_class& b) { return a - b; }
static mpq_class s_sub(const Domain&, const mpq_class& a, const mpq_class& b) { return a - b; }
static u64 s_sub(const Domain& d, u64 a, u64 b) { return submod(a, b, d.pr); }

static mpz_class s_mul(const Domain&, const mpz_class& a, const mpz_class& b) { return a * b; }
static mpq_class s_mul(const Domain&, const mpq_class& a, const mpq_class& b) { return a * b; }
static u64 s_mul(const Domain& d, u64 a, u64 b) { return mulmod(a, b, d.pr); }

static bool s_is_zero(const mpz_class& a) { return a == 0; }
static bool s_is_zero(const mpq_class& a) { return a == 0; }
static bool s_is_zero(u64 a) { return a == 0; }

template <typename C> static C s_zero() { return C{}; }

static mpz_class s_from_long(const Domain&, long v, mpz_class*) { return mpz_class(v); }
static mpq_class s_from_long(const Domain&, long v, mpq_class*) { return mpq_class(v); }
static u64 s_from_long(const Domain& d, long v, u64*) {
    long m = static_cast<long>(d.pr);
    long x = v % m;
    if (x < 0) x += m;
    return static_cast<u64>(x);
}

static mpz_class s_inv(const Domain&, const mpz_class& a) {
    if (a == 1 || a == -1) return a;
    throw ArithmeticError("inverse: integer is not a unit");
}
static mpq_class s_inv(const Domain&, const mpq_class& a) {
    if (a == 0) throw ArithmeticError("inverse: zero rational");
    return 1 / a;
}
static u64 s_inv(const Domain& d, u64 a) { return invmod(a, d.pr); }

// ---- basic structure ----

template <typename C>
long Series<C>::valuation() const {
    for (long i = 0; i <= order(); ++i)
        if (!s_is_zero(c_[static_cast<std::size_t>(i)])) return i;
    return order() + 1;
}

ZSeries make_zseries(std::vector<mpz_class> coeffs) {
    return ZSeries(Domain::integers(), std::move(coeffs));
}
QSeries make_qseries(std::vector<mpq_class> coeffs) {
    for (auto& q : coeffs) q.canonicalize();
    return QSeries(Domain::rationals(), std::move(coeffs));
}
MSeries make_mseries(const Domain& dom, std::vector<u64> coeffs) {
    if (dom.kind != DomainKind::Modular)
        throw DomainMismatch("make_mseries: domain is not modular");
    for (auto& v : coeffs) v %= dom.pr;
    return MSeries(dom, std::move(coeffs));
}
MSeries zero_mseries(const Domain& dom, long order) {
    return make_mseries(dom, std::vector<u64>(static_cast<std::size_t>(order) + 1, 0));
}

// ---- linear operations ----

template <typename C>
Series<C> linear_combine(const C& a, const Series<C>& F, const C& b, const Series<C>& G) {
    require_same_domain(F.domain(), G.domain(), "linear_combine");
    long n = std::min(F.order(), G.order());
    std::vector<C> out(static_cast<std::size_t>(n) + 1);
    const Domain& d = F.domain();
    for (long i = 0; i <= n; ++i)
        out[i] = s_add(d, s_mul(d, a, F.at(i)), s_mul(d, b, G.at(i)));
    return Series<C>(d, std::move(out));
}

template <typename C>
Series<C> add(const Series<C>& F, const Series<C>& G) {
    require_same_domain(F.domain(), G.domain(), "add");
    long n = std::min(F.order(), G.order());
    std::vector<C> out(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) out[i] = s_add(F.domain(), F.at(i), G.at(i));
    return Series<C>(F.domain(), std::move(out));
}

template <typename C>
Series<C> sub(const Series<C>& F, const Series<C>& G) {
    require_same_domain(F.domain(), G.domain(), "sub");
    long n = std::min(F.order(), G.order());
    std::vector<C> out(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) out[i] = s_sub(F.domain(), F.at(i), G.at(i));
    return Series<C>(F.domain(), std::move(out));
}

template <typename C>
Series<C> scalar_mul(const C& a, const Series<C>& F) {
    std::vector<C> out(F.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = s_mul(F.domain(), a, F.coeffs()[i]);
    return Series<C>(F.domain(), std::move(out));
}

// ---- multiplication ----

template <typename C>
Series<C> multiply_schoolbook(const Series<C>& F, const Series<C>& G) {
    require_same_domain(F.domain(), G.domain(), "multiply");
    long n = std::min(F.order(), G.order());
    const Domain& d = F.domain();
    std::vector<C> out(static_cast<std::size_t>(n) + 1, s_zero<C>());
    for (long k = 0; k <= n; ++k) {
        C acc = s_zero<C>();
        for (long i = 0; i <= k; ++i)
            acc = s_add(d, acc, s_mul(d, F.at(i), G.at(k - i)));
        out[k] = acc;
    }
    return Series<C>(d, std::move(out));
}

// Specialized integer schoolbook using in-place addmul, noticeably faster
// on large operands than the generic expression-template version.
template <>
Series<mpz_class> multiply_schoolbook(const Series<mpz_class>& F, const Series<mpz_class>& G) {
    require_same_domain(F.domain(), G.domain(), "multiply");
    long n = std::min(F.order(), G.order());
    std::vector<mpz_class> out(static_cast<std::size_t>(n) + 1);
    for (long k = 0; k <= n; ++k)
        for (long i = 0; i <= k; ++i)
            mpz_addmul(out[k].get_mpz_t(), F.at(i).get_mpz_t(), G.at(k - i).get_mpz_t());
    return Series<mpz_class>(F.domain(), std::move(out));
}

// ---- NTT machinery for the subquadratic integer path ----

namespace {

void ntt_transform(std::vector<u64>& v, const NttPrime& P, bool inverse) {
    const u64 q = P.q;
    std::size_t n = v.size();
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    unsigned logn = 0;
    while ((1u << logn) < n) ++logn;
    for (unsigned s = 1; s <= logn; ++s) {
        std::size_t m = std::size_t(1) << s;
        u64 w_m = powmod(P.root, (q - 1) >> s, q);
        if (inverse) w_m = invmod(w_m, q);
        for (std::size_t k = 0; k < n; k += m) {
            u64 w = 1;
            for (std::size_t j = 0; j < m / 2; ++j) {
                u64 t = mulmod(w, v[k + j + m / 2], q);
                u64 u = v[k + j];
                v[k + j] = addmod(u, t, q);
                v[k + j + m / 2] = submod(u, t, q);
                w = mulmod(w, w_m, q);
            }
        }
    }
    if (inverse) {
        u64 ninv = invmod(n % q, q);
        for (auto& x : v) x = mulmod(x, ninv, q);
    }
}

const std::vector<NttPrime>& ntt_prime_pool() {
    // Enough primes under 2^62 for products whose coefficients stay below
    // roughly 2^(62*64); grown here once, adicity 24 covers lengths to 2^24.
    static const std::vector<NttPrime> pool = ntt_primes(64, 24);
    return pool;
}

std::vector<u64> conv_mod(const std::vector<u64>& a, const std::vector<u64>& b,
                          std::size_t out_len, const NttPrime& P) {
    std::size_t sz = 1;
    while (sz < a.size() + b.size() - 1) sz <<= 1;
    std::vector<u64> fa(sz, 0), fb(sz, 0);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i] % P.q;
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i] % P.q;
    ntt_transform(fa, P, false);
    ntt_transform(fb, P, false);
    for (std::size_t i = 0; i < sz; ++i) fa[i] = mulmod(fa[i], fb[i], P.q);
    ntt_transform(fa, P, true);
    fa.resize(out_len);
    return fa;
}

} // namespace

ZSeries multiply_fast(const ZSeries& F, const ZSeries& G) {
    require_same_domain(F.domain(), G.domain(), "multiply");
    long n = std::min(F.order(), G.order());
    std::size_t len = static_cast<std::size_t>(n) + 1;

    // Magnitude bound on any product coefficient, times 2 for the
    // symmetric lift.
    mpz_class ma = 0, mb = 0;
    for (std::size_t i = 0; i < len; ++i) {
        mpz_class aa = abs(F.coeffs()[i]), bb = abs(G.coeffs()[i]);
        if (aa > ma) ma = aa;
        if (bb > mb) mb = bb;
    }
    mpz_class bound = 2 * ma * mb * mpz_class(static_cast<long>(len));
    if (bound == 0) bound = 1;

    const auto& pool = ntt_prime_pool();
    std::vector<NttPrime> used;
    mpz_class prod = 1;
    for (const auto& P : pool) {
        if (prod > bound) break;
        used.push_back(P);
        prod *= mpz_class(static_cast<unsigned long>(P.q));
    }
    if (prod <= bound)
        throw ArithmeticError("multiply_fast: coefficient bound exceeds prime pool");

    // Residues of the inputs, one convolution per prime.
    std::vector<std::vector<u64>> res(used.size());
    for (std::size_t pi = 0; pi < used.size(); ++pi) {
        std::vector<u64> ra(len), rb(len);
        for (std::size_t i = 0; i < len; ++i) {
            ra[i] = mpz_fdiv_ui(F.coeffs()[i].get_mpz_t(), used[pi].q);
            rb[i] = mpz_fdiv_ui(G.coeffs()[i].get_mpz_t(), used[pi].q);
        }
        res[pi] = conv_mod(ra, rb, len, used[pi]);
    }

    // CRT recombination with a symmetric lift.
    std::vector<mpz_class> Mi(used.size());
    std::vector<u64> yi(used.size());
    for (std::size_t pi = 0; pi < used.size(); ++pi) {
        Mi[pi] = prod / mpz_class(static_cast<unsigned long>(used[pi].q));
        u64 m_mod = mpz_fdiv_ui(Mi[pi].get_mpz_t(), used[pi].q);
        yi[pi] = invmod(m_mod, used[pi].q);
    }
    mpz_class half = prod / 2;
    std::vector<mpz_class> out(len);
    mpz_class acc;
    for (std::size_t k = 0; k < len; ++k) {
        acc = 0;
        for (std::size_t pi = 0; pi < used.size(); ++pi) {
            u64 t = mulmod(res[pi][k], yi[pi], used[pi].q);
            mpz_addmul_ui(acc.get_mpz_t(), Mi[pi].get_mpz_t(), t);
        }
        acc %= prod;
        if (acc > half) acc -= prod;
        out[k] = acc;
    }
    return ZSeries(F.domain(), std::move(out));
}

MSeries multiply_fast(const MSeries& F, const MSeries& G) {
    require_same_domain(F.domain(), G.domain(), "multiply");
    long n = std::min(F.order(), G.order());
    std::size_t len = static_cast<std::size_t>(n) + 1;
    const u64 m = F.domain().pr;

    // Lift to Z, convolve modulo NTT primes, reduce.  The bound is
    // len * (m-1)^2 which fits in a few words.
    mpz_class bound = 2 * mpz_class(static_cast<unsigned long>(m - 1)) *
                      mpz_class(static_cast<unsigned long>(m - 1)) *
                      mpz_class(static_cast<long>(len));
    const auto& pool = ntt_prime_pool();
    std::vector<NttPrime> used;
    mpz_class prod = 1;
    for (const auto& P : pool) {
        if (prod > bound) break;
        used.push_back(P);
        prod *= mpz_class(static_cast<unsigned long>(P.q));
    }
    std::vector<std::vector<u64>> res(used.size());
    for (std::size_t pi = 0; pi < used.size(); ++pi)
        res[pi] = conv_mod(F.coeffs(), G.coeffs(), len, used[pi]);

    std::vector<mpz_class> Mi(used.size());
    std::vector<u64> yi(used.size());
    for (std::size_t pi = 0; pi < used.size(); ++pi) {
        Mi[pi] = prod / mpz_class(static_cast<unsigned long>(used[pi].q));
        yi[pi] = invmod(mpz_fdiv_ui(Mi[pi].get_mpz_t(), used[pi].q), used[pi].q);
    }
    std::vector<u64> out(len);
    mpz_class acc;
    for (std::size_t k = 0; k < len; ++k) {
        acc = 0;
        for (std::size_t pi = 0; pi < used.size(); ++pi)
            mpz_addmul_ui(acc.get_mpz_t(), Mi[pi].get_mpz_t(), mulmod(res[pi][k], yi[pi], used[pi].q));
        acc %= prod;
        out[k] = mpz_fdiv_ui(acc.get_mpz_t(), m);
    }
    return MSeries(F.domain(), std::move(out));
}

template <typename C>
Series<C> multiply(const Series<C>& F, const Series<C>& G) {
    return multiply_schoolbook(F, G);
}

template <>
Series<mpz_class> multiply(const Series<mpz_class>& F, const Series<mpz_class>& G) {
    long n = std::min(F.order(), G.order());
    if (n >= 96) return multiply_fast(F, G);
    return multiply_schoolbook(F, G);
}

template <>
Series<u64> multiply(const Series<u64>& F, const Series<u64>& G) {
    long n = std::min(F.order(), G.order());
    if (n >= 512) return multiply_fast(F, G);
    return multiply_schoolbook(F, G);
}

// ---- calculus and composition ----

template <typename C>
Series<C> derivative(const Series<C>& F) {
    if (F.order() < 1)
        throw TruncationError("derivative: series is known to order 0 only");
    long n = F.order();
    const Domain& d = F.domain();
    std::vector<C> out(static_cast<std::size_t>(n));
    for (long i = 1; i <= n; ++i)
        out[i - 1] = s_mul(d, s_from_long(d, i, static_cast<C*>(nullptr)), F.at(i));
    return Series<C>(d, std::move(out));
}

template <typename C>
Series<C> compose(const Series<C>& F, const Series<C>& G) {
    require_same_domain(F.domain(), G.domain(), "compose");
    if (!s_is_zero(G.at(0)))
        throw ArithmeticError("compose: inner series must have positive valuation");
    long n = std::min(F.order(), G.order());
    const Domain& d = F.domain();
    Series<C> Gn = truncate(G, n);
    std::vector<C> r(static_cast<std::size_t>(n) + 1, s_zero<C>());
    r[0] = F.at(F.order());
    Series<C> R(d, std::move(r));
    for (long i = F.order() - 1; i >= 0; --i) {
        R = multiply(R, Gn);
        R.at(0) = s_add(d, R.at(0), F.at(i));
    }
    return R;
}

template <typename C>
Series<C> reciprocal(const Series<C>& F) {
    const Domain& d = F.domain();
    C c0inv = s_inv(d, F.at(0));
    long n = F.order();
    Series<C> X(d, std::vector<C>{c0inv});
    long prec = 0;
    while (prec < n) {
        prec = std::min(2 * prec + 1, n);
        Series<C> Ft = truncate(F, prec);
        Series<C> Xt(d, X.coeffs());
        Xt.coeffs().resize(static_cast<std::size_t>(prec) + 1, s_zero<C>());
        Series<C> FX = multiply(Ft, Xt);
        // X <- X * (2 - F X)
        Series<C> two_minus(d, std::vector<C>(static_cast<std::size_t>(prec) + 1, s_zero<C>()));
        for (long i = 0; i <= prec; ++i)
            two_minus.at(i) = s_sub(d, s_from_long(d, i == 0 ? 2 : 0, static_cast<C*>(nullptr)), FX.at(i));
        X = multiply(Xt, two_minus);
    }
    return X;
}

// ---- square roots ----

QSeries sqrt_series(const QSeries& F) {
    long v = F.valuation();
    if (v > F.order())
        throw ArithmeticError("sqrt: known part of the series is zero");
    if (v % 2 != 0)
        throw ArithmeticError("sqrt: valuation is odd");
    QSeries U = shift_down(F, v);
    mpq_class c0 = U.at(0);
    if (c0 < 0)
        throw ArithmeticError("sqrt: negative leading coefficient");
    mpz_class num = c0.get_num(), den = c0.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
        throw ArithmeticError("sqrt: leading coefficient is not a rational square");
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    mpq_class r0(rn, rd);
    r0.canonicalize();

    const Domain d = F.domain();
    long n = U.order();
    // Newton for the inverse square root: Y <- Y (3 - U Y^2) / 2.
    QSeries Y(d, std::vector<mpq_class>{1 / r0});
    long prec = 0;
    while (prec < n) {
        prec = std::min(2 * prec + 1, n);
        QSeries Ut = truncate(U, prec);
        QSeries Yt(d, Y.coeffs());
        Yt.coeffs().resize(static_cast<std::size_t>(prec) + 1, mpq_class(0));
        QSeries Y2 = multiply(Yt, Yt);
        QSeries UY2 = multiply(Ut, Y2);
        QSeries corr(d, std::vector<mpq_class>(static_cast<std::size_t>(prec) + 1));
        for (long i = 0; i <= prec; ++i)
            corr.at(i) = (mpq_class(i == 0 ? 3 : 0) - UY2.at(i)) / 2;
        Y = multiply(Yt, corr);
    }
    QSeries root = multiply(U, Y);
    return shift_up(root, v / 2);
}

MSeries sqrt_series(const MSeries& F) {
    const Domain d = F.domain();
    if (d.p == 2)
        throw ArithmeticError("sqrt: p = 2 is not supported");
    long v = F.valuation();
    if (v > F.order())
        throw ArithmeticError("sqrt: known part of the series is zero");
    if (v % 2 != 0)
        throw ArithmeticError("sqrt: valuation is odd");
    MSeries U = shift_down(F, v);
    u64 r0;
    if (!sqrtmod_prime_power(U.at(0), d.p, d.r, d.pr, r0))
        throw ArithmeticError("sqrt: leading coefficient is not a square mod " + std::to_string(d.pr));
    long n = U.order();
    u64 inv2 = invmod(2 % d.pr, d.pr);
    MSeries Y(d, std::vector<u64>{invmod(r0, d.pr)});
    long prec = 0;
    while (prec < n) {
        prec = std::min(2 * prec + 1, n);
        MSeries Ut = truncate(U, prec);
        MSeries Yt(d, Y.coeffs());
        Yt.coeffs().resize(static_cast<std::size_t>(prec) + 1, 0);
        MSeries UY2 = multiply(Ut, multiply(Yt, Yt));
        MSeries corr(d, std::vector<u64>(static_cast<std::size_t>(prec) + 1, 0));
        for (long i = 0; i <= prec; ++i)
            corr.at(i) = mulmod(submod(i == 0 ? 3 % d.pr : 0, UY2.at(i), d.pr), inv2, d.pr);
        Y = multiply(Yt, corr);
    }
    MSeries root = multiply(U, Y);
    return shift_up(root, v / 2);
}

ZSeries sqrt_series(const ZSeries& F) {
    QSeries r = sqrt_series(to_qseries(F));
    return to_zseries(r);
}

// ---- reductions ----

MSeries reduce_mod(const ZSeries& F, u64 p, unsigned r) {
    Domain d = Domain::modular(p, r);
    std::vector<u64> out(F.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = mpz_fdiv_ui(F.coeffs()[i].get_mpz_t(), d.pr);
    MSeries R(d, std::move(out));
    R.name = F.name;
    return R;
}

MSeries reduce_mod(const QSeries& F, u64 p, unsigned r) {
    Domain d = Domain::modular(p, r);
    std::vector<u64> out(F.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const mpq_class& q = F.coeffs()[i];
        u64 den = mpz_fdiv_ui(q.get_den().get_mpz_t(), d.pr);
        if (den % p == 0)
            throw ArithmeticError("reduce_mod: denominator of coefficient " + std::to_string(i) +
                                  " is not a unit mod " + std::to_string(d.pr));
        u64 num = mpz_fdiv_ui(q.get_num().get_mpz_t(), d.pr);
        out[i] = mulmod(num, invmod(den, d.pr), d.pr);
    }
    MSeries R(d, std::move(out));
    R.name = F.name;
    return R;
}

MSeries reduce_mod(const MSeries& F, u64 p, unsigned r) {
    Domain d = Domain::modular(p, r);
    if (F.domain().p != p || r > F.domain().r)
        throw DomainMismatch("reduce_mod: can only reduce Z/p^r to Z/p^s with s <= r");
    std::vector<u64> out(F.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.coeffs()[i] % d.pr;
    MSeries R(d, std::move(out));
    R.name = F.name;
    return R;
}

// ---- Borel transforms ----

QSeries borel(const QSeries& F) {
    std::vector<mpq_class> out(F.coeffs().size());
    mpz_class fact = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i > 1) fact *= static_cast<long>(i);
        out[i] = F.coeffs()[i] / mpq_class(fact);
    }
    return QSeries(Domain::rationals(), std::move(out));
}

QSeries borel(const ZSeries& F) { return borel(to_qseries(F)); }

MSeries borel(const MSeries& F) {
    const Domain& d = F.domain();
    if (static_cast<u64>(F.order()) >= d.p)
        throw ArithmeticError("borel: order must be below p for modular series");
    std::vector<u64> out(F.coeffs().size());
    u64 fact = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i > 1) fact = mulmod(fact, i, d.pr);
        out[i] = mulmod(F.coeffs()[i], invmod(fact, d.pr), d.pr);
    }
    return MSeries(d, std::move(out));
}

QSeries inverse_borel(const QSeries& F) {
    std::vector<mpq_class> out(F.coeffs().size());
    mpz_class fact = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i > 1) fact *= static_cast<long>(i);
        out[i] = F.coeffs()[i] * mpq_class(fact);
    }
    return QSeries(Domain::rationals(), std::move(out));
}

MSeries inverse_borel(const MSeries& F) {
    const Domain& d = F.domain();
    if (static_cast<u64>(F.order()) >= d.p)
        throw ArithmeticError("inverse_borel: order must be below p for modular series");
    std::vector<u64> out(F.coeffs().size());
    u64 fact = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i > 1) fact = mulmod(fact, i, d.pr);
        out[i] = mulmod(F.coeffs()[i], fact, d.pr);
    }
    return MSeries(d, std::move(out));
}

// ---- structural helpers ----

template <typename C>
Series<C> truncate(const Series<C>& F, long new_order) {
    if (new_order > F.order())
        throw TruncationError("truncate: cannot extend a series");
    std::vector<C> out(F.coeffs().begin(), F.coeffs().begin() + new_order + 1);
    Series<C> R(F.domain(), std::move(out));
    R.name = F.name;
    return R;
}

template <typename C>
Series<C> shift_down(const Series<C>& F, long s) {
    if (s == 0) return F;
    if (s < 0) return shift_up(F, -s);
    if (F.order() < s)
        throw TruncationError("shift_down: series too short");
    for (long i = 0; i < s; ++i)
        if (!s_is_zero(F.at(i)))
            throw ArithmeticError("shift_down: coefficient of x^" + std::to_string(i) + " is nonzero");
    std::vector<C> out(F.coeffs().begin() + s, F.coeffs().end());
    return Series<C>(F.domain(), std::move(out));
}

template <typename C>
Series<C> shift_up(const Series<C>& F, long s) {
    if (s == 0) return F;
    if (s < 0) return shift_down(F, -s);
    std::vector<C> out(static_cast<std::size_t>(F.order() + s) + 1, s_zero<C>());
    for (long i = 0; i <= F.order(); ++i) out[i + s] = F.at(i);
    return Series<C>(F.domain(), std::move(out));
}

template <typename C>
Series<C> substitute_power(const Series<C>& F, long s) {
    if (s <= 0)
        throw ArithmeticError("substitute_power: exponent must be positive");
    long n = (F.order() + 1) * s - 1;
    std::vector<C> out(static_cast<std::size_t>(n) + 1, s_zero<C>());
    for (long i = 0; i <= F.order(); ++i) out[i * s] = F.at(i);
    return Series<C>(F.domain(), std::move(out));
}

ZSeries to_zseries(const QSeries& F) {
    std::vector<mpz_class> out(F.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const mpq_class& q = F.coeffs()[i];
        if (q.get_den() != 1)
            throw ArithmeticError("to_zseries: coefficient of x^" + std::to_string(i) +
                                  " is not an integer");
        out[i] = q.get_num();
    }
    ZSeries R(Domain::integers(), std::move(out));
    R.name = F.name;
    return R;
}

QSeries to_qseries(const ZSeries& F) {
    std::vector<mpq_class> out(F.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.coeffs()[i];
    QSeries R(Domain::rationals(), std::move(out));
    R.name = F.name;
    return R;
}

// ---- AnySeries ----

Domain any_domain(const AnySeries& s) {
    return std::visit([](const auto& v) { return v.domain(); }, s);
}
long any_order(const AnySeries& s) {
    return std::visit([](const auto& v) { return v.order(); }, s);
}
const std::string& any_name(const AnySeries& s) {
    return std::visit([](const auto& v) -> const std::string& { return v.name; }, s);
}
void set_any_name(AnySeries& s, const std::string& name) {
    std::visit([&](auto& v) { v.name = name; }, s);
}

// ---- explicit instantiations ----

#define DALG_INSTANTIATE(C)                                                        \
    template class Series<C>;                                                      \
    template Series<C> linear_combine(const C&, const Series<C>&, const C&, const Series<C>&); \
    template Series<C> add(const Series<C>&, const Series<C>&);                    \
    template Series<C> sub(const Series<C>&, const Series<C>&);                    \
    template Series<C> scalar_mul(const C&, const Series<C>&);                     \
    template Series<C> multiply_schoolbook(const Series<C>&, const Series<C>&);    \
    template Series<C> multiply(const Series<C>&, const Series<C>&);               \
    template Series<C> derivative(const Series<C>&);                               \
    template Series<C> compose(const Series<C>&, const Series<C>&);                \
    template Series<C> reciprocal(const Series<C>&);                               \
    template Series<C> truncate(const Series<C>&, long);                           \
    template Series<C> shift_down(const Series<C>&, long);                         \
    template Series<C> shift_up(const Series<C>&, long);                           \
    template Series<C> substitute_power(const Series<C>&, long);

DALG_INSTANTIATE(mpz_class)
DALG_INSTANTIATE(mpq_class)
DALG_INSTANTIATE(u64)

#undef DALG_INSTANTIATE

} // namespace dalg
