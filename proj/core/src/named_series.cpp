#include "dalg/named_series.hpp"

#include <array>

namespace dalg {

namespace {

mpq_class fall(long k, long j) {
    mpq_class f = 1;
    for (long t = 0; t < j; ++t) f *= k - t;
    return f;
}

} // namespace

QSeries solve_linear_series_ode2(const QSeries& a2, const QSeries& a1, const QSeries& a0,
                                 const mpq_class& f0, const mpq_class& f1, long N) {
    struct Term { const QSeries* a; long j; long val; };
    std::vector<Term> terms;
    for (auto [s, j] : std::array<std::pair<const QSeries*, long>, 3>{{{&a2, 2}, {&a1, 1}, {&a0, 0}}}) {
        if (s->known_part_is_zero()) continue;
        terms.push_back({s, j, s->valuation()});
    }
    if (terms.empty())
        throw ArithmeticError("solve_linear_series_ode2: zero equation");

    long sigma = terms[0].val - terms[0].j;
    for (const auto& t : terms) sigma = std::min(sigma, t.val - t.j);

    // Equation coefficient [x^m] is only fully known when every a_j is
    // known through x^m, which caps how far the solution can be pushed.
    long mmax = terms[0].a->order();
    for (const auto& t : terms) mmax = std::min(mmax, t.a->order());
    if (N < 0) N = mmax - sigma; // solve as deep as the data allows
    if (N > mmax - sigma)
        throw TruncationError("solve_linear_series_ode2: coefficients support order " +
                              std::to_string(mmax - sigma) + " but " + std::to_string(N) +
                              " was requested");

    std::vector<mpq_class> f(N + 1, 0);
    f[0] = f0;
    if (N >= 1) f[1] = f1;

    auto residual_known = [&](long m, long below) {
        // sum over contributions with coefficient index strictly below `below`
        mpq_class acc = 0;
        for (const auto& t : terms) {
            long tmax = std::min(m, t.a->order());
            for (long tt = t.val; tt <= tmax; ++tt) {
                long idx = m - tt + t.j;
                if (idx >= below || idx > N) continue;
                if (idx < t.j) continue; // derivative killed this coefficient
                acc += t.a->at(tt) * fall(idx, t.j) * f[idx];
            }
        }
        return acc;
    };

    // consistency of the prescribed initial terms
    for (long m = 0; m <= sigma + 1 && m >= 0; ++m) {
        if (residual_known(m, 2) != 0)
            throw ArithmeticError("solve_linear_series_ode2: initial data inconsistent at x^" +
                                  std::to_string(m));
    }

    for (long K = 2; K <= N; ++K) {
        long m = K + sigma;
        if (m < 0)
            throw ArithmeticError("solve_linear_series_ode2: malformed equation");
        mpq_class pivot = 0;
        for (const auto& t : terms) {
            long tt = m + t.j - K;
            if (tt < 0 || tt > t.a->order() || tt > m) continue;
            if (K < t.j) continue;
            pivot += t.a->at(tt) * fall(K, t.j);
        }
        if (pivot == 0)
            throw ArithmeticError("solve_linear_series_ode2: zero pivot at coefficient " +
                                  std::to_string(K));
        mpq_class rest = residual_known(m, K);
        f[K] = -rest / pivot;
    }
    return make_qseries(std::move(f));
}

QSeries compose_2f1(const mpq_class& a, const mpq_class& b, const mpq_class& c,
                    const mpq_class& k, const QSeries& u) {
    if (!(u.order() >= 1) || u.at(0) != 0)
        throw ArithmeticError("compose_2f1: inner series must have positive valuation");
    QSeries du = derivative(u);
    QSeries ddu = derivative(du);
    QSeries u2 = multiply(u, u);
    // A(u) = u (1 - k u), B(u) = c - (a+b+1) k u, C = -a b k
    QSeries Au = sub(u, scalar_mul(k, u2));
    QSeries Bu = scalar_mul(mpq_class(-(a + b + 1) * k), u);
    Bu.at(0) = c;

    QSeries a2 = multiply(Au, du);
    QSeries a1 = sub(multiply(Bu, multiply(du, du)), multiply(Au, ddu));
    QSeries a0 = scalar_mul(mpq_class(-a * b * k), multiply(du, multiply(du, du)));

    mpq_class f1 = (a * b * k / c) * u.at(1);
    return solve_linear_series_ode2(a2, a1, a0, 1, f1, -1);
}

QSeries x_log1p_series(long N) {
    std::vector<mpq_class> c(N + 1, 0);
    for (long n = 2; n <= N; ++n)
        c[n] = mpq_class((n % 2 == 0) ? 1 : -1, n - 1);
    return make_qseries(std::move(c));
}

RecurrenceSpec divergent_quadratic_spec() {
    // h_{n+2} = sum_{i=1}^{n} i (i+1) (3n - 3i + 1) h_{i+1} h_{n-i+2}
    RecurrenceSpec s;
    s.name = "divergent_quadratic";
    s.initial = {mpq_class(0), mpq_class(0), mpq_class(1)};
    ConvolutionTerm cv;
    cv.a = 1;
    cv.b = 2;
    cv.weight.monos = {
        {mpq_class(1), 1, 0},
        {mpq_class(3), 1, 1},
        {mpq_class(-2), 2, 0},
        {mpq_class(3), 2, 1},
        {mpq_class(-3), 3, 0},
    };
    s.conv.push_back(cv);
    return s;
}

RecurrenceSpec divergent_simple_spec() {
    // h_{n+2} = sum_{i=1}^{n} i h_{i+1} h_{n-i+2}
    RecurrenceSpec s;
    s.name = "divergent_simple";
    s.initial = {mpq_class(0), mpq_class(0), mpq_class(1)};
    ConvolutionTerm cv;
    cv.a = 1;
    cv.b = 2;
    cv.weight.monos = {{mpq_class(1), 1, 0}};
    s.conv.push_back(cv);
    return s;
}

namespace {

QSeries h1_16x(long N) {
    HypergeometricSpec h;
    h.upper = {mpq_class(1, 2), mpq_class(1, 2)};
    h.lower = {mpq_class(1)};
    h.scale = 16;
    return hypergeometric_series(h, N);
}

QSeries composition_h1h2(long N) {
    QSeries H1 = h1_16x(N);
    QSeries u = shift_up(H1, 1); // x H1(x), order N + 1
    return compose_2f1(mpq_class(1, 2), mpq_class(1, 2), 1, 16, u);
}

QSeries roots_series(long N, bool plus) {
    HypergeometricSpec s1;
    s1.upper = {mpq_class(1, 2), mpq_class(1, 2)};
    s1.lower = {mpq_class(1)};
    s1.scale = 320;
    s1.arg_power = 2;
    HypergeometricSpec s2;
    s2.upper = {mpq_class(1, 3), mpq_class(1, 3)};
    s2.lower = {mpq_class(1)};
    s2.scale = 540;
    s2.arg_power = 2;
    // One extra order so the square root of the valuation-2 discriminant
    // still reaches order N after the shift.
    QSeries H1 = hypergeometric_series(s1, N + 1);
    QSeries H2 = hypergeometric_series(s2, N + 1);
    QSeries disc = sub(multiply(H1, H1), H2);
    QSeries root = sqrt_series(disc);
    return plus ? add(H1, root) : sub(H1, root);
}

QSeries factorial_sum(long N) {
    std::vector<mpq_class> c(N + 1);
    mpz_class f = 1;
    for (long n = 0; n <= N; ++n) {
        if (n > 1) f *= n;
        c[n] = mpq_class(f);
    }
    return make_qseries(std::move(c));
}

QSeries ratio_f13_f12(long N) {
    HypergeometricSpec num;
    num.upper = {mpq_class(1, 3), mpq_class(1, 3)};
    num.lower = {mpq_class(1)};
    num.scale = 27;
    HypergeometricSpec den;
    den.upper = {mpq_class(1, 2), mpq_class(1, 2)};
    den.lower = {mpq_class(1)};
    den.scale = 16;
    return multiply(hypergeometric_series(num, N), reciprocal(hypergeometric_series(den, N)));
}

QSeries ratio_calabi_yau(long N) {
    HypergeometricSpec num;
    num.upper = {mpq_class(1, 2), mpq_class(1, 2), mpq_class(1, 2), mpq_class(1, 2)};
    num.lower = {mpq_class(1), mpq_class(1), mpq_class(1)};
    num.scale = 256;
    HypergeometricSpec den;
    den.upper = {mpq_class(1, 2), mpq_class(1, 2)};
    den.lower = {mpq_class(1)};
    den.scale = 16;
    return multiply(hypergeometric_series(num, N), reciprocal(hypergeometric_series(den, N)));
}

QSeries pullback_log(long N) {
    // The inner series has valuation 2, which costs three orders of margin
    // in the transformed ODE.
    return compose_2f1(mpq_class(1, 2), mpq_class(1, 2), 1, 16, x_log1p_series(N + 3));
}

} // namespace

QSeries composition_family(const mpq_class& v, long N) {
    QSeries H1 = h1_16x(N);
    QSeries u = scalar_mul(v, shift_up(H1, 1));
    return compose_2f1(mpq_class(1, 2), mpq_class(1, 2), 1, 16, u);
}

QSeries named_series(NamedSeries which, long N) {
    QSeries s = [&] {
        switch (which) {
            case NamedSeries::TutteQ4: return tutte_series(4, N);
            case NamedSeries::CompositionH1H2: return composition_h1h2(N);
            case NamedSeries::RootsZMinus: return roots_series(N, false);
            case NamedSeries::RootsZPlus: return roots_series(N, true);
            case NamedSeries::DivergentQuadratic:
                return convolution_series(divergent_quadratic_spec(), N);
            case NamedSeries::DivergentSimple:
                return convolution_series(divergent_simple_spec(), N);
            case NamedSeries::FactorialSum: return factorial_sum(N);
            case NamedSeries::RatioF13overF12: return ratio_f13_f12(N);
            case NamedSeries::RatioCalabiYau: return ratio_calabi_yau(N);
            case NamedSeries::PullbackLog: return pullback_log(N);
            case NamedSeries::ReciprocalXlog: {
                QSeries one = make_qseries(std::vector<mpq_class>(N + 1, 0));
                one.coeffs()[0] = 1;
                return reciprocal(sub(one, x_log1p_series(N)));
            }
        }
        throw ArithmeticError("named_series: unknown construction");
    }();
    s.name = named_series_name(which);
    return s;
}

const char* named_series_name(NamedSeries which) {
    switch (which) {
        case NamedSeries::TutteQ4: return "tutte_q4";
        case NamedSeries::CompositionH1H2: return "composition_h1h2";
        case NamedSeries::RootsZMinus: return "roots_z_minus";
        case NamedSeries::RootsZPlus: return "roots_z_plus";
        case NamedSeries::DivergentQuadratic: return "divergent_quadratic";
        case NamedSeries::DivergentSimple: return "divergent_simple";
        case NamedSeries::FactorialSum: return "factorial_sum";
        case NamedSeries::RatioF13overF12: return "ratio_f13_f12";
        case NamedSeries::RatioCalabiYau: return "ratio_calabi_yau";
        case NamedSeries::PullbackLog: return "pullback_log";
        case NamedSeries::ReciprocalXlog: return "reciprocal_xlog";
    }
    return "?";
}

NamedSeries named_series_from_string(const std::string& s) {
    for (NamedSeries w : {NamedSeries::TutteQ4, NamedSeries::CompositionH1H2,
                          NamedSeries::RootsZMinus, NamedSeries::RootsZPlus,
                          NamedSeries::DivergentQuadratic, NamedSeries::DivergentSimple,
                          NamedSeries::FactorialSum, NamedSeries::RatioF13overF12,
                          NamedSeries::RatioCalabiYau, NamedSeries::PullbackLog,
                          NamedSeries::ReciprocalXlog}) {
        if (s == named_series_name(w)) return w;
    }
    throw ParseError("unknown named series '" + s + "'");
}

} // namespace dalg
