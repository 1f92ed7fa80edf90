#include "dalg/ade_solve.hpp"

#include <algorithm>

#include "dalg/error.hpp"

namespace dalg {

namespace {

// Residual of the relation against A, through order(A) - k.
QSeries residual(const QSeries& A, const AdeRelation& rel) {
    long k = rel.form.k;
    long M = A.order() - k;
    std::vector<QSeries> deriv;
    deriv.push_back(truncate(A, M));
    {
        QSeries cur = A;
        for (long j = 1; j <= k; ++j) {
            cur = derivative(cur);
            deriv.push_back(truncate(cur, M));
        }
    }
    QSeries acc = scalar_mul(mpq_class(0), deriv[0]);
    for (std::size_t i = 0; i < rel.terms.size(); ++i) {
        bool zero = true;
        for (const auto& c : rel.polys[i])
            if (c != 0) zero = false;
        if (zero) continue;
        QSeries t = deriv[0];
        bool started = false;
        FunctionalTerm comp = rel.terms[i];
        comp.resize(static_cast<std::size_t>(k) + 1, 0);
        for (long j = 0; j <= k; ++j)
            for (long e = 0; e < comp[static_cast<std::size_t>(j)]; ++e) {
                t = started ? multiply(t, deriv[static_cast<std::size_t>(j)])
                            : deriv[static_cast<std::size_t>(j)];
                started = true;
            }
        if (!started) {
            t.coeffs().assign(static_cast<std::size_t>(M) + 1, mpq_class(0));
            t.coeffs()[0] = 1;
        }
        QSeries poly = t;
        poly.coeffs().assign(static_cast<std::size_t>(M) + 1, mpq_class(0));
        for (std::size_t j = 0; j < rel.polys[i].size() && j <= static_cast<std::size_t>(M); ++j)
            poly.coeffs()[j] = mpq_class(rel.polys[i][j]);
        acc = add(acc, multiply(poly, t));
    }
    return acc;
}

QSeries padded(const std::vector<mpq_class>& a, long n, const mpq_class& an, long L) {
    std::vector<mpq_class> c(static_cast<std::size_t>(L) + 1, mpq_class(0));
    for (long j = 0; j < n && j < static_cast<long>(a.size()); ++j)
        c[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)];
    c[static_cast<std::size_t>(n)] = an;
    return make_qseries(std::move(c));
}

} // namespace

QSeries ade_series_solve(const AdeInitialData& data) {
    const AdeRelation& rel = data.relation;
    if (rel.modulus != 0)
        throw ArithmeticError("ade_series_solve: need an exact relation");
    if (data.prescribed.empty())
        throw ArithmeticError("ade_series_solve: no prescribed coefficients");
    long k = rel.form.k;
    std::vector<mpq_class> a = data.prescribed;
    for (long n = static_cast<long>(a.size()); n <= data.order; ++n) {
        long m = -1;
        QSeries r0 = make_qseries({mpq_class(0)});
        mpq_class pivot;
        for (long pad : {k, 2 * k + 4}) {
            long L = n + pad;
            r0 = residual(padded(a, n, 0, L), rel);
            QSeries r1 = residual(padded(a, n, 1, L), rel);
            for (long j = 0; j <= r0.order(); ++j)
                if (r0.at(j) != r1.at(j)) {
                    m = j;
                    pivot = r1.at(j) - r0.at(j);
                    break;
                }
            if (m >= 0) {
                // rule out a quadratic pivot, which would make the step
                // nonlinear in the new coefficient
                QSeries r2 = residual(padded(a, n, 2, L), rel);
                if (r2.at(m) - r0.at(m) != 2 * pivot)
                    throw NonUniqueExtension(
                        "ade_series_solve: coefficient of x^" + std::to_string(n) +
                        " is not pinned by a linear condition");
                break;
            }
        }
        if (m < 0)
            throw NonUniqueExtension("ade_series_solve: coefficient of x^" +
                                     std::to_string(n) + " is unconstrained");
        {
            // the pivot must precede every order the next coefficient can
            // touch, or the condition on a_n is not separable from a_{n+1}
            long L = n + 2 * k + 5;
            QSeries s0 = residual(padded(a, n + 1, 0, L), rel);
            QSeries s1 = residual(padded(a, n + 1, 1, L), rel);
            for (long j = 0; j <= s0.order(); ++j)
                if (s0.at(j) != s1.at(j)) {
                    if (m >= j)
                        throw NonUniqueExtension(
                            "ade_series_solve: coefficient of x^" + std::to_string(n) +
                            " is not determined ahead of x^" + std::to_string(n + 1));
                    break;
                }
        }
        for (long j = 0; j < m; ++j)
            if (r0.at(j) != 0)
                throw Inconsistent("ade_series_solve: residual nonzero at x^" +
                                   std::to_string(j) + " while extending to x^" +
                                   std::to_string(n));
        a.push_back(-r0.at(m) / pivot);
    }
    a.resize(static_cast<std::size_t>(data.order) + 1, mpq_class(0));
    return make_qseries(std::move(a));
}

void set_ade_term(AdeRelation& rel, const FunctionalTerm& term, std::vector<mpz_class> poly) {
    FunctionalTerm want = term;
    want.resize(static_cast<std::size_t>(rel.form.k) + 1, 0);
    for (std::size_t i = 0; i < rel.terms.size(); ++i) {
        FunctionalTerm have = rel.terms[i];
        have.resize(static_cast<std::size_t>(rel.form.k) + 1, 0);
        if (have == want) {
            poly.resize(static_cast<std::size_t>(rel.form.d) + 1, 0);
            rel.polys[i] = std::move(poly);
            return;
        }
    }
    throw ArithmeticError("set_ade_term: term does not belong to the form");
}

namespace {

AdeRelation blank_relation(long m, long k, long d) {
    AdeRelation rel;
    rel.form = AdeForm{m, k, d, false};
    rel.terms = functional_terms(rel.form);
    rel.polys.assign(rel.terms.size(),
                     std::vector<mpz_class>(static_cast<std::size_t>(d) + 1, 0));
    return rel;
}

} // namespace

AdeRelation generalized_tutte_relation(const mpz_class& M, const mpz_class& N) {
    AdeRelation rel = blank_relation(2, 2, 2);
    mpz_class w = M * (M - 4 * N);
    set_ade_term(rel, {}, {0, -2 * M * M * (M - N)});
    set_ade_term(rel, {1}, {-20 * w});
    set_ade_term(rel, {0, 1}, {0, 18 * w});
    set_ade_term(rel, {0, 0, 1}, {0, M, -9 * w});
    set_ade_term(rel, {1, 0, 1}, {10});
    set_ade_term(rel, {0, 1, 1}, {0, -6});
    return rel;
}

QSeries generalized_tutte(const mpz_class& M, const mpz_class& N, long order) {
    AdeInitialData data;
    data.relation = generalized_tutte_relation(M, N);
    data.prescribed = {0, 0, mpq_class(M * (M - N))};
    data.order = order;
    return ade_series_solve(data);
}

AdeRelation tutte_ade(const mpz_class& q) {
    AdeRelation rel = blank_relation(2, 2, 2);
    mpz_class w = q * (q - 4);
    set_ade_term(rel, {}, {0, -2 * q * q * (1 - q)});
    set_ade_term(rel, {1}, {20 * w});
    set_ade_term(rel, {0, 1}, {0, -18 * w});
    set_ade_term(rel, {0, 0, 1}, {0, -q, 9 * w});
    set_ade_term(rel, {1, 0, 1}, {-10});
    set_ade_term(rel, {0, 1, 1}, {0, 6});
    return rel;
}

} // namespace dalg
