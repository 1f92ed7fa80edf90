#include "dalg/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "dalg/error.hpp"
#include "dalg/fpmat.hpp"
#include "solve_internal.hpp"

namespace dalg {

namespace {

std::vector<std::vector<u64>> derivative_rows(const std::vector<u64>& f, u64 p, long q) {
    std::vector<std::vector<u64>> d;
    d.push_back(f);
    for (long j = 1; j <= q; ++j) {
        const auto& prev = d.back();
        std::vector<u64> next(prev.size() > 0 ? prev.size() - 1 : 0);
        for (std::size_t i = 0; i + 1 < prev.size(); ++i)
            next[i] = mulmod(prev[i + 1], static_cast<u64>(i + 1) % p, p);
        d.push_back(std::move(next));
    }
    return d;
}

} // namespace

std::optional<LinearOdeFit> fit_linear_ode(const QSeries& F, long q, long D, long window) {
    long U = (q + 1) * (D + 1);
    if (window < U || window > F.order() + 1)
        throw InsufficientTerms("fit_linear_ode: window " + std::to_string(window) +
                                " outside [" + std::to_string(U) + ", " +
                                std::to_string(F.order() + 1) + "]");
    long rows = window - q;
    auto build = [&](u64 p) {
        std::vector<u64> f(static_cast<std::size_t>(window));
        for (long i = 0; i < window; ++i) {
            const mpq_class& c = F.at(i);
            u64 den = mpz_fdiv_ui(c.get_den().get_mpz_t(), p);
            if (den == 0) throw ArithmeticError("denominator collision");
            u64 num = mpz_fdiv_ui(c.get_num().get_mpz_t(), p);
            f[static_cast<std::size_t>(i)] = mulmod(num, invmod(den, p), p);
        }
        auto deriv = derivative_rows(f, p, q);
        FpMat A(p, static_cast<std::size_t>(rows), static_cast<std::size_t>(U));
        for (long j = 0; j <= q; ++j)
            for (long deg = 0; deg <= D; ++deg) {
                std::size_t col = static_cast<std::size_t>(j * (D + 1) + deg);
                for (long r = deg; r < rows; ++r) {
                    std::size_t idx = static_cast<std::size_t>(r - deg);
                    if (idx < deriv[static_cast<std::size_t>(j)].size())
                        A(static_cast<std::size_t>(r), col) =
                            deriv[static_cast<std::size_t>(j)][idx];
                }
            }
        return A;
    };
    // approximant vectors carry Cramer-scale integers: roughly U minors of
    // entries as large as the window coefficients, so size the prime budget
    // from the coefficient bit lengths
    std::size_t bmax = 1;
    for (long i = 0; i < window; ++i) {
        const mpq_class& c = F.at(i);
        if (c == 0) continue;
        std::size_t b = mpz_sizeinbase(c.get_num().get_mpz_t(), 2) +
                        mpz_sizeinbase(c.get_den().get_mpz_t(), 2);
        bmax = std::max(bmax, b);
    }
    std::size_t budget = 64 + 2 * static_cast<std::size_t>(U) * (bmax + 20) / 61;
    detail::ExactVec sol = detail::exact_nullspace(build, budget);
    if (!sol.found) return std::nullopt;
    LinearOdeFit fit;
    fit.order = q;
    fit.window = window;
    fit.nullity = sol.dim;
    fit.A.assign(static_cast<std::size_t>(q) + 1,
                 std::vector<mpz_class>(static_cast<std::size_t>(D) + 1, 0));
    for (long j = 0; j <= q; ++j)
        for (long deg = 0; deg <= D; ++deg)
            fit.A[static_cast<std::size_t>(j)][static_cast<std::size_t>(deg)] =
                sol.v[static_cast<std::size_t>(j * (D + 1) + deg)];
    fit.head = 0;
    for (long j = 0; j <= q; ++j)
        for (const auto& c : fit.A[static_cast<std::size_t>(j)])
            if (c != 0) fit.head = j;
    // full-order residual check modulo two fresh primes; a window-only
    // approximant fails far beyond the window with overwhelming likelihood
    fit.exact = true;
    auto primes = working_primes(static_cast<std::size_t>(50 + 2 * U));
    std::size_t used = 0;
    for (std::size_t t = primes.size(); t-- > 0 && used < 2;) {
        u64 p = primes[t];
        std::vector<u64> f;
        try {
            f.resize(static_cast<std::size_t>(F.order()) + 1);
            for (long i = 0; i <= F.order(); ++i) {
                const mpq_class& c = F.at(i);
                u64 den = mpz_fdiv_ui(c.get_den().get_mpz_t(), p);
                if (den == 0) throw ArithmeticError("denominator collision");
                f[static_cast<std::size_t>(i)] =
                    mulmod(mpz_fdiv_ui(c.get_num().get_mpz_t(), p), invmod(den, p), p);
            }
        } catch (const ArithmeticError&) {
            continue;
        }
        ++used;
        auto deriv = derivative_rows(f, p, q);
        long top = F.order() - q;
        for (long r = 0; r < top && fit.exact; ++r) {
            u64 acc = 0;
            for (long j = 0; j <= q; ++j)
                for (long deg = 0; deg <= D; ++deg) {
                    if (r < deg) continue;
                    std::size_t idx = static_cast<std::size_t>(r - deg);
                    if (idx >= deriv[static_cast<std::size_t>(j)].size()) continue;
                    u64 a = mpz_fdiv_ui(
                        fit.A[static_cast<std::size_t>(j)][static_cast<std::size_t>(deg)]
                            .get_mpz_t(),
                        p);
                    acc = addmod(acc,
                                 mulmod(a, deriv[static_cast<std::size_t>(j)][idx], p), p);
                }
            if (acc != 0) fit.exact = false;
        }
        if (!fit.exact) break;
    }
    return fit;
}

namespace {

std::complex<double> horner(const std::vector<double>& c, std::complex<double> x) {
    std::complex<double> v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

} // namespace

namespace {

// log2 |c| for nonzero c
double log2_mpz(const mpz_class& c) {
    signed long e;
    double m = mpz_get_d_2exp(&e, c.get_mpz_t());
    return std::log(std::abs(m)) / std::log(2.0) + static_cast<double>(e);
}

// Scale p by x = s * y (log2 s given) and normalize so the largest scaled
// magnitude is 1; returns the scaled coefficients and the dropped log2
// magnitude m, i.e. p(s y) = 2^m * sum out[i] y^i.
std::vector<double> balance(const std::vector<mpz_class>& p, double log2s, double& m) {
    std::vector<double> t(p.size(), -std::numeric_limits<double>::infinity());
    m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        t[i] = log2_mpz(p[i]) + static_cast<double>(i) * log2s;
        m = std::max(m, t[i]);
    }
    std::vector<double> out(p.size(), 0.0);
    if (m == -std::numeric_limits<double>::infinity()) return out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        double v = std::exp2(t[i] - m);
        out[i] = sgn(p[i]) < 0 ? -v : v;
    }
    return out;
}

} // namespace

SingularityReport singularities(const LinearOdeFit& fit, double cluster_rtol) {
    SingularityReport rep;
    if (fit.head == 0) return rep;
    const auto& headz = fit.A[static_cast<std::size_t>(fit.head)];
    const auto& subz = fit.A[static_cast<std::size_t>(fit.head - 1)];
    // approximant coefficients grow geometrically with the degree, far past
    // what a plain double conversion can hold, so balance with x = s * y
    // where log2 s is the fitted slope of log2 |c_i| against i
    double si = 0, sii = 0, sl = 0, sil = 0, cnt = 0;
    for (std::size_t i = 0; i < headz.size(); ++i) {
        if (headz[i] == 0) continue;
        double l = log2_mpz(headz[i]);
        cnt += 1;
        si += static_cast<double>(i);
        sii += static_cast<double>(i) * static_cast<double>(i);
        sl += l;
        sil += static_cast<double>(i) * l;
    }
    if (cnt < 2) return rep;
    double slope = (cnt * sil - si * sl) / (cnt * sii - si * si);
    double log2s = -slope;
    double scale = std::exp2(log2s);
    double mh, ms;
    std::vector<double> head = balance(headz, log2s, mh);
    std::vector<double> sub = balance(subz, log2s, ms);
    while (!head.empty() && head.back() == 0.0) head.pop_back();
    long deg = static_cast<long>(head.size()) - 1;
    if (deg < 1) return rep;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
    for (long i = 0; i < deg; ++i) {
        C(i, deg - 1) = -head[static_cast<std::size_t>(i)] / head.back();
        if (i > 0) C(i, i - 1) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(C);
    // d/dx of the head in the y variable carries an extra 1/s
    std::vector<double> dhead(static_cast<std::size_t>(deg));
    for (long i = 1; i <= deg; ++i)
        dhead[static_cast<std::size_t>(i - 1)] = i * head[static_cast<std::size_t>(i)];
    double ratio_scale = std::exp2(std::min(ms - mh, 1000.0)) * scale;
    for (long i = 0; i < deg; ++i) {
        Singularity s;
        std::complex<double> y = es.eigenvalues()(i);
        s.location = scale * y;
        std::complex<double> hp = horner(dhead, y);
        std::complex<double> sm = horner(sub, y);
        s.exponent = std::abs(hp) > 1e-300
                         ? std::complex<double>(fit.head - 1, 0) -
                               ratio_scale * sm / hp
                         : std::complex<double>(std::numeric_limits<double>::quiet_NaN(), 0);
        rep.entries.push_back(s);
    }
    // in-report clusters
    for (std::size_t i = 0; i < rep.entries.size(); ++i) {
        std::size_t close = 0;
        for (std::size_t j = 0; j < rep.entries.size(); ++j)
            if (j != i &&
                std::abs(rep.entries[i].location - rep.entries[j].location) <=
                    cluster_rtol * std::abs(rep.entries[i].location))
                ++close;
        if (close >= 2) rep.entries[i].irregular_cluster = true;
    }
    rep.dominant = 0;
    for (std::size_t i = 1; i < rep.entries.size(); ++i)
        if (std::abs(rep.entries[i].location) < std::abs(rep.entries[rep.dominant].location))
            rep.dominant = i;
    return rep;
}

void flag_clusters_across(SingularityReport& report, const SingularityReport& other,
                          double rel_tol) {
    for (auto& e : report.entries) {
        std::size_t close = 0;
        for (const auto& o : other.entries)
            if (std::abs(e.location - o.location) <= rel_tol * std::abs(e.location))
                ++close;
        if (close >= 2) e.irregular_cluster = true;
    }
}

std::vector<Singularity> stable_entries(const SingularityReport& report,
                                        const SingularityReport& other, double rel_tol) {
    std::vector<Singularity> out;
    for (const auto& e : report.entries)
        for (const auto& o : other.entries)
            if (std::abs(e.location - o.location) <= rel_tol * std::abs(e.location)) {
                out.push_back(e);
                break;
            }
    return out;
}

namespace {

// r[i] is the ratio at absolute index first + i
RadiusEstimate extrapolate_ratios(const std::vector<double>& r, std::size_t first) {
    RadiusEstimate est;
    if (r.size() < 8) {
        est.tail = r;
        return est;
    }
    est.tail.assign(r.end() - std::min<std::size_t>(r.size(), 12), r.end());
    // two Richardson levels; deeper levels amplify the rounding noise of
    // the ratios faster than they remove truncation error
    std::vector<double> cur = r;
    std::size_t base = first;
    for (std::size_t l = 1; l <= 2; ++l) {
        std::vector<double> next(cur.size() - 1);
        for (std::size_t i = 1; i < cur.size(); ++i) {
            double n = static_cast<double>(base + i);
            next[i - 1] = (n * cur[i] - (n - static_cast<double>(l)) * cur[i - 1]) /
                          static_cast<double>(l);
        }
        cur = std::move(next);
        ++base;
    }
    double richardson = cur.back();
    est.lambda = richardson;
    // with enough terms a least-squares fit over the tail averages the
    // noise away and absorbs the logarithmic corrections that plain
    // Richardson in powers of 1/n cannot touch
    if (r.size() >= 300) {
        std::size_t lo = r.size() / 2;
        std::size_t rows = r.size() - lo;
        Eigen::MatrixXd M(rows, 6);
        Eigen::VectorXd y(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            double n = static_cast<double>(first + lo + i);
            double ln = std::log(n);
            M(i, 0) = 1.0;
            M(i, 1) = 1.0 / n;
            M(i, 2) = 1.0 / (n * n);
            M(i, 3) = 1.0 / (n * n * n);
            M(i, 4) = 1.0 / (n * ln);
            M(i, 5) = 1.0 / (n * ln * ln);
            y(i) = r[lo + i];
        }
        est.lambda = M.colPivHouseholderQr().solve(y)(0);
    }
    est.radius = 1.0 / est.lambda;
    est.converged = std::abs(richardson - est.lambda) <= 1e-6 * std::abs(est.lambda);
    return est;
}

} // namespace

RadiusEstimate radius_estimate(const std::vector<double>& coeffs, RadiusMethod method) {
    if (coeffs.size() < 50)
        throw InsufficientTerms("radius_estimate: need at least 50 coefficients");
    bool pos = true, alt = true;
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        if (coeffs[i] < 0 || coeffs[i - 1] < 0) pos = false;
        if (coeffs[i] * coeffs[i - 1] > 0) alt = false;
    }
    RadiusEstimate est;
    if (method == RadiusMethod::Ratio) {
        // use the trailing run of nonzero coefficients so every ratio has a
        // well-defined index
        std::size_t s = coeffs.size() - 1;
        while (s > 0 && coeffs[s - 1] != 0) --s;
        std::vector<double> r;
        for (std::size_t i = s + 1; i < coeffs.size(); ++i)
            r.push_back(std::abs(coeffs[i] / coeffs[i - 1]));
        est = extrapolate_ratios(r, s + 1);
    } else {
        std::vector<double> v;
        for (std::size_t i = 1; i < coeffs.size(); ++i)
            if (coeffs[i] != 0)
                v.push_back(std::exp(std::log(std::abs(coeffs[i])) / static_cast<double>(i)));
        est.tail.assign(v.end() - std::min<std::size_t>(v.size(), 12), v.end());
        est.lambda = v.back();
        est.radius = 1.0 / est.lambda;
    }
    est.sign_pattern = pos ? "positive" : (alt ? "alternating" : "mixed");
    return est;
}

RadiusEstimate radius_estimate(const QSeries& F, RadiusMethod method) {
    if (F.order() + 1 < 50)
        throw InsufficientTerms("radius_estimate: need at least 50 coefficients");
    if (method == RadiusMethod::Ratio) {
        bool pos = true, alt = true;
        for (long i = 1; i <= F.order(); ++i) {
            const mpq_class &a = F.at(i - 1), &b = F.at(i);
            if (b < 0 || a < 0) pos = false;
            if (b * a > 0) alt = false;
        }
        long s = F.order();
        while (s > 0 && F.at(s - 1) != 0) --s;
        std::vector<double> r;
        for (long i = s + 1; i <= F.order(); ++i)
            r.push_back(std::abs(mpq_class(F.at(i) / F.at(i - 1)).get_d()));
        RadiusEstimate est = extrapolate_ratios(r, static_cast<std::size_t>(s) + 1);
        est.sign_pattern = pos ? "positive" : (alt ? "alternating" : "mixed");
        return est;
    }
    // root method through exponent-aware logarithms to dodge overflow
    std::vector<double> v;
    for (long i = 1; i <= F.order(); ++i) {
        const mpq_class& c = F.at(i);
        if (c == 0) continue;
        signed long en, ed;
        double mn = mpz_get_d_2exp(&en, c.get_num().get_mpz_t());
        double md = mpz_get_d_2exp(&ed, c.get_den().get_mpz_t());
        double lg = std::log(std::abs(mn)) + en * std::log(2.0);
        if (c.get_den() != 1) lg -= std::log(std::abs(md)) + ed * std::log(2.0);
        v.push_back(std::exp(lg / static_cast<double>(i)));
    }
    RadiusEstimate est;
    est.tail.assign(v.end() - std::min<std::size_t>(v.size(), 12), v.end());
    est.lambda = v.back();
    est.radius = 1.0 / est.lambda;
    est.sign_pattern = "mixed";
    return est;
}

double solve_16x_equals_one(const std::function<double(double)>& S, double hi) {
    auto g = [&](double x) { return 16.0 * x * S(x) - 1.0; };
    double lo = 0.0;
    double top = hi;
    if (g(top) < 0)
        throw ArithmeticError("solve_16x_equals_one: no sign change in the bracket");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + top);
        (g(mid) < 0 ? lo : top) = mid;
    }
    return 0.5 * (lo + top);
}

double transcendental_critical_point() {
    auto h1 = [](double x) {
        double term = 1.0, sum = 1.0, z = 16.0 * x;
        for (int n = 0; n < 4000; ++n) {
            double k = n + 0.5;
            term *= z * (k * k) / ((n + 1.0) * (n + 1.0));
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return sum;
    };
    return solve_16x_equals_one(h1);
}

BorelFit borel_asymptotics(const std::vector<double>& scaled) {
    if (scaled.size() < 100)
        throw InsufficientTerms("borel_asymptotics: need at least 100 scaled terms");
    BorelFit fit;
    // the scaled values settle like c - L/n, so fit both constants by
    // least squares against 1/n over the second half of the data
    double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (std::size_t n = scaled.size() / 2; n < scaled.size(); ++n) {
        double x = 1.0 / static_cast<double>(n);
        s1 += 1;
        sx += x;
        sxx += x * x;
        sy += scaled[n];
        sxy += x * scaled[n];
    }
    double det = s1 * sxx - sx * sx;
    fit.c = (sxx * sy - sx * sxy) / det;
    fit.log_coeff = -(s1 * sxy - sx * sy) / det;
    for (double x : {0.5, 0.8, 0.9}) {
        double b = 0, xi = 1;
        for (double s : scaled) {
            b += s * xi;
            xi *= x;
        }
        fit.samples.emplace_back(x, b);
    }
    return fit;
}

BorelFit borel_asymptotics(const QSeries& F, long n_used) {
    if (n_used > F.order())
        throw InsufficientTerms("borel_asymptotics: series shorter than n_used");
    QSeries b = borel(truncate(F, n_used));
    std::vector<double> scaled(static_cast<std::size_t>(n_used) + 1);
    for (long i = 0; i <= n_used; ++i) scaled[static_cast<std::size_t>(i)] = b.at(i).get_d();
    return borel_asymptotics(scaled);
}

} // namespace dalg
