#include "dalg/ade.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "dalg/error.hpp"
#include "dalg/fpmat.hpp"
#include "dalg/ratrec.hpp"
#include "solve_internal.hpp"

namespace dalg {

namespace {

long binomial_long(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    if (!b.fits_slong_p())
        throw ArithmeticError("binomial coefficient does not fit a machine word");
    return b.get_si();
}

// Weak compositions of s into len parts, lexicographically descending so
// that within a grade F-heavy monomials come before derivative-heavy ones.
void compositions_of(long s, long len, FunctionalTerm& cur,
                     std::vector<FunctionalTerm>& out) {
    if (len == 1) {
        cur.push_back(s);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (long c = s; c >= 0; --c) {
        cur.push_back(c);
        compositions_of(s - c, len - 1, cur, out);
        cur.pop_back();
    }
}

} // namespace

long AdeForm::term_count() const {
    return homogeneous_only ? binomial_long(m + k, k) : binomial_long(m + k + 1, k + 1);
}

long AdeForm::unknown_count() const { return term_count() * (d + 1); }

std::vector<FunctionalTerm> functional_terms(const AdeForm& form) {
    if (form.m < 1 || form.k < 0 || form.d < 0)
        throw ArithmeticError("functional_terms: invalid form");
    std::vector<FunctionalTerm> out;
    FunctionalTerm cur;
    long lo = form.homogeneous_only ? form.m : 0;
    for (long s = lo; s <= form.m; ++s)
        compositions_of(s, form.k + 1, cur, out);
    return out;
}

std::string functional_term_name(const FunctionalTerm& t) {
    std::string s;
    for (std::size_t j = 0; j < t.size(); ++j) {
        if (t[j] == 0) continue;
        if (!s.empty()) s += "*";
        s += "F";
        if (j == 1) s += "'";
        else if (j == 2) s += "''";
        else if (j >= 3) s += "^(" + std::to_string(j) + ")";
        if (t[j] > 1) s += "^" + std::to_string(t[j]);
    }
    return s.empty() ? "1" : s;
}

std::vector<AdeForm> enumerate_forms(long N, long T, bool exclusions) {
    if (N <= T) throw ArithmeticError("enumerate_forms: need N > T");
    long dmin = exclusions ? 1 : 0;
    std::vector<AdeForm> cand;
    for (long m = exclusions ? 2 : 1;; ++m) {
        long kmin = exclusions ? 1 : 0;
        bool any_k = false;
        for (long k = kmin;; ++k) {
            long R = binomial_long(m + k + 1, k + 1);
            if (R + k + T > N) {
                if (k == kmin) break;
                break;
            }
            long dmax = (N - T - k) / R - 1;
            if (dmax >= dmin) {
                cand.push_back(AdeForm{m, k, dmax, false});
                any_k = true;
            }
        }
        if (!any_k) break;
    }
    std::vector<AdeForm> keep;
    for (const auto& f : cand) {
        bool dominated = false;
        for (const auto& g : cand) {
            if (&g == &f) continue;
            if (g.m >= f.m && g.k >= f.k && g.d >= f.d &&
                (g.m > f.m || g.k > f.k || g.d > f.d)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) keep.push_back(f);
    }
    return keep;
}

namespace {

std::string poly_pretty(const std::vector<mpz_class>& p) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] == 0) continue;
        if (!first) os << (p[j] > 0 ? " + " : " - ");
        else if (p[j] < 0) os << "-";
        mpz_class a = abs(p[j]);
        bool unit = (a == 1) && j > 0;
        if (!unit) os << a.get_str();
        if (j > 0) {
            if (!unit) os << "*";
            os << "x";
            if (j > 1) os << "^" << j;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

} // namespace

std::string AdeRelation::pretty() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        bool zero = true;
        for (const auto& c : polys[i])
            if (c != 0) zero = false;
        if (zero) continue;
        if (!first) os << " + ";
        os << "(" << poly_pretty(polys[i]) << ")*" << functional_term_name(terms[i]);
        first = false;
    }
    if (first) os << "0";
    os << " = 0";
    if (modulus) os << "  (mod " << modulus << ")";
    return os.str();
}

namespace {

// Series of every functional term mod p, all truncated to common order M.
// Products are memoized down the graded-lex order so each term costs one
// multiplication.
std::vector<MSeries> term_series(const std::vector<u64>& f, u64 p, long k, long M,
                                 const std::vector<FunctionalTerm>& terms) {
    Domain dom = Domain::modular(p);
    std::vector<MSeries> deriv;
    {
        MSeries F = make_mseries(dom, std::vector<u64>(f.begin(), f.begin() + (M + k + 1)));
        deriv.push_back(truncate(F, M));
        MSeries cur = F;
        for (long j = 1; j <= k; ++j) {
            cur = derivative(cur);
            deriv.push_back(truncate(cur, M));
        }
    }
    std::map<FunctionalTerm, MSeries> memo;
    MSeries one = make_mseries(dom, std::vector<u64>(static_cast<std::size_t>(M) + 1, 0));
    one.coeffs()[0] = 1;
    std::function<const MSeries&(const FunctionalTerm&)> get =
        [&](const FunctionalTerm& t) -> const MSeries& {
        auto it = memo.find(t);
        if (it != memo.end()) return it->second;
        long j = 0;
        while (j <= k && t[static_cast<std::size_t>(j)] == 0) ++j;
        MSeries val = one;
        if (j <= k) {
            FunctionalTerm rest = t;
            --rest[static_cast<std::size_t>(j)];
            val = multiply(deriv[static_cast<std::size_t>(j)], get(rest));
        }
        return memo.emplace(t, std::move(val)).first->second;
    };
    std::vector<MSeries> out;
    out.reserve(terms.size());
    FunctionalTerm zero(static_cast<std::size_t>(k) + 1, 0);
    memo.emplace(zero, one);
    for (const auto& t : terms) {
        FunctionalTerm full = t;
        full.resize(static_cast<std::size_t>(k) + 1, 0);
        out.push_back(get(full));
    }
    return out;
}

// Window system: rows are vanishing coefficients x^0 .. x^{rows-1}, columns
// ordered (term graded-lex, then x-degree ascending).
FpMat window_matrix(const std::vector<MSeries>& terms, long d, long rows) {
    u64 p = terms[0].domain().p;
    std::size_t cols = terms.size() * static_cast<std::size_t>(d + 1);
    FpMat A(p, static_cast<std::size_t>(rows), cols);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& c = terms[i].coeffs();
        for (long j = 0; j <= d; ++j) {
            std::size_t col = i * static_cast<std::size_t>(d + 1) + static_cast<std::size_t>(j);
            for (long r = j; r < rows; ++r) {
                long idx = r - j;
                if (idx < static_cast<long>(c.size()))
                    A(static_cast<std::size_t>(r), col) = c[static_cast<std::size_t>(idx)];
            }
        }
    }
    return A;
}

} // namespace

namespace detail {

NullResult solve_window(FpMat& A) {
    NullResult r;
    auto basis = A.nullspace();
    if (basis.empty()) {
        r.trivial = true;
        return r;
    }
    r.dim = static_cast<long>(basis.size());
    std::size_t best = 0, best_lead = A.cols();
    for (std::size_t b = 0; b < basis.size(); ++b) {
        std::size_t lead = 0;
        while (lead < basis[b].size() && basis[b][lead] == 0) ++lead;
        if (lead < best_lead) {
            best_lead = lead;
            best = b;
        }
    }
    r.lead = best_lead;
    r.vec = basis[best];
    // Scale so the leading unknown is 1: together with the fixed pivot
    // structure this pins the same rational vector at every good prime.
    u64 inv = invmod(r.vec[r.lead], A.p());
    for (auto& x : r.vec) x = mulmod(x, inv, A.p());
    return r;
}

// Multi-modular exact nullspace: build(p) yields the window matrix mod p,
// possibly throwing when p collides with a denominator.  Returns the
// content-normalized integer solution, or found=false if the system is
// proven full rank.
ExactVec exact_nullspace(const std::function<FpMat(u64)>& build, std::size_t max_primes) {
    std::vector<u64> primes = working_primes(max_primes);
    ExactVec out;
    bool have_ref = false;
    std::size_t used = 0;
    long ref_dim = 0;
    std::size_t ref_lead = 0;
    std::vector<mpz_class> acc;
    mpz_class M = 1;
    for (u64 p : primes) {
        FpMat A(p, 0, 0);
        try {
            A = build(p);
        } catch (const ArithmeticError&) {
            continue; // p collides with a denominator of the input
        }
        NullResult r = solve_window(A);
        if (r.trivial) return out; // full rank mod p proves full rank over Q
        if (!have_ref || r.dim < ref_dim ||
            (r.dim == ref_dim && r.lead > ref_lead)) {
            // smaller nullspace or later leading unknown means every prime
            // seen so far was unlucky; restart the accumulation
            have_ref = true;
            ref_dim = r.dim;
            ref_lead = r.lead;
            acc.assign(r.vec.size(), 0);
            M = 1;
        } else if (r.dim > ref_dim || r.lead < ref_lead) {
            continue; // this prime is the unlucky one
        }
        for (std::size_t i = 0; i < acc.size(); ++i)
            acc[i] = crt_pair(acc[i], M, r.vec[i], p);
        M *= p;
        ++used;
        // reconstruction over many unknowns is the expensive step, so back
        // off to sparser attempts as the accumulated modulus grows
        if (acc.size() > 64) {
            std::size_t interval = used < 256 ? 16 : 64;
            if (used % interval != 0 && p != primes.back()) continue;
        }
        std::vector<mpq_class> q;
        if (!rational_reconstruct_vec(acc, M, q)) continue;
        mpz_class den = 1;
        for (const auto& x : q) den = lcm(den, x.get_den());
        std::vector<mpz_class> v(q.size());
        mpz_class content = 0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            v[i] = mpz_class(q[i].get_num() * (den / q[i].get_den()));
            content = gcd(content, v[i]);
        }
        if (content == 0) continue;
        std::size_t first = 0;
        while (v[first] == 0) ++first;
        if (v[first] < 0) content = -content;
        for (auto& x : v) x /= content;
        out.found = true;
        out.dim = ref_dim;
        out.v = std::move(v);
        return out;
    }
    throw SolverOverflowBudget("exact_nullspace: no stable rational reconstruction within the prime budget");
}

} // namespace detail

namespace {

using detail::ExactVec;
using detail::NullResult;
using detail::exact_nullspace;
using detail::solve_window;

AdeRelation relation_from_vector(const AdeForm& form,
                                 const std::vector<FunctionalTerm>& terms,
                                 const std::vector<mpz_class>& v, long dim,
                                 u64 modulus) {
    AdeRelation rel;
    rel.form = form;
    rel.modulus = modulus;
    rel.terms = terms;
    rel.nullspace_dim = dim;
    rel.polys.resize(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        rel.polys[i].assign(static_cast<std::size_t>(form.d) + 1, 0);
        for (long j = 0; j <= form.d; ++j)
            rel.polys[i][static_cast<std::size_t>(j)] =
                v[i * static_cast<std::size_t>(form.d + 1) + static_cast<std::size_t>(j)];
    }
    return rel;
}

long nonzero_count(const QSeries& F) {
    long n = 0;
    for (const auto& c : F.coeffs())
        if (c != 0) ++n;
    return n;
}

template <typename C>
AdeResidual verify_ade_impl(const Series<C>& F, const AdeRelation& rel,
                            const std::function<C(const mpz_class&)>& lift) {
    long k = rel.form.k;
    long M = F.order() - k;
    AdeResidual res;
    res.checked_through = M;
    if (M < 0) return res;
    std::vector<Series<C>> deriv;
    deriv.push_back(truncate(F, M));
    {
        Series<C> cur = F;
        for (long j = 1; j <= k; ++j) {
            cur = derivative(cur);
            deriv.push_back(truncate(cur, M));
        }
    }
    Series<C> acc = scalar_mul(lift(0), deriv[0]);
    for (std::size_t i = 0; i < rel.terms.size(); ++i) {
        bool zero = true;
        for (const auto& c : rel.polys[i])
            if (c != 0) zero = false;
        if (zero) continue;
        Series<C> t = deriv[0];
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
            t.coeffs().assign(static_cast<std::size_t>(M) + 1, lift(0));
            t.coeffs()[0] = lift(1);
        }
        Series<C> poly = t;
        poly.coeffs().assign(static_cast<std::size_t>(M) + 1, lift(0));
        for (std::size_t j = 0; j < rel.polys[i].size() && j <= static_cast<std::size_t>(M); ++j)
            poly.coeffs()[j] = lift(rel.polys[i][j]);
        acc = add(acc, multiply(poly, t));
    }
    for (long n = 0; n <= M; ++n)
        if (!(acc.at(n) == lift(0))) {
            res.first_bad = n;
            return res;
        }
    res.pass = true;
    return res;
}

} // namespace

AdeResidual verify_ade(const QSeries& F, const AdeRelation& rel) {
    if (rel.modulus != 0)
        throw ArithmeticError("verify_ade: modular relation against an exact series");
    return verify_ade_impl<mpq_class>(F, rel, [](const mpz_class& z) { return mpq_class(z); });
}

AdeResidual verify_ade(const MSeries& F, const AdeRelation& rel) {
    u64 pr = F.domain().pr;
    if (rel.modulus != 0 && rel.modulus != pr)
        throw ArithmeticError("verify_ade: modulus mismatch");
    return verify_ade_impl<u64>(F, rel, [pr](const mpz_class& z) {
        return static_cast<u64>(mpz_fdiv_ui(z.get_mpz_t(), pr));
    });
}

AdeOutcome guess_ade(const QSeries& F, const AdeForm& form, long T) {
    long L = F.order() + 1;
    long need = form.required_terms(T);
    if (L < need)
        throw InsufficientTerms("guess_ade: form (" + std::to_string(form.m) + "," +
                                std::to_string(form.k) + "," + std::to_string(form.d) +
                                ") needs " + std::to_string(need) + " terms, have " +
                                std::to_string(L));
    AdeOutcome out;
    if (nonzero_count(F) < form.k + 1) {
        out.note = "series has fewer than k+1 nonzero terms; any fit would be vacuous";
        return out;
    }
    auto terms = functional_terms(form);
    long U = form.unknown_count();
    long rows = U + T;
    auto build = [&](u64 p) {
        std::vector<u64> f(static_cast<std::size_t>(rows + form.k));
        for (std::size_t i = 0; i < f.size(); ++i) {
            const mpq_class& c = F.coeffs()[i];
            u64 den = mpz_fdiv_ui(c.get_den().get_mpz_t(), p);
            if (den == 0)
                throw ArithmeticError("denominator collision");
            u64 num = mpz_fdiv_ui(c.get_num().get_mpz_t(), p);
            f[i] = mulmod(num, invmod(den, p), p);
        }
        auto ts = term_series(f, p, form.k, rows - 1, terms);
        return window_matrix(ts, form.d, rows);
    };
    ExactVec sol = exact_nullspace(build);
    if (!sol.found) {
        out.note = "window system has full rank; no relation of this form exists";
        return out;
    }
    AdeRelation rel = relation_from_vector(form, terms, sol.v, sol.dim, 0);
    AdeResidual res = verify_ade(F, rel);
    if (!res.pass) {
        out.note = "window fit failed full-order verification at x^" +
                   std::to_string(res.first_bad) + "; discarded";
        return out;
    }
    out.relation = std::move(rel);
    return out;
}

AdeOutcome guess_ade(const ZSeries& F, const AdeForm& form, long T) {
    return guess_ade(to_qseries(F), form, T);
}

AdeOutcome guess_ade_modular(const MSeries& F, const AdeForm& form, long T) {
    const Domain& dom = F.domain();
    if (dom.kind != DomainKind::Modular || dom.r != 1)
        throw NonPrimeModulus("guess_ade_modular: need a prime field series");
    long L = F.order() + 1;
    long need = form.required_terms(T);
    if (L < need)
        throw InsufficientTerms("guess_ade_modular: form needs " + std::to_string(need) +
                                " terms, have " + std::to_string(L));
    AdeOutcome out;
    long nz = 0;
    for (u64 c : F.coeffs())
        if (c) ++nz;
    if (nz < form.k + 1) {
        out.note = "series has fewer than k+1 nonzero terms; any fit would be vacuous";
        return out;
    }
    auto terms = functional_terms(form);
    long rows = form.unknown_count() + T;
    auto ts = term_series(F.coeffs(), dom.p, form.k, rows - 1, terms);
    FpMat A = window_matrix(ts, form.d, rows);
    NullResult r = solve_window(A);
    if (r.trivial) {
        out.note = "window system has full rank mod " + std::to_string(dom.p);
        return out;
    }
    std::vector<mpz_class> v(r.vec.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mpz_class(r.vec[i]);
    AdeRelation rel = relation_from_vector(form, terms, v, r.dim, dom.p);
    AdeResidual res = verify_ade(F, rel);
    if (!res.pass) {
        out.note = "window fit failed full-order verification at x^" +
                   std::to_string(res.first_bad) + "; discarded";
        return out;
    }
    out.relation = std::move(rel);
    return out;
}

AdeAutoReport guess_ade_auto(const QSeries& F, long T, bool exclusions, long max_shift) {
    AdeAutoReport rep;
    QSeries cur = F;
    for (long shift = 0; shift <= max_shift; ++shift) {
        if (shift > 0) {
            if (cur.valuation() < 1) break;
            cur = shift_down(cur, 1);
        }
        long N = cur.order() + 1;
        if (N <= T) break;
        auto forms = enumerate_forms(N, T, exclusions);
        // largest search spaces first
        std::stable_sort(forms.begin(), forms.end(), [](const AdeForm& a, const AdeForm& b) {
            return a.unknown_count() > b.unknown_count();
        });
        for (const auto& form : forms) {
            rep.forms_tried.push_back(form);
            AdeOutcome o;
            try {
                o = guess_ade(cur, form, T);
            } catch (const SolverOverflowBudget& e) {
                o.note = e.what();
            }
            if (o.found()) {
                rep.relation = std::move(o.relation);
                rep.shift_used = shift;
                return rep;
            }
            rep.notes.push_back("(" + std::to_string(form.m) + "," + std::to_string(form.k) +
                                "," + std::to_string(form.d) + ") shift " +
                                std::to_string(shift) + ": " + o.note);
        }
    }
    return rep;
}

} // namespace dalg
