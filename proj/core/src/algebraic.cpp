#include "dalg/algebraic.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "dalg/fpmat.hpp"

namespace dalg {

namespace {

// Graded lexicographic order, y weighted before x.  Returns true when m1 is
// the smaller monomial.
bool mono_less(const BivariatePoly::Mono& m1, const BivariatePoly::Mono& m2) {
    if (m1.a + m1.b != m2.a + m2.b) return m1.a + m1.b < m2.a + m2.b;
    return m1.b < m2.b;
}

u64 residue_of(const mpz_class& c, u64 m) {
    return mpz_fdiv_ui(c.get_mpz_t(), m);
}

} // namespace

long BivariatePoly::deg_x() const {
    long d = 0;
    for (const auto& m : monos) d = std::max(d, m.a);
    return d;
}

long BivariatePoly::deg_y() const {
    long d = 0;
    for (const auto& m : monos) d = std::max(d, m.b);
    return d;
}

const mpz_class* BivariatePoly::coeff(long a, long b) const {
    for (const auto& m : monos)
        if (m.a == a && m.b == b) return &m.c;
    return nullptr;
}

std::string BivariatePoly::pretty() const {
    if (monos.empty()) return "0";
    // group by y-degree, highest first
    std::ostringstream os;
    long dy = deg_y();
    bool first_group = true;
    for (long b = dy; b >= 0; --b) {
        std::vector<const Mono*> grp;
        for (const auto& m : monos)
            if (m.b == b) grp.push_back(&m);
        if (grp.empty()) continue;
        std::sort(grp.begin(), grp.end(),
                  [](const Mono* u, const Mono* v) { return u->a > v->a; });
        if (!first_group) os << " + ";
        first_group = false;
        os << "(";
        for (std::size_t i = 0; i < grp.size(); ++i) {
            if (i) os << " + ";
            const Mono& m = *grp[i];
            if (m.c != 1 || m.a == 0) os << m.c.get_str();
            if (m.a > 0) {
                if (m.c != 1) os << "*";
                os << "x";
                if (m.a > 1) os << "^" << m.a;
            }
        }
        os << ")";
        if (b > 0) {
            os << "*y";
            if (b > 1) os << "^" << b;
        }
    }
    return os.str();
}

BivariatePoly make_bivariate(u64 modulus, std::vector<BivariatePoly::Mono> monos) {
    BivariatePoly P;
    P.modulus = modulus;
    if (modulus != 0)
        for (auto& m : monos) m.c = residue_of(m.c, modulus);
    std::sort(monos.begin(), monos.end(), [](const auto& u, const auto& v) {
        if (u.b != v.b) return u.b < v.b;
        return u.a < v.a;
    });
    for (auto& m : monos) {
        if (m.c == 0) continue;
        if (!P.monos.empty() && P.monos.back().a == m.a && P.monos.back().b == m.b) {
            P.monos.back().c += m.c;
            if (modulus != 0) P.monos.back().c = residue_of(P.monos.back().c, modulus);
        } else {
            P.monos.push_back(std::move(m));
        }
    }
    P.monos.erase(std::remove_if(P.monos.begin(), P.monos.end(),
                                 [](const auto& m) { return m.c == 0; }),
                  P.monos.end());
    std::sort(P.monos.begin(), P.monos.end(),
              [](const auto& u, const auto& v) { return mono_less(v, u); });
    if (P.monos.empty()) return P;

    if (modulus == 0) {
        mpz_class content = 0;
        for (const auto& m : P.monos) {
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), m.c.get_mpz_t());
            if (content == 1) break;
        }
        if (P.monos.front().c < 0) content = -content;
        if (content != 1)
            for (auto& m : P.monos) m.c /= content;
    } else {
        // scale by the inverse of the unit part of the leading coefficient;
        // the lead becomes 1 when it is a unit, a prime power otherwise
        u64 lead = P.monos.front().c.get_ui();
        u64 unit = lead;
        u64 g = std::gcd(lead, modulus);
        if (g != 1) unit = lead / g;
        if (unit != 1) {
            u64 inv = invmod(unit, modulus);
            for (auto& m : P.monos)
                m.c = mulmod(m.c.get_ui(), inv, modulus);
        }
    }
    return P;
}

bool same_up_to_unit(const BivariatePoly& P, const BivariatePoly& Q) {
    BivariatePoly a = make_bivariate(P.modulus, P.monos);
    BivariatePoly b = make_bivariate(Q.modulus, Q.monos);
    if (a.modulus != b.modulus || a.monos.size() != b.monos.size()) return false;
    for (std::size_t i = 0; i < a.monos.size(); ++i)
        if (a.monos[i].a != b.monos[i].a || a.monos[i].b != b.monos[i].b ||
            a.monos[i].c != b.monos[i].c)
            return false;
    return true;
}

void write_bivariate(std::ostream& os, const BivariatePoly& P) {
    os << "#modulus " << P.modulus << "\n";
    for (const auto& m : P.monos)
        os << m.c.get_str() << " " << m.a << " " << m.b << "\n";
}

BivariatePoly read_bivariate(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("#modulus ", 0) != 0)
        throw ParseError("read_bivariate: missing #modulus header");
    BivariatePoly P;
    std::vector<BivariatePoly::Mono> monos;
    u64 modulus = std::stoull(line.substr(9));
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string cs;
        BivariatePoly::Mono m;
        if (!(ls >> cs >> m.a >> m.b))
            throw ParseError("read_bivariate: bad monomial line '" + line + "'");
        m.c = mpz_class(cs);
        monos.push_back(std::move(m));
    }
    return make_bivariate(modulus, std::move(monos));
}

std::string AlgebraicGuess::certificate() const {
    std::ostringstream os;
    if (poly) {
        os << "relation of degree " << poly->deg_y() << " in y, " << poly->deg_x()
           << " in x, verified through " << terms << " terms";
    } else {
        os << "no relation with dy <= " << dy_searched << ", dx <= " << dx_searched
           << " given " << terms << " terms";
    }
    return os.str();
}

namespace {

// Unknown layout for one (dy, dx) cell, ascending graded-lex so the canonical
// nullspace vector picks up the smallest free monomial first.
std::vector<std::pair<long, long>> cell_monomials(long dy, long dx) {
    std::vector<std::pair<long, long>> cols;
    cols.reserve((dy + 1) * (dx + 1));
    for (long b = 0; b <= dy; ++b)
        for (long a = 0; a <= dx; ++a)
            cols.emplace_back(a, b);
    std::sort(cols.begin(), cols.end(), [](const auto& u, const auto& v) {
        if (u.first + u.second != v.first + v.second)
            return u.first + u.second < v.first + v.second;
        return u.second < v.second;
    });
    return cols;
}

// Nullspace of the linear system "sum c_{a,b} x^a F^b vanishes through
// order(F)".  pow[b] must hold F^b.
std::vector<std::vector<u64>> relation_nullspace(const std::vector<MSeries>& pow,
                                                 u64 p, long N,
                                                 const std::vector<std::pair<long, long>>& cols) {
    FpMat M(p, static_cast<std::size_t>(N + 1), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        auto [a, b] = cols[j];
        const auto& Fb = pow[static_cast<std::size_t>(b)].coeffs();
        for (long m = a; m <= N; ++m)
            M(static_cast<std::size_t>(m), j) = Fb[static_cast<std::size_t>(m - a)];
    }
    return M.nullspace();
}

BivariatePoly poly_from_solution(u64 p, const std::vector<u64>& v,
                                 const std::vector<std::pair<long, long>>& cols) {
    std::vector<BivariatePoly::Mono> monos;
    for (std::size_t j = 0; j < cols.size(); ++j)
        if (v[j] != 0)
            monos.push_back({cols[j].first, cols[j].second, mpz_class(static_cast<unsigned long>(v[j]))});
    return make_bivariate(p, std::move(monos));
}

void require_prime_field(const Domain& dom, const char* who) {
    if (dom.kind != DomainKind::Modular || dom.r != 1 || !is_prime_u64(dom.p))
        throw NonPrimeModulus(std::string(who) + ": series modulus must be a prime (r = 1)");
}

MSeries one_series(const Domain& dom, long N) {
    MSeries s = zero_mseries(dom, N);
    s.at(0) = 1;
    return s;
}

} // namespace

AlgebraicGuess guess_algebraic(const MSeries& F, const GuessBudget& budget) {
    require_prime_field(F.domain(), "guess_algebraic");
    const u64 p = F.domain().p;
    const long N = F.order();
    AlgebraicGuess out;
    out.terms = N + 1;

    std::vector<MSeries> pow{one_series(F.domain(), N), F};
    bool attempted = false;
    for (long dy = 1; dy <= budget.dy_max; ++dy) {
        // largest x-degree this cell can afford while keeping `margin`
        // equations beyond the unknown count
        long dx_cap = std::min(budget.dx_max, (N + 1 - budget.margin) / (dy + 1) - 1);
        if (dx_cap < 0) break;
        attempted = true;
        while (static_cast<long>(pow.size()) <= dy) pow.push_back(multiply(pow.back(), F));
        out.dy_searched = dy;
        out.dx_searched = std::max(out.dx_searched, dx_cap);

        auto cols = cell_monomials(dy, dx_cap);
        if (relation_nullspace(pow, p, N, cols).empty()) continue;

        // a relation exists at this y-degree; bisect for the least x-degree
        long lo = 0, hi = dx_cap;
        while (lo < hi) {
            long mid = lo + (hi - lo) / 2;
            if (!relation_nullspace(pow, p, N, cell_monomials(dy, mid)).empty())
                hi = mid;
            else
                lo = mid + 1;
        }
        auto cmin = cell_monomials(dy, lo);
        auto sol = relation_nullspace(pow, p, N, cmin).front();
        out.poly = poly_from_solution(p, sol, cmin);
        ResidualReport check = verify_algebraic(F, *out.poly);
        if (!check.pass)
            throw ArithmeticError("guess_algebraic: candidate failed verification at x^" +
                                  std::to_string(check.first_bad));
        return out;
    }
    if (!attempted)
        throw InsufficientTerms("guess_algebraic: " + std::to_string(N + 1) +
                                " terms cannot cover any cell (need at least " +
                                std::to_string(2 + budget.margin) + ")");
    return out;
}

ResidualReport verify_algebraic(const MSeries& F, const BivariatePoly& P) {
    const Domain& dom = F.domain();
    if (dom.kind != DomainKind::Modular)
        throw DomainMismatch("verify_algebraic: series must have a modular domain");
    if (P.modulus != 0 && dom.pr % P.modulus != 0)
        throw DomainMismatch("verify_algebraic: polynomial modulus does not divide series modulus");

    const long N = F.order();
    long dy = P.deg_y();
    MSeries acc = zero_mseries(dom, N);
    for (long b = dy; b >= 0; --b) {
        acc = multiply(acc, F);
        for (const auto& m : P.monos)
            if (m.b == b && m.a <= N)
                acc.at(m.a) = addmod(acc.at(m.a), residue_of(m.c, dom.pr), dom.pr);
    }
    ResidualReport rep;
    rep.checked_through = N;
    long v = acc.valuation();
    rep.pass = v > N;
    rep.first_bad = rep.pass ? -1 : v;
    return rep;
}

namespace {

MSeries series_pow(const MSeries& F, u64 e) {
    MSeries acc = one_series(F.domain(), F.order());
    MSeries base = F;
    while (e) {
        if (e & 1) acc = multiply(acc, base);
        e >>= 1;
        if (e) base = multiply(base, base);
    }
    return acc;
}

std::vector<std::vector<u64>> frobenius_nullspace(const std::vector<MSeries>& gpow,
                                                  u64 p, long N, long n_max, long dx) {
    FpMat M(p, static_cast<std::size_t>(N + 1),
            static_cast<std::size_t>((n_max + 1) * (dx + 1)));
    std::size_t j = 0;
    for (long n = 0; n <= n_max; ++n) {
        const auto& Gn = gpow[static_cast<std::size_t>(n)].coeffs();
        for (long a = 0; a <= dx; ++a, ++j)
            for (long m = a; m <= N; ++m)
                M(static_cast<std::size_t>(m), j) = Gn[static_cast<std::size_t>(m - a)];
    }
    return M.nullspace();
}

} // namespace

std::optional<FrobeniusForm> guess_frobenius_form(const MSeries& F, long n_max,
                                                  long dx_max, long margin) {
    require_prime_field(F.domain(), "guess_frobenius_form");
    const u64 p = F.domain().p;
    const long N = F.order();
    if (n_max < 1 || n_max > static_cast<long>(p) - 1)
        throw ArithmeticError("guess_frobenius_form: stratum count must be in [1, p-1]");

    long dx_cap = std::min(dx_max, (N + 1 - margin) / (n_max + 1) - 1);
    if (dx_cap < 0)
        throw InsufficientTerms("guess_frobenius_form: " + std::to_string(N + 1) +
                                " terms are too few for " + std::to_string(n_max + 1) +
                                " strata with margin " + std::to_string(margin));

    MSeries G = series_pow(F, p - 1);
    std::vector<MSeries> gpow{one_series(F.domain(), N)};
    for (long n = 1; n <= n_max; ++n) gpow.push_back(multiply(gpow.back(), G));

    if (frobenius_nullspace(gpow, p, N, n_max, dx_cap).empty()) return std::nullopt;
    long lo = 0, hi = dx_cap;
    while (lo < hi) {
        long mid = lo + (hi - lo) / 2;
        if (!frobenius_nullspace(gpow, p, N, n_max, mid).empty())
            hi = mid;
        else
            lo = mid + 1;
    }
    auto sol = frobenius_nullspace(gpow, p, N, n_max, lo).front();

    FrobeniusForm form;
    form.p = p;
    form.dx = lo;
    form.q.assign(static_cast<std::size_t>(n_max + 1),
                  std::vector<u64>(static_cast<std::size_t>(lo + 1), 0));
    std::size_t j = 0;
    for (long n = 0; n <= n_max; ++n)
        for (long a = 0; a <= lo; ++a, ++j)
            form.q[static_cast<std::size_t>(n)][static_cast<std::size_t>(a)] = sol[j];

    // make the graded-lex leading coefficient 1
    long best_n = -1, best_a = -1, best_grade = -1;
    for (long n = 0; n <= n_max; ++n)
        for (long a = 0; a <= lo; ++a) {
            if (form.q[n][a] == 0) continue;
            long grade = a + n * static_cast<long>(p - 1);
            if (grade > best_grade || (grade == best_grade && n > best_n)) {
                best_n = n;
                best_a = a;
                best_grade = grade;
            }
        }
    u64 inv = invmod(form.q[best_n][best_a], p);
    if (inv != 1)
        for (auto& qn : form.q)
            for (auto& c : qn) c = mulmod(c, inv, p);
    return form;
}

BivariatePoly frobenius_to_dense(const FrobeniusForm& form) {
    std::vector<BivariatePoly::Mono> monos;
    for (std::size_t n = 0; n < form.q.size(); ++n)
        for (std::size_t a = 0; a < form.q[n].size(); ++a)
            if (form.q[n][a] != 0)
                monos.push_back({static_cast<long>(a),
                                 static_cast<long>(n) * static_cast<long>(form.p - 1),
                                 mpz_class(static_cast<unsigned long>(form.q[n][a]))});
    return make_bivariate(form.p, std::move(monos));
}

std::vector<PrimeGuessReport> scan_reduce_and_guess(const ZSeries& F,
                                                    const std::vector<u64>& primes,
                                                    const GuessBudget& budget) {
    std::vector<PrimeGuessReport> out;
    for (u64 p : primes) {
        PrimeGuessReport rep;
        rep.p = p;
        try {
            MSeries Fp = reduce_mod(F, p);
            rep.guess = guess_algebraic(Fp, budget);
            rep.verified = rep.guess.poly && verify_algebraic(Fp, *rep.guess.poly).pass;
        } catch (const Error& e) {
            rep.error = e.what();
        }
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace dalg
