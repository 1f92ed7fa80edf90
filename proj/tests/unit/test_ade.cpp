#include <doctest.h>

#include <map>
#include <random>

#include "dalg/ade.hpp"
#include "dalg/ade_solve.hpp"
#include "dalg/error.hpp"
#include "dalg/named_series.hpp"
#include "dalg/recurrence.hpp"

using namespace dalg;

namespace {

// Look a coefficient polynomial up by its functional term so the checks do
// not depend on the in-list position.
const std::vector<mpz_class>& poly_of(const AdeRelation& rel, const FunctionalTerm& t) {
    FunctionalTerm want = t;
    want.resize(static_cast<std::size_t>(rel.form.k) + 1, 0);
    for (std::size_t i = 0; i < rel.terms.size(); ++i) {
        FunctionalTerm have = rel.terms[i];
        have.resize(static_cast<std::size_t>(rel.form.k) + 1, 0);
        if (have == want) return rel.polys[i];
    }
    throw std::runtime_error("term not in relation");
}

std::vector<mpz_class> zpoly(std::vector<long> v) {
    return std::vector<mpz_class>(v.begin(), v.end());
}

AdeRelation blank(long m, long k, long d) {
    AdeRelation rel;
    rel.form = AdeForm{m, k, d, false};
    rel.terms = functional_terms(rel.form);
    rel.polys.assign(rel.terms.size(),
                     std::vector<mpz_class>(static_cast<std::size_t>(d) + 1, 0));
    return rel;
}

long binom(long n, long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b.get_si();
}

} // namespace

TEST_CASE("functional terms for m = 3, k = 1") {
    auto ts = functional_terms(AdeForm{3, 1, 0, false});
    std::vector<FunctionalTerm> want = {
        {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2},
        {3, 0}, {2, 1}, {1, 2}, {0, 3}};
    CHECK(ts == want);
    CHECK(functional_term_name(ts[0]) == "1");
    CHECK(functional_term_name(ts[4]) == "F*F'");
    CHECK(functional_term_name(ts[9]) == "F'^3");
}

TEST_CASE("functional term counts match the binomial formulas") {
    auto dense = functional_terms(AdeForm{1, 0, 0, false});
    CHECK(dense == std::vector<FunctionalTerm>{{0}, {1}});
    for (long m = 1; m <= 12; ++m)
        for (long k = 0; k <= 12; ++k) {
            CHECK(static_cast<long>(functional_terms(AdeForm{m, k, 0, false}).size()) ==
                  binom(m + k + 1, k + 1));
            CHECK(static_cast<long>(functional_terms(AdeForm{m, k, 0, true}).size()) ==
                  binom(m + k, k));
        }
}

TEST_CASE("unknown counts") {
    AdeForm f{2, 1, 3, false};
    CHECK(f.term_count() == 6);
    CHECK(f.unknown_count() == 24);
    CHECK(f.required_terms(10) == 35);
    CHECK(AdeForm{11, 4, 32, false}.unknown_count() == 144144);
    AdeForm h{11, 4, 32, true};
    CHECK(h.term_count() == 1365);
    CHECK(h.unknown_count() == 45045);
    CHECK(AdeForm{1, 0, 0, false}.unknown_count() == 2);
}

TEST_CASE("form enumeration") {
    CHECK(enumerate_forms(5043, 10, true).size() == 133);
    auto forms = enumerate_forms(35, 10, true);
    bool has213 = false;
    for (const auto& f : forms)
        if (f.m == 2 && f.k == 1 && f.d == 3) has213 = true;
    CHECK(has213);
    auto small = enumerate_forms(12, 10, false);
    REQUIRE(small.size() == 1);
    CHECK(small[0] == AdeForm{1, 0, 0, false});
}

TEST_CASE("worked quadratic example from 35 terms") {
    QSeries F = truncate(named_series(NamedSeries::DivergentSimple, 40), 34);
    AdeOutcome o = guess_ade(F, AdeForm{2, 1, 3, false});
    REQUIRE(o.found());
    const AdeRelation& rel = *o.relation;
    CHECK(poly_of(rel, {0, 0}) == zpoly({0, 0, 0, 1}));  // x^3
    CHECK(poly_of(rel, {1, 0}) == zpoly({0, -1, 0, 0})); // -x F
    CHECK(poly_of(rel, {0, 1}) == zpoly({0, 0, 0, 0}));
    CHECK(poly_of(rel, {2, 0}) == zpoly({-1, 0, 0, 0})); // -F^2
    CHECK(poly_of(rel, {0, 2}) == zpoly({0, 0, 0, 0}));
    CHECK(poly_of(rel, {1, 1}) == zpoly({0, 1, 0, 0}));  // x F F'
    CHECK(rel.nullspace_dim == 1);
    // margin monotonicity: same data, smaller margin, same relation
    AdeOutcome o5 = guess_ade(F, AdeForm{2, 1, 3, false}, 5);
    REQUIRE(o5.found());
    CHECK(o5.relation->polys == rel.polys);
}

TEST_CASE("normalized quadratic example") {
    QSeries F = shift_down(named_series(NamedSeries::DivergentSimple, 42), 2);
    AdeOutcome o = guess_ade(F, AdeForm{2, 1, 2, false});
    REQUIRE(o.found());
    // x^2 y y' + x y^2 - y + 1 = 0
    CHECK(poly_of(*o.relation, {0, 0}) == zpoly({1, 0, 0}));
    CHECK(poly_of(*o.relation, {1, 0}) == zpoly({-1, 0, 0}));
    CHECK(poly_of(*o.relation, {2, 0}) == zpoly({0, 1, 0}));
    CHECK(poly_of(*o.relation, {1, 1}) == zpoly({0, 0, 1}));
    CHECK(poly_of(*o.relation, {0, 1}) == zpoly({0, 0, 0}));
    CHECK(poly_of(*o.relation, {0, 2}) == zpoly({0, 0, 0}));
}

TEST_CASE("geometric series relation") {
    std::vector<mpq_class> c(40, 1);
    QSeries F = make_qseries(std::move(c));
    AdeOutcome o = guess_ade(F, AdeForm{2, 1, 0, false});
    REQUIRE(o.found());
    CHECK(poly_of(*o.relation, {0, 1}) == zpoly({1}));
    CHECK(poly_of(*o.relation, {2, 0}) == zpoly({-1}));
    CHECK(poly_of(*o.relation, {0, 0}) == zpoly({0}));
    CHECK(poly_of(*o.relation, {1, 0}) == zpoly({0}));
    CHECK(poly_of(*o.relation, {1, 1}) == zpoly({0}));
    CHECK(poly_of(*o.relation, {0, 2}) == zpoly({0}));
}

TEST_CASE("shift consistency on the worked example") {
    QSeries F = truncate(named_series(NamedSeries::DivergentSimple, 60), 55);
    AdeOutcome o = guess_ade(shift_up(F, 1), AdeForm{2, 1, 5, false});
    REQUIRE(o.found());
    CHECK(verify_ade(shift_up(F, 1), *o.relation).pass);
}

TEST_CASE("modular and exact guesses agree mod 101") {
    QSeries F = truncate(named_series(NamedSeries::DivergentSimple, 40), 34);
    AdeOutcome exact = guess_ade(F, AdeForm{2, 1, 3, false});
    AdeOutcome modular = guess_ade_modular(reduce_mod(F, 101), AdeForm{2, 1, 3, false});
    REQUIRE(exact.found());
    REQUIRE(modular.found());
    for (std::size_t i = 0; i < exact.relation->terms.size(); ++i)
        for (std::size_t j = 0; j < exact.relation->polys[i].size(); ++j) {
            mpz_class want = exact.relation->polys[i][j] % 101;
            if (want < 0) want += 101;
            CHECK(modular.relation->polys[i][j] == want);
        }
}

TEST_CASE("degenerate and undersized inputs") {
    QSeries zero = make_qseries(std::vector<mpq_class>(120, 0));
    AdeOutcome o = guess_ade(zero, AdeForm{2, 1, 0, false});
    CHECK_FALSE(o.found());
    CHECK(!o.note.empty());
    MSeries mzero = zero_mseries(Domain::modular(5), 119);
    AdeOutcome om = guess_ade_modular(mzero, AdeForm{2, 1, 0, false});
    CHECK_FALSE(om.found());
    CHECK(!om.note.empty());
    QSeries shortF = truncate(named_series(NamedSeries::DivergentSimple, 40), 10);
    CHECK_THROWS_AS(guess_ade(shortF, AdeForm{2, 1, 3, false}), InsufficientTerms);
}

TEST_CASE("auto mode on the triangulation series") {
    QSeries H = tutte_series(4, 200);
    AdeAutoReport rep = guess_ade_auto(H);
    REQUIRE(rep.relation.has_value());
    CHECK(rep.shift_used == 0);
    CHECK(verify_ade(H, *rep.relation).pass);
    // cross-substitution: the classical equation holds on the same data
    AdeResidual classical = verify_ade(H, tutte_ade(4));
    CHECK(classical.pass);
}

TEST_CASE("auto mode yields a full certificate on noise") {
    std::mt19937_64 rng(20240817);
    std::vector<mpq_class> c;
    for (int i = 0; i < 60; ++i)
        c.emplace_back(static_cast<long>(rng() % 2000001) - 1000000);
    QSeries F = make_qseries(std::move(c));
    AdeAutoReport rep = guess_ade_auto(F);
    CHECK_FALSE(rep.relation.has_value());
    CHECK(rep.forms_tried.size() == enumerate_forms(60, 10, true).size());
}

TEST_CASE("polynomial input with exclusions off") {
    std::vector<mpq_class> c(30, 0);
    c[2] = 1; // x^2
    QSeries F = make_qseries(std::move(c));
    AdeAutoReport rep = guess_ade_auto(F, 10, false);
    REQUIRE(rep.relation.has_value());
    CHECK(verify_ade(F, *rep.relation).pass);
}

TEST_CASE("scaled solutions of a homogeneous relation") {
    // F F'' - F'^2 is homogeneous quadratic with solution exp(x)
    AdeRelation rel = blank(2, 2, 0);
    set_ade_term(rel, {1, 0, 1}, zpoly({1}));
    set_ade_term(rel, {0, 2, 0}, zpoly({-1}));
    std::vector<mpq_class> e(40);
    mpq_class f = 1;
    for (long n = 0; n < 40; ++n) {
        e[static_cast<std::size_t>(n)] = f;
        f /= (n + 1);
    }
    QSeries F = make_qseries(std::move(e));
    CHECK(verify_ade(F, rel).pass);
    CHECK(verify_ade(scalar_mul(mpq_class(2), F), rel).pass);
    // constant solutions of Chazy III: y''' = 2 y y'' - 3 y'^2
    AdeRelation chazy = blank(2, 3, 0);
    set_ade_term(chazy, {0, 0, 0, 1}, zpoly({1}));
    set_ade_term(chazy, {1, 0, 1, 0}, zpoly({-2}));
    set_ade_term(chazy, {0, 2, 0, 0}, zpoly({3}));
    QSeries c7 = make_qseries(std::vector<mpq_class>(20, 0));
    c7.coeffs()[0] = 7;
    CHECK(verify_ade(c7, chazy).pass);
}

TEST_CASE("verify reports the first bad order") {
    QSeries F = truncate(named_series(NamedSeries::DivergentSimple, 20), 18);
    AdeRelation rel = blank(2, 1, 3);
    set_ade_term(rel, {0, 0}, zpoly({0, 0, 0, 1}));
    set_ade_term(rel, {1, 0}, zpoly({0, -1}));
    set_ade_term(rel, {2, 0}, zpoly({-1}));
    set_ade_term(rel, {1, 1}, zpoly({0, 1}));
    CHECK(verify_ade(F, rel).pass);
    set_ade_term(rel, {1, 0}, zpoly({0, -2}));
    AdeResidual bad = verify_ade(F, rel);
    CHECK_FALSE(bad.pass);
    CHECK(bad.first_bad == 3);
}

TEST_CASE("window recurrence for Fibonacci") {
    std::vector<mpz_class> c = {0, 1};
    for (int i = 2; i < 40; ++i) c.push_back(c[i - 1] + c[i - 2]);
    WindowOutcome o = guess_window_recurrence(c, 2, 0, 1);
    REQUIRE(o.found());
    std::map<std::vector<long>, mpz_class> m(o.recurrence->monomials.begin(),
                                             o.recurrence->monomials.end());
    CHECK(m[{0, 1, 0, 0}] == 1);
    CHECK(m[{0, 0, 1, 0}] == -1);
    CHECK(m[{0, 0, 0, 1}] == -1);
    CHECK(m.size() == 3);
}

TEST_CASE("window recurrence for Catalan numbers") {
    std::vector<mpz_class> c = {1};
    for (int n = 1; n < 50; ++n) c.push_back(c[n - 1] * (4 * n - 2) / (n + 1));
    WindowOutcome o = guess_window_recurrence(c, 1, 1, 1);
    REQUIRE(o.found());
    std::map<std::vector<long>, mpz_class> m(o.recurrence->monomials.begin(),
                                             o.recurrence->monomials.end());
    CHECK(m[{0, 1, 0}] == 1);  // c_n
    CHECK(m[{1, 1, 0}] == 1);  // n c_n
    CHECK(m[{0, 0, 1}] == 2);  // c_{n-1}
    CHECK(m[{1, 0, 1}] == -4); // n c_{n-1}
    CHECK(m.size() == 4);
}

TEST_CASE("window recurrence for factorials") {
    std::vector<mpz_class> c = {1};
    for (int n = 1; n < 30; ++n) c.push_back(c[n - 1] * n);
    WindowOutcome o = guess_window_recurrence(c, 1, 1, 1);
    REQUIRE(o.found());
    std::map<std::vector<long>, mpz_class> m(o.recurrence->monomials.begin(),
                                             o.recurrence->monomials.end());
    CHECK(m[{0, 1, 0}] == 1);
    CHECK(m[{1, 0, 1}] == -1);
    CHECK(m.size() == 2);
    std::vector<mpz_class> tiny(c.begin(), c.begin() + 5);
    CHECK_THROWS_AS(guess_window_recurrence(tiny, 1, 1, 1), InsufficientTerms);
}

TEST_CASE("series solving: geometric seed") {
    AdeRelation rel = blank(2, 1, 0);
    set_ade_term(rel, {0, 1}, zpoly({1}));
    set_ade_term(rel, {2, 0}, zpoly({-1}));
    AdeInitialData data{rel, {1}, 20};
    QSeries F = ade_series_solve(data);
    for (long n = 0; n <= 20; ++n) CHECK(F.at(n) == 1);
}

TEST_CASE("series solving: reciprocal of 1 - x log(1+x)") {
    // (1+x) F - (x^2+x+1) F^2 + x (1+x) F'
    AdeRelation rel = blank(2, 1, 2);
    set_ade_term(rel, {1, 0}, zpoly({1, 1, 0}));
    set_ade_term(rel, {2, 0}, zpoly({-1, -1, -1}));
    set_ade_term(rel, {0, 1}, zpoly({0, 1, 1}));
    AdeInitialData data{rel, {1, 0}, 16};
    QSeries F = ade_series_solve(data);
    CHECK(F.at(2) == 1);
    CHECK(F.at(3) == mpq_class(-1, 2));
    QSeries named = named_series(NamedSeries::ReciprocalXlog, 16);
    CHECK(F.coeffs() == named.coeffs());
    CHECK(verify_ade(named, rel).pass);
    // a freely chosen a_1 moves through the one-parameter family
    AdeInitialData gamma{rel, {1, 3}, 3};
    QSeries G = ade_series_solve(gamma);
    CHECK(G.at(2) == 10);          // gamma^2 + 1
    CHECK(G.at(3) == mpq_class(2 * 3 + 27) - mpq_class(1, 2));
    // a_1 cannot be pinned by the equation itself
    AdeInitialData just_a0{rel, {1}, 5};
    CHECK_THROWS_AS(ade_series_solve(just_a0), NonUniqueExtension);
    // a_0 must satisfy a_0 (a_0 - 1) = 0
    AdeInitialData bad{rel, {2, 0}, 5};
    CHECK_THROWS_AS(ade_series_solve(bad), Inconsistent);
}

TEST_CASE("generalized triangulation equation") {
    QSeries s = generalized_tutte(3, 1, 7);
    mpz_class pref = 3 * 2 * 1; // M (M-N) (M-2N)
    CHECK(s.at(2) == 6);        // M (M-N)
    CHECK(s.at(3) == pref);     // P_3 = 1
    CHECK(s.at(4) == pref * (4 * 3 - 9));
    // printed P_5 drops a factor of 3; the x^5 coefficient of the q = 4
    // series pins the normalization used here
    CHECK(s.at(5) == pref * 3 * (8 * 9 - 37 * 3 + 43));
    CHECK(s.at(6) == pref * (176 * 27 - 1245 * 9 + 2951 * 3 - 2344));
    CHECK(s.at(7) == pref * (1456 * 81 - 13935 * 27 + 50273 * 9 - 81036 * 3 + 49248));
    // N = 1 recovers the one-parameter triangulation count
    CHECK(generalized_tutte(5, 1, 12).coeffs() == tutte_series(5, 12).coeffs());
    // M = N collapses to zero
    QSeries z = generalized_tutte(4, 4, 10);
    for (long n = 0; n <= 10; ++n) CHECK(z.at(n) == 0);
}

TEST_CASE("generalized triangulation homogeneity") {
    QSeries a = generalized_tutte(3, 1, 10);
    for (long t : {2, 3}) {
        QSeries b = generalized_tutte(3 * t, t, 10);
        mpq_class scale = 1;
        for (long n = 0; n <= 10; ++n) {
            CHECK(b.at(n) == scale * a.at(n));
            scale *= t;
        }
    }
}
