#include <doctest.h>

#include <sstream>

#include "dalg/algebraic.hpp"
#include "dalg/named_series.hpp"
#include "dalg/recurrence.hpp"
#include "dalg/resultant.hpp"

using namespace dalg;

namespace {

BivariatePoly poly_of(u64 modulus, std::vector<std::tuple<long, long, long>> monos) {
    std::vector<BivariatePoly::Mono> ms;
    for (auto [a, b, c] : monos) ms.push_back({a, b, mpz_class(c)});
    return make_bivariate(modulus, std::move(ms));
}

MSeries normalized_tutte_mod(const mpq_class& q, long N, u64 p) {
    QSeries H = tutte_series(q, N);
    mpq_class scale = 1 / (q * (q - 1));
    return reduce_mod(scalar_mul(scale, H), p);
}

} // namespace

TEST_CASE("bivariate poly normalization and io") {
    BivariatePoly P = poly_of(5, {{1, 1, 3}, {0, 1, 3}, {0, 0, 6}});
    // leading graded-lex monomial is x y; scaling by 3^-1 = 2 makes it monic
    REQUIRE(P.monos.size() == 3);
    CHECK(P.monos.front().a == 1);
    CHECK(P.monos.front().b == 1);
    CHECK(P.monos.front().c == 1);
    CHECK(*P.coeff(0, 0) == 2);

    std::stringstream ss;
    write_bivariate(ss, P);
    BivariatePoly Q = read_bivariate(ss);
    CHECK(same_up_to_unit(P, Q));

    BivariatePoly Z = poly_of(0, {{0, 2, -4}, {1, 0, 6}});
    CHECK(Z.monos.front().c == 2);   // content 2 removed, leading sign positive
    CHECK(*Z.coeff(1, 0) == -3);
    CHECK(Z.pretty() == "(2)*y^2 + (-3*x)");
}

TEST_CASE("guess_algebraic on a rational function") {
    std::vector<u64> c(61);
    for (auto& v : c) v = 1;   // 1/(1-x) mod 5
    MSeries F = make_mseries(Domain::modular(5), std::move(c));
    auto g = guess_algebraic(F);
    REQUIRE(g.poly.has_value());
    CHECK(g.poly->deg_y() == 1);
    CHECK(same_up_to_unit(*g.poly, poly_of(5, {{1, 1, 1}, {0, 1, -1}, {0, 0, 1}})));

    // the zero series satisfies P = y
    MSeries Z = zero_mseries(Domain::modular(5), 40);
    auto gz = guess_algebraic(Z);
    REQUIRE(gz.poly.has_value());
    CHECK(same_up_to_unit(*gz.poly, poly_of(5, {{0, 1, 1}})));
}

TEST_CASE("guess_algebraic error conditions") {
    MSeries F = zero_mseries(Domain::modular(3, 2), 50);
    CHECK_THROWS_AS((void)guess_algebraic(F), NonPrimeModulus);

    MSeries S = zero_mseries(Domain::modular(5), 5);
    CHECK_THROWS_AS((void)guess_algebraic(S), InsufficientTerms);
}

TEST_CASE("guess_algebraic NotFound certificate") {
    // factorial-sum coefficients mod 1009 look like noise; nothing small fits
    ZSeries F = to_zseries(named_series(NamedSeries::FactorialSum, 80));
    MSeries Fp = reduce_mod(F, 1009);
    GuessBudget b;
    b.dy_max = 3;
    b.dx_max = 6;
    auto g = guess_algebraic(Fp, b);
    CHECK(!g.poly.has_value());
    CHECK(g.dy_searched == 3);
    CHECK(g.certificate().find("no relation") != std::string::npos);
}

TEST_CASE("quadratic map series mod small primes match the printed relations") {
    // q = 5, raw series, mod 7
    QSeries H5 = tutte_series(5, 300);
    auto g7 = guess_algebraic(reduce_mod(H5, 7));
    REQUIRE(g7.poly.has_value());
    BivariatePoly want7 = poly_of(
        7, {{0, 5, 1},
            {2, 4, 5}, {1, 4, 6}, {0, 4, 6},
            {4, 3, 1}, {3, 3, 2}, {2, 3, 2}, {1, 3, 4}, {0, 3, 4},
            {4, 2, 6}, {3, 2, 6}, {2, 2, 1},
            {7, 1, 2}, {5, 1, 5}, {4, 1, 5}, {3, 1, 1}, {2, 1, 5},
            {9, 0, 2}, {8, 0, 4}, {7, 0, 3}, {6, 0, 1}, {5, 0, 2}, {4, 0, 5}});
    CHECK(same_up_to_unit(*g7.poly, want7));

    // q = 7, normalized series, mod 3
    auto g3 = guess_algebraic(normalized_tutte_mod(7, 120, 3));
    REQUIRE(g3.poly.has_value());
    CHECK(same_up_to_unit(
        *g3.poly,
        poly_of(3, {{0, 3, 1}, {2, 1, 2}, {4, 0, 1}, {5, 0, 2}, {6, 0, 1}, {9, 0, 1}})));

    // q = -1, normalized series, mod 5
    auto gm1 = guess_algebraic(normalized_tutte_mod(-1, 120, 5));
    REQUIRE(gm1.poly.has_value());
    CHECK(same_up_to_unit(
        *gm1.poly,
        poly_of(5, {{0, 2, 1}, {1, 1, 1}, {3, 0, 4}, {4, 0, 2}, {5, 0, 2}})));

    // q = 1/2, normalized series, mod 5
    auto gh = guess_algebraic(normalized_tutte_mod(mpq_class(1, 2), 120, 5));
    REQUIRE(gh.poly.has_value());
    CHECK(same_up_to_unit(
        *gh.poly,
        poly_of(5, {{0, 2, 1},
                    {2, 1, 2}, {1, 1, 3}, {0, 1, 1},
                    {2, 0, 4}, {3, 0, 1}, {4, 0, 1}})));
}

TEST_CASE("verify_algebraic over prime powers and residual reporting") {
    // (1 - x) F - 1 holds exactly, so also mod 25
    std::vector<u64> c(41);
    for (auto& v : c) v = 1;
    MSeries F = make_mseries(Domain::modular(5, 2), std::move(c));
    auto rep = verify_algebraic(F, poly_of(25, {{1, 1, 24}, {0, 1, 1}, {0, 0, 24}}));
    CHECK(rep.pass);
    CHECK(rep.checked_through == 40);

    // a wrong relation reports where it first fails
    auto bad = verify_algebraic(F, poly_of(25, {{0, 1, 1}, {0, 0, 24}}));
    CHECK(!bad.pass);
    CHECK(bad.first_bad == 1);

    MSeries Z = zero_mseries(Domain::modular(7), 10);
    CHECK(verify_algebraic(Z, poly_of(7, {{0, 1, 1}})).pass);
}

TEST_CASE("composition series mod 3: dense and stratified guesses agree") {
    QSeries V = named_series(NamedSeries::CompositionH1H2, 120);
    MSeries F3 = reduce_mod(V, 3);

    BivariatePoly printed = poly_of(
        3, {{2, 4, 1}, {1, 4, 2}, {0, 4, 2}, {1, 2, 2}, {0, 2, 2}, {1, 0, 2}, {0, 0, 2}});

    auto dense = guess_algebraic(F3);
    REQUIRE(dense.poly.has_value());
    CHECK(same_up_to_unit(*dense.poly, printed));

    auto form = guess_frobenius_form(F3, 2, 4);
    REQUIRE(form.has_value());
    CHECK(form->dx == 2);
    CHECK(form->q[2] == std::vector<u64>{2, 2, 1});
    CHECK(form->q[1] == std::vector<u64>{2, 2, 0});
    CHECK(form->q[0] == std::vector<u64>{2, 2, 0});
    CHECK(same_up_to_unit(frobenius_to_dense(*form), printed));
}

TEST_CASE("composition series mod 5: degree 16 relation") {
    QSeries V = named_series(NamedSeries::CompositionH1H2, 400);
    MSeries F5 = reduce_mod(V, 5);

    auto form = guess_frobenius_form(F5, 4, 12);
    REQUIRE(form.has_value());
    CHECK(form->dx == 8);
    CHECK(form->q[4] == std::vector<u64>{1, 3, 3, 3, 2, 4, 1, 0, 1});
    CHECK(form->q[3] == std::vector<u64>{1, 3, 3, 3, 1, 0, 0, 0, 0});
    CHECK(form->q[2] == std::vector<u64>{1, 3, 3, 3, 4, 2, 3, 0, 0});
    CHECK(form->q[1] == form->q[3]);
    CHECK(form->q[0] == form->q[3]);

    auto dense = guess_algebraic(F5);
    REQUIRE(dense.poly.has_value());
    CHECK(dense.poly->deg_y() == 16);
    CHECK(dense.poly->deg_x() == 8);
    CHECK(same_up_to_unit(*dense.poly, frobenius_to_dense(*form)));
    CHECK(verify_algebraic(F5, *dense.poly).pass);
}

TEST_CASE("stratified and dense relations share a factor in y") {
    QSeries V = named_series(NamedSeries::CompositionH1H2, 120);
    for (u64 p : {3ull, 5ull}) {
        long N = p == 3 ? 120 : 400;
        MSeries Fp = reduce_mod(p == 3 ? V : named_series(NamedSeries::CompositionH1H2, N), p);
        auto dense = guess_algebraic(Fp);
        auto form = guess_frobenius_form(Fp, static_cast<long>(p) - 1, 12);
        REQUIRE(dense.poly.has_value());
        REQUIRE(form.has_value());
        // a vanishing resultant in y certifies a nontrivial common factor
        auto to_sparse = [&](const BivariatePoly& P) {
            std::vector<std::pair<long, std::array<int, 4>>> ms;
            for (const auto& m : P.monos)
                ms.push_back({static_cast<long>(m.c.get_si()),
                              {static_cast<int>(m.a), static_cast<int>(m.b), 0, 0}});
            return make_sparse(p, std::move(ms));
        };
        auto res = resultant_var(to_sparse(*dense.poly),
                                 to_sparse(frobenius_to_dense(*form)), VarZ);
        CHECK(res.terms.empty());
    }
}

TEST_CASE("divergent recurrences reduce to the printed algebraic functions") {
    // Reductions of these series are sparse automatic sequences, and an
    // unconstrained x-degree invites Pade-style artifacts that happen to
    // vanish through any fixed order.  A small dx budget with a long
    // verification window pins down the genuine relations.
    GuessBudget b;
    b.dy_max = 10;
    b.dx_max = 15;
    ZSeries F1 = to_zseries(named_series(NamedSeries::DivergentQuadratic, 300));
    auto rep1 = scan_reduce_and_guess(F1, {3, 5}, b);
    REQUIRE(rep1.size() == 2);
    REQUIRE(rep1[0].guess.poly.has_value());
    CHECK(rep1[0].verified);
    CHECK(same_up_to_unit(*rep1[0].guess.poly,
                          poly_of(3, {{0, 4, 1}, {5, 1, 1}, {7, 0, 2}})));
    REQUIRE(rep1[1].guess.poly.has_value());
    CHECK(same_up_to_unit(*rep1[1].guess.poly,
                          poly_of(5, {{0, 6, 1}, {5, 3, 2}, {8, 1, 4}, {10, 0, 1}})));

    ZSeries F2 = to_zseries(named_series(NamedSeries::DivergentSimple, 300));
    auto rep2 = scan_reduce_and_guess(F2, {3, 5, 7}, b);
    REQUIRE(rep2.size() == 3);
    REQUIRE(rep2[0].guess.poly.has_value());
    CHECK(same_up_to_unit(*rep2[0].guess.poly,
                          poly_of(3, {{0, 4, 1}, {3, 2, 1}, {4, 1, 2}, {6, 0, 1}})));
    REQUIRE(rep2[1].guess.poly.has_value());
    CHECK(same_up_to_unit(
        *rep2[1].guess.poly,
        poly_of(5, {{0, 6, 1}, {3, 4, 1}, {4, 3, 2}, {5, 2, 1}, {6, 2, 2},
                    {6, 1, 4}, {7, 1, 2}, {8, 0, 1}, {9, 0, 3}})));
    REQUIRE(rep2[2].guess.poly.has_value());
    CHECK(same_up_to_unit(
        *rep2[2].guess.poly,
        poly_of(7, {{0, 8, 1}, {3, 6, 1}, {4, 5, 2}, {5, 4, 6}, {6, 4, 3},
                    {6, 3, 3}, {7, 3, 4}, {7, 2, 1}, {8, 2, 1}, {9, 2, 4},
                    {8, 1, 6}, {9, 1, 4}, {10, 1, 5},
                    {10, 0, 1}, {11, 0, 3}, {12, 0, 2}})));
}

TEST_CASE("resultant elimination of a linear definition") {
    // eliminate A1 from {z - A1, A1 - x}: the relation collapses to z - x
    auto relation = make_sparse(7, {{1, {0, 1, 0, 0}}, {-1, {0, 0, 1, 0}}});
    auto defA1 = make_sparse(7, {{1, {0, 0, 1, 0}}, {-1, {1, 0, 0, 0}}});
    auto defA2 = make_sparse(7, {{1, {0, 0, 0, 1}}});
    BivariatePoly P = resultant_eliminate(relation, defA1, defA2);
    CHECK(same_up_to_unit(P, poly_of(7, {{0, 1, 1}, {1, 0, -1}})));
}

TEST_CASE("resultant elimination for the branch point roots mod 7") {
    u64 p = 7;
    // z^2 - 2 A1 z + A2 = 0 with A1, A2 sextic over F_7[x]
    auto relation = make_sparse(p, {{1, {0, 2, 0, 0}}, {-2, {0, 1, 1, 0}}, {1, {0, 0, 0, 1}}});
    auto defA1 = make_sparse(p, {{1, {0, 0, 6, 0}}, {3, {2, 0, 6, 0}}, {1, {4, 0, 6, 0}},
                                 {6, {6, 0, 6, 0}}, {-1, {0, 0, 0, 0}}});
    auto defA2 = make_sparse(p, {{1, {0, 0, 0, 6}}, {4, {2, 0, 0, 6}}, {1, {4, 0, 0, 6}},
                                 {-1, {0, 0, 0, 0}}});
    BivariatePoly P = resultant_eliminate(relation, defA1, defA2);
    CHECK(P.deg_x() == 60);
    CHECK(P.deg_y() == 72);
    for (const auto& m : P.monos) CHECK(m.a % 2 == 0);   // a function of x^2

    MSeries zm = reduce_mod(named_series(NamedSeries::RootsZMinus, 150), p);
    CHECK(verify_algebraic(zm, P).pass);
}
