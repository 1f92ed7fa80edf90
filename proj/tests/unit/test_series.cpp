#include <doctest.h>

#include <random>

#include "dalg/series.hpp"
#include "dalg/series_io.hpp"

#include <sstream>

using namespace dalg;

namespace {

ZSeries random_zseries(long order, unsigned bits, std::mt19937_64& rng) {
    std::vector<mpz_class> c(order + 1);
    gmp_randclass gr(gmp_randinit_default);
    gr.seed(static_cast<unsigned long>(rng()));
    for (auto& x : c) {
        x = gr.get_z_bits(bits);
        if (rng() & 1) x = -x;
    }
    return make_zseries(std::move(c));
}

} // namespace

TEST_CASE("truncation bookkeeping is strict") {
    ZSeries f = make_zseries({1, 2, 3});
    CHECK(f.order() == 2);
    CHECK(f.at(2) == 3);
    CHECK_THROWS_AS(f.at(3), TruncationError);

    ZSeries g = make_zseries({1, 1});
    ZSeries h = multiply(f, g);
    CHECK(h.order() == 1); // truncated to the shorter operand
    CHECK(h.at(1) == 3);
}

TEST_CASE("domain mismatch is rejected") {
    MSeries a = make_mseries(Domain::modular(5), {1, 2});
    MSeries b = make_mseries(Domain::modular(7), {1, 2});
    CHECK_THROWS_AS(multiply(a, b), DomainMismatch);
    CHECK_THROWS_AS(add(a, b), DomainMismatch);
}

TEST_CASE("ring identities on random integer series") {
    std::mt19937_64 rng(42);
    ZSeries a = random_zseries(40, 64, rng);
    ZSeries b = random_zseries(40, 64, rng);
    ZSeries c = random_zseries(40, 64, rng);
    // commutativity and distributivity
    ZSeries ab = multiply(a, b), ba = multiply(b, a);
    CHECK(ab.coeffs() == ba.coeffs());
    ZSeries lhs = multiply(a, add(b, c));
    ZSeries rhs = add(multiply(a, b), multiply(a, c));
    CHECK(lhs.coeffs() == rhs.coeffs());
    // associativity
    CHECK(multiply(multiply(a, b), c).coeffs() == multiply(a, multiply(b, c)).coeffs());
}

TEST_CASE("schoolbook and NTT multiplication agree bit for bit") {
    std::mt19937_64 rng(7);
    for (unsigned bits : {16u, 200u}) {
        ZSeries a = random_zseries(300, bits, rng);
        ZSeries b = random_zseries(300, bits, rng);
        ZSeries s = multiply_schoolbook(a, b);
        ZSeries f = multiply_fast(a, b);
        CHECK(s.coeffs() == f.coeffs());
    }
}

TEST_CASE("modular fast multiply matches schoolbook") {
    std::mt19937_64 rng(11);
    Domain d = Domain::modular(32749);
    std::vector<u64> ca(600), cb(600);
    for (auto& x : ca) x = rng() % d.pr;
    for (auto& x : cb) x = rng() % d.pr;
    MSeries a = make_mseries(d, ca), b = make_mseries(d, cb);
    CHECK(multiply_schoolbook(a, b).coeffs() == multiply_fast(a, b).coeffs());
}

TEST_CASE("reduction commutes with multiplication") {
    std::mt19937_64 rng(3);
    ZSeries a = random_zseries(50, 80, rng);
    ZSeries b = random_zseries(50, 80, rng);
    for (u64 p : {3ull, 13ull, 32749ull}) {
        MSeries lhs = reduce_mod(multiply(a, b), p);
        MSeries rhs = multiply(reduce_mod(a, p), reduce_mod(b, p));
        CHECK(lhs.coeffs() == rhs.coeffs());
    }
}

TEST_CASE("geometric series reciprocal") {
    // 1/(1-x) = 1 + x + x^2 + ...
    std::vector<mpz_class> c(101, 0);
    c[0] = 1; c[1] = -1;
    ZSeries f = make_zseries(std::move(c));
    ZSeries r = reciprocal(f);
    for (long i = 0; i <= 100; ++i) CHECK(r.at(i) == 1);
}

TEST_CASE("reciprocal round trip in Q and mod p^r") {
    std::mt19937_64 rng(5);
    std::vector<mpq_class> cq(80);
    cq[0] = 3;
    for (std::size_t i = 1; i < cq.size(); ++i)
        cq[i] = mpq_class(static_cast<long>(rng() % 1000) - 500, 1 + static_cast<long>(rng() % 50));
    QSeries f = make_qseries(std::move(cq));
    QSeries fr = multiply(f, reciprocal(f));
    CHECK(fr.at(0) == 1);
    for (long i = 1; i <= fr.order(); ++i) CHECK(fr.at(i) == 0);

    Domain d = Domain::modular(3, 4);
    std::vector<u64> cm(80);
    cm[0] = 2;
    for (std::size_t i = 1; i < cm.size(); ++i) cm[i] = rng() % 81;
    MSeries g = make_mseries(d, std::move(cm));
    MSeries gr = multiply(g, reciprocal(g));
    CHECK(gr.at(0) == 1);
    for (long i = 1; i <= gr.order(); ++i) CHECK(gr.at(i) == 0);
    // non-unit constant is rejected
    MSeries bad = make_mseries(d, {3, 1});
    CHECK_THROWS_AS(reciprocal(bad), ArithmeticError);
}

TEST_CASE("sqrt round trips") {
    std::mt19937_64 rng(9);
    // rational: sqrt(F^2) = F for F with positive square constant
    std::vector<mpq_class> cq(60);
    cq[0] = mpq_class(9, 4);
    for (std::size_t i = 1; i < cq.size(); ++i)
        cq[i] = mpq_class(static_cast<long>(rng() % 200) - 100, 1 + static_cast<long>(rng() % 9));
    QSeries f = make_qseries(std::move(cq));
    QSeries s = sqrt_series(multiply(f, f));
    // sqrt returns the branch with positive constant term
    QSeries ref = f.at(0) > 0 ? f : scalar_mul(mpq_class(-1), f);
    CHECK(s.coeffs() == ref.coeffs());

    // modular with Hensel lifting mod 3^4
    Domain d = Domain::modular(3, 4);
    std::vector<u64> cm(60);
    cm[0] = 7; // unit square mod 81 (orbit of Hensel lift)
    for (std::size_t i = 1; i < cm.size(); ++i) cm[i] = rng() % 81;
    MSeries g = make_mseries(d, std::move(cm));
    MSeries r = sqrt_series(multiply(g, g));
    MSeries rr = multiply(r, r);
    CHECK(rr.coeffs() == multiply(g, g).coeffs());

    // even valuation comes out halved
    MSeries shifted = shift_up(multiply(g, g), 4);
    CHECK(sqrt_series(shifted).valuation() == 2);
    CHECK_THROWS_AS(sqrt_series(shift_up(multiply(g, g), 1)), ArithmeticError);
}

TEST_CASE("compose against a hand expansion") {
    // 1/(1-u) composed with u = x ln(1+x) = x^2 - x^3/2 + x^4/3 - ...
    long N = 12;
    std::vector<mpq_class> outer(N + 1, 1); // 1/(1-u) has all-ones coefficients
    std::vector<mpq_class> inner(N + 1, 0);
    for (long n = 1; n <= N - 1; ++n)
        inner[n + 1] = mpq_class((n % 2 == 1) ? 1 : -1, n);
    QSeries F = make_qseries(std::move(outer));
    QSeries G = make_qseries(std::move(inner));
    QSeries R = compose(F, G);
    CHECK(R.at(0) == 1);
    CHECK(R.at(1) == 0);
    CHECK(R.at(2) == 1);
    CHECK(R.at(3) == mpq_class(-1, 2));

    // inner with nonzero constant is rejected
    CHECK_THROWS_AS(compose(F, F), ArithmeticError);
}

TEST_CASE("derivative and borel transforms") {
    ZSeries f = make_zseries({5, 3, 7, 1});
    ZSeries df = derivative(f);
    CHECK(df.order() == 2);
    CHECK(df.at(0) == 3);
    CHECK(df.at(1) == 14);
    CHECK(df.at(2) == 3);

    QSeries b = borel(f);
    CHECK(b.at(2) == mpq_class(7, 2));
    CHECK(b.at(3) == mpq_class(1, 6));
    QSeries ib = inverse_borel(b);
    CHECK(to_zseries(ib).coeffs() == f.coeffs());

    Domain d = Domain::modular(13);
    MSeries fm = reduce_mod(f, 13);
    CHECK(borel(inverse_borel(fm)).coeffs() == fm.coeffs());
    // modular borel beyond order p is ill-defined
    MSeries longm = zero_mseries(d, 20);
    CHECK_THROWS_AS(borel(longm), ArithmeticError);
}

TEST_CASE("series file round trip") {
    ZSeries f = make_zseries({1, -2, 3});
    f.name = "probe";
    std::stringstream ss;
    write_series(ss, f);
    AnySeries back = read_series(ss);
    REQUIRE(std::holds_alternative<ZSeries>(back));
    CHECK(std::get<ZSeries>(back).coeffs() == f.coeffs());
    CHECK(any_name(back) == "probe");

    QSeries q = make_qseries({mpq_class(1, 3), mpq_class(-5, 7)});
    std::stringstream sq;
    write_series(sq, q);
    AnySeries backq = read_series(sq);
    REQUIRE(std::holds_alternative<QSeries>(backq));
    CHECK(std::get<QSeries>(backq).coeffs() == q.coeffs());

    MSeries m = make_mseries(Domain::modular(5, 2), {24, 0, 13});
    std::stringstream sm;
    write_series(sm, m);
    AnySeries backm = read_series(sm);
    REQUIRE(std::holds_alternative<MSeries>(backm));
    CHECK(std::get<MSeries>(backm).domain().p == 5);
    CHECK(std::get<MSeries>(backm).domain().r == 2);
    CHECK(std::get<MSeries>(backm).coeffs() == m.coeffs());

    // order header must match the body
    std::stringstream bad("#modulus 0\n#order 3\n1\n2\n");
    CHECK_THROWS_AS(read_series(bad), ParseError);
}

TEST_CASE("substitute_power bookkeeping") {
    ZSeries f = make_zseries({1, 2, 3});
    ZSeries g = substitute_power(f, 2);
    CHECK(g.order() == 5);
    CHECK(g.at(0) == 1);
    CHECK(g.at(2) == 2);
    CHECK(g.at(4) == 3);
    CHECK(g.at(5) == 0);
}
