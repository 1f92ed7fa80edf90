#ifndef DALG_NAMED_SERIES_HPP
#define DALG_NAMED_SERIES_HPP

#include "dalg/recurrence.hpp"
#include "dalg/series.hpp"

namespace dalg {

// Closed list of reference constructions used throughout the test suites
// and the CLI.  Everything here is exact.
enum class NamedSeries {
    TutteQ4,           // 12 x^2 + 24 x^3 + 168 x^4 + ...
    CompositionH1H2,   // H1(x H1(x)) with H1 = 2F1([1/2,1/2],[1],16x)
    RootsZMinus,       // H1 - sqrt(H1^2 - H2), arguments 320 x^2 and 540 x^2
    RootsZPlus,
    DivergentQuadratic, // h_{n+2} = sum i(i+1)(3n-3i+1) h_{i+1} h_{n-i+2}, h_2 = 1
    DivergentSimple,    // h_{n+2} = sum i h_{i+1} h_{n-i+2}, h_2 = 1
    FactorialSum,       // sum n! x^n
    RatioF13overF12,    // 2F1([1/3,1/3],[1],27x) / 2F1([1/2,1/2],[1],16x)
    RatioCalabiYau,     // 4F3([1/2,1/2,1/2,1/2],[1,1,1],256x) / 2F1([1/2,1/2],[1],16x)
    PullbackLog,        // 2F1([1/2,1/2],[1], 16 x ln(1+x))
    ReciprocalXlog,     // 1 / (1 - x ln(1+x))
};

NamedSeries named_series_from_string(const std::string& s);
const char* named_series_name(NamedSeries which);

QSeries named_series(NamedSeries which, long N);

// H1(v x H1(x)): one parameter family of deformed compositions.
QSeries composition_family(const mpq_class& v, long N);

// Solve a2 F'' + a1 F' + a0 F = 0 coefficient by coefficient given F(0)
// and F'(0).  The leading coefficient may have positive valuation as long
// as every step has a nonzero pivot.  Pass N = -1 to solve as deep as the
// truncation orders of the coefficient series allow; an explicit N beyond
// that bound throws TruncationError.
QSeries solve_linear_series_ode2(const QSeries& a2, const QSeries& a1, const QSeries& a0,
                                 const mpq_class& f0, const mpq_class& f1, long N);

// Composition S(u(x)) where S = 2F1([a,b],[c], k u) and valuation(u) >= 1,
// through the transformed linear ODE.  Quadratic in N instead of the cubic
// cost of plain Horner composition.
QSeries compose_2f1(const mpq_class& a, const mpq_class& b, const mpq_class& c,
                    const mpq_class& k, const QSeries& u);

// x ln(1+x) through order N.
QSeries x_log1p_series(long N);

// RecurrenceSpec definitions behind the two divergent constructions.
RecurrenceSpec divergent_quadratic_spec();
RecurrenceSpec divergent_simple_spec();

} // namespace dalg

#endif
