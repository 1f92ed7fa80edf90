#ifndef DALG_RECURRENCE_HPP
#define DALG_RECURRENCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "dalg/series.hpp"

namespace dalg {

// Polynomial in n with rational coefficients, ascending.
struct UnivarPolyQ {
    std::vector<mpq_class> c;
    mpq_class eval(long n) const;
    bool is_zero() const;
};

// Sparse polynomial in the two recurrence variables (i, n).
struct BivarPolyQ {
    struct Mono {
        mpq_class c;
        unsigned di = 0;
        unsigned dn = 0;
    };
    std::vector<Mono> monos;
    mpq_class eval(long i, long n) const;
};

// One quadratic convolution block: sum over i = 1..n of
// w(i, n) * h_{i+a} * h_{n-i+b}.
struct ConvolutionTerm {
    long a = 1;
    long b = 2;
    BivarPolyQ weight;
};

// Declarative step rule
//
//   L(n) * h_{n+2} = S(n) * h_{n+1} + sum of convolution blocks
//
// evaluated exactly over the rationals.  Divergent counting sequences come
// out of exactly this shape.
struct RecurrenceSpec {
    std::string name;
    std::vector<mpq_class> initial;   // h_0 .. h_s, s >= 1
    UnivarPolyQ lead;                 // L(n); constant 1 if empty
    UnivarPolyQ single;               // S(n); zero if empty
    std::vector<ConvolutionTerm> conv;
};

// Extend the initial segment through x^N.  Throws if L(n) vanishes at a
// step that is needed.
QSeries convolution_series(const RecurrenceSpec& spec, long N);

// Borel-scaled companion: h_n / n! evaluated in double precision.  This is
// the practical route for factorially divergent sequences where the exact
// integers grow far beyond what an asymptotic fit needs.
std::vector<double> convolution_series_scaled(const RecurrenceSpec& spec, long N);

// Text format, line oriented:
//
//   name my_recurrence
//   initial 0 0 1
//   lead 2 3 1              (polynomial in n, constant first)
//   single 0 4              (optional)
//   conv 1 2                (a b)
//   w 2 1 0                 (monomial: coeff, deg_i, deg_n; repeatable)
//   endconv
//
// Rationals may be written num/den anywhere a coefficient appears.
RecurrenceSpec parse_recurrence_spec(std::istream& in);
RecurrenceSpec parse_recurrence_spec_file(const std::string& path);

// Quadratic recurrence for the q-colored triangulation generating series,
// initial terms 0, 0, q(q-1).
RecurrenceSpec tutte_spec(const mpq_class& q);
QSeries tutte_series(const mpq_class& q, long N);

// One-parameter deformation at q = 4: -x + A^3 (x/A^2 + H(x/A^2)).
QSeries tutte_family(const mpq_class& A, long N);

// Generalized p_n F_q via the term ratio; the series argument is
// scale * x^arg_power.
struct HypergeometricSpec {
    std::vector<mpq_class> upper;
    std::vector<mpq_class> lower;
    mpq_class scale = 1;
    long arg_power = 1;
};
QSeries hypergeometric_series(const HypergeometricSpec& spec, long N);

} // namespace dalg

#endif
