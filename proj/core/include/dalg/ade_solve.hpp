#ifndef DALG_ADE_SOLVE_HPP
#define DALG_ADE_SOLVE_HPP

#include "dalg/ade.hpp"
#include "dalg/series.hpp"

namespace dalg {

// Seed data for growing a power series solution of an exact AdeRelation.
// The prescribed coefficients a_0 .. a_s must satisfy every residual
// constraint they already determine.
struct AdeInitialData {
    AdeRelation relation;
    std::vector<mpq_class> prescribed;
    long order = 0;
};

// Extend the prescribed coefficients order by order through x^order.
// Each step must pin the next coefficient through a linear condition with
// a nonzero pivot; otherwise NonUniqueExtension or Inconsistent is thrown
// with the offending index.
QSeries ade_series_solve(const AdeInitialData& data);

// Helper for building exact relations by hand: sets the polynomial of the
// functional term with the given exponents, which must belong to the form.
void set_ade_term(AdeRelation& rel, const FunctionalTerm& term,
                  std::vector<mpz_class> poly);

// The two-parameter deformation of Tutte's differentially algebraic
// equation from the q-colored triangulation problem, solved from the
// leading behavior M(M-N) x^2.
AdeRelation generalized_tutte_relation(const mpz_class& M, const mpz_class& N);
QSeries generalized_tutte(const mpz_class& M, const mpz_class& N, long order);

// Tutte's equation at parameter q, as an exact relation with integer q.
AdeRelation tutte_ade(const mpz_class& q);

} // namespace dalg

#endif
