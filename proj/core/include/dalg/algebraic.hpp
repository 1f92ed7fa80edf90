#ifndef DALG_ALGEBRAIC_HPP
#define DALG_ALGEBRAIC_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dalg/series.hpp"

namespace dalg {

// Bivariate polynomial P(x, y), intended as an algebraic relation P(x, F) = 0
// for a series F.  Coefficients are canonical residues when modulus != 0 and
// plain integers when modulus == 0.  Monomials are kept sorted in descending
// graded lexicographic order with y weighted before x.
struct BivariatePoly {
    struct Mono {
        long a = 0;   // x-degree
        long b = 0;   // y-degree
        mpz_class c;
    };

    u64 modulus = 0;
    std::vector<Mono> monos;

    bool zero() const { return monos.empty(); }
    long deg_x() const;
    long deg_y() const;
    const mpz_class* coeff(long a, long b) const;
    std::string pretty() const;
};

// Sort, merge duplicates, drop zeros, and normalize: content 1 with positive
// leading coefficient in the exact case, monic leading coefficient (when the
// lead is a unit) in the modular case.
BivariatePoly make_bivariate(u64 modulus, std::vector<BivariatePoly::Mono> monos);

// Equality up to multiplication by a unit of the coefficient ring.
bool same_up_to_unit(const BivariatePoly& P, const BivariatePoly& Q);

// Line format: "#modulus m", then one "c a b" per monomial for c x^a y^b.
void write_bivariate(std::ostream& os, const BivariatePoly& P);
BivariatePoly read_bivariate(std::istream& is);

struct GuessBudget {
    long dy_max = 40;
    long dx_max = 80;
    long margin = 10;   // matched coefficients beyond the unknown count
};

// Result of a relation search.  When no relation exists within the budget
// the degree bounds actually searched form the negative certificate.
struct AlgebraicGuess {
    std::optional<BivariatePoly> poly;
    long dy_searched = 0;
    long dx_searched = 0;
    long terms = 0;
    std::string certificate() const;
};

// Find P with P(x, F(x)) == 0 mod p through the full order of F.  Scans
// y-degrees in ascending order and returns the relation with the smallest
// (dy, dx); the modulus of F must be a prime (r = 1).
AlgebraicGuess guess_algebraic(const MSeries& F, const GuessBudget& budget = {});

struct ResidualReport {
    bool pass = false;
    long first_bad = -1;      // index of the first nonzero residual coefficient
    long checked_through = 0;
};

// Evaluate P(x, F(x)) over the modulus of F (any prime power that the
// modulus of P divides) and report the first surviving coefficient.
ResidualReport verify_algebraic(const MSeries& F, const BivariatePoly& P);

// Structured relation sum_n q_n(x) (F^(p-1))^n == 0 mod p.  The ansatz cuts
// the unknown count from (dy+1)(dx+1) to (n_max+1)(dx+1), which is what makes
// the large strata reachable in practice.
struct FrobeniusForm {
    u64 p = 0;
    long dx = 0;
    std::vector<std::vector<u64>> q;   // q[n][j] is the x^j coefficient of q_n
};

std::optional<FrobeniusForm> guess_frobenius_form(const MSeries& F, long n_max,
                                                  long dx_max, long margin = 10);

// Expand the stratified form into an ordinary bivariate relation.
BivariatePoly frobenius_to_dense(const FrobeniusForm& form);

// Per-prime reduce + guess + verify over a list of primes.  Errors are
// captured per prime instead of aborting the batch.
struct PrimeGuessReport {
    u64 p = 0;
    AlgebraicGuess guess;
    bool verified = false;
    std::string error;
};

std::vector<PrimeGuessReport> scan_reduce_and_guess(const ZSeries& F,
                                                    const std::vector<u64>& primes,
                                                    const GuessBudget& budget = {});

} // namespace dalg

#endif
