#ifndef DALG_RATREC_HPP
#define DALG_RATREC_HPP

#include <gmpxx.h>

#include <vector>

#include "dalg/modarith.hpp"

namespace dalg {

// CRT merge: value congruent to a mod M and to b mod q, reduced mod M*q.
// M and q must be coprime.
mpz_class crt_pair(const mpz_class& a, const mpz_class& M, u64 b, u64 q);

// Representative of a mod M in (-M/2, M/2].
mpz_class symmetric_lift(const mpz_class& a, const mpz_class& M);

// Wang style rational reconstruction: find n/d with |n|, d <= sqrt(M/2),
// gcd(d, M) = 1 and n = a*d mod M.  Returns false if none exists.
bool rational_reconstruct(const mpz_class& a, const mpz_class& M, mpq_class& out);

// Reconstruct a whole vector; false as soon as one entry fails.
bool rational_reconstruct_vec(const std::vector<mpz_class>& a, const mpz_class& M,
                              std::vector<mpq_class>& out);

} // namespace dalg

#endif
