#ifndef DALG_SOLVE_INTERNAL_HPP
#define DALG_SOLVE_INTERNAL_HPP

#include <functional>
#include <vector>

#include <gmpxx.h>

#include "dalg/fpmat.hpp"

namespace dalg::detail {

// Canonical nullspace vector mod one prime: smallest-dimension basis,
// leading unknown scaled to 1.
struct NullResult {
    bool trivial = false; // proven full rank
    long dim = 0;
    std::size_t lead = 0;
    std::vector<u64> vec;
};

NullResult solve_window(FpMat& A);

// Multi-modular exact nullspace vector.  build(p) assembles the system mod
// p and may throw ArithmeticError when p collides with a denominator; such
// primes are skipped.  found = false means proven full rank.  The result
// has content 1 and first nonzero entry positive.
struct ExactVec {
    bool found = false;
    long dim = 0;
    std::vector<mpz_class> v;
};

ExactVec exact_nullspace(const std::function<FpMat(u64)>& build, std::size_t max_primes = 40);

} // namespace dalg::detail

#endif
