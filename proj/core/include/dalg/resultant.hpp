#ifndef DALG_RESULTANT_HPP
#define DALG_RESULTANT_HPP

#include <array>
#include <map>

#include "dalg/algebraic.hpp"

namespace dalg {

// Sparse polynomial mod a prime in the fixed variable set (x, z, A1, A2).
// A1 and A2 are auxiliary algebraic quantities destined for elimination.
enum SparseVar { VarX = 0, VarZ = 1, VarA1 = 2, VarA2 = 3 };

struct SparsePolyMod {
    u64 p = 0;
    std::map<std::array<int, 4>, u64> terms;   // exponent tuple -> residue
};

SparsePolyMod make_sparse(u64 p,
                          std::vector<std::pair<long, std::array<int, 4>>> monos);

long sparse_deg(const SparsePolyMod& f, int var);
SparsePolyMod sparse_add(const SparsePolyMod& f, const SparsePolyMod& g);
SparsePolyMod sparse_mul(const SparsePolyMod& f, const SparsePolyMod& g);
SparsePolyMod sparse_pow(const SparsePolyMod& f, long e);

// Resultant of f and g with respect to `var`.  Degree-1 inputs go through
// the substitution formula; otherwise a Sylvester matrix is reduced by
// fraction-free elimination, which requires the coefficients to involve at
// most the variables x and z.  The result may be zero (common factor).
SparsePolyMod resultant_var(const SparsePolyMod& f, const SparsePolyMod& g, int var);

// Successive elimination of A1 and A2 from an algebraic relation; the
// result only involves (x, z) and is returned with z in the role of y.
// Throws on a zero resultant (degenerate input with a common factor).
BivariatePoly resultant_eliminate(const SparsePolyMod& relation,
                                  const SparsePolyMod& defA1,
                                  const SparsePolyMod& defA2);

} // namespace dalg

#endif
