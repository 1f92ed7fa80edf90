#ifndef DALG_PIPELINE_HPP
#define DALG_PIPELINE_HPP

#include <string>
#include <vector>

#include "dalg/series.hpp"

namespace dalg {

// Residue streams of one integer series modulo several primes, ready for
// CRT assembly.  All streams must cover the same coefficient range.
struct ResidueBundle {
    std::vector<u64> primes;
    std::vector<std::vector<u64>> residues; // residues[k][i] = c_i mod primes[k]
    std::vector<std::string> sources;       // one per prime, free-form provenance
};

// Conventional per-prime file name: <name>.p<prime>.res
std::string residue_filename(const std::string& name, u64 prime);

ResidueBundle load_residue_bundle(const std::vector<std::string>& paths);
void save_residue_bundle(const std::string& name, const std::string& directory,
                         const ZSeries& F, const std::vector<u64>& primes);

struct CrtOutcome {
    ZSeries series;
    mpz_class product;     // product of the bundle primes
    bool sufficient = false; // product > 2 * 4^N, enough for 4^n-growth coefficients
};

// Per-index CRT lift into the symmetric range (-M/2, M/2].  The sufficiency
// flag is advisory here; the CLI escalates it under --strict.
CrtOutcome crt_combine(const ResidueBundle& bundle);

struct PrimePlan {
    std::vector<u64> primes;  // descending, below 2^bits
    mpz_class product;
};

// Enumerate descending primes below 2^prime_bits until the product exceeds
// 2 * 4^N.
PrimePlan prime_plan(long N, int prime_bits);

// F(x^s) == a(x) * F(x) + b(x) over Z/m, coefficients as residues.
struct FunctionalEquation {
    u64 modulus = 0;
    long inner_power = 2;   // s in x -> x^s
    std::vector<u64> a;     // multiplier polynomial
    std::vector<u64> b;     // additive polynomial
};

struct FuncEqResult {
    bool pass = false;
    long first_bad = -1;
    long checked_through = 0;
};

// Coefficientwise comparison through the largest order both sides reach.
// The modulus of F must equal the modulus of the equation.
FuncEqResult verify_funceq(const MSeries& F, const FunctionalEquation& eq);

} // namespace dalg

#endif
