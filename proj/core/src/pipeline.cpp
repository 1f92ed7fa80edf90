#include "dalg/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include "dalg/error.hpp"
#include "dalg/ratrec.hpp"
#include "dalg/series_io.hpp"

namespace dalg {

std::string residue_filename(const std::string& name, u64 prime) {
    return name + ".p" + std::to_string(prime) + ".res";
}

ResidueBundle load_residue_bundle(const std::vector<std::string>& paths) {
    ResidueBundle bundle;
    for (const auto& path : paths) {
        AnySeries s = read_series_file(path);
        const MSeries* m = std::get_if<MSeries>(&s);
        if (!m)
            throw ParseError("residue file " + path + " does not carry a modulus");
        if (m->domain().r != 1)
            throw ParseError("residue file " + path + " has prime-power modulus " +
                             std::to_string(m->domain().pr) + "; expected a prime");
        bundle.primes.push_back(m->domain().p);
        bundle.residues.push_back(m->coeffs());
        bundle.sources.push_back(path);
    }
    return bundle;
}

void save_residue_bundle(const std::string& name, const std::string& directory,
                         const ZSeries& F, const std::vector<u64>& primes) {
    for (u64 p : primes) {
        MSeries r = reduce_mod(F, p);
        r.name = name;
        auto path = std::filesystem::path(directory) / residue_filename(name, p);
        write_series_file(path.string(), r);
    }
}

CrtOutcome crt_combine(const ResidueBundle& bundle) {
    if (bundle.primes.empty())
        throw ParseError("crt_combine: empty bundle");
    if (bundle.primes.size() != bundle.residues.size())
        throw ParseError("crt_combine: prime and residue stream counts differ");
    std::set<u64> distinct(bundle.primes.begin(), bundle.primes.end());
    if (distinct.size() != bundle.primes.size())
        throw ParseError("crt_combine: duplicate prime in bundle");
    std::size_t len = bundle.residues.front().size();
    for (std::size_t k = 1; k < bundle.residues.size(); ++k)
        if (bundle.residues[k].size() != len)
            throw ParseError("crt_combine: stream for prime " +
                             std::to_string(bundle.primes[k]) + " has " +
                             std::to_string(bundle.residues[k].size()) +
                             " coefficients, expected " + std::to_string(len));

    CrtOutcome out;
    out.product = 1;
    for (u64 p : bundle.primes) out.product *= p;
    long N = static_cast<long>(len) - 1;
    mpz_class bound = 2;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), 2 * static_cast<unsigned long>(N));
    out.sufficient = out.product > bound;

    std::vector<mpz_class> c(len);
    for (std::size_t i = 0; i < len; ++i) {
        mpz_class acc = 0, M = 1;
        for (std::size_t k = 0; k < bundle.primes.size(); ++k) {
            acc = crt_pair(acc, M, bundle.residues[k][i], bundle.primes[k]);
            M *= bundle.primes[k];
        }
        c[i] = symmetric_lift(acc, M);
    }
    out.series = ZSeries(Domain::integers(), std::move(c));
    return out;
}

PrimePlan prime_plan(long N, int prime_bits) {
    if (N < 1) throw ParseError("prime_plan: N must be positive");
    if (prime_bits < 3 || prime_bits > 62)
        throw ParseError("prime_plan: prime_bits outside [3, 62]");
    mpz_class bound = 2;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), 2 * static_cast<unsigned long>(N));
    PrimePlan plan;
    plan.product = 1;
    u64 c = (1ull << prime_bits) - 1;
    while (plan.product <= bound) {
        c = prev_prime(c);
        plan.primes.push_back(c);
        plan.product *= c;
    }
    return plan;
}

FuncEqResult verify_funceq(const MSeries& F, const FunctionalEquation& eq) {
    if (F.domain().pr != eq.modulus)
        throw DomainMismatch("verify_funceq: series modulus " +
                             std::to_string(F.domain().pr) +
                             " differs from equation modulus " +
                             std::to_string(eq.modulus));
    if (eq.inner_power < 2)
        throw ParseError("verify_funceq: inner power must be at least 2");
    u64 m = eq.modulus;
    // the right side is a(x) F(x) + b(x): fully known through order(F)
    long top = F.order();
    FuncEqResult res;
    res.checked_through = top;
    res.pass = true;
    for (long n = 0; n <= top; ++n) {
        // F(x^s) contributes F_{n/s} when s divides n
        u64 lhs = (n % eq.inner_power == 0) ? F.at(n / eq.inner_power) : 0;
        u64 rhs = 0;
        for (std::size_t j = 0; j < eq.a.size(); ++j) {
            long i = n - static_cast<long>(j);
            if (i < 0) break;
            rhs = addmod(rhs, mulmod(eq.a[j] % m, F.at(i), m), m);
        }
        if (n < static_cast<long>(eq.b.size())) rhs = addmod(rhs, eq.b[n] % m, m);
        if (lhs != rhs) {
            res.pass = false;
            res.first_bad = n;
            break;
        }
    }
    return res;
}

} // namespace dalg
