#ifndef DALG_DOMAIN_HPP
#define DALG_DOMAIN_HPP

#include <cstdint>
#include <string>

#include "dalg/error.hpp"
#include "dalg/modarith.hpp"

namespace dalg {

enum class DomainKind { Integer, Rational, Modular };

// Coefficient domain tag carried by every series.  For Modular the modulus
// is p^r with p prime; residues are kept canonical in [0, p^r).
struct Domain {
    DomainKind kind = DomainKind::Integer;
    u64 p = 0;
    unsigned r = 0;
    u64 pr = 0;

    static Domain integers() { return Domain{DomainKind::Integer, 0, 0, 0}; }
    static Domain rationals() { return Domain{DomainKind::Rational, 0, 0, 0}; }

    static Domain modular(u64 p, unsigned r = 1) {
        if (!is_prime_u64(p))
            throw ArithmeticError("Domain::modular: " + std::to_string(p) + " is not prime");
        if (r == 0)
            throw ArithmeticError("Domain::modular: exponent must be positive");
        u64 pr = 1;
        for (unsigned i = 0; i < r; ++i) {
            if (pr > UINT64_MAX / p)
                throw ArithmeticError("Domain::modular: modulus overflows 64 bits");
            pr *= p;
        }
        return Domain{DomainKind::Modular, p, r, pr};
    }

    // Parse a modulus value p^r from its integer value (factors the prime).
    static Domain modular_from_value(u64 m);

    bool operator==(const Domain& o) const {
        return kind == o.kind && pr == o.pr;
    }
    bool operator!=(const Domain& o) const { return !(*this == o); }

    std::string str() const;
};

inline void require_same_domain(const Domain& a, const Domain& b, const char* op) {
    if (a != b)
        throw DomainMismatch(std::string(op) + ": domain mismatch (" + a.str() + " vs " + b.str() + ")");
}

} // namespace dalg

#endif
