#include "dalg/resultant.hpp"

#include <algorithm>

#include "dalg/modarith.hpp"

namespace dalg {

namespace {

void require_same_p(const SparsePolyMod& f, const SparsePolyMod& g) {
    if (f.p != g.p)
        throw DomainMismatch("sparse polynomial moduli differ");
}

void add_term(SparsePolyMod& f, const std::array<int, 4>& e, u64 c) {
    if (c == 0) return;
    auto [it, fresh] = f.terms.try_emplace(e, c);
    if (!fresh) {
        it->second = addmod(it->second, c, f.p);
        if (it->second == 0) f.terms.erase(it);
    }
}

// coefficient of var^k, as a polynomial with that exponent zeroed
SparsePolyMod sparse_coeff(const SparsePolyMod& f, int var, long k) {
    SparsePolyMod out;
    out.p = f.p;
    for (const auto& [e, c] : f.terms)
        if (e[var] == k) {
            auto e2 = e;
            e2[var] = 0;
            out.terms.emplace(e2, c);
        }
    return out;
}

SparsePolyMod sparse_one(u64 p) {
    SparsePolyMod out;
    out.p = p;
    out.terms.emplace(std::array<int, 4>{0, 0, 0, 0}, 1);
    return out;
}

// ---- dense bivariate (x, z) layer for the Sylvester path ----

struct BPoly {
    long dx = -1, dz = -1;     // -1 marks the zero polynomial
    std::vector<u64> c;        // c[ix * (dz + 1) + iz]
    u64 at(long ix, long iz) const { return c[ix * (dz + 1) + iz]; }
};

BPoly bp_from_sparse(const SparsePolyMod& f) {
    BPoly out;
    for (const auto& [e, c] : f.terms) {
        if (e[VarA1] != 0 || e[VarA2] != 0)
            throw ArithmeticError("resultant: Sylvester coefficients must only involve x and z");
        out.dx = std::max(out.dx, static_cast<long>(e[VarX]));
        out.dz = std::max(out.dz, static_cast<long>(e[VarZ]));
    }
    if (out.dx < 0) return out;
    out.c.assign((out.dx + 1) * (out.dz + 1), 0);
    for (const auto& [e, c] : f.terms)
        out.c[e[VarX] * (out.dz + 1) + e[VarZ]] = c;
    return out;
}

SparsePolyMod bp_to_sparse(u64 p, const BPoly& f) {
    SparsePolyMod out;
    out.p = p;
    for (long ix = 0; ix <= f.dx; ++ix)
        for (long iz = 0; iz <= f.dz; ++iz)
            if (f.at(ix, iz) != 0)
                out.terms.emplace(std::array<int, 4>{static_cast<int>(ix),
                                                     static_cast<int>(iz), 0, 0},
                                  f.at(ix, iz));
    return out;
}

bool bp_zero(const BPoly& f) { return f.dx < 0; }

BPoly bp_trim(BPoly f) {
    long dx = -1, dz = -1;
    for (long ix = 0; ix <= f.dx; ++ix)
        for (long iz = 0; iz <= f.dz; ++iz)
            if (f.at(ix, iz) != 0) {
                dx = std::max(dx, ix);
                dz = std::max(dz, iz);
            }
    if (dx == f.dx && dz == f.dz) return f;
    BPoly out;
    out.dx = dx;
    out.dz = dz;
    if (dx < 0) return out;
    out.c.assign((dx + 1) * (dz + 1), 0);
    for (long ix = 0; ix <= dx; ++ix)
        for (long iz = 0; iz <= dz; ++iz)
            out.c[ix * (dz + 1) + iz] = f.at(ix, iz);
    return out;
}

BPoly bp_mul(u64 p, const BPoly& f, const BPoly& g) {
    BPoly out;
    if (bp_zero(f) || bp_zero(g)) return out;
    out.dx = f.dx + g.dx;
    out.dz = f.dz + g.dz;
    out.c.assign((out.dx + 1) * (out.dz + 1), 0);
    for (long ix = 0; ix <= f.dx; ++ix)
        for (long iz = 0; iz <= f.dz; ++iz) {
            u64 a = f.at(ix, iz);
            if (a == 0) continue;
            for (long jx = 0; jx <= g.dx; ++jx)
                for (long jz = 0; jz <= g.dz; ++jz) {
                    u64 b = g.at(jx, jz);
                    if (b == 0) continue;
                    u64& slot = out.c[(ix + jx) * (out.dz + 1) + iz + jz];
                    slot = addmod(slot, mulmod(a, b, p), p);
                }
        }
    return bp_trim(std::move(out));
}

BPoly bp_sub(u64 p, const BPoly& f, const BPoly& g) {
    BPoly out;
    out.dx = std::max(f.dx, g.dx);
    out.dz = std::max(f.dz, g.dz);
    if (out.dx < 0) return out;
    out.c.assign((out.dx + 1) * (out.dz + 1), 0);
    for (long ix = 0; ix <= f.dx; ++ix)
        for (long iz = 0; iz <= f.dz; ++iz)
            out.c[ix * (out.dz + 1) + iz] = f.at(ix, iz);
    for (long ix = 0; ix <= g.dx; ++ix)
        for (long iz = 0; iz <= g.dz; ++iz) {
            u64& slot = out.c[ix * (out.dz + 1) + iz];
            slot = submod(slot, g.at(ix, iz), p);
        }
    return bp_trim(std::move(out));
}

// exact division in F_p[z] (vectors in z), remainder must vanish
std::vector<u64> uz_exact_div(u64 p, std::vector<u64> num, const std::vector<u64>& den) {
    long dn = static_cast<long>(num.size()) - 1;
    while (dn >= 0 && num[dn] == 0) --dn;
    long dd = static_cast<long>(den.size()) - 1;
    while (dd >= 0 && den[dd] == 0) --dd;
    if (dd < 0) throw ArithmeticError("resultant: division by zero polynomial");
    if (dn < 0) return {0};
    if (dn < dd) throw ArithmeticError("resultant: inexact polynomial division");
    std::vector<u64> q(dn - dd + 1, 0);
    u64 inv = invmod(den[dd], p);
    for (long k = dn - dd; k >= 0; --k) {
        u64 t = mulmod(num[k + dd], inv, p);
        q[k] = t;
        if (t == 0) continue;
        for (long j = 0; j <= dd; ++j)
            num[k + j] = submod(num[k + j], mulmod(t, den[j], p), p);
    }
    for (u64 r : num)
        if (r != 0) throw ArithmeticError("resultant: inexact polynomial division");
    return q;
}

std::vector<u64> bp_coeff_x(const BPoly& f, long ix) {
    std::vector<u64> out(f.dz + 1, 0);
    if (ix <= f.dx)
        for (long iz = 0; iz <= f.dz; ++iz) out[iz] = f.at(ix, iz);
    return out;
}

long bp_deg_x(const BPoly& f) { return f.dx; }

// exact division in F_p[x][z]: view both as polynomials in x with
// coefficients in F_p[z]; every coefficient division is again exact
BPoly bp_exact_div(u64 p, BPoly num0, const BPoly& den) {
    if (bp_zero(den)) throw ArithmeticError("resultant: division by zero polynomial");
    if (bp_zero(num0)) return num0;
    long dq = bp_deg_x(num0) - bp_deg_x(den);
    if (dq < 0) throw ArithmeticError("resultant: inexact polynomial division");
    // widen the z dimension so intermediate cross terms always fit
    BPoly num;
    num.dx = num0.dx;
    num.dz = num0.dz + den.dz;
    num.c.assign((num.dx + 1) * (num.dz + 1), 0);
    for (long ix = 0; ix <= num0.dx; ++ix)
        for (long iz = 0; iz <= num0.dz; ++iz)
            num.c[ix * (num.dz + 1) + iz] = num0.at(ix, iz);
    std::vector<std::vector<u64>> qx(dq + 1);
    std::vector<u64> den_lead = bp_coeff_x(den, den.dx);
    long qz = -1;
    for (long k = dq; k >= 0; --k) {
        qx[k] = uz_exact_div(p, bp_coeff_x(num, k + den.dx), den_lead);
        qz = std::max(qz, static_cast<long>(qx[k].size()) - 1);
        // subtract qx[k] * x^k * den from num
        for (long jx = 0; jx <= den.dx; ++jx)
            for (long jz = 0; jz <= den.dz; ++jz) {
                u64 d = den.at(jx, jz);
                if (d == 0) continue;
                for (std::size_t qi = 0; qi < qx[k].size(); ++qi) {
                    if (qx[k][qi] == 0) continue;
                    long tz = jz + static_cast<long>(qi);
                    if (tz > num.dz)
                        throw ArithmeticError("resultant: inexact polynomial division");
                    u64& slot = num.c[(k + jx) * (num.dz + 1) + tz];
                    slot = submod(slot, mulmod(d, qx[k][qi], p), p);
                }
            }
    }
    if (!bp_zero(bp_trim(num)))
        throw ArithmeticError("resultant: inexact polynomial division");
    BPoly out;
    out.dx = dq;
    out.dz = std::max(qz, 0L);
    out.c.assign((out.dx + 1) * (out.dz + 1), 0);
    for (long k = 0; k <= dq; ++k)
        for (std::size_t qi = 0; qi < qx[k].size(); ++qi)
            out.c[k * (out.dz + 1) + static_cast<long>(qi)] = qx[k][qi];
    return bp_trim(std::move(out));
}

// determinant by fraction-free (Bareiss) elimination; zero signals a
// singular matrix, i.e. a common factor of the two inputs
BPoly bareiss_det(u64 p, std::vector<std::vector<BPoly>> M) {
    const long n = static_cast<long>(M.size());
    BPoly prev;
    prev.dx = prev.dz = 0;
    prev.c = {1};
    for (long k = 0; k + 1 < n; ++k) {
        if (bp_zero(M[k][k])) {
            long swap_with = -1;
            for (long i = k + 1; i < n; ++i)
                if (!bp_zero(M[i][k])) { swap_with = i; break; }
            if (swap_with < 0) return BPoly{};   // zero column, det = 0
            std::swap(M[k], M[swap_with]);       // sign change, irrelevant here
        }
        for (long i = k + 1; i < n; ++i) {
            for (long j = k + 1; j < n; ++j) {
                BPoly t = bp_sub(p, bp_mul(p, M[k][k], M[i][j]),
                                 bp_mul(p, M[i][k], M[k][j]));
                M[i][j] = bp_zero(t) ? t : bp_exact_div(p, std::move(t), prev);
            }
            M[i][k] = BPoly{};
        }
        prev = M[k][k];
    }
    return M[n - 1][n - 1];
}

} // namespace

SparsePolyMod make_sparse(u64 p,
                          std::vector<std::pair<long, std::array<int, 4>>> monos) {
    SparsePolyMod out;
    out.p = p;
    for (auto& [c, e] : monos) {
        long r = c % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        add_term(out, e, static_cast<u64>(r));
    }
    return out;
}

long sparse_deg(const SparsePolyMod& f, int var) {
    long d = -1;
    for (const auto& [e, c] : f.terms) d = std::max(d, static_cast<long>(e[var]));
    return f.terms.empty() ? -1 : d;
}

SparsePolyMod sparse_add(const SparsePolyMod& f, const SparsePolyMod& g) {
    require_same_p(f, g);
    SparsePolyMod out = f;
    for (const auto& [e, c] : g.terms) add_term(out, e, c);
    return out;
}

SparsePolyMod sparse_mul(const SparsePolyMod& f, const SparsePolyMod& g) {
    require_same_p(f, g);
    SparsePolyMod out;
    out.p = f.p;
    for (const auto& [e1, c1] : f.terms)
        for (const auto& [e2, c2] : g.terms) {
            std::array<int, 4> e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]};
            add_term(out, e, mulmod(c1, c2, f.p));
        }
    return out;
}

SparsePolyMod sparse_pow(const SparsePolyMod& f, long e) {
    SparsePolyMod acc = sparse_one(f.p);
    SparsePolyMod base = f;
    while (e > 0) {
        if (e & 1) acc = sparse_mul(acc, base);
        e >>= 1;
        if (e) base = sparse_mul(base, base);
    }
    return acc;
}

SparsePolyMod resultant_var(const SparsePolyMod& f, const SparsePolyMod& g, int var) {
    require_same_p(f, g);
    const u64 p = f.p;
    long d1 = sparse_deg(f, var);
    long d2 = sparse_deg(g, var);
    if (d1 < 0 || d2 < 0) {
        SparsePolyMod zero;
        zero.p = p;
        return zero;
    }
    if (d1 == 0) return sparse_pow(f, d2);
    if (d2 == 0) return sparse_pow(g, d1);

    if (d1 == 1 || d2 == 1) {
        // Res(a v + b, g) = a^deg(g) g(-b/a), homogenized to stay polynomial
        const SparsePolyMod& lin = d1 == 1 ? f : g;
        const SparsePolyMod& oth = d1 == 1 ? g : f;
        long d = d1 == 1 ? d2 : d1;
        SparsePolyMod a = sparse_coeff(lin, var, 1);
        SparsePolyMod b = sparse_coeff(lin, var, 0);
        SparsePolyMod minus_b = sparse_mul(b, make_sparse(p, {{-1, {0, 0, 0, 0}}}));
        SparsePolyMod acc;
        acc.p = p;
        for (long i = 0; i <= d; ++i) {
            SparsePolyMod gi = sparse_coeff(oth, var, i);
            if (gi.terms.empty()) continue;
            acc = sparse_add(acc, sparse_mul(gi, sparse_mul(sparse_pow(minus_b, i),
                                                            sparse_pow(a, d - i))));
        }
        return acc;
    }

    // general case: Sylvester matrix over F_p[x, z]
    std::vector<BPoly> fc(d1 + 1), gc(d2 + 1);
    for (long i = 0; i <= d1; ++i) fc[i] = bp_from_sparse(sparse_coeff(f, var, i));
    for (long i = 0; i <= d2; ++i) gc[i] = bp_from_sparse(sparse_coeff(g, var, i));
    long n = d1 + d2;
    std::vector<std::vector<BPoly>> M(n, std::vector<BPoly>(n));
    for (long r = 0; r < d2; ++r)
        for (long i = 0; i <= d1; ++i) M[r][r + d1 - i] = fc[i];
    for (long r = 0; r < d1; ++r)
        for (long i = 0; i <= d2; ++i) M[d2 + r][r + d2 - i] = gc[i];
    return bp_to_sparse(p, bareiss_det(p, std::move(M)));
}

BivariatePoly resultant_eliminate(const SparsePolyMod& relation,
                                  const SparsePolyMod& defA1,
                                  const SparsePolyMod& defA2) {
    SparsePolyMod r = relation;
    if (sparse_deg(r, VarA1) > 0) {
        r = resultant_var(r, defA1, VarA1);
        if (r.terms.empty())
            throw ArithmeticError("resultant_eliminate: zero resultant eliminating A1");
    }
    if (sparse_deg(r, VarA2) > 0) {
        r = resultant_var(r, defA2, VarA2);
        if (r.terms.empty())
            throw ArithmeticError("resultant_eliminate: zero resultant eliminating A2");
    }
    std::vector<BivariatePoly::Mono> monos;
    for (const auto& [e, c] : r.terms) {
        if (e[VarA1] != 0 || e[VarA2] != 0)
            throw ArithmeticError("resultant_eliminate: auxiliary variable survived elimination");
        monos.push_back({e[VarX], e[VarZ], mpz_class(static_cast<unsigned long>(c))});
    }
    return make_bivariate(r.p, std::move(monos));
}

} // namespace dalg
