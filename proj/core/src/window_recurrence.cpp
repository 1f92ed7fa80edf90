#include <sstream>

#include "dalg/ade.hpp"
#include "dalg/error.hpp"
#include "solve_internal.hpp"

namespace dalg {

namespace {

// c-monomials in graded-lex order, each then paired with every power of n.
void c_monomials(long s, long len, std::vector<long>& cur,
                 std::vector<std::vector<long>>& out) {
    if (len == 1) {
        cur.push_back(s);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (long c = s; c >= 0; --c) {
        cur.push_back(c);
        c_monomials(s - c, len - 1, cur, out);
        cur.pop_back();
    }
}

mpz_class eval_monomial(const std::vector<long>& expo, long n,
                        const std::vector<mpz_class>& coeffs) {
    mpz_class v = 1;
    for (long e = 0; e < expo[0]; ++e) v *= n;
    for (std::size_t j = 1; j < expo.size(); ++j) {
        const mpz_class& c = coeffs[static_cast<std::size_t>(n) - (j - 1)];
        for (long e = 0; e < expo[j]; ++e) v *= c;
    }
    return v;
}

std::string var_name(std::size_t j) {
    if (j == 0) return "c_n";
    return "c_{n-" + std::to_string(j) + "}";
}

} // namespace

std::string WindowRecurrence::pretty() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [expo, coef] : monomials) {
        if (coef == 0) continue;
        if (!first) os << " + ";
        os << "(" << coef.get_str() << ")";
        for (long e = 0; e < expo[0]; ++e) os << "*n";
        for (std::size_t j = 1; j < expo.size(); ++j)
            for (long e = 0; e < expo[j]; ++e) os << "*" << var_name(j - 1);
        first = false;
    }
    if (first) os << "0";
    os << " = 0";
    return os.str();
}

WindowOutcome guess_window_recurrence(const std::vector<mpz_class>& coeffs, long window,
                                      long deg_n, long deg_c, long T) {
    if (window < 0 || deg_n < 0 || deg_c < 0)
        throw ArithmeticError("guess_window_recurrence: negative degree");
    std::vector<std::vector<long>> cmonos;
    {
        std::vector<long> cur;
        for (long s = 0; s <= deg_c; ++s)
            c_monomials(s, window + 1, cur, cmonos);
    }
    // full monomial = n^e * c-monomial, columns (c-monomial, then e ascending)
    std::vector<std::vector<long>> monos;
    for (const auto& cm : cmonos)
        for (long e = 0; e <= deg_n; ++e) {
            std::vector<long> full;
            full.push_back(e);
            full.insert(full.end(), cm.begin(), cm.end());
            monos.push_back(std::move(full));
        }
    long U = static_cast<long>(monos.size());
    long rows = U + T;
    long len = static_cast<long>(coeffs.size());
    if (len < window + rows)
        throw InsufficientTerms("guess_window_recurrence: need " +
                                std::to_string(window + rows) + " coefficients, have " +
                                std::to_string(len));
    // evaluate exactly once, reduce per prime
    std::vector<std::vector<mpz_class>> rowsz(static_cast<std::size_t>(rows));
    for (long r = 0; r < rows; ++r) {
        long n = window + r;
        rowsz[static_cast<std::size_t>(r)].reserve(monos.size());
        for (const auto& mono : monos)
            rowsz[static_cast<std::size_t>(r)].push_back(eval_monomial(mono, n, coeffs));
    }
    auto build = [&](u64 p) {
        FpMat A(p, static_cast<std::size_t>(rows), monos.size());
        for (long r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < monos.size(); ++c)
                A(static_cast<std::size_t>(r), c) =
                    mpz_fdiv_ui(rowsz[static_cast<std::size_t>(r)][c].get_mpz_t(), p);
        return A;
    };
    WindowOutcome out;
    detail::ExactVec sol = detail::exact_nullspace(build);
    if (!sol.found) {
        out.note = "window system has full rank; no recurrence of this shape exists";
        return out;
    }
    WindowRecurrence rec;
    rec.window = window;
    rec.deg_n = deg_n;
    rec.deg_c = deg_c;
    rec.start = window;
    for (std::size_t i = 0; i < monos.size(); ++i)
        if (sol.v[i] != 0) rec.monomials.emplace_back(monos[i], sol.v[i]);
    for (long n = window; n < len; ++n) {
        mpz_class acc = 0;
        for (const auto& [expo, coef] : rec.monomials)
            acc += coef * eval_monomial(expo, n, coeffs);
        if (acc != 0) {
            out.note = "window fit failed verification at n = " + std::to_string(n) +
                       "; discarded";
            return out;
        }
    }
    out.recurrence = std::move(rec);
    return out;
}

} // namespace dalg
