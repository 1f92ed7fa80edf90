#ifndef DALG_ADE_HPP
#define DALG_ADE_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "dalg/series.hpp"

namespace dalg {

// A search form for algebraic differential equations.  A relation of form
// (m, k, d) is a polynomial combination of monomials in F, F', ..., F^(k)
// of total degree at most m (exactly m when homogeneous_only is set), each
// multiplied by an unknown polynomial in x of degree at most d.
struct AdeForm {
    long m = 1;
    long k = 0;
    long d = 0;
    bool homogeneous_only = false;

    // Number R of functional terms.
    long term_count() const;
    // Number of unknown coefficients, R * (d + 1).
    long unknown_count() const;
    // Series terms needed to attempt a guess with margin T.
    long required_terms(long T) const { return unknown_count() + k + T; }

    bool operator==(const AdeForm& o) const {
        return m == o.m && k == o.k && d == o.d &&
               homogeneous_only == o.homogeneous_only;
    }
};

// A functional term: exponents (c_0, ..., c_k) of F, F', ..., F^(k).
using FunctionalTerm = std::vector<long>;

// All weak compositions with sum <= m (dense) or == m (homogeneous), in
// graded lexicographic order.  The dense list starts with the empty
// composition, standing for the constant term.
std::vector<FunctionalTerm> functional_terms(const AdeForm& form);

std::string functional_term_name(const FunctionalTerm& t);

// All componentwise-maximal forms attemptable with N series terms and
// margin T.  With exclusions on, forms with k = 0 (holonomic candidates),
// m = 1 (linear in F) or d = 0 are dropped before the maximality filter.
std::vector<AdeForm> enumerate_forms(long N, long T, bool exclusions = true);

// A guessed relation sum_i p_i(x) * term_i = 0.  Coefficients are exact
// integers with overall content 1 and the first nonzero one positive, or
// residues in [0, p) when modulus != 0.
struct AdeRelation {
    AdeForm form;
    u64 modulus = 0;
    std::vector<FunctionalTerm> terms;
    std::vector<std::vector<mpz_class>> polys; // polys[i][j] multiplies x^j term_i
    long nullspace_dim = 1;

    std::string pretty() const;
};

struct AdeOutcome {
    std::optional<AdeRelation> relation;
    std::string note;

    bool found() const { return relation.has_value(); }
};

// Exact guess over the rationals: solves the homogeneous window system
// modulo word-size primes, recombines by CRT and rational reconstruction,
// then certifies the integer relation against every available term.
AdeOutcome guess_ade(const QSeries& F, const AdeForm& form, long T = 10);
AdeOutcome guess_ade(const ZSeries& F, const AdeForm& form, long T = 10);

// Same pipeline over a single prime field.
AdeOutcome guess_ade_modular(const MSeries& F, const AdeForm& form, long T = 10);

struct AdeAutoReport {
    std::optional<AdeRelation> relation;
    long shift_used = 0;
    std::vector<AdeForm> forms_tried; // covers the not-found certificate
    std::vector<std::string> notes;
};

// Enumerate forms for the available length, try each, and fall back to the
// series shifted down by x, x^2, x^3 when nothing fits directly.
AdeAutoReport guess_ade_auto(const QSeries& F, long T = 10, bool exclusions = true,
                             long max_shift = 3);

struct AdeResidual {
    bool pass = false;
    long first_bad = -1;
    long checked_through = -1;
};

AdeResidual verify_ade(const QSeries& F, const AdeRelation& rel);
AdeResidual verify_ade(const MSeries& F, const AdeRelation& rel);

// ---- fixed-window coefficient recurrences ----

struct WindowRecurrence {
    long window = 0;      // number of lagged coefficients p
    long deg_n = 0;       // degree cap in n
    long deg_c = 1;       // total degree cap in c_n, ..., c_{n-p}
    long start = 0;       // first index the relation holds from
    // One monomial per entry: exponent of n, exponents of c_n..c_{n-p},
    // and the integer coefficient.
    std::vector<std::pair<std::vector<long>, mpz_class>> monomials;

    std::string pretty() const;
};

struct WindowOutcome {
    std::optional<WindowRecurrence> recurrence;
    std::string note;

    bool found() const { return recurrence.has_value(); }
};

WindowOutcome guess_window_recurrence(const std::vector<mpz_class>& coeffs, long window,
                                      long deg_n, long deg_c, long T = 10);

} // namespace dalg

#endif
