#ifndef DALG_SERIES_HPP
#define DALG_SERIES_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dalg/domain.hpp"
#include "dalg/error.hpp"

namespace dalg {

// A truncated power series: coefficients of x^0 .. x^order are known,
// anything beyond is unknown and reading it is a hard error.  The three
// instantiations share one template so the truncation bookkeeping lives
// in exactly one place.
template <typename C>
class Series {
public:
    Series() : dom_(Domain::integers()), c_(1) {}
    Series(Domain dom, std::vector<C> coeffs) : dom_(dom), c_(std::move(coeffs)) {
        if (c_.empty())
            throw TruncationError("Series: at least the constant term must be present");
    }

    const Domain& domain() const { return dom_; }
    long order() const { return static_cast<long>(c_.size()) - 1; }

    const C& at(long i) const {
        if (i < 0)
            throw TruncationError("Series::at: negative index");
        if (i > order())
            throw TruncationError("Series::at: index " + std::to_string(i) +
                                  " beyond truncation order " + std::to_string(order()));
        return c_[static_cast<std::size_t>(i)];
    }
    C& at(long i) {
        return const_cast<C&>(static_cast<const Series*>(this)->at(i));
    }

    const std::vector<C>& coeffs() const { return c_; }
    std::vector<C>& coeffs() { return c_; }

    // Smallest i with c_i != 0, or order+1 if the known part is zero.
    long valuation() const;

    bool known_part_is_zero() const { return valuation() > order(); }

    std::string name;

private:
    Domain dom_;
    std::vector<C> c_;
};

using ZSeries = Series<mpz_class>;
using QSeries = Series<mpq_class>;
using MSeries = Series<u64>;

// ---- constructors ----

ZSeries make_zseries(std::vector<mpz_class> coeffs);
QSeries make_qseries(std::vector<mpq_class> coeffs);
MSeries make_mseries(const Domain& dom, std::vector<u64> coeffs);
MSeries zero_mseries(const Domain& dom, long order);

// ---- arithmetic ----
// All binary operations require matching domains and truncate the result to
// the shortest reliable order.

template <typename C>
Series<C> linear_combine(const C& a, const Series<C>& F, const C& b, const Series<C>& G);

template <typename C> Series<C> add(const Series<C>& F, const Series<C>& G);
template <typename C> Series<C> sub(const Series<C>& F, const Series<C>& G);
template <typename C> Series<C> scalar_mul(const C& a, const Series<C>& F);

// Product truncated to min(order(F), order(G)).  Dispatches to the
// subquadratic path when it pays off; both paths agree bit for bit.
template <typename C> Series<C> multiply(const Series<C>& F, const Series<C>& G);
template <typename C> Series<C> multiply_schoolbook(const Series<C>& F, const Series<C>& G);

// Subquadratic integer product: evaluation modulo word-size NTT primes,
// recombined by CRT with a symmetric lift.  Exposed for cross-validation.
ZSeries multiply_fast(const ZSeries& F, const ZSeries& G);
MSeries multiply_fast(const MSeries& F, const MSeries& G);

template <typename C> Series<C> derivative(const Series<C>& F);

// F(G(x)) with valuation(G) >= 1, by Horner on the coefficients of F.
template <typename C> Series<C> compose(const Series<C>& F, const Series<C>& G);

// 1/F by Newton order doubling; the constant term must be a unit.
template <typename C> Series<C> reciprocal(const Series<C>& F);

// sqrt(F) for even valuation.  Over the rationals and Z/p^r (p odd) this is
// Newton iteration on the inverse square root; over the integers the result
// is computed rationally and checked for integrality.
QSeries sqrt_series(const QSeries& F);
MSeries sqrt_series(const MSeries& F);
ZSeries sqrt_series(const ZSeries& F);

// Coefficient-wise reduction into Z/p^r.  Rational input requires every
// denominator to be a unit mod p^r.
MSeries reduce_mod(const ZSeries& F, u64 p, unsigned r = 1);
MSeries reduce_mod(const QSeries& F, u64 p, unsigned r = 1);
// Reduction Z/p^r -> Z/p^s for s <= r.
MSeries reduce_mod(const MSeries& F, u64 p, unsigned r = 1);

// Borel transform c_n -> c_n / n! and its inverse.  Integer input moves to
// the rationals; modular input requires order < p.
QSeries borel(const ZSeries& F);
QSeries borel(const QSeries& F);
MSeries borel(const MSeries& F);
QSeries inverse_borel(const QSeries& F);
MSeries inverse_borel(const MSeries& F);

// ---- structural helpers ----

template <typename C> Series<C> truncate(const Series<C>& F, long new_order);
// Divide by x^s; the s lowest known coefficients must vanish.
template <typename C> Series<C> shift_down(const Series<C>& F, long s);
// Multiply by x^s.
template <typename C> Series<C> shift_up(const Series<C>& F, long s);
// Substitute x -> x^s (order multiplies accordingly).
template <typename C> Series<C> substitute_power(const Series<C>& F, long s);

ZSeries to_zseries(const QSeries& F);   // throws if any denominator != 1
QSeries to_qseries(const ZSeries& F);

// ---- type-erased series for file I/O and the CLI ----

using AnySeries = std::variant<ZSeries, QSeries, MSeries>;

Domain any_domain(const AnySeries& s);
long any_order(const AnySeries& s);
const std::string& any_name(const AnySeries& s);
void set_any_name(AnySeries& s, const std::string& name);

} // namespace dalg

#endif
