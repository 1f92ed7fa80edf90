#ifndef DALG_ANALYTIC_HPP
#define DALG_ANALYTIC_HPP

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "dalg/series.hpp"

namespace dalg {

// A fitted linear ODE sum_j A_j(x) F^(j)(x) = 0 with integer polynomial
// coefficients, content 1, first nonzero coefficient positive.  "exact"
// records whether the residual vanishes through every available term of
// the series that produced the fit; a window-only fit (a differential
// approximant) keeps exact = false and is still useful for singularity
// analysis.
struct LinearOdeFit {
    long order = 0;                        // requested q
    long head = 0;                         // largest j with A_j nonzero
    std::vector<std::vector<mpz_class>> A; // A[j][i] multiplies x^i F^(j)
    bool exact = false;
    long window = 0;
    long nullity = 0; // dimension of the window nullspace
};

// Exact solve of the window system for the given order and coefficient
// degree.  The first `window` series coefficients are used; rows are the
// vanishing orders x^0 .. x^{window-1-q}.  Returns nothing when the window
// system has full rank.
std::optional<LinearOdeFit> fit_linear_ode(const QSeries& F, long q, long D, long window);

struct Singularity {
    std::complex<double> location;
    std::complex<double> exponent;
    bool irregular_cluster = false;
};

struct SingularityReport {
    std::vector<Singularity> entries;
    std::size_t dominant = 0; // index of the smallest-modulus location
};

// Head-polynomial roots by companion-matrix eigenvalues, with the local
// exponent (head-1) - A_{head-1}(x0) / A_head'(x0) at each simple root.
// Three or more roots within relative distance cluster_rtol of each other
// are flagged as an irregular cluster.
SingularityReport singularities(const LinearOdeFit& fit, double cluster_rtol = 1e-3);

// Cross-order sharpening of the cluster flag: roots of `report` that sit
// within relative distance rel_tol of at least two roots of `other` are
// flagged as well.
void flag_clusters_across(SingularityReport& report, const SingularityReport& other,
                          double rel_tol = 1e-3);

// Entries of `report` whose location reappears in `other` within the
// relative tolerance.  Roots that persist under a change of approximant
// order are singularities of the function; the ones that move are defects
// of the fit.
std::vector<Singularity> stable_entries(const SingularityReport& report,
                                        const SingularityReport& other,
                                        double rel_tol = 1e-4);

enum class RadiusMethod { Ratio, Root };

struct RadiusEstimate {
    double lambda = 0;         // growth rate of |c_n|
    double radius = 0;         // 1 / lambda
    bool converged = false;
    std::string sign_pattern;  // "positive", "alternating", or "mixed"
    std::vector<double> tail;  // raw ratio (or root) sequence tail
};

RadiusEstimate radius_estimate(const QSeries& F, RadiusMethod method = RadiusMethod::Ratio);
RadiusEstimate radius_estimate(const std::vector<double>& coeffs, RadiusMethod method);

// Smallest positive root of 16 x S(x) = 1 for a user-supplied evaluator,
// by bisection refined with the secant rule.
double solve_16x_equals_one(const std::function<double(double)>& S, double hi = 0.0625);

// The root of 16 x 2F1([1/2,1/2],[1],16x) = 1, good to 1e-10.
double transcendental_critical_point();

struct BorelFit {
    double c = 0;          // c_n ~ c * n!
    double log_coeff = 0;  // L in  c/(1-x) + L ln(1-x)  for the transform
    // sampled (x, Borel-transform value) pairs used for the model fit
    std::vector<std::pair<double, double>> samples;
};

// Fit of factorially divergent coefficients from the Borel-scaled values
// c_n / n!.  The vector overload is the practical route when the exact
// integers are too large to be worth materializing.
BorelFit borel_asymptotics(const std::vector<double>& scaled);
BorelFit borel_asymptotics(const QSeries& F, long n_used);

} // namespace dalg

#endif
