#ifndef SQRTWELL_SPECFUN_HPP
#define SQRTWELL_SPECFUN_HPP

// Self-contained real-argument special-function kernel: reciprocal gamma,
// error function, Kummer confluent hypergeometric 1F1, and the Hermite
// function of arbitrary real order.

namespace sqrtwell::specfun {

/// Value plus a heuristic absolute error bound from series truncation and
/// cancellation tracking.
struct EvalResult {
    double value = 0.0;
    double est_abs_error = 0.0;
};

struct Options {
    double series_rel_eps = 1e-17; // term-ratio stopping threshold
    int max_terms = 500;           // hard cap on power-series length
    double asym_switch = 40.0;     // 1F1 argument above which the large-z expansion is used
    // AccuracyError fires when est_abs_error exceeds BOTH bounds below:
    // absolute errors under accuracy_abs_floor never error out.
    double accuracy_rel = 1e-6;
    double accuracy_abs_floor = 1e-6;
};

/// 1/Gamma(x). Total for finite x; returns exactly 0 at the poles 0, -1, -2, ...
double gamma_recip(double x);

/// Error function, |result| <= 1, odd in x.
double erf(double x);

/// Kummer confluent hypergeometric 1F1(a; b; z).
/// Throws PoleError when b is a non-positive integer.
EvalResult kummer_1f1(double a, double b, double z, const Options& opt = {});

/// Hermite function H_nu(z) of arbitrary real order, reducing to the Hermite
/// polynomials at non-negative integer nu.
EvalResult hermite_h(double nu, double z, const Options& opt = {});

/// One ladder step: H_{nu+1}(z) = 2 z H_nu(z) - 2 nu H_{nu-1}(z).
double hermite_recurrence_step(double nu, double z, double h_nu, double h_nu_minus_1);

namespace detail {
/// hermite_h without the accuracy policy: the estimate is returned, never
/// acted on. For callers that combine several evaluations and can judge the
/// combined error themselves (a lone H near an integer order at large |z|
/// carries a large absolute estimate even though combinations stay sharp).
EvalResult hermite_h_raw(double nu, double z, const Options& opt = {});

/// Extended-precision evaluation for combinations that cancel several
/// digits, such as the bound-state wavefunction bracket near the origin.
long double hermite_h_ext(double nu, long double z);
} // namespace detail

} // namespace sqrtwell::specfun

#endif
