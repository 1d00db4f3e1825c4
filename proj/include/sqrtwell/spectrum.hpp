#ifndef SQRTWELL_SPECTRUM_HPP
#define SQRTWELL_SPECTRUM_HPP

#include "sqrtwell/model.hpp"
#include "sqrtwell/specfun.hpp"

#include <span>
#include <utility>
#include <vector>

// Root curves and bound-state spectra of the transcendental condition
//   F(v, w) = H_{v^2-w^2}(sqrt2 v) - sqrt2 (v - w) H_{v^2-w^2-1}(sqrt2 v) = 0,
// its closed-form curve approximation, the effective-quantum-number
// iteration, and the expansion fit.

namespace sqrtwell::spectrum {

/// Constant offset of the curve asymptotes v^2 = w^2 + n + c0.
inline constexpr double kCurveOffset = -0.11920292202211756; // (-1 + tanh 1)/2

/// Sharper offset for the V2 = 0 reduction, where E_n tracks (n - 1/(2pi))^{-2/3}.
inline constexpr double kCurveOffsetV2Zero = -0.15915494309189535; // -1/(2 pi)

/// One traced point of root curve n.
struct CurveSample {
    int n = 0;
    double w = 0.0;
    double v_exact = 0.0;  // root of F(., w), inside v < -|w|
    double v_approx = 0.0; // closed-form seed
    double rel_error = 0.0;
};

struct IterationStep {
    int k = 0;
    double n_eff = 0.0;
    double energy = 0.0;
};

/// Fixed-point iterates; steps[0] is the w = 0 seed.
struct IterationTrace {
    std::vector<IterationStep> steps;
    bool converged = false;
};

/// Least-squares coefficients of n_eff = n + a0 + a1 n^{1/3} + a2 n^{-1/3} + a3 n^{-2/3}.
struct ExpansionFit {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    double residual_rms = 0.0;
    double evaluate(int n) const;
};

/// Canonical root function F(v, w). F(w, w) = 1 exactly; F(-w, w) equals the
/// erf closed form; roots lie strictly inside the wedge v < -|w|.
double spectral_function(const model::AuxPoint& pt, const specfun::Options& opt = {});

/// Closed form of F on the wedge edge v = -w:
/// 1 + sqrt(2 pi) w e^{2 w^2} (erf(sqrt2 w) + 1).
double wedge_edge_value(double w);

/// The physical form H_{a-1}(xi) + (alpha - gamma delta)/(sqrt2 a delta^{3/2}) H_a(xi)
/// with xi = (gamma delta - 2 alpha)/(sqrt2 delta^{3/2}). Degenerates at a = 0;
/// use spectral_function there.
double spectral_function_physical(const model::SpectralParams& s, const specfun::Options& opt = {});

/// Curve approximation: v^2 ~ w^2 + n - 1/2 + (1/2) tanh(1 + ((n+2)/(n+1)) w).
double approx_v_squared(int n, double w);

/// Root of branch n at fixed w, bracketed around the approximation seed and
/// bisected to a v-interval of 1e-12 (or |F| <= tol if that happens first).
CurveSample solve_branch(int n, double w, double tol = 0.0);

/// Uniform-w trace of branch n; w_min == w_max yields a single sample.
std::vector<CurveSample> trace_curve(int n, double w_min, double w_max, double step,
                                     double tol = 0.0);

/// Zero-order effective quantum number: n - 1/2 + tanh(1)/2.
double neff_zero(int n);

/// First-order closed form (the printed simplification that replaces
/// n + c0 by n inside the V2-proportional terms).
double neff_first(const model::PhysicalParams& p, int n);

/// Fixed-point iteration of n_eff <- w(n_eff)^2 + n - 1/2 + (1/2) tanh(...),
/// seeded at neff_zero(n); stops at k_max or when successive energies differ
/// by less than tol. Oscillations are damped; iterates leaving (0, 10n + 100)
/// raise DivergenceError.
IterationTrace neff_iterate(const model::PhysicalParams& p, int n, int k_max, double tol);

/// Full spectrum for n = 1..n_max using the requested method.
std::vector<model::EnergyLevel> bound_states(const model::PhysicalParams& p, int n_max,
                                             const model::Method& method, double tol = 1e-12);

/// Least-squares fit of the expansion basis to (n, n_eff) data; needs at
/// least 5 points with at least 4 distinct n.
ExpansionFit fit_expansion(std::span<const std::pair<int, double>> values);

} // namespace sqrtwell::spectrum

#endif
