#include "sqrtwell/spectrum.hpp"
#include "sqrtwell/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace sqrtwell::spectrum {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt2Pi = 2.5066282746310002416;

// Scale of the two competing terms of F at (v, w); used for scale-aware
// |F| stopping, since on deep curves both terms are e^{2v^2}-sized.
double f_term_scale(const model::AuxPoint& pt, const specfun::Options& opt) {
    const double nu = pt.v * pt.v - pt.w * pt.w;
    const double z = kSqrt2 * pt.v;
    const double t1 = std::abs(specfun::detail::hermite_h_raw(nu, z, opt).value);
    const double t2 =
        std::abs(kSqrt2 * (pt.v - pt.w) * specfun::detail::hermite_h_raw(nu - 1.0, z, opt).value);
    return std::max({t1, t2, 1.0});
}

struct Bracket {
    double lo, hi, flo, fhi;
};

// Bisection on F(., w) down to |hi - lo| <= v_tol, with optional early stop
// on a scale-aware |F| threshold.
double bisect_branch(double w, Bracket b, double f_tol, double scale) {
    constexpr double kVTol = 1e-12;
    while (b.hi - b.lo > kVTol) {
        const double mid = 0.5 * (b.lo + b.hi);
        const double fm = spectral_function({w, mid});
        if (f_tol > 0.0 && std::abs(fm) <= f_tol * scale)
            return mid;
        if ((fm < 0.0) == (b.flo < 0.0)) {
            b.lo = mid;
            b.flo = fm;
        } else {
            b.hi = mid;
            b.fhi = fm;
        }
    }
    return 0.5 * (b.lo + b.hi);
}

// Generic bisection used for the delta root problems.
template <typename F>
double bisect(F&& f, double lo, double hi, double flo, double rel_tol) {
    while (hi - lo > rel_tol * std::max(std::abs(lo), std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double iteration_map(const model::PhysicalParams& p, int n, double n_eff) {
    const double delta = model::delta_from_neff(p, n_eff);
    const double w = model::aux_from_delta(p, delta).w;
    return w * w + n - 0.5 +
           0.5 * std::tanh(1.0 + (n + 2.0) / (n + 1.0) * w);
}

model::EnergyLevel level_from_delta(const model::PhysicalParams& p, int n, double delta,
                                    model::Method method) {
    const model::AuxPoint pt = model::aux_from_delta(p, delta);
    return {n, model::energy_from_delta(p, delta), pt.v * pt.v, method};
}

// Root in delta of the exact condition F(v(delta), w(delta)) = 0 for branch n,
// bracketed around a seed delta and expanded geometrically on both sides.
double solve_delta_root(int n, double delta_seed, auto&& g, double radius) {
    double lo = delta_seed * (1.0 - radius);
    double hi = delta_seed * (1.0 + radius);
    double flo = g(lo);
    double fhi = g(hi);
    for (int k = 0; k < 20 && (flo < 0.0) == (fhi < 0.0); ++k) {
        lo /= 1.6;
        hi *= 1.6;
        flo = g(lo);
        fhi = g(hi);
    }
    if ((flo < 0.0) == (fhi < 0.0))
        throw RootError("no sign change in delta for branch n = " + std::to_string(n));
    return bisect(g, lo, hi, flo, 1e-13);
}

} // namespace

double ExpansionFit::evaluate(int n) const {
    const double c = std::cbrt(static_cast<double>(n));
    return n + a0 + a1 * c + a2 / c + a3 / (c * c);
}

double spectral_function(const model::AuxPoint& pt, const specfun::Options& opt) {
    if (!std::isfinite(pt.v) || !std::isfinite(pt.w))
        throw DomainError("spectral_function: non-finite point");
    const double nu = pt.v * pt.v - pt.w * pt.w;
    const double z = kSqrt2 * pt.v;
    const auto h1 = specfun::detail::hermite_h_raw(nu, z, opt);
    if (pt.v == pt.w)
        return h1.value; // order is exactly 0 here, so this is 1
    const auto h0 = specfun::detail::hermite_h_raw(nu - 1.0, z, opt);
    const double c = kSqrt2 * (pt.v - pt.w);
    const double value = h1.value - c * h0.value;
    // Near integer orders each H alone loses relative accuracy, but the
    // crossing of F stays steep on the e^{z^2} scale, so the sign of the
    // combination remains root-finding grade down to its noise floor.
    if (!std::isfinite(value))
        throw AccuracyError("spectral_function: non-finite at v = " +
                            std::to_string(pt.v) + ", w = " + std::to_string(pt.w));
    return value;
}

double wedge_edge_value(double w) {
    return 1.0 + kSqrt2Pi * w * std::exp(2.0 * w * w) * (specfun::erf(kSqrt2 * w) + 1.0);
}

double spectral_function_physical(const model::SpectralParams& s, const specfun::Options& opt) {
    if (!(s.delta > 0.0))
        throw DomainError("spectral_function_physical: requires delta > 0");
    if (s.a == 0.0)
        throw DegenerateError("spectral_function_physical: a = 0, use spectral_function");
    const double d32 = s.delta * std::sqrt(s.delta);
    const double xi = (s.gamma * s.delta - 2.0 * s.alpha) / (kSqrt2 * d32);
    const double coeff = (s.alpha - s.gamma * s.delta) / (kSqrt2 * s.a * d32);
    const auto h0 = specfun::detail::hermite_h_raw(s.a - 1.0, xi, opt);
    const auto h1 = specfun::detail::hermite_h_raw(s.a, xi, opt);
    const double value = h0.value + coeff * h1.value;
    if (!std::isfinite(value))
        throw AccuracyError("spectral_function_physical: non-finite at a = " +
                            std::to_string(s.a));
    return value;
}

double approx_v_squared(int n, double w) {
    if (n < 1)
        throw DomainError("approx_v_squared: requires n >= 1");
    return w * w + n - 0.5 + 0.5 * std::tanh(1.0 + (n + 2.0) / (n + 1.0) * w);
}

CurveSample solve_branch(int n, double w, double tol) {
    if (n < 1)
        throw DomainError("solve_branch: requires n >= 1");
    const double v0 = -std::sqrt(approx_v_squared(n, w));
    // Adjacent branch roots sit ~1/(2|v0|) apart in v; the seed is far more
    // accurate than that, so a bracket inside half that spacing is safe.
    double radius = std::min(std::max(0.05, 0.1 / std::sqrt(static_cast<double>(n))),
                             0.2 / std::abs(v0));
    const double wedge = -std::abs(w); // F > 0 there, roots lie strictly below

    Bracket b{};
    bool found = false;
    for (int attempt = 0; attempt <= 8; ++attempt) {
        b.lo = v0 - radius;
        b.hi = std::min(v0 + radius, wedge);
        b.flo = spectral_function({w, b.lo});
        b.fhi = spectral_function({w, b.hi});
        if ((b.flo < 0.0) != (b.fhi < 0.0)) {
            found = true;
            break;
        }
        // expansions stay inside one inter-branch spacing
        radius = std::min(radius * 1.6, 0.45 / std::abs(v0));
    }
    if (!found)
        throw BracketError("solve_branch: no sign change around branch n = " +
                           std::to_string(n) + " at w = " + std::to_string(w));

    const double scale = tol > 0.0 ? f_term_scale({w, v0}, {}) : 1.0;
    CurveSample s;
    s.n = n;
    s.w = w;
    s.v_exact = bisect_branch(w, b, tol, scale);
    s.v_approx = v0;
    s.rel_error = std::abs(s.v_exact - s.v_approx) / std::abs(s.v_exact);
    return s;
}

std::vector<CurveSample> trace_curve(int n, double w_min, double w_max, double step,
                                     double tol) {
    if (w_min > w_max)
        throw DomainError("trace_curve: requires w_min <= w_max");
    if (!(step > 0.0))
        throw DomainError("trace_curve: requires step > 0");
    const int count = static_cast<int>(std::floor((w_max - w_min) / step + 1e-9)) + 1;
    std::vector<CurveSample> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double w = w_min + i * step;
        try {
            out.push_back(solve_branch(n, w, tol));
        } catch (const Error& e) {
            throw RootError("trace_curve failed at w = " + std::to_string(w) + ": " + e.what());
        }
    }
    return out;
}

double neff_zero(int n) {
    if (n < 1)
        throw DomainError("neff_zero: requires n >= 1");
    return n - 0.5 + 0.5 * std::tanh(1.0);
}

double neff_first(const model::PhysicalParams& p, int n) {
    p.validate();
    if (n < 1)
        throw DomainError("neff_first: requires n >= 1");
    if (p.v1 == 0.0)
        throw DomainError("neff_first: requires V1 != 0");
    const double h8 = std::pow(p.hbar, 8);
    const double m4n = p.mass * p.mass * p.mass * p.mass * n / (h8 * p.v1 * p.v1);
    return n - 0.5 + 16.0 * p.v2 * p.v2 * std::cbrt(m4n) +
           0.5 * std::tanh(1.0 + (2.0 + n) / (1.0 + n) * 4.0 * p.v2 * std::pow(m4n, 1.0 / 6.0));
}

IterationTrace neff_iterate(const model::PhysicalParams& p, int n, int k_max, double tol) {
    p.validate_bound();
    if (n < 1)
        throw DomainError("neff_iterate: requires n >= 1");
    if (k_max < 1)
        throw DomainError("neff_iterate: requires k_max >= 1");

    const double ceiling = 10.0 * n + 100.0;
    IterationTrace trace;
    double cur = neff_zero(n);
    double prev_increment = 0.0;
    trace.steps.push_back({0, cur, model::energy_from_neff(p, cur)});

    for (int k = 1; k <= k_max; ++k) {
        double next = iteration_map(p, n, cur);
        double increment = next - cur;
        // Damp on oscillation (sign flip of successive increments).
        if (k > 1 && increment * prev_increment < 0.0) {
            next = cur + 0.5 * increment;
            increment = next - cur;
        }
        if (!(next > 0.0) || next > ceiling || !std::isfinite(next))
            throw DivergenceError("neff_iterate: iterate " + std::to_string(next) +
                                  " left (0, " + std::to_string(ceiling) + ") at k = " +
                                  std::to_string(k));
        const double energy = model::energy_from_neff(p, next);
        trace.steps.push_back({k, next, energy});
        const double prev_energy = trace.steps[trace.steps.size() - 2].energy;
        prev_increment = increment;
        cur = next;
        if (std::abs(energy - prev_energy) < tol) {
            trace.converged = true;
            break;
        }
    }
    return trace;
}

std::vector<model::EnergyLevel> bound_states(const model::PhysicalParams& p, int n_max,
                                             const model::Method& method, double tol) {
    p.validate_bound();
    if (n_max < 1)
        throw DomainError("bound_states: requires n_max >= 1");

    std::vector<model::EnergyLevel> out;
    out.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        switch (method.kind) {
        case model::Method::Kind::exact_root: {
            // Self-consistency loop over the exact curve: solve branch n at
            // the current w, map the root back through the physical locus to
            // update w. The update contracts at rate <= w^2/(3 v^2) < 1/3,
            // and every iterate stays on branch n by construction.
            double delta = model::delta_from_neff(p, neff_zero(n));
            double w = model::aux_from_delta(p, delta).w;
            bool settled = false;
            // The branch root is resolved to a 1e-12 v-interval, which jitters
            // delta at a few 1e-13 relative; stop just above that floor.
            const double drift_tol = std::clamp(tol, 1e-12, 1e-9);
            for (int k = 0; k < 80; ++k) {
                const double v = solve_branch(n, w).v_exact;
                const double next_delta =
                    std::cbrt(std::pow(2.0 * kSqrt2 * p.mass * p.v1 /
                                           (p.hbar * p.hbar * v),
                                       2.0));
                const double drift = std::abs(next_delta - delta);
                delta = next_delta;
                w = model::aux_from_delta(p, delta).w;
                if (drift <= drift_tol * delta) {
                    settled = true;
                    break;
                }
            }
            if (!settled)
                throw RootError("exact root iteration stalled for branch n = " +
                                std::to_string(n));
            out.push_back(level_from_delta(p, n, delta, {model::Method::Kind::exact_root, 0}));
            break;
        }
        case model::Method::Kind::approx10: {
            // Intersection of the curve approximation with the physical cubic,
            // as a root problem along the delta-parametrized locus.
            const auto g = [&](double delta) {
                const model::AuxPoint pt = model::aux_from_delta(p, delta);
                return pt.v * pt.v - approx_v_squared(n, pt.w);
            };
            const double seed = model::delta_from_neff(p, neff_zero(n));
            const double delta = solve_delta_root(n, seed, g, 0.05);
            out.push_back(level_from_delta(p, n, delta, {model::Method::Kind::approx10, 0}));
            break;
        }
        case model::Method::Kind::iteration: {
            const int k = method.k > 0 ? method.k : 3;
            const IterationTrace t = neff_iterate(p, n, k, 0.0);
            const int k_done = t.steps.back().k;
            out.push_back({n, t.steps.back().energy, t.steps.back().n_eff,
                           {model::Method::Kind::iteration, k_done}});
            break;
        }
        case model::Method::Kind::oracle_ode:
            throw DomainError("bound_states: the ODE oracle lives in the oracle module");
        }
    }

    for (int i = 1; i < static_cast<int>(out.size()); ++i)
        if (!(out[i].energy > out[i - 1].energy))
            throw RootError("bound_states: levels not strictly increasing at n = " +
                            std::to_string(i + 1));
    for (const auto& lv : out)
        if (!(lv.energy < p.v0))
            throw RootError("bound_states: level above the continuum edge at n = " +
                            std::to_string(lv.n));
    return out;
}

ExpansionFit fit_expansion(std::span<const std::pair<int, double>> values) {
    const int rows = static_cast<int>(values.size());
    if (rows < 5)
        throw SingularFitError("fit_expansion: needs at least 5 data points");
    {
        std::vector<int> ns;
        for (const auto& [n, y] : values)
            ns.push_back(n);
        std::sort(ns.begin(), ns.end());
        if (std::unique(ns.begin(), ns.end()) - ns.begin() < 4)
            throw SingularFitError("fit_expansion: needs at least 4 distinct n");
    }

    constexpr int kCols = 4;
    std::vector<std::array<double, kCols>> A(rows);
    std::vector<double> y(rows);
    for (int i = 0; i < rows; ++i) {
        const double n = values[i].first;
        const double c = std::cbrt(n);
        A[i] = {1.0, c, 1.0 / c, 1.0 / (c * c)};
        y[i] = values[i].second - n;
    }

    // Householder QR on the 4-column design matrix.
    std::array<double, kCols> rdiag{};
    for (int col = 0; col < kCols; ++col) {
        double norm = 0.0;
        for (int i = col; i < rows; ++i)
            norm = std::hypot(norm, A[i][col]);
        if (norm < 1e-12)
            throw SingularFitError("fit_expansion: design matrix is rank deficient");
        if (A[col][col] < 0.0)
            norm = -norm;
        for (int i = col; i < rows; ++i)
            A[i][col] /= norm;
        A[col][col] += 1.0;
        for (int j = col + 1; j < kCols; ++j) {
            double s = 0.0;
            for (int i = col; i < rows; ++i)
                s += A[i][col] * A[i][j];
            s = -s / A[col][col];
            for (int i = col; i < rows; ++i)
                A[i][j] += s * A[i][col];
        }
        double s = 0.0;
        for (int i = col; i < rows; ++i)
            s += A[i][col] * y[i];
        s = -s / A[col][col];
        for (int i = col; i < rows; ++i)
            y[i] += s * A[i][col];
        rdiag[col] = -norm;
    }

    std::array<double, kCols> x{};
    for (int col = kCols - 1; col >= 0; --col) {
        double s = y[col];
        for (int j = col + 1; j < kCols; ++j)
            s -= A[col][j] * x[j];
        x[col] = s / rdiag[col];
    }

    ExpansionFit fit{x[0], x[1], x[2], x[3], 0.0};
    double ss = 0.0;
    for (int i = 0; i < rows; ++i) {
        const double r = fit.evaluate(values[i].first) - values[i].second;
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / rows);
    return fit;
}

} // namespace sqrtwell::spectrum
