#include "sqrtwell/model.hpp"
#include "sqrtwell/errors.hpp"

#include <cmath>
#include <string>

namespace sqrtwell::model {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
}

void PhysicalParams::validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw DomainError("PhysicalParams: mass must be positive");
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw DomainError("PhysicalParams: hbar must be positive");
    if (!std::isfinite(v0) || !std::isfinite(v1) || !std::isfinite(v2))
        throw DomainError("PhysicalParams: potential strengths must be finite");
}

void PhysicalParams::validate_bound() const {
    validate();
    if (!(v1 < 0.0))
        throw DomainError("bound states require V1 < 0");
}

double potential_value(const PhysicalParams& p, double x) {
    p.validate();
    if (!(x > 0.0))
        throw DomainError("potential_value: x must be positive");
    const double sx = std::sqrt(x);
    return p.v0 + p.v1 / sx + (8.0 * p.mass * p.v2 * p.v2 / (p.hbar * p.hbar)) / x +
           p.v2 / (x * sx);
}

SpectralParams spectral_from_energy(const PhysicalParams& p, double E) {
    p.validate();
    if (!(E < p.v0))
        throw DomainError("spectral_from_energy: requires E < V0");
    SpectralParams s;
    const double h2 = p.hbar * p.hbar;
    s.delta = std::sqrt(8.0 * p.mass * (p.v0 - E)) / p.hbar;
    s.gamma = 8.0 * kSqrt2 * p.mass * p.v2 / h2;
    s.alpha = s.gamma * s.delta / 2.0 - 2.0 * kSqrt2 * p.mass * p.v1 / h2;
    s.a = s.alpha * (s.alpha - s.gamma * s.delta) / (s.delta * s.delta * s.delta) - 1.0;
    return s;
}

AuxPoint aux_from_spectral(const PhysicalParams& p, const SpectralParams& s) {
    return aux_from_delta(p, s.delta);
}

AuxPoint aux_from_delta(const PhysicalParams& p, double delta) {
    p.validate();
    if (!(delta > 0.0))
        throw DomainError("aux_from_delta: requires delta > 0");
    const double h2 = p.hbar * p.hbar;
    const double sd = std::sqrt(delta);
    AuxPoint a;
    a.v = 2.0 * kSqrt2 * p.mass * p.v1 / (delta * sd * h2);
    a.w = 4.0 * kSqrt2 * p.mass * p.v2 / (sd * h2);
    return a;
}

double cubic_constraint_v(const PhysicalParams& p, double w) {
    p.validate();
    if (p.v2 == 0.0)
        throw DegenerateError("cubic_constraint_v: V2 = 0 collapses the cubic onto w = 0");
    const double h4 = p.hbar * p.hbar * p.hbar * p.hbar;
    return h4 * p.v1 / (64.0 * p.mass * p.mass * p.v2 * p.v2 * p.v2) * w * w * w;
}

double energy_from_neff(const PhysicalParams& p, double n_eff) {
    p.validate();
    if (p.v1 == 0.0)
        throw DomainError("energy_from_neff: requires V1 != 0");
    if (!(n_eff > 0.0))
        throw DomainError("energy_from_neff: requires n_eff > 0");
    const double scale = std::cbrt(p.mass * p.v1 * p.v1 * p.v1 * p.v1 / (p.hbar * p.hbar));
    return p.v0 - 0.5 * scale / std::cbrt(n_eff * n_eff);
}

double delta_from_neff(const PhysicalParams& p, double n_eff) {
    p.validate();
    if (p.v1 == 0.0)
        throw DomainError("delta_from_neff: requires V1 != 0");
    if (!(n_eff > 0.0))
        throw DomainError("delta_from_neff: requires n_eff > 0");
    const double h4 = p.hbar * p.hbar * p.hbar * p.hbar;
    return std::cbrt(8.0 * p.mass * p.mass * p.v1 * p.v1 / (h4 * n_eff));
}

double energy_from_delta(const PhysicalParams& p, double delta) {
    p.validate();
    if (!(delta > 0.0))
        throw DomainError("energy_from_delta: requires delta > 0");
    return p.v0 - p.hbar * p.hbar * delta * delta / (8.0 * p.mass);
}

double delta_from_energy(const PhysicalParams& p, double E) {
    return spectral_from_energy(p, E).delta;
}

} // namespace sqrtwell::model
