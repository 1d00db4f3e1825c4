#ifndef SQRTWELL_MODEL_HPP
#define SQRTWELL_MODEL_HPP

// Physical data model for the potential
//   V(x) = V0 + V1/sqrt(x) + (8 m V2^2/hbar^2)/x + V2/x^{3/2},  x > 0,
// whose 1/x strength is slaved to V2 (the conditional coupling), together
// with the parameter maps between energy and the dimensionless plane.

namespace sqrtwell::model {

/// The five physical inputs. Units are free; all routines carry m and hbar
/// explicitly, so m = hbar = 1 is a configuration, not an assumption.
struct PhysicalParams {
    double mass = 1.0;
    double hbar = 1.0;
    double v0 = 0.0;
    double v1 = 0.0; // energy * length^{1/2}
    double v2 = 0.0; // energy * length^{3/2}

    /// Throws DomainError unless mass > 0 and hbar > 0.
    void validate() const;
    /// Additionally requires v1 < 0 (bound states need an attractive tail).
    void validate_bound() const;
};

/// Derived quantities at one energy: delta carries the energy, gamma the V2
/// coupling, alpha the V1 coupling, and a the resulting Hermite order shift.
struct SpectralParams {
    double alpha = 0.0;
    double gamma = 0.0;
    double delta = 0.0; // > 0, requires E < V0
    double a = 0.0;     // alpha (alpha - gamma delta) / delta^3 - 1
};

/// Dimensionless pair where the root curves live. On a physical root curve
/// v < -|w| and, with V1 < 0, v < 0.
struct AuxPoint {
    double w = 0.0;
    double v = 0.0;
};

/// Provenance of one computed energy level.
struct Method {
    enum class Kind {
        exact_root, // root of the exact spectrum condition
        approx10,   // closed-form curve approximation intersected with the cubic
        iteration,  // fixed-point iteration on the effective quantum number
        oracle_ode, // direct numerical eigensolve
    };
    Kind kind = Kind::exact_root;
    int k = 0; // iteration count when kind == iteration

    bool operator==(const Method&) const = default;
};

/// One bound state.
struct EnergyLevel {
    int n = 0;           // level index, 1-based
    double energy = 0.0; // < v0
    double n_eff = 0.0;  // effective quantum number, v^2 at the root
    Method method{};
};

/// V(x); throws DomainError for x <= 0.
double potential_value(const PhysicalParams& p, double x);

/// Parameter map at energy E < V0:
///   delta = sqrt(8 m (V0 - E))/hbar, gamma = 8 sqrt(2) m V2/hbar^2,
///   alpha = gamma delta/2 - 2 sqrt(2) m V1/hbar^2, a = alpha(alpha-gamma delta)/delta^3 - 1.
SpectralParams spectral_from_energy(const PhysicalParams& p, double E);

/// v = 2 sqrt(2) m V1/(delta^{3/2} hbar^2), w = 4 sqrt(2) m V2/(delta^{1/2} hbar^2).
AuxPoint aux_from_spectral(const PhysicalParams& p, const SpectralParams& s);

/// Same map parametrized directly by delta > 0.
AuxPoint aux_from_delta(const PhysicalParams& p, double delta);

/// The physical locus in the (w, v) plane: v = (hbar^4 V1 / (64 m^2 V2^3)) w^3.
/// Throws DegenerateError when V2 = 0 (the cubic collapses onto w = 0).
double cubic_constraint_v(const PhysicalParams& p, double w);

/// E = V0 - (1/2) (m V1^4/hbar^2)^{1/3} n_eff^{-2/3}.
double energy_from_neff(const PhysicalParams& p, double n_eff);

/// delta = (8 m^2 V1^2 / (hbar^4 n_eff))^{1/3}.
double delta_from_neff(const PhysicalParams& p, double n_eff);

/// E = V0 - hbar^2 delta^2 / (8 m).
double energy_from_delta(const PhysicalParams& p, double delta);

/// delta at energy E < V0.
double delta_from_energy(const PhysicalParams& p, double E);

} // namespace sqrtwell::model

#endif
