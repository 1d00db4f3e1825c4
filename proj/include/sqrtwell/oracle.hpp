#ifndef SQRTWELL_ORACLE_HPP
#define SQRTWELL_ORACLE_HPP

#include "sqrtwell/model.hpp"

#include <array>
#include <utility>
#include <vector>

// Independent numerical eigensolver for the stationary Schrodinger equation
// with the full singular potential: two-sided shooting in the regularizing
// coordinate s = sqrt(x), with a series start at the origin and a WKB tail.

namespace sqrtwell::oracle {

struct OracleConfig {
    double x_min = 1e-6;
    double x_max = 0.0;       // <= 0: derived from the V1 length scale and n_max
    int grid_points = 20000;  // >= 1000 for acceptance runs
    double match_point = 0.0; // <= 0: derived (near the well region)

    /// Resolved copy with the derived defaults filled in for n_max levels.
    OracleConfig resolved(const model::PhysicalParams& p, int n_max) const;
};

/// Coefficients of the regular small-x series psi = x (1 + c3 sqrt(x) + c4 x + ...),
/// indexed by the power of sqrt(x); c[2] = 1 is the normalization.
std::array<double, 7> origin_series(const model::PhysicalParams& p, double E);

/// Log-derivative mismatch of the outward and inward shots at the match
/// point, normalized to [-1, 1]; zero exactly at eigenvalues.
double shoot_mismatch(const model::PhysicalParams& p, double E, const OracleConfig& cfg);

/// Assembled shooting solution on the s-grid, scaled continuous at the match
/// point (test and diagnostics surface; meaningful at eigen-energies).
std::vector<std::pair<double, double>> shoot_wavefunction(const model::PhysicalParams& p,
                                                          double E, const OracleConfig& cfg);

/// First n_max eigenvalues by scanning the mismatch for sign changes and
/// bisecting each to tol (relative on V0 - E). Node counts label the levels.
std::vector<model::EnergyLevel> eigenvalues_numeric(const model::PhysicalParams& p, int n_max,
                                                    const OracleConfig& cfg, double tol);

} // namespace sqrtwell::oracle

#endif
