#include "sqrtwell/oracle.hpp"
#include "sqrtwell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sqrtwell::oracle {

namespace {

// In s = sqrt(x) the equation reads  psi_ss - psi_s/s + g(s) psi = 0  with
// g(s) = 4 s^2 (2m/hbar^2)(E - V(s^2)). The transform tames the x^{-3/2}
// singularity: V contributes only 1/s-scale terms to g.
struct Rhs {
    double two_m_h2; // 2m/hbar^2
    double v0, v1, v2, c2; // c2 = 8 m V2^2 / hbar^2
    double energy;

    double g(double s) const {
        const double vx = v0 + v1 / s + c2 / (s * s) + v2 / (s * s * s);
        return 4.0 * s * s * two_m_h2 * (energy - vx);
    }
};

struct State {
    double y;  // psi
    double dy; // d psi / d s
};

State rk4_step(const Rhs& f, double s, State u, double h) {
    auto deriv = [&](double si, State v) -> State {
        return {v.dy, v.dy / si - f.g(si) * v.y};
    };
    const State k1 = deriv(s, u);
    const State k2 = deriv(s + 0.5 * h, {u.y + 0.5 * h * k1.y, u.dy + 0.5 * h * k1.dy});
    const State k3 = deriv(s + 0.5 * h, {u.y + 0.5 * h * k2.y, u.dy + 0.5 * h * k2.dy});
    const State k4 = deriv(s + h, {u.y + h * k3.y, u.dy + h * k3.dy});
    return {u.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
            u.dy + h / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy)};
}

Rhs make_rhs(const model::PhysicalParams& p, double E) {
    const double h2 = p.hbar * p.hbar;
    return {2.0 * p.mass / h2, p.v0, p.v1, p.v2, 8.0 * p.mass * p.v2 * p.v2 / h2, E};
}

// Renormalize when the amplitude grows; only log-derivatives matter.
void rescale(State& u, double& scale_log) {
    const double m = std::max(std::abs(u.y), std::abs(u.dy));
    if (m > 1e100) {
        u.y /= m;
        u.dy /= m;
        scale_log += std::log(m);
    }
}

struct Shot {
    State at_match;
    int nodes;
    std::vector<std::pair<double, double>> trace; // (s, psi), filled on request
};

Shot integrate_out(const model::PhysicalParams& p, double E, const OracleConfig& cfg,
                   double s_match, bool keep_trace) {
    const Rhs f = make_rhs(p, E);
    const auto c = origin_series(p, E);
    const double s0 = std::sqrt(cfg.x_min);

    State u{0.0, 0.0};
    for (int j = 2; j < 7; ++j) {
        u.y += c[j] * std::pow(s0, j);
        u.dy += j * c[j] * std::pow(s0, j - 1);
    }

    const double ds = (std::sqrt(cfg.x_max) - s0) / cfg.grid_points;
    const double s_fine = std::min(0.05, s_match); // halved steps near the singular end
    Shot shot{u, 0, {}};
    double s = s0;
    double prev_sign = 0.0;
    double dummy = 0.0;
    while (s < s_match - 1e-15) {
        const double h = std::min(s < s_fine ? ds / 8.0 : ds, s_match - s);
        u = rk4_step(f, s, u, h);
        s += h;
        if (!std::isfinite(u.y) || !std::isfinite(u.dy))
            throw StiffnessError("outward integration lost at s = " + std::to_string(s));
        rescale(u, dummy);
        if (u.y != 0.0) {
            const double sign = u.y > 0.0 ? 1.0 : -1.0;
            if (prev_sign != 0.0 && sign != prev_sign)
                ++shot.nodes;
            prev_sign = sign;
        }
        if (keep_trace)
            shot.trace.push_back({s, u.y});
    }
    shot.at_match = u;
    return shot;
}

Shot integrate_in(const model::PhysicalParams& p, double E, const OracleConfig& cfg,
                  double s_match, bool keep_trace) {
    const Rhs f = make_rhs(p, E);
    const double s_max = std::sqrt(cfg.x_max);
    const double delta = model::delta_from_energy(p, E);

    // WKB-consistent decaying tail psi ~ exp(-delta x/2 - (4 m V1/(hbar^2 delta)) sqrt(x)).
    const double lin = 4.0 * p.mass * p.v1 / (p.hbar * p.hbar * delta);
    State u{1.0, -(delta * s_max + lin)};

    const double ds = (s_max - std::sqrt(cfg.x_min)) / cfg.grid_points;
    Shot shot{u, 0, {}};
    double s = s_max;
    double prev_sign = 0.0;
    double dummy = 0.0;
    while (s > s_match + 1e-15) {
        const double h = std::min(ds, s - s_match);
        u = rk4_step(f, s, u, -h);
        s -= h;
        if (!std::isfinite(u.y) || !std::isfinite(u.dy))
            throw StiffnessError("inward integration lost at s = " + std::to_string(s));
        rescale(u, dummy);
        if (u.y != 0.0) {
            const double sign = u.y > 0.0 ? 1.0 : -1.0;
            if (prev_sign != 0.0 && sign != prev_sign)
                ++shot.nodes;
            prev_sign = sign;
        }
        if (keep_trace)
            shot.trace.push_back({s, u.y});
    }
    shot.at_match = u;
    return shot;
}

void check_config(const OracleConfig& cfg) {
    if (!(cfg.x_min > 0.0) || !(cfg.x_max > cfg.x_min))
        throw DomainError("oracle: requires 0 < x_min < x_max");
    if (!(cfg.match_point > cfg.x_min) || !(cfg.match_point < cfg.x_max))
        throw DomainError("oracle: requires x_min < match_point < x_max");
    if (cfg.grid_points < 100)
        throw DomainError("oracle: grid_points too small");
}

} // namespace

OracleConfig OracleConfig::resolved(const model::PhysicalParams& p, int n_max) const {
    p.validate_bound();
    OracleConfig r = *this;
    const double ell = std::cbrt(p.hbar * p.hbar / (p.mass * std::abs(p.v1)));
    const double len = ell * ell; // (hbar^2/(m|V1|))^{2/3}
    if (r.x_max <= 0.0)
        r.x_max = 40.0 * len * std::max(1.0, std::pow((n_max + 2.0) / 3.0, 4.0 / 3.0));
    if (r.match_point <= 0.0)
        r.match_point = 1.7 * len;
    return r;
}

std::array<double, 7> origin_series(const model::PhysicalParams& p, double E) {
    // psi = sum_{j>=2} c_j t^j, t = sqrt(x), from the Frobenius balance of
    // psi'' = [A + B/t + C/t^2 + D/t^3] psi with
    // A = (2m/hbar^2)(V0 - E), B = (2m/hbar^2)V1, C = 16 m^2 V2^2/hbar^4,
    // D = (2m/hbar^2)V2; coefficient recursion (j(j-2)/4) c_j = ...
    const double q = 2.0 * p.mass / (p.hbar * p.hbar);
    const double A = q * (p.v0 - E);
    const double B = q * p.v1;
    const double C = q * 8.0 * p.mass * p.v2 * p.v2 / (p.hbar * p.hbar);
    const double D = q * p.v2;
    std::array<double, 7> c{};
    c[2] = 1.0;
    c[3] = 4.0 * D / 3.0;                          // balances the x^{-3/2} term
    c[4] = (C * c[2] + D * c[3]) / 2.0;
    c[5] = (B * c[2] + C * c[3] + D * c[4]) * 4.0 / 15.0;
    c[6] = (A * c[2] + B * c[3] + C * c[4] + D * c[5]) / 6.0;
    return c;
}

double shoot_mismatch(const model::PhysicalParams& p, double E, const OracleConfig& cfg) {
    p.validate();
    check_config(cfg);
    if (!(E < p.v0))
        throw DomainError("shoot_mismatch: requires E < V0");
    const double s_match = std::sqrt(cfg.match_point);
    const State a = integrate_out(p, E, cfg, s_match, false).at_match;
    const State b = integrate_in(p, E, cfg, s_match, false).at_match;
    // Wronskian of the two shots, normalized so the result is smooth through
    // nodes of either solution and bounded by 1.
    const double wron = a.dy * b.y - b.dy * a.y;
    const double norm = std::sqrt((a.y * a.y + a.dy * a.dy) * (b.y * b.y + b.dy * b.dy));
    return wron / norm;
}

std::vector<std::pair<double, double>> shoot_wavefunction(const model::PhysicalParams& p,
                                                          double E, const OracleConfig& cfg) {
    p.validate();
    check_config(cfg);
    const double s_match = std::sqrt(cfg.match_point);
    Shot out = integrate_out(p, E, cfg, s_match, true);
    Shot in = integrate_in(p, E, cfg, s_match, true);
    const double scale = (in.at_match.y != 0.0 && out.at_match.y != 0.0)
                             ? out.at_match.y / in.at_match.y
                             : 1.0;
    std::vector<std::pair<double, double>> joined = std::move(out.trace);
    for (auto it = in.trace.rbegin(); it != in.trace.rend(); ++it)
        joined.push_back({it->first, scale * it->second});
    return joined;
}

std::vector<model::EnergyLevel> eigenvalues_numeric(const model::PhysicalParams& p, int n_max,
                                                    const OracleConfig& cfg_in, double tol) {
    p.validate_bound();
    if (n_max < 1)
        throw DomainError("eigenvalues_numeric: requires n_max >= 1");
    const OracleConfig cfg = cfg_in.resolved(p, n_max);

    // Scan window: the explicit spectrum scale of the V2 = 0 reduction with a
    // wide safety factor below the ground level.
    const double depth = p.v0 - model::energy_from_neff(p, 0.25);
    const double e_lo = p.v0 - 4.0 * depth;
    const double e_hi = p.v0 - 1e-6 * depth;

    const int scan = std::max(160, 130 * n_max);
    std::vector<model::EnergyLevel> found;
    double prev_e = e_lo;
    double prev_f = shoot_mismatch(p, prev_e, cfg);
    for (int i = 1; i <= scan && static_cast<int>(found.size()) < n_max; ++i) {
        const double e = e_lo + (e_hi - e_lo) * i / scan;
        const double f = shoot_mismatch(p, e, cfg);
        if ((f < 0.0) != (prev_f < 0.0)) {
            double lo = prev_e, hi = e, flo = prev_f;
            while (hi - lo > tol * (p.v0 - lo)) {
                const double mid = 0.5 * (lo + hi);
                const double fm = shoot_mismatch(p, mid, cfg);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            const double e_root = 0.5 * (lo + hi);
            const double s_match = std::sqrt(cfg.match_point);
            const int nodes = integrate_out(p, e_root, cfg, s_match, false).nodes +
                              integrate_in(p, e_root, cfg, s_match, false).nodes;
            const double n_eff =
                std::pow(std::abs(model::aux_from_delta(p, model::delta_from_energy(p, e_root)).v), 2.0);
            found.push_back({nodes + 1, e_root, n_eff, {model::Method::Kind::oracle_ode, 0}});
        }
        prev_e = e;
        prev_f = f;
    }

    if (static_cast<int>(found.size()) < n_max)
        throw IncompleteSpectrumError("found " + std::to_string(found.size()) + " of " +
                                      std::to_string(n_max) + " requested states below V0");
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.energy < b.energy; });
    found.resize(n_max);
    for (int i = 0; i < n_max; ++i)
        if (found[i].n != i + 1)
            throw IncompleteSpectrumError("node count " + std::to_string(found[i].n - 1) +
                                          " does not match level " + std::to_string(i + 1) +
                                          "; a state was likely missed in the scan");
    return found;
}

} // namespace sqrtwell::oracle
