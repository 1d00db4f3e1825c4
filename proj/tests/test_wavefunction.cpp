#include "doctest.h"

#include "sqrtwell/errors.hpp"
#include "sqrtwell/model.hpp"
#include "sqrtwell/oracle.hpp"
#include "sqrtwell/spectrum.hpp"
#include "sqrtwell/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace sqrtwell;
using model::PhysicalParams;

namespace {
const PhysicalParams kP{1.0, 1.0, 0.0, -2.0, 0.5};

double ground_energy() {
    static const double e =
        spectrum::bound_states(kP, 1, {model::Method::Kind::exact_root, 0})[0].energy;
    return e;
}
} // namespace

TEST_CASE("form_selfcheck: unique cached variant") {
    const auto form = wavefunction::form_selfcheck(kP, -1.0);
    CHECK(form.validated);
    CHECK(form.c1 == 1.0);
    CHECK(form.c2 == 0.0);
    const auto again = wavefunction::form_selfcheck(kP, -0.6);
    CHECK(again.variant_id == form.variant_id); // deterministic cache
}

TEST_CASE("residual: validated form sits at the finite-difference floor") {
    const auto form = wavefunction::form_selfcheck(kP, -1.0);
    for (double x : {0.5, 1.1, 2.3})
        CHECK(wavefunction::residual(kP, -0.9, form, x, 1e-3) <= 1e-6);
}

TEST_CASE("residual: corrupted exponent sign is loudly wrong") {
    const auto form = wavefunction::form_selfcheck(kP, -1.0);
    wavefunction::SolutionForm corrupted = form;
    corrupted.variant_id = form.variant_id ^ 4; // flip the prefactor sign bit
    CHECK(wavefunction::residual(kP, -0.9, corrupted, 1.0, 1e-3) >= 1e-2);
}

TEST_CASE("residual: fourth-order step convergence") {
    const auto form = wavefunction::form_selfcheck(kP, -1.0);
    const double coarse = wavefunction::residual(kP, -0.9, form, 1.5, 0.02);
    const double fine = wavefunction::residual(kP, -0.9, form, 1.5, 0.01);
    CHECK(coarse / fine >= 8.0);
    CHECK(coarse / fine <= 24.0);
}

TEST_CASE("psi: linear in the coefficients") {
    const auto form = wavefunction::form_selfcheck(kP, -1.0);
    wavefunction::SolutionForm doubled = form;
    doubled.c1 = 2.0;
    for (double x : {0.3, 1.0, 4.2})
        CHECK(wavefunction::psi(kP, -0.9, doubled, x) ==
              doctest::Approx(2.0 * wavefunction::psi(kP, -0.9, form, x)).epsilon(1e-14));
    CHECK_THROWS_AS(wavefunction::psi(kP, -0.9, {99, 1.0, 0.0, true}, 1.0), FormError);
}

TEST_CASE("psi: boundary behavior separates eigen from non-eigen energies") {
    const auto form = wavefunction::form_selfcheck(kP, -1.0);
    const double e1 = ground_energy();

    auto origin_ratio = [&](double E) {
        double peak = 0.0;
        for (double x = 0.05; x <= 8.0; x += 0.05)
            peak = std::max(peak, std::abs(wavefunction::psi(kP, E, form, x)));
        return std::abs(wavefunction::psi(kP, E, form, 0.01)) / peak;
    };

    CHECK(origin_ratio(e1) <= 0.05);
    CHECK(origin_ratio(0.75 * e1) > 0.05); // between the ground and first excited level
}

TEST_CASE("node_count: ladder of interior nodes") {
    const auto form = wavefunction::form_selfcheck(kP, -1.0);
    const auto levels = spectrum::bound_states(kP, 3, {model::Method::Kind::exact_root, 0});
    CHECK(wavefunction::node_count(kP, levels[0].energy, form, 12.0, 400) == 0);
    CHECK(wavefunction::node_count(kP, levels[2].energy, form, 50.0, 900) == 2);
    // a window too small to contain all nodes undercounts, by contract
    CHECK(wavefunction::node_count(kP, levels[2].energy, form, 1.0, 400) <= 2);
}

TEST_CASE("psi: pointwise agreement with the ODE-oracle eigenfunction") {
    const auto form = wavefunction::form_selfcheck(kP, -1.0);
    const double e1 = ground_energy();
    const auto cfg = oracle::OracleConfig{}.resolved(kP, 1);
    const auto numeric = oracle::shoot_wavefunction(kP, e1, cfg);

    std::vector<std::pair<double, double>> pairs; // (oracle value, analytic value)
    for (const auto& [s, y] : numeric) {
        const double x = s * s;
        if (x < 0.5 || x > 6.0)
            continue;
        pairs.push_back({y, wavefunction::psi(kP, e1, form, x)});
    }
    REQUIRE(pairs.size() > 100);

    double num_peak = 0.0, ana_peak = 0.0, dot = 0.0;
    for (const auto& [y, f] : pairs) {
        num_peak = std::max(num_peak, std::abs(y));
        ana_peak = std::max(ana_peak, std::abs(f));
        dot += y * f;
    }
    const double sign = dot >= 0.0 ? 1.0 : -1.0;
    double worst = 0.0;
    for (const auto& [y, f] : pairs)
        worst = std::max(worst, std::abs(y / num_peak - sign * f / ana_peak));
    CHECK(worst <= 1e-4);
}
