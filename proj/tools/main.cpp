// sqrtwell: bound-state spectra, root curves and verification data for the
// singular well V0 + V1/sqrt(x) + (8 m V2^2/hbar^2)/x + V2/x^{3/2}.

#include "sqrtwell/errors.hpp"
#include "sqrtwell/model.hpp"
#include "sqrtwell/oracle.hpp"
#include "sqrtwell/spectrum.hpp"
#include "sqrtwell/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace sqrtwell;

constexpr int kExitVerifyFailure = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNumericalFailure = 3;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string method_tag(const model::Method& m) {
    switch (m.kind) {
    case model::Method::Kind::exact_root: return "exact";
    case model::Method::Kind::approx10: return "approx10";
    case model::Method::Kind::iteration: return "iter" + std::to_string(m.k);
    case model::Method::Kind::oracle_ode: return "oracle";
    }
    return "?";
}

// Output is assembled in memory and written in one shot; a failed run leaves
// no partial file behind.
void emit(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DomainError("cannot open output path: " + path);
    out << body;
}

struct PhysicsFlags {
    model::PhysicalParams params;

    void attach(CLI::App* cmd) {
        cmd->add_option("--mass", params.mass, "particle mass m");
        cmd->add_option("--hbar", params.hbar, "reduced Planck constant");
        cmd->add_option("--v0", params.v0, "asymptotic offset V0");
        cmd->add_option("--v1", params.v1, "inverse-square-root strength V1");
        cmd->add_option("--v2", params.v2, "x^{-3/2} strength V2 (slaves the 1/x term)");
    }

    std::string provenance() const {
        return "mass=" + num(params.mass) + " hbar=" + num(params.hbar) +
               " v0=" + num(params.v0) + " v1=" + num(params.v1) + " v2=" + num(params.v2);
    }
};

model::Method parse_method(const std::string& name) {
    if (name == "exact")
        return {model::Method::Kind::exact_root, 0};
    if (name == "approx10")
        return {model::Method::Kind::approx10, 0};
    if (name == "oracle")
        return {model::Method::Kind::oracle_ode, 0};
    if (name.rfind("iter", 0) == 0) {
        const std::string tail = name.substr(4);
        const int k = tail.empty() ? 3 : std::stoi(tail);
        if (k < 1)
            throw DomainError("iteration count must be >= 1");
        return {model::Method::Kind::iteration, k};
    }
    throw DomainError("unknown method '" + name + "' (exact|approx10|iterK|oracle)");
}

int run_spectrum(const PhysicsFlags& phys, int n_max, const std::string& method_name,
                 double tol, const std::string& output) {
    if (n_max < 1)
        throw DomainError("--n-max must be >= 1");
    const model::Method method = parse_method(method_name);
    phys.params.validate_bound();

    std::vector<model::EnergyLevel> levels;
    if (method.kind == model::Method::Kind::oracle_ode) {
        const auto cfg = oracle::OracleConfig{}.resolved(phys.params, n_max);
        levels = oracle::eigenvalues_numeric(phys.params, n_max, cfg, tol > 0 ? tol : 1e-9);
    } else {
        levels = spectrum::bound_states(phys.params, n_max, method, tol > 0 ? tol : 1e-12);
    }

    std::ostringstream os;
    os << "# sqrtwell spectrum " << phys.provenance() << " n_max=" << n_max
       << " method=" << method_name << " tol=" << num(tol) << "\n";
    os << "n,E,n_eff,method\n";
    for (const auto& lv : levels)
        os << lv.n << ',' << num(lv.energy) << ',' << num(lv.n_eff) << ','
           << method_tag(lv.method) << "\n";
    emit(output, os.str());
    return 0;
}

int run_curves(int branch, int n_max, double w_min, double w_max, double step,
               const std::string& output) {
    if (w_min > w_max)
        throw DomainError("--w-min must not exceed --w-max");
    if (!(step > 0.0))
        throw DomainError("--step must be positive");
    if (n_max < 1 || n_max > 16)
        throw DomainError("--n-max must be in 1..16");
    if (branch < 0 || branch > n_max)
        throw DomainError("--n must name one of the traced branches");

    std::ostringstream os;
    os << "# sqrtwell curves n=" << branch << " n_max=" << n_max << " w_min=" << num(w_min)
       << " w_max=" << num(w_max) << " step=" << num(step) << "\n";
    os << "n,w,v_exact,v_approx,rel_error\n";
    double worst = 0.0;
    const int lo = branch == 0 ? 1 : branch;
    const int hi = branch == 0 ? n_max : branch;
    for (int n = lo; n <= hi; ++n) {
        const auto curve = spectrum::trace_curve(n, w_min, w_max, step);
        for (const auto& s : curve) {
            os << s.n << ',' << num(s.w) << ',' << num(s.v_exact) << ',' << num(s.v_approx)
               << ',' << num(s.rel_error) << "\n";
            worst = std::max(worst, s.rel_error);
        }
    }
    os << "# max_rel_error = " << num(worst) << "\n";
    emit(output, os.str());
    return 0;
}

int run_potential(const PhysicsFlags& phys, std::vector<double> v2_list, double x_min,
                  double x_max, double x_step, const std::string& output) {
    if (!(x_min > 0.0))
        throw DomainError("--x-min must be positive (the potential lives on x > 0)");
    if (!(x_max > x_min))
        throw DomainError("--x-max must exceed --x-min");
    if (!(x_step > 0.0))
        throw DomainError("--x-step must be positive");
    if (v2_list.empty())
        v2_list.push_back(phys.params.v2);

    std::ostringstream os;
    os << "# sqrtwell potential " << phys.provenance() << " x_min=" << num(x_min)
       << " x_max=" << num(x_max) << " x_step=" << num(x_step) << "\n";
    os << "x,V\n";
    bool first = true;
    for (const double v2 : v2_list) {
        model::PhysicalParams p = phys.params;
        p.v2 = v2;
        if (!first)
            os << "\n";
        first = false;
        os << "# curve: v2=" << num(v2) << "\n";
        for (double x = x_min; x <= x_max + 1e-12 * x_max; x += x_step)
            os << num(x) << ',' << num(model::potential_value(p, x)) << "\n";
    }
    emit(output, os.str());
    return 0;
}

int run_iterations(const PhysicsFlags& phys, int n, double v2_min, double v2_max,
                   double step, int k_max, const std::string& output) {
    if (n < 1)
        throw DomainError("--n must be >= 1");
    if (k_max < 1)
        throw DomainError("--k must be >= 1");
    if (!(step > 0.0) || v2_min > v2_max)
        throw DomainError("invalid V2 sweep range");
    phys.params.validate_bound();

    std::ostringstream os;
    os << "# sqrtwell iterations " << phys.provenance() << " n=" << n << " v2_min="
       << num(v2_min) << " v2_max=" << num(v2_max) << " step=" << num(step)
       << " k=" << k_max << "\n";
    os << "V2,k,E_iter,E_exact,abs_diff\n";
    const int count = static_cast<int>(std::floor((v2_max - v2_min) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) {
        model::PhysicalParams p = phys.params;
        p.v2 = v2_min + i * step;
        const auto exact = spectrum::bound_states(p, n, {model::Method::Kind::exact_root, 0});
        const double e_ref = exact[n - 1].energy;
        spectrum::IterationTrace trace;
        try {
            trace = spectrum::neff_iterate(p, n, k_max, 0.0);
        } catch (const DivergenceError& e) {
            throw DivergenceError("V2 = " + num(p.v2) + ": " + e.what());
        }
        for (const auto& st : trace.steps) {
            if (st.k == 0)
                continue;
            os << num(p.v2) << ',' << st.k << ',' << num(st.energy) << ',' << num(e_ref)
               << ',' << num(std::abs(st.energy - e_ref)) << "\n";
        }
    }
    emit(output, os.str());
    return 0;
}

int run_surface(const PhysicsFlags& phys, int n_max, double v1_min, double v1_max,
                int v1_steps, double v2_min, double v2_max, int v2_steps,
                const std::string& output) {
    if (n_max < 1)
        throw DomainError("--n-max must be >= 1");
    if (!(v1_max < 0.0) || v1_min > v1_max)
        throw DomainError("V1 range must stay negative for bound states");
    if (v1_steps < 2 || v2_steps < 2)
        throw DomainError("surface needs at least 2 steps per axis");

    std::ostringstream os;
    os << "# sqrtwell surface mass=" << num(phys.params.mass) << " hbar="
       << num(phys.params.hbar) << " v0=" << num(phys.params.v0) << " n_max=" << n_max
       << " v1=[" << num(v1_min) << ',' << num(v1_max) << "]x" << v1_steps << " v2=["
       << num(v2_min) << ',' << num(v2_max) << "]x" << v2_steps << "\n";
    os << "v1,v2,n,E\n";
    for (int i = 0; i < v1_steps; ++i) {
        const double v1 = v1_min + (v1_max - v1_min) * i / (v1_steps - 1);
        for (int j = 0; j < v2_steps; ++j) {
            const double v2 = v2_min + (v2_max - v2_min) * j / (v2_steps - 1);
            model::PhysicalParams p = phys.params;
            p.v1 = v1;
            p.v2 = v2;
            const auto levels =
                spectrum::bound_states(p, n_max, {model::Method::Kind::exact_root, 0});
            for (const auto& lv : levels)
                os << num(v1) << ',' << num(v2) << ',' << lv.n << ',' << num(lv.energy)
                   << "\n";
        }
    }
    emit(output, os.str());
    return 0;
}

int run_verify(const std::vector<int>& criteria, double tol_scale, bool as_json,
               const std::string& output) {
    verify::RunOptions opt;
    opt.only = criteria;
    opt.tol_scale = tol_scale;
    const auto results = verify::run(opt);
    bool all = true;
    for (const auto& r : results)
        all = all && r.passed;

    std::ostringstream os;
    if (as_json) {
        nlohmann::json doc;
        doc["all_pass"] = all;
        doc["criteria"] = nlohmann::json::array();
        for (const auto& r : results)
            doc["criteria"].push_back(
                {{"id", r.id}, {"name", r.name}, {"pass", r.passed}, {"detail", r.detail}});
        os << doc.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            char line[512];
            std::snprintf(line, sizeof(line), "[%s] %2d %-36s %s\n",
                          r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
            os << line;
        }
        os << (all ? "OK" : "FAILED") << ": " << results.size() << " criteria\n";
    }
    emit(output, os.str());
    return all ? 0 : kExitVerifyFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectrum solver for the conditionally solvable singular well"};
    app.require_subcommand(1);

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "bound-state energies E_1..E_n");
    PhysicsFlags sp_phys;
    sp_phys.params.v1 = -1.0;
    sp_phys.attach(sp);
    int sp_nmax = 3;
    std::string sp_method = "exact";
    double sp_tol = 0.0;
    std::string sp_out = "-";
    sp->add_option("--n-max", sp_nmax, "number of levels");
    sp->add_option("--method", sp_method, "exact|approx10|iterK|oracle");
    sp->add_option("--tol", sp_tol, "solver tolerance");
    sp->add_option("--output", sp_out, "output path (- for stdout)");

    // curves
    auto* cu = app.add_subcommand("curves", "root curves v(w) with the closed-form seed");
    int cu_n = 0, cu_nmax = 8;
    double cu_wmin = -3.0, cu_wmax = 3.0, cu_step = 0.25;
    std::string cu_out = "-", cu_preset;
    cu->add_option("--n", cu_n, "single branch (0 = all)");
    cu->add_option("--n-max", cu_nmax, "highest branch when tracing all");
    cu->add_option("--w-min", cu_wmin, "sweep start");
    cu->add_option("--w-max", cu_wmax, "sweep end");
    cu->add_option("--step", cu_step, "sweep step");
    cu->add_option("--output", cu_out, "output path");
    cu->add_option("--preset", cu_preset, "fig2");

    // potential
    auto* po = app.add_subcommand("potential", "potential profiles V(x)");
    PhysicsFlags po_phys;
    po_phys.params.v1 = -10.0;
    po_phys.attach(po);
    std::vector<double> po_v2;
    double po_xmin = 0.05, po_xmax = 8.0, po_xstep = 0.01;
    std::string po_out = "-", po_preset;
    po->add_option("--curve-v2", po_v2, "V2 value per curve block (repeatable)");
    po->add_option("--x-min", po_xmin, "grid start (> 0)");
    po->add_option("--x-max", po_xmax, "grid end");
    po->add_option("--x-step", po_xstep, "grid step");
    po->add_option("--output", po_out, "output path");
    po->add_option("--preset", po_preset, "fig1a|fig1b");

    // iterations
    auto* it = app.add_subcommand("iterations", "successive approximations against the exact root");
    PhysicsFlags it_phys;
    it_phys.params.v1 = -2.0;
    it_phys.attach(it);
    int it_n = 2, it_k = 3;
    double it_v2min = -1.0, it_v2max = 1.0, it_step = 0.1;
    std::string it_out = "-", it_preset;
    it->add_option("--n", it_n, "level index");
    it->add_option("--k", it_k, "iterations per V2");
    it->add_option("--v2-min", it_v2min, "sweep start");
    it->add_option("--v2-max", it_v2max, "sweep end");
    it->add_option("--step", it_step, "sweep step");
    it->add_option("--output", it_out, "output path");
    it->add_option("--preset", it_preset, "fig3");

    // surface
    auto* su = app.add_subcommand("surface", "E_n over the (V1, V2) plane");
    PhysicsFlags su_phys;
    su_phys.attach(su);
    int su_nmax = 2, su_v1steps = 20, su_v2steps = 21;
    double su_v1min = -10.0, su_v1max = -0.5, su_v2min = -1.0, su_v2max = 1.0;
    std::string su_out = "-", su_preset;
    su->add_option("--n-max", su_nmax, "levels per grid point");
    su->add_option("--v1-min", su_v1min, "V1 start");
    su->add_option("--v1-max", su_v1max, "V1 end");
    su->add_option("--v1-steps", su_v1steps, "V1 resolution");
    su->add_option("--v2-min", su_v2min, "V2 start");
    su->add_option("--v2-max", su_v2max, "V2 end");
    su->add_option("--v2-steps", su_v2steps, "V2 resolution");
    su->add_option("--output", su_out, "output path");
    su->add_option("--preset", su_preset, "fig4");

    // verify
    auto* ve = app.add_subcommand("verify", "run the acceptance criteria");
    std::vector<int> ve_criteria;
    double ve_tol_scale = 1.0;
    bool ve_json = false;
    std::string ve_out = "-";
    ve->add_option("--criteria", ve_criteria, "criterion ids (default: all)");
    ve->add_option("--tol-scale", ve_tol_scale, "tolerance multiplier (diagnostics)");
    ve->add_flag("--json", ve_json, "machine-readable report");
    ve->add_option("--output", ve_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidInput;
    }

    try {
        if (*sp)
            return run_spectrum(sp_phys, sp_nmax, sp_method, sp_tol, sp_out);
        if (*cu) {
            if (cu_preset == "fig2") {
                cu_n = 0;
                cu_nmax = 8;
                cu_wmin = -3.0;
                cu_wmax = 3.0;
                cu_step = 0.25;
            } else if (!cu_preset.empty()) {
                throw DomainError("unknown curves preset: " + cu_preset);
            }
            return run_curves(cu_n, cu_nmax, cu_wmin, cu_wmax, cu_step, cu_out);
        }
        if (*po) {
            if (po_preset == "fig1a") {
                po_phys.params.v1 = -10.0;
                po_v2 = {0.0, 0.3, 0.5, 1.0};
            } else if (po_preset == "fig1b") {
                po_phys.params.v1 = -10.0;
                po_v2 = {0.0, -0.7, -0.85, -1.0};
            } else if (!po_preset.empty()) {
                throw DomainError("unknown potential preset: " + po_preset);
            }
            return run_potential(po_phys, po_v2, po_xmin, po_xmax, po_xstep, po_out);
        }
        if (*it) {
            if (it_preset == "fig3") {
                it_phys.params.v1 = -2.0;
                it_n = 2;
                it_v2min = -1.0;
                it_v2max = 1.0;
                it_step = 0.1;
                it_k = 3;
            } else if (!it_preset.empty()) {
                throw DomainError("unknown iterations preset: " + it_preset);
            }
            return run_iterations(it_phys, it_n, it_v2min, it_v2max, it_step, it_k, it_out);
        }
        if (*su) {
            if (su_preset == "fig4") {
                su_nmax = 2;
                su_v1min = -10.0;
                su_v1max = -0.5;
                su_v2min = -1.0;
                su_v2max = 1.0;
            } else if (!su_preset.empty()) {
                throw DomainError("unknown surface preset: " + su_preset);
            }
            return run_surface(su_phys, su_nmax, su_v1min, su_v1max, su_v1steps, su_v2min,
                               su_v2max, su_v2steps, su_out);
        }
        if (*ve)
            return run_verify(ve_criteria, ve_tol_scale, ve_json, ve_out);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericalFailure;
    }
    return 0;
}
