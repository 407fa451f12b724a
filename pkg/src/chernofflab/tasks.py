"""Task implementations behind the command line.

Each task takes the validated parameter dict and returns a :class:`TaskOutput`
holding a JSON-ready result block, tables and plot data.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import compact_jacobi as cj
from . import noncompact as nc
from . import sphere_projective as sp
from .chernoff import chernoff_verdict
from .specfun import (
    gauss_jacobi_rule,
    gegenbauer,
    gegenbauer_jacobi_factor,
    jacobi_table,
    log_gamma,
)
from .synthetic import compact_input, harmonic_input, noncompact_input


@dataclass
class Table:
    name: str
    header: list
    rows: list


@dataclass
class PlotData:
    """A two-column series; rendered to <name>.csv and <name>.png."""

    name: str
    x: np.ndarray
    y: np.ndarray
    xlabel: str
    ylabel: str
    logx: bool = False
    logy: bool = False


@dataclass
class TaskOutput:
    results: dict
    tables: list = field(default_factory=list)
    plots: list = field(default_factory=list)
    ok: bool = True


def _check(name, value, tol):
    return {"name": name, "value": float(value), "tol": tol, "pass": bool(value < tol)}


def specfun_check(p, io):
    a, b, nmax, order = p["alpha"], p["beta"], p["nmax"], p["order"]
    checks = []
    z = np.array([0.3 + 0.2j, 2.5 - 4j, -3.7 + 0.5j, 12 + 30j, 0.7])
    checks.append(_check("log_gamma recurrence", np.max(np.abs(
        log_gamma(z + 1) - log_gamma(z) - np.log(z))), 1e-12))
    # duplication: Gamma(z) Gamma(z+1/2) = 2^{1-2z} sqrt(pi) Gamma(2z)
    dup = log_gamma(z) + log_gamma(z + 0.5) - (1 - 2 * z) * np.log(2) - 0.5 * np.log(np.pi) - log_gamma(2 * z)
    checks.append(_check("log_gamma duplication", np.max(np.abs(np.exp(dup) - 1)), 1e-12))
    params = cj.CpJacobiParams(a, b)
    rule = cj.theta_rule(max(order, nmax + 1), a, b)
    tab = cj.trig_poly_table(nmax, params, rule.theta)
    gram = (tab * rule.weights_for(a, b)) @ tab.T
    checks.append(_check("trig Jacobi orthonormality", np.max(np.abs(gram - np.eye(nmax + 1))), 1e-12))
    lo = gauss_jacobi_rule(order, a, b)
    hi = gauss_jacobi_rule(order + 5, a, b)
    poly = np.polynomial.Polynomial(np.linspace(1, 2, 2 * order))
    checks.append(_check("Gauss-Jacobi exactness", abs(lo.integrate(poly(lo.nodes))
                                                     - hi.integrate(poly(hi.nodes))), 1e-11))
    t = np.linspace(-0.95, 0.95, 11)
    lam = a + 0.5
    worst = max(np.max(np.abs(gegenbauer(k, lam, t)
                              - gegenbauer_jacobi_factor(k, lam) * jacobi_table(k, a, a, t)[k]))
                for k in range(nmax + 1)) if lam != 0 else 0.0
    checks.append(_check("Gegenbauer-Jacobi relation", worst, 1e-10))
    ok = all(c["pass"] for c in checks)
    return TaskOutput({"checks": checks, "all_pass": ok}, [Table(
        "checks", ["name", "value", "tol", "pass"],
        [[c["name"], c["value"], c["tol"], c["pass"]] for c in checks])], ok=ok)


def _nc_params(p):
    return nc.NcJacobiParams(p["alpha"], p["beta"])


def nc_transform(p, io):
    params = _nc_params(p)
    width = p["width"]
    f = nc.RadialFunction.from_callable(lambda r: np.exp(-((r / width) ** 2)), params, p["R"])
    lam = np.linspace(0.0, p["lam_max"], p["n_lam"])
    G = nc.forward_transform(f, lam)
    vals = G.values.real
    return TaskOutput(
        {"norm_sq_radial": f.norm_sq(), "max_abs_spectrum": float(np.max(np.abs(vals)))},
        [Table("spectrum", ["lambda", "value"], list(zip(lam, vals)))],
        [PlotData("spectrum_plot", lam, vals, "lambda", "J f(lambda)")],
    )


def nc_invert(p, io):
    params = _nc_params(p)
    G = noncompact_input(p["kind"], params, lam_max=p["lam_max"], seed=p["seed"], lam0=p["lam0"])
    r = np.linspace(0.0, p["r_max"], p["n_r"])
    f = nc.inverse_transform(G, r)
    vals = f.values.real
    return TaskOutput(
        {"f_at_0": float(vals[0]), "spectral_norm_sq": G.norm_sq()},
        [Table("profile", ["r", "f"], list(zip(r, vals)))],
        [PlotData("profile_plot", r, vals, "r", "f(r)")],
    )


def nc_plancherel(p, io):
    params = _nc_params(p)
    width = p["width"]
    f = nc.RadialFunction.from_callable(lambda r: np.exp(-((r / width) ** 2)), params, p["R"])
    defect, lhs, rhs = nc.plancherel_defect(f, tol=p["tol"], return_parts=True)
    return TaskOutput({"defect": defect, "radial_norm_sq": lhs, "spectral_norm_sq": rhs,
                       "relative_defect": defect / lhs if lhs else 0.0})


def nc_cratio(p, io):
    params = _nc_params(p)
    delta = nc.KTypeIndex(p["p"], p["q"])
    lam = np.logspace(np.log10(p["lam_min"]), np.log10(p["lam_max"]), p["n_lam"])
    R = nc.c_ratio_stat(lam, params, delta)
    Rn = nc.c_ratio_stat(lam, params, delta, normalized=True)
    return TaskOutput(
        {"ratio_at_lam_max": float(R[-1]), "ratio_min": float(R.min()), "ratio_max": float(R.max()),
         "normalized_at_lam_max": float(Rn[-1]),
         "normalized_spread": float(np.max(np.abs(Rn - 1)))},
        [Table("cratio", ["lambda", "ratio", "normalized"], list(zip(lam, R, Rn)))],
        [PlotData("cratio_plot", lam, R, "lambda", "R(lambda)", logx=True)],
    )


def nc_step2(p, io):
    params = _nc_params(p)
    delta = nc.KTypeIndex(p["p"], p["q"])
    seeds = np.random.SeedSequence(p["seed"]).spawn(p["n_inputs"])
    c1 = nc.step2_constant(params, delta)
    rows = []
    for i, ss in enumerate(seeds):
        G = noncompact_input("band-limited-random", params, lam_max=p["lam_max"],
                             seed=int(ss.generate_state(1)[0]))
        for m in range(p["m_max"] + 1):
            res = nc.step2_inequality_check(G, delta, m, c1)
            rows.append([i, m, res.lhs, res.rhs, res.ratio])
    worst = max(r[4] for r in rows)
    return TaskOutput({"c1": c1, "max_ratio": worst, "holds": bool(worst <= 1 + 1e-10)},
                      [Table("step2", ["input", "m", "lhs", "rhs", "ratio"], rows)])


def _cp(p):
    params = cj.CpJacobiParams(p["alpha"], p["beta"])
    c = compact_input(p["kind"], params, N=p["N"], seed=p["seed"], n=p["n"])
    return params, c


def cp_coeffs(p, io):
    params, c = _cp(p)
    rule = cj.theta_rule(p["N"] + 1, params.alpha, params.beta)
    samples = cj.synthesize(c, rule.theta)
    back = cj.coefficients(samples, p["N"], params, rule)
    return TaskOutput(
        {"max_coeff_error": float(np.max(np.abs(back.values - c.values))),
         "plancherel_defect": cj.plancherel_defect(samples, p["N"], params, rule)},
        [Table("coefficients", ["n", "input", "recovered"],
               [[n, a, b] for n, (a, b) in enumerate(zip(c.values, back.values))])],
    )


def cp_synth(p, io):
    params, c = _cp(p)
    theta = np.linspace(0, np.pi, p["n_plot"] + 2)[1:-1]
    vals = cj.synthesize(c, theta)
    taylor = cj.trig_poly_taylor(c, 6)
    return TaskOutput(
        {"taylor_at_0": taylor},
        [Table("profile", ["theta", "f"], list(zip(theta, vals)))],
        [PlotData("profile_plot", theta, vals, "theta", "f(theta)")],
    )


def _fiber(q, io):
    path = io.get("fiber_table")
    return sp.TableFiber.from_csv(path) if path else None


def _coeff_rows(c_in, c_out):
    keys = sorted(set(c_in.entries) | set(c_out.entries))
    return [[*k, c_in.get(k), c_out.get(k)] for k in keys]


def sphere_decompose(p, io):
    model = sp.SphereModel.for_degree(p["q"], p["deg_max"], _fiber(p["q"], io))
    c = harmonic_input(p["kind"], model, deg_max=p["deg_max"], seed=p["seed"])
    F = sp.sphere_synthesize(c)
    back = sp.sphere_decompose(F, p["deg_max"])
    err = max(abs(c.get(k) - back.get(k)) for k in back.keys())
    return TaskOutput(
        {"max_coeff_error": err, "parseval_defect": abs(F.norm_sq() - back.norm() ** 2)},
        [Table("coefficients", ["deg", "l", "k", "input", "recovered"], _coeff_rows(c, back))],
    )


def sphere_apply(p, io):
    model = sp.SphereModel.for_degree(p["q"], p["deg_max"], _fiber(p["q"], io))
    c = harmonic_input(p["kind"], model, deg_max=p["deg_max"], seed=p["seed"])
    m = p["m"]
    out = sp.sphere_apply_Delta_spectral(c, m)
    res = {"norm_in": c.norm(), "norm_out": out.norm()}
    if m >= 1 and not isinstance(model.fiber, sp.TableFiber):
        th, xi = np.meshgrid(model.theta, model.fiber.nodes, indexing="ij")
        grid = sp.sphere_operator_grid(sp.sphere_apply_Delta_spectral(c, m - 1), th, xi)
        spec = sp.sphere_synthesize(out, model, th, xi)
        res["grid_check_rel_error"] = float(np.max(np.abs(grid - spec)) / max(np.max(np.abs(spec)), 1e-300))
    return TaskOutput(res, [Table("coefficients", ["deg", "l", "k", "input", "output"],
                                  _coeff_rows(c, out))])


def proj_decompose(p, io):
    model = sp.ProjectiveModel.for_degree(p["family"], p["l"], p["deg_max"])
    c = harmonic_input(p["kind"], model, deg_max=p["deg_max"], seed=p["seed"])
    if model.family == "real":
        F = sp.sphere_synthesize(c)
    else:
        F = sp.projective_synthesize(c, model)
    back = sp.projective_decompose(F, model, p["deg_max"])
    err = max(abs(c.get(k) - back.get(k)) for k in back.keys())
    return TaskOutput(
        {"q": model.q, "k": model.k, "rho_S": model.rho_S, "max_coeff_error": err,
         "parseval_defect": abs(F.norm_sq() - back.norm() ** 2)},
        [Table("coefficients", ["deg", "j", "l", "input", "recovered"], _coeff_rows(c, back))],
    )


def build_chernoff_input(p, io):
    """Spectral data of the requested model and input kind."""
    model = p["model"]
    if model == "noncompact":
        return noncompact_input(p["kind"], _nc_params(p), lam_max=p["lam_max"], seed=p["seed"])
    if model == "compact":
        return compact_input(p["kind"], cj.CpJacobiParams(p["alpha"], p["beta"]), N=p["N"],
                             seed=p["seed"])
    if model == "sphere":
        geom = sp.SphereModel.for_degree(p["q"], p["deg_max"], _fiber(p["q"], io))
    else:
        geom = sp.ProjectiveModel.for_degree(p["family"], p["l"], p["deg_max"])
    return harmonic_input(p["kind"], geom, deg_max=p["deg_max"], seed=p["seed"])


def chernoff_report(p, io):
    spec = build_chernoff_input(p, io)
    rep = chernoff_verdict(spec, p["M"], p["M_jet"], tol=p["tol"])
    M = p["M"]
    m = np.arange(1, M + 1)
    zero = rep.verdict == "zero function"
    norm_rows = [[k, rep.iterate_norms[k], rep.log_iterate_norms[k] if not zero else "-inf",
                  rep.growth[k - 1] if k else ""] for k in range(M + 1)]
    jet_rows = [[mode, order, val] for mode, vals in rep.jets.items() for order, val in enumerate(vals)]
    plots = []
    if not zero:
        plots = [PlotData("carleman_growth", m, np.array(rep.growth), "m", "a_m", logx=True, logy=True),
                 PlotData("carleman_partial_sums", m, np.array(rep.partial_sums), "M", "S_M")]
    return TaskOutput(
        rep.to_dict(),
        [Table("norms", ["m", "norm", "log_norm", "a_m"], norm_rows),
         Table("partial_sums", ["M", "S_M"], list(zip(m, rep.partial_sums))),
         Table("jets", ["mode", "order", "derivative"], jet_rows)],
        plots,
        ok=not rep.flag,
    )


TASK_FUNCS = {
    "specfun-check": specfun_check,
    "nc-transform": nc_transform,
    "nc-invert": nc_invert,
    "nc-plancherel": nc_plancherel,
    "nc-cratio": nc_cratio,
    "nc-step2": nc_step2,
    "cp-coeffs": cp_coeffs,
    "cp-synth": cp_synth,
    "sphere-decompose": sphere_decompose,
    "sphere-apply": sphere_apply,
    "proj-decompose": proj_decompose,
    "chernoff-report": chernoff_report,
}
