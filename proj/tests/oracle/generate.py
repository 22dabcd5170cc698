"""Independent sympy computations frozen into tests/data/oracle.json.

Run from the repository root: python3 tests/oracle/generate.py
"""
import json
import sys
from itertools import combinations
from pathlib import Path

import sympy as sp

t, q, qd, x, xi, r = sp.symbols("t q qd x xi r")
psi = sp.Function("psi")


def text(e):
    s = str(sp.factor(sp.together(e)))
    return s.replace("**", "^").replace("I", "i")


def total(e, F):
    return sp.diff(e, t) + qd * sp.diff(e, q) + F * sp.diff(e, qd)


def delta(F, s1, s2):
    rows = [[1, qd, F]]
    for V, G in (s1, s2):
        DV = sp.diff(V, t) + qd * sp.diff(V, q)
        DG = sp.diff(G, t) + qd * sp.diff(G, q)
        rows.append([V, G, DG - qd * DV])
    return sp.simplify(sp.Matrix(rows).det())


FREE = {
    "X1": (q * t, q**2), "X2": (q, 0), "X3": (t**2, q * t), "X4": (0, q),
    "X5": (t, 0), "X6": (1, 0), "X7": (0, t), "X8": (0, 1),
}
RICCATI_F = -3 * q * qd - q**3
RICCATI = {
    "G1": (t**3 * (t * q - 2), -t * (q * t - 2) * (q**2 * t**2 + 2 - 2 * q * t)),
    "G2": (q * t**3, -(q * t - 1) * (q**2 * t**2 + 4 - 2 * q * t)),
    "G3": (q * t**2, -q * (q**2 * t**2 + 2 - 2 * q * t)),
    "G4": (q * t, -q**2 * (q * t - 1)),
    "G5": (q, -q**3),
    "G6": (1, 0),
    "G7": (t, -q),
    "G8": (t**2, -2 * (q * t - 1)),
}


def symmetry_residual(F, V, G):
    # second prolongation applied to qdd - F, on shell
    eta1 = total(G, F) - qd * total(V, F)
    eta2 = total(eta1, F) - F * total(V, F)
    e = eta2 - (V * sp.diff(F, t) + G * sp.diff(F, q) + eta1 * sp.diff(F, qd))
    return sp.simplify(e)


def euler_lagrange(L, F):
    qdd = sp.Symbol("qdd")
    Lq = sp.diff(L, q)
    Lqd = sp.diff(L, qd)
    D = sp.diff(Lqd, t) + qd * sp.diff(Lqd, q) + qdd * sp.diff(Lqd, qd)
    return sp.simplify((Lq - D).subs(qdd, F))


def pde_operator(c, f):
    ctt, ctx, cxx, ct, cx, c0 = c
    return (ctt * sp.diff(f, t, 2) + ctx * sp.diff(f, t, x) + cxx * sp.diff(f, x, 2) + ct * sp.diff(f, t)
            + cx * sp.diff(f, x) + c0 * f)


def is_symmetry(c, xt, xx, lam):
    """X = xt d_t + xx d_x + lam psi d_psi is a symmetry of the linear operator P iff
    P(Q) = mu P(psi) identically, Q = lam psi - xt psi_t - xx psi_x being the characteristic.
    The third-order terms of P(Q) are rewritten with derivatives of P(psi)."""
    f = psi(t, x)
    Q = lam * f - xt * sp.diff(f, t) - xx * sp.diff(f, x)
    # P(Q) + xt Dt(P f) + xx Dx(P f) is second order; it must be (mu) * P f
    Pf = pde_operator(c, f)
    E = sp.expand(pde_operator(c, Q) + xt * sp.diff(Pf, t) + xx * sp.diff(Pf, x))
    derivs = [sp.diff(f, t, 2), sp.diff(f, t, x), sp.diff(f, x, 2), sp.diff(f, t), sp.diff(f, x), f]
    cols = [sp.simplify(E.coeff(d)) if d != f else None for d in derivs]
    rest = E
    for d, k in zip(derivs[:5], cols[:5]):
        rest = rest - k * d
    cols[5] = sp.simplify(sp.expand(rest).coeff(f))
    pivot = next(k for k in range(6) if c[k] != 0)
    mu = cols[pivot] / c[pivot]
    return all(sp.simplify(cols[k] - mu * c[k]) == 0 for k in range(6))


def normal_form(c, z):
    """Chain rule for psi(t, x) = phi(z(t, x), x); coefficients of phi_zz, phi_zx, phi_xx, phi_z, phi_x, phi
    written in (xi, x)."""
    ctt, ctx, cxx, ct, cx, c0 = c
    zt, zx = sp.diff(z, t), sp.diff(z, x)
    zz = {
        "zz": ctt * zt**2 + ctx * zt * zx + cxx * zx**2,
        "zx": ctx * zt + 2 * cxx * zx,
        "xx": cxx,
        "z": ctt * sp.diff(z, t, 2) + ctx * sp.diff(z, t, x) + cxx * sp.diff(z, x, 2) + ct * zt + cx * zx,
        "x": cx,
        "0": c0,
    }
    tinv = sp.solve(sp.Eq(z, xi), t)[0]
    return {k: sp.simplify(sp.sympify(v).subs(t, tinv)) for k, v in zz.items()}


def main():
    out = {}

    out["free_particle_deltas"] = {
        f"{a},{b}": text(delta(0, FREE[a], FREE[b])) for a, b in combinations(sorted(FREE), 2)
    }
    out["free_particle_symmetry_residuals"] = {k: text(symmetry_residual(0, *v)) for k, v in FREE.items()}
    out["riccati_symmetry_residuals"] = {k: text(symmetry_residual(RICCATI_F, *v)) for k, v in RICCATI.items()}
    d56 = delta(RICCATI_F, RICCATI["G5"], RICCATI["G6"])
    out["riccati_delta_G5_G6"] = text(d56)

    lagr = -1 / (2 * (qd + q**2))
    out["riccati_lagrangian_euler_lagrange"] = text(euler_lagrange(lagr, RICCATI_F))
    out["riccati_lagrangian_multiplier_ratio"] = text(sp.diff(lagr, qd, 2) * d56)

    # canonical coordinates of G5, G6
    T = 1 / (2 * q**2)
    X = (t * q - 1) / q
    DT = total(T, RICCATI_F)
    P = total(X, RICCATI_F) / DT
    Xpp = total(P, RICCATI_F) / DT
    out["riccati_transformed_plus_cube"] = text(Xpp + P**3)
    out["riccati_straightening"] = {
        k: [text(v[0] * sp.diff(T, t) + v[1] * sp.diff(T, q)), text(v[0] * sp.diff(X, t) + v[1] * sp.diff(X, q))]
        for k, v in (("G5", RICCATI["G5"]), ("G6", RICCATI["G6"]))
    }

    # first integrals listed for L13 and L78, checked for conservation
    L13 = {"X1": -qd / (q - t * qd), "X2": qd**2 / (2 * (q - t * qd) ** 2), "X3": -1 / (q - t * qd),
           "X4-X5": -qd / (q - t * qd) ** 2, "X7": -1 / (2 * (q - t * qd) ** 2)}
    L78 = {"X3": -(q - t * qd) ** 2 / 2, "X4+2*X5": -qd * (q - t * qd), "X6": qd**2 / 2, "X7": q - t * qd,
           "X8": -qd}
    out["integrals_conserved"] = {
        "L13": {k: text(total(v, 0)) for k, v in L13.items()},
        "L78": {k: text(total(v, 0)) for k, v in L78.items()},
    }

    # lifted generators with q -> x
    def lift(v):
        return (sp.sympify(v[0]).subs(q, x), sp.sympify(v[1]).subs(q, x))

    def comb(a, b, cb):
        return (sp.expand(a[0] + cb * b[0]), sp.expand(a[1] + cb * b[1]))

    F8 = {k: lift(v) for k, v in FREE.items()}
    R8 = {k: lift(v) for k, v in RICCATI.items()}
    I = sp.I
    sch = (0, 0, 1, 2 * I, 0, 0)
    sch_gens = [F8["X3"], comb(F8["X4"], F8["X5"], 2), F8["X6"], F8["X7"], F8["X8"]]
    sch_lams = [(I * x**2 - t) / 2, 0, 0, I * x, 0]
    sch20 = (4 * t**2, 8 * t * x, 4 * x**2, 12 * t, 12 * x, 3)
    w_gens = [F8["X1"], F8["X2"], F8["X3"], comb(F8["X4"], F8["X5"], -1), F8["X7"]]
    sch20_lams = [-x / 2, 0, -t / 2, 0, 0]
    sch2b = (4 * t**4, 8 * t**3 * x, 4 * t**2 * x**2, 4 * t**2 * (3 * t + x), 4 * t * x * (3 * t + x),
             3 * t**2 + 4 * t * x + x**2)
    sch2b_lams = [-(1 + x / t) * x / 2, x**2 / (2 * t**2) * sp.log(t), -(t + x) / 2, x / t * sp.log(t),
                  -sp.log(t) / 2]
    schr = (4, -8 * x**2, 4 * x**4, 0, 8 * x**3, -3 * x**2)
    r_gens = [comb(R8["G2"], R8["G8"], -1), comb(R8["G3"], R8["G7"], sp.Rational(-2, 3)), R8["G4"], R8["G5"],
              R8["G6"]]
    schr_lams = [-(t * x - 1) ** 3 / (2 * x), -(t * x - 1) ** 2 / 2, -(t * x - 1) * x / 2, -x**2 / 2,
                 -(t * x - 1) / x]
    checks = {}
    for name, c, gens, lams in (("sch", sch, sch_gens, sch_lams), ("sch20", sch20, w_gens, sch20_lams),
                                ("sch2b", sch2b, w_gens, sch2b_lams), ("schr", schr, r_gens, schr_lams)):
        checks[name] = [bool(is_symmetry(c, g[0], g[1], l)) for g, l in zip(gens, lams)]
    checks["sch2b_w4_negated"] = [bool(is_symmetry(sch2b, w_gens[3][0], w_gens[3][1], -x / t * sp.log(t)))]
    checks["sch20_wrong_sign"] = [bool(is_symmetry(sch20, w_gens[0][0], w_gens[0][1], x / 2))]
    out["pde_symmetry"] = checks
    out["generators"] = {
        "sch": [[text(g[0]), text(g[1])] for g in sch_gens],
        "w": [[text(g[0]), text(g[1])] for g in w_gens],
        "riccati": [[text(g[0]), text(g[1])] for g in r_gens],
    }

    # discriminants and reductions
    def disc(c):
        return text(c[1] ** 2 - 4 * c[0] * c[2])

    out["discriminant"] = {"sch20": disc(sch20), "schr": disc(schr), "sch2b": disc(sch2b)}
    reductions = {}
    for name, c, z in (("sch20", sch20, x / t), ("schr", schr, t - 1 / x), ("sch2b", sch2b, x / t)):
        nf = normal_form(c, z)
        lead = nf["xx"]
        ratios = {k: text(sp.simplify(v / lead)) for k, v in nf.items() if k != "xx"}
        aa, bb, cc = (sp.simplify(nf["xx"] / x**2), sp.simplify(nf["x"] / x), sp.simplify(nf["0"]))
        roots = sp.solve(aa * r * (r - 1) + bb * r + cc, r)
        reductions[name] = {"ratios": ratios, "roots": sorted(text(s) for s in roots)}
    out["reductions"] = reductions

    path = Path(sys.argv[1] if len(sys.argv) > 1 else "tests/data/oracle.json")
    path.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
