#!/usr/bin/env python3
"""Writes plugin files for multi-indexed Laguerre and Jacobi systems.

Each seed and each eigenfunction is written as G(eta) q(eta) with a gauge factor
G = exp(s eta) eta^c (Laguerre) or (1+eta)^c+ (1-eta)^c- (Jacobi), relative to the
ground state. With w = eta (L) or 1-eta^2 (J) the k-th derivative is G w^-k q_k where
q_{k+1} = w q_k' + (w G'/G - k w') q_k, so the Wronskian is a gauge prefactor times a
polynomial determinant. Xi_D is the seed determinant and P_{D,n} the determinant with
P_n appended, both stripped of the powers of eta (L) or 1 -+ eta (J) they carry.
"""
import json
import sys
from pathlib import Path

import sympy as sp

eta = sp.Symbol("eta")
Pfun = sp.Function("P")(eta)
HALF = sp.Rational(1, 2)


def seed(family, vtype, d, p):
    if family == "L":
        g = p["g"]
        if vtype == "I":
            return sp.expand(sp.assoc_laguerre(d, g - HALF, -eta)), {"s": 1, "c": 0}
        return sp.expand(sp.assoc_laguerre(d, HALF - g, eta)), {"s": 0, "c": HALF - g}
    g, h = p["g"], p["h"]
    if vtype == "I":
        return sp.expand(sp.jacobi(d, g - HALF, HALF - h, eta)), {"cp": HALF - h, "cm": 0}
    return sp.expand(sp.jacobi(d, HALF - g, h - HALF, eta)), {"cp": 0, "cm": HALF - g}


def weight(family):
    return eta if family == "L" else 1 - eta**2


def log_derivative_times_w(family, gauge):
    if family == "L":
        return gauge.get("s", 0) * eta + gauge.get("c", 0)
    return gauge.get("cp", 0) * (1 - eta) - gauge.get("cm", 0) * (1 + eta)


def column(family, q0, gauge, size):
    w = weight(family)
    lw = log_derivative_times_w(family, gauge)
    col = [sp.expand(q0)]
    for k in range(1, size):
        q = col[-1]
        col.append(sp.expand(w * sp.diff(q, eta) + (lw - (k - 1) * sp.diff(w, eta)) * q))
    return col


def strip(family, poly, target_degree):
    """Removes the factors eta (L) or 1+-eta (J) until the degree is target_degree."""
    factors = [eta] if family == "L" else [1 + eta, 1 - eta]
    removed = sp.Integer(1)
    changed = True
    while sp.degree(poly, eta) > target_degree and changed:
        changed = False
        for f in factors:
            q, r = sp.div(poly, f, eta)
            if r == 0:
                poly, removed, changed = sp.expand(q), removed * f, True
                break
    if sp.degree(poly, eta) != target_degree:
        raise ValueError(f"cannot reach degree {target_degree}")
    return poly, sp.expand(removed)


def ell(D):
    m = len(D)
    mi = sum(1 for _, t in D if t == "I")
    return sum(d for d, _ in D) - m * (m - 1) // 2 + 2 * mi * (m - mi)


def build(family, D, params):
    m = len(D)
    seeds = [seed(family, t, d, params) for d, t in D]
    xi_cols = [column(family, q, gz, m) for q, gz in seeds]
    xi = sp.expand(sp.Matrix(m, m, lambda i, j: xi_cols[j][i]).det()) if m else sp.Integer(1)
    xi, xi_removed = strip(family, xi, ell(D))
    # P_{D,n}: append the column of P_n (trivial gauge) and expand along it
    p_col = column(family, Pfun, {}, m + 1)
    cols = [column(family, q, gz, m + 1) for q, gz in seeds]
    mat = sp.Matrix(m + 1, m + 1, lambda i, j: cols[j][i] if j < m else p_col[i])
    combo = sp.expand(mat.det())
    coeffs = [sp.expand(combo.coeff(sp.Derivative(Pfun, (eta, k))) if k else
                        combo.subs({sp.Derivative(Pfun, (eta, i)): 0 for i in range(1, m + 1)}).coeff(Pfun))
              for k in range(m + 1)]
    # the factor common to all n is found from n = 0 (P_0 = 1)
    _, removed = strip(family, sp.expand(coeffs[0]), ell(D))
    return xi, coeffs, removed


def poly_record(expr):
    p = sp.Poly(sp.expand(expr), eta)
    return [{"e": int(e[0]), "c": str(sp.Rational(c))} for e, c in sorted(p.terms())]


def key(D):
    return ",".join(f"{d}{t}" for d, t in D)


SAMPLES = {"L": {"g": sp.Rational(13, 3)}, "J": {"g": sp.Rational(11, 2), "h": sp.Rational(13, 3)}}

PLUGINS = {
    "L": [[(1, "I")], [(2, "I")], [(2, "II")], [(3, "I")], [(3, "II")], [(1, "I"), (2, "I")],
          [(1, "II"), (2, "II")], [(1, "I"), (3, "I")], [(1, "II"), (3, "II")], [(1, "I"), (2, "I"), (3, "I")],
          [(1, "II"), (2, "II"), (3, "II")], [(1, "I"), (1, "II")]],
    "J": [[(2, "I")], [(2, "II")], [(1, "I"), (2, "I")], [(1, "II"), (2, "II")]],
}


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "plugins"
    out_dir.mkdir(parents=True, exist_ok=True)
    for family, lists in PLUGINS.items():
        params = SAMPLES[family]
        for D in lists:
            xi, coeffs, removed = build(family, D, params)
            doc = {
                "family": family,
                "parameters": {k: str(v) for k, v in params.items()},
                "D": [{"d": d, "type": t} for d, t in D],
                "xi": poly_record(xi),
                "P": {"rule": "classical-combination", "coefficients": [poly_record(c) for c in coeffs],
                      "divide_by": poly_record(removed)},
            }
            name = f"{family}_{key(D).replace(',', '_')}.json"
            (out_dir / name).write_text(json.dumps(doc, indent=1) + "\n")
            print(name, "deg xi", sp.degree(xi, eta), "divide_by", removed)


if __name__ == "__main__":
    main()
