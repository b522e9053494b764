#!/usr/bin/env python3
"""Regenerates data/appendix_b.json from the transcribed R_{-1} tables.

The expanded term lists are produced here with sympy, independently of the C++
expression parser, so the C++ self-check compares two separate expansions.
"""
import json
import sys
from pathlib import Path

import sympy as sp
from sympy.parsing.sympy_parser import (convert_xor, implicit_multiplication_application, parse_expr,
                                        standard_transformations)

TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)
SYMS = {n: sp.Symbol(n) for n in "z g a b b1 b2 b3 b4 s1 s2 t1 t2 q qh".split()}

L_ROWS = [
    ("", 2, "-8*(z+2g+1)"),
    ("1I", 4, "64*(2*(1+2g)*(13+6g)+2*(11+10g)*z+3*z^2)"),
    ("1II", 4, "-64*(2*(2g-3)*(1+6g)+2*(10g-9)*z+3*z^2)"),
    ("2I", 6, "-1536*(2*(1+2g)*(3+2g)*(41+14g)+4*(61+108g+36g^2)*z+24*(3+2g)*z^2+5*z^3)"),
    ("2II", 6, "-1536*(2*(2g-5)*(2g-1)*(3+14g)+4*(25-84g+36g^2)*z+12*(4g-5)*z^2+5*z^3)"),
    ("1I,2I", 6, "-1536*(2*(1+2g)*(5+2g)*(45+14g)+4*(97+132g+36g^2)*z+12*(7+4g)*z^2+5*z^3)"),
    ("1II,2II", 6, "1536*(2*(2g-5)*(2g-3)*(14g-1)+4*(61-108g+36g^2)*z+24*(2g-3)*z^2+5*z^3)"),
    ("3I", 8, "12288*(8*(1+2g)*(3+2g)*(5+2g)*(113+30g)+16*(935+2072g+1284g^2+224g^3)*z"
              "+4*(1405+1848g+492g^2)*z^2+20*(41+22g)*z^3+35*z^4)"),
    ("3II", 8, "-12288*(24*(2g-7)*(2g-1)*(-5-16g+20g^2)+16*(-245+968g-972g^2+224g^3)*z"
               "+4*(805-1512g+492g^2)*z^2+20*(22g-35)*z^3+35*z^4)"),
    ("1I,3I", 8, "24576*(8*(1+2g)*(5+2g)*(17+6g)*(39+10g)+16*(1625+2984g+1500g^2+224g^3)*z"
                 "+4*(2005+2136g+492g^2)*z^2+20*(47+22g)*z^3+35*z^4)"),
    ("1II,3II", 8, "24576*(8*(2g-7)*(2g-3)*(6g-7)*(10g-1)+16*(-647+1736g-1188g^2+224g^3)*z"
                   "+4*(1333-1800g+492g^2)*z^2+20*(22g-41)*z^3+35*z^4)"),
    ("1I,2I,3I", 8, "12288*(24*(1+2g)*(7+2g)*(251+144g+20g^2)+16*(2411+3944g+1716g^2+224g^3)*z"
                    "+4*(2629+2424g+492g^2)*z^2+20*(53+22g)*z^3+35*z^4)"),
    ("1II,2II,3II", 8, "12288*(8*(2g-7)*(2g-5)*(2g-3)*(30g-7)+16*(-1145+2552g-1404g^2+224g^3)*z"
                       "+4*(1885-2088g+492g^2)*z^2+20*(22g-47)*z^3+35*z^4)"),
    ("1I", 6, "-1536*(10z^3+3(26g+33)z^2+2(84g^2+240g+139)z+2(2g+1)(2g+5)(10g+27))", "eta"),
    ("1I", 8, "24576*(105z^4+20(50g+67)z^3+60(52g^2+152g+107)z^2+32(6g+5)(18g^2+77g+94)z"
              "+8(2g+1)(2g+5)(2g+7)(14g+45))", "eta^2"),
    ("1I,1II", 8, "73728*(8*(2g-3)*(1+2g)*(5+6g)*(19+10g)+16*(-135-328g+156g^2+224g^3)*z"
                  "+4*(-299+168g+492g^2)*z^2+20*(3+22g)*z^3+35*z^4)"),
]

J_2I = ("3072*(1-a)*(2*(a-3)*(a-2)*(3*(a-2)*a*(2+a)*(3+a)-3*(2+a)*(5+a+a^3)*(3+b)-(14-3a+3a^2)*(3+b)^2"
        "+(10+3a+3a^2)*(3+b)^3+2*(3+b)^4-(3+b)^5)"
        "+3*(2*(a-2)*a*(-13+2a^2)+(46-28a-2a^2+12a^3-3a^4)*(3+b)-2*(1-6a-a^2)*(3+b)^2-2*(1+4a)*(3+b)^3"
        "-2*(3+b)^4+(3+b)^5)*z"
        "+6*((a-2)*a-(4-3a)*(3+b)+2*(3+b)^2-(3+b)^3)*z^2+3*(3+b)*z^3)")
J_1I2I = ("-1536*(1-a)*(4+b)*(2*(a-3)*(a-2)*(3*(a-2)*a*(2+a)*(3+a)+3*(2+a)*(5+a+a^3)*(3+b)"
          "-(14-3a+3a^2)*(3+b)^2-(10+3a+3a^2)*(3+b)^3+2*(3+b)^4+(3+b)^5)"
          "+3*(2*(a-2)*a*(-13+2a^2)-(46-28a-2a^2+12a^3-3a^4)*(3+b)+2*(1-6a-a^2)*(3+b)^2+2*(1+4a)*(3+b)^3"
          "-2*(3+b)^4-(3+b)^5)*z"
          "+6*((a-2)*a+(4-3a)*(3+b)+2*(3+b)^2+(3+b)^3)*z^2-3*(3+b)*z^3)")
J_ROWS = [
    ("", 2, "16*b*(a-1)"),
    ("1I", 4, "128*(2+b)*(2*(a-2)*(a-1)*((2+b)^2-3-a-2a^2)-((2+b)^2+1-10a+3a^2)*z+z^2)"),
    ("1II", 4, {"from": "1I", "substitute": {"b": "-b"}, "sign": 1}),
    ("2I", 6, J_2I),
    ("2II", 6, {"from": "2I", "substitute": {"b": "-b"}, "sign": -1}),
    ("1I,2I", 6, J_1I2I),
    ("1II,2II", 6, {"from": "1I,2I", "substitute": {"b": "-b"}, "sign": -1}),
]

W_1I = """
(1/8)*(b1-3)*(b1-2)*(
 2*b1 + b1*(s1-5*t1) - b1*(s1^2+7*t1^2) + 16*(s1*t2 + 4*t1*s2 - 3*t1*t2)
 + 8*(s1^2*t2 + s1*t1*b1^2 + s1*t1*(s2+15*t2) + t1^2*(21*s2-6*t2))
 - 8*(s1^3*t2 + s1^2*t1*(7*s2+2*t2) + s1*t1^2*(14*s2-15*t2) - 9*t1^3*s2 - 4*s1*t2^2
      + 4*t1*(2*s2^2-4*s2*t2+t2^2))
 - 16*(s1*t1*(s1+3*t1)*(s1*t2+t1*s2) - s1^2*t2^2 - s1*t1*(5*s2^2-8*s2*t2+7*t2^2) + t1^2*s2*(s2-4*t2))
 - 16*(s1*t2+t1*s2)*(s1^2*t2 - 3*s1*t1*(s2-t2) - t1^2*s2))
+ (1/2)*(-6 + 9*(3*s1+5*t1) + 8*(s1^2+2*s1*t1+16*t1^2-12*s2+6*t2)
 - 2*(13*s1^3+53*s1^2*t1+143*s1*t1^2-17*t1^3+52*s1*t2+220*t1*s2)
 + 8*(s1^4+7*s1^3*t1+15*s1^2*t1^2-17*s1*t1^3-2*t1^4+s1^2*(9*s2+11*t2)+2*s1*t1*(37*s2-15*t2)
      - t1^2*(11*s2+13*t2)+12*s2*(s2-2*t2))
 - 8*(s1*t1*(s1^3-4*s1^2*t1-16*s1*t1^2-5*t1^3)+s1^3*(3*s2+5*t2)+s1^2*t1*(23*s2-33*t2)
      - s1*t1^2*(35*s2+11*t2)-t1^3*(17*s2-t2)+2*s1*(6*s2^2-12*s2*t2+11*t2^2)+2*t1*(s2^2+4*s2*t2+6*t2^2))
 - 8*(2*s1^2*t1^2*b1^2-s1^4*t2-s1^3*t1*(s2-11*t2)+s1^2*t1^2*(27*s2-5*t2)+s1*t1^3*(19*s2-9*t2)
      - t1^4*s2-s1^2*(3*s2^2-6*s2*t2+19*t2^2)+4*s1*t1*(3*s2-5*t2)*(s2+t2)+t1^2*(s2-t2)*(9*s2+7*t2))
 + 8*(s1^4*t1*t2+s1^3*t1^2*(5*s2-4*t2)+s1^2*t1^3*(4*s2-5*t2)-s1*t1^4*s2-4*s1^3*t2^2
      + s1^2*t1*(5*s2-7*t2)*(s2+t2)+s1*t1^2*(7*s2-5*t2)*(s2+t2)+4*t1^3*s2^2))*z
- 2*(14+13*s1+67*t1-6*(3*s1^2+11*s1*t1-8*t1^2+10*s2-2*t2)
 + 2*(2*s1^3+3*s1^2*t1-48*s1*t1^2-t1^3+s1*(21*s2-5*t2)-t1*(31*s2+9*t2))
 + 2*(2*s1*t1*(s1^2+12*s1*t1-2*t1^2)-3*s1^2*(s2-t2)+6*s1*t1*(7*s2-t2)+t1^2*(9*s2-13*t2)
      + 2*(3*s2^2-6*s2*t2-5*t2^2))
 - 2*(3*s1^2*t1^2*(s1-t1)+s1^3*t2-t1^3*s2+s1^2*t1*(11*s2-6*t2)+s1*t1^2*(6*s2-11*t2)
      + s1*(3*s2^2-6*s2*t2-5*t2^2)+t1*(5*s2^2+6*s2*t2-3*t2^2)))*z^2
+ 8*(8-2*(2*s1-7*t1)-(13*s1-3*t1)*t1-6*s2+2*t2+3*(s1-t1)*s1*t1+3*(s1*s2-t1*t2)-s1*t2+t1*s2)*z^3
+ 12*(-2+s1-t1)*z^4
"""

W_ROWS = [
    ("", 2, "-2*z^2+(b1-2*b2)*z-(b1-2)*b3"),
    ("1I", 4, W_1I),
    ("1II", 4, {"from": "1I", "substitute": {"s1": "t1", "t1": "s1", "s2": "t2", "t2": "s2"}, "sign": 1}),
]

AW_1I = """
(q^2-s2*t2)*(q^3-s2*t2)*(
 - q*(1+q)*(s1^2-q^2*t1^2)
 - (1-q)*(1-q-q^2)*(s2-q^2*t2)
 + s1^2*(s2+q*(1+q+q^2)*t2)
 + q^2*(1+q)*s1*t1*(s2-q^2*t2)
 - q*t1^2*((1+q+q^2)*s2+q^3*t2)
 - (1-q)*(s2^2-q^4*t2^2)
 - (1+q)*((1-q)*s1^2*t2*(s2+q^3*t2) + s1*t1*(s2^2-q^4*t2^2) - q*(1-q)*t1^2*s2*(s2+q*t2)
          - 2*(1-q)^2*s2*t2*(s2-q^2*t2))
 - q^2*s1^2*t2^2*((1+q+q^2)*s2+q^3*t2)
 + (1+q)*s1*t1*s2*t2*(s2-q^2*t2)
 + q*t1^2*s2^2*(s2+q*(1+q+q^2)*t2)
 + (1-q)*s2*t2*(s2^2-q^4*t2^2)
 + s2*t2*(q*(1+q)*(q^2*s1^2*t2^2-t1^2*s2^2) - (1-q)*(1+q-q^2)*s2*t2*(s2-q^2*t2)))
+ q*(
 q^4*(-3*q*(1+q)*s1^2 + 3*q^3*(1+q)*t1^2 - (3-8*q+3*q^3)*(s2-q^2*t2))
 + q^3*(2*q*s1^2*(s2+q*(1+q+q^2)*t2) - (1+q)*(1+q+q^2-2*q^3)*s1*t1*(s2-q^2*t2)
        - 2*q^2*t1^2*((1+q+q^2)*s2+q^3*t2) - (1+3*q-2*q^2)*(s2^2-q^4*t2^2))
 + q*(q*(1+q)*s1^2*t2*((1+2*q)*(2-2*q+q^2)*s2 - q^2*(1+q)*(1-2*q+3*q^2-q^3)*t2)
      + q*(1+q)*(1+q-q^2)*s1*t1*(s2^2-q^4*t2^2)
      + q*(1+q)*t1^2*s2*((1+q)*(1-2*q+3*q^2-q^3)*s2 - q^2*(1+2*q)*(2-2*q+q^2)*t2)
      + (2-4*q-6*q^2+13*q^3-4*q^4-6*q^5+3*q^6)*s2*t2*(s2-q^2*t2))
 + q*(-s1^2*t2*((1+2*q+q^3)*s2^2 + 2*q^2*(1-q^3)*s2*t2 - q^4*(1+2*q^2+q^3)*t2^2)
      + (1+q)*(1-q-2*q^2-q^3+q^4)*s1*t1*s2*t2*(s2-q^2*t2)
      - t1^2*s2*((1+2*q^2+q^3)*s2^2 - 2*q^2*(1-q^3)*s2*t2 - q^4*(1+2*q+q^3)*t2^2)
      + (1+q)*(3-4*q+3*q^2)*s2*t2*(s2^2-q^4*t2^2))
 + s2*t2*(-(1+q)*s1^2*t2*((1+q)*(1-3*q+2*q^2-q^3)*s2 + q^3*(2+q)*(1-2*q+2*q^2)*t2)
      - (1+q)*(1-q-q^2)*s1*t1*(s2^2-q^4*t2^2)
      + q*(1+q)*t1^2*s2*((2+q)*(1-2*q+2*q^2)*s2 + q*(1+q)*(1-3*q+2*q^2-q^3)*t2)
      + (3-6*q-4*q^2+13*q^3-6*q^4-4*q^5+2*q^6)*s2*t2*(s2-q^2*t2))
 + s2*t2*(-2*q^2*s1^2*t2^2*((1+q+q^2)*s2+q^3*t2)
      + (1+q)*(2-q-q^2-q^3)*s1*t1*s2*t2*(s2-q^2*t2)
      + 2*q*t1^2*s2^2*(s2+q*(1+q+q^2)*t2)
      + (2-3*q-q^2)*s2*t2*(s2^2-q^4*t2^2))
 + s2^2*t2^2*(3*q*(1+q)*(q^2*s1^2*t2^2-t1^2*s2^2) - (3-8*q^2+3*q^3)*s2*t2*(s2-q^2*t2)))*z
+ q^2*(
 - 3*q^3*(q*(1+q)*(s1^2-q^2*t1^2) + (1-4*q+q^3)*(s2-q^2*t2))
 + q^2*(q*s1^2*s2 + q^2*(1+q+q^2)*s1^2*t2 - (1+q)*(2+2*q+2*q^2-q^3)*s1*t1*(s2-q^2*t2)
        - q^5*t1^2*t2 - q^2*(1+q+q^2)*t1^2*s2 - (2+3*q-q^2)*(s2^2-q^4*t2^2))
 + q*(1+q)*s1^2*t2*((1+q-2*q^2+q^3)*s2 - q^2*(1-2*q+q^2+q^3)*t2)
 + q*(1+q)^2*s1*t1*(s2^2-q^4*t2^2)
 + q*(1+q)*t1^2*s2*((1-2*q+q^2+q^3)*s2 - q^2*(1+q-2*q^2+q^3)*t2)
 + (1-4*q+q^3)*(1-4*q^2+q^3)*s2*t2*(s2-q^2*t2)
 - q^2*s1^2*t2^2*((1+q+q^2)*s2+q^3*t2)
 + (1+q)*(1-2*q*(1+q+q^2))*s1*t1*s2*t2*(s2-q^2*t2)
 + q*t1^2*s2^2*(s2+q*(1+q+q^2)*t2)
 + (1-3*q-2*q^2)*s2*t2*(s2^2-q^4*t2^2)
 + 3*s2*t2*(q^3*(1+q)*s1^2*t2^2 - q*(1+q)*t1^2*s2^2 - (1-4*q^2+q^3)*s2*t2*(s2-q^2*t2)))*z^2
+ q^3*(
 - q^2*(q*(1+q)*(s1^2-q^2*t1^2) + (1-8*q+q^3)*(s2-q^2*t2))
 - q*(1+q)*(s2-q^2*t2)*((1+q+q^2)*s1*t1 + s2 + q^2*t2)
 + q*(1+q)*(q^2*s1^2*t2^2-t1^2*s2^2)
 - (1-8*q^2+q^3)*s2*t2*(s2-q^2*t2))*z^3
+ 2*q^6*(s2-q^2*t2)*z^4
"""

AW_ROWS = [
    ("", 2, "-(1/2)*q^(-1)*(q-1)^2*((b1+b3*q^(-1))*z+(1-b4*q^(-2))*(b1-b3))"),
    ("1I", 4, (AW_1I, "2*qh^17*s2/((1-q)^4*(1+q))")),
    ("1II", 4, {"from": "1I", "substitute": {"s1": "t1", "t1": "s1", "s2": "t2", "t2": "s2"}, "sign": 1}),
]

NAMES_ONLY = {
    "10": ["4I", "4II", "1I,4I", "1II,4II", "2I,3I", "2II,3II", "1I,2I,4I", "1II,2II,4II", "1I,2I,3I,4I",
           "1II,2II,3II,4II", "2I,1II", "1I,2II"],
    "12": ["5I", "5II", "1I,5I", "1II,5II", "2I,4I", "2II,4II", "1I,2I,5I", "1II,2II,5II", "1I,3I,4I",
           "1II,3II,4II", "1I,2I,3I,5I", "1II,2II,3II,5II", "1I,2I,3I,4I,5I", "1II,2II,3II,4II,5II", "3I,1II",
           "1I,3II", "1I,2I,1II", "1I,1II,2II", "2I,2II"],
}


# Rows whose printed form disagrees with the solved closure. The stored row keeps the
# printed form; the erratum records a minimal edit that reproduces the solved values.
ERRATA = {
    ("J", "1I,2I"): {
        "replace": ["+2*(1-6a-a^2)*(3+b)^2", "-2*(1-6a-a^2)*(3+b)^2"],
        "note": "sign of the (3+b)^2 term of the z coefficient; the solved closure at two "
                "plugin samples agrees with the flipped sign in every coefficient",
    },
}


def parse(text):
    return parse_expr(" ".join(text.split()), local_dict=SYMS, transformations=TRANSFORMS)


def fnv1a64(text):
    h = 0xcbf29ce484222325
    for byte in text.encode():
        h ^= byte
        h = (h * 0x100000001b3) & 0xFFFFFFFFFFFFFFFF
    return f"{h:016x}"


def terms(expr):
    expr = sp.expand(expr)
    gens = sorted(expr.free_symbols, key=lambda s: s.name)
    out = []
    if not gens:
        return [{"c": str(sp.Rational(expr)), "m": {}}] if expr != 0 else []
    # Laurent terms: collect monomials by splitting each additive term
    for term in sp.Add.make_args(expr):
        coeff, mono = sp.Rational(1), {}
        for factor in sp.Mul.make_args(term):
            base, exp = factor.as_base_exp()
            if base.is_Symbol:
                mono[base.name] = mono.get(base.name, 0) + int(exp)
            else:
                coeff *= factor
        out.append({"c": str(sp.Rational(coeff)), "m": dict(sorted(mono.items()))})
    out.sort(key=lambda t: json.dumps(t["m"], sort_keys=True))
    return out


def derived_key(entry_id, derived):
    subs = ",".join(f"{k}={v}" for k, v in sorted(derived["substitute"].items()))
    return f"{entry_id}|{derived['from']}|{derived['sign']}|{subs}"


def status(family, D):
    if family in ("W", "AW"):
        return "reference-only"
    return "builtin" if D in ("", "1I", "1II") else "plugin"


def main():
    entries = []
    base = {}
    corrected = {}
    for family, rows in (("L", L_ROWS), ("J", J_ROWS), ("W", W_ROWS), ("AW", AW_ROWS)):
        for row in rows:
            D, K, body = row[:3]
            Y = row[3] if len(row) > 3 else "1"
            e = {"id": f"{family}:{{{D}}}" + ("" if Y == "1" else f":Y={Y}"), "family": family, "D": D, "Y": Y, "K": K,
                 "status": status(family, D)}
            if isinstance(body, dict):
                src = base[(family, body["from"])]
                subs = {SYMS[k]: parse(v) for k, v in body["substitute"].items()}
                expr = body["sign"] * src.xreplace(subs)
                e["derived"] = body
                e["printed"] = ""
                if (family, body["from"]) in corrected:
                    fixed = body["sign"] * corrected[(family, body["from"])].xreplace(subs)
                    e["erratum"] = {"note": f"inherited from {family}:{{{body['from']}}}",
                                    "expanded": terms(sp.expand(fixed))}
            else:
                multiplier = None
                if isinstance(body, tuple):
                    body, multiplier = body
                printed = " ".join(body.split())
                expr = parse(printed)
                e["printed"] = printed
                if multiplier:
                    e["multiplier"] = multiplier
                    m = parse(multiplier).subs(SYMS["q"], SYMS["qh"] ** 2)
                    expr = sp.expand(expr.subs(SYMS["q"], SYMS["qh"] ** 2)) / m
                if Y == "1":
                    base[(family, D)] = expr
                if (family, D) in ERRATA:
                    err = ERRATA[(family, D)]
                    old, new = err["replace"]
                    if printed.count(old) != 1:
                        raise ValueError(f"erratum for {family}:{D} does not match the printed row")
                    fixed = parse(printed.replace(old, new))
                    corrected[(family, D)] = fixed
                    e["erratum"] = {"note": err["note"], "replace": err["replace"], "expanded": terms(sp.expand(fixed))}
            e["expanded"] = terms(sp.expand(sp.simplify(expr) if "multiplier" in e else expr))
            e["fnv1a64"] = fnv1a64(e["printed"] if e["printed"] else derived_key(e["id"], e["derived"]))
            entries.append(e)
    doc = {"format": 1, "variables": "AW rows use qh = q^(1/2); s1,s2,t1,t2 = a1+a2, a1 a2, a3+a4, a3 a4",
           "entries": entries, "names_only": {"L": NAMES_ONLY}}
    out = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "appendix_b.json")
    out.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
