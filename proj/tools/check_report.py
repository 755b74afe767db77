#!/usr/bin/env python3
"""Independent re-verification of zadic JSON reports with sympy.

Usage: check_report.py REPORT.json [--schema SCHEMA.json]

Only the data embedded in the report is used; nothing is recomputed by zadic.
Exit status 0 when every re-check passes, 1 otherwise.
"""

import argparse
import json
import sys
from fractions import Fraction

import sympy as sp
from sympy.parsing.sympy_parser import (convert_xor, parse_expr,
                                        standard_transformations)

t, X, Y = sp.symbols("t X Y")
TRANSFORMS = standard_transformations + (convert_xor,)
failures = []


def expr(s):
    names = {"t": t, "X": X, "Y": Y}
    for i in range(16):
        names["u%d" % i] = sp.Symbol("u%d" % i)
    return parse_expr(s, local_dict=names, transformations=TRANSFORMS)


def check(ok, what):
    print(("ok   " if ok else "FAIL ") + what)
    if not ok:
        failures.append(what)


def same(a, b):
    return sp.cancel(sp.together(a - b)) == 0


def vp(q, p):
    """p-adic exponent of a nonzero rational."""
    q = Fraction(int(sp.numer(q)), int(sp.denom(q)))
    e = 0
    n, d = q.numerator, q.denominator
    while n % p == 0:
        n //= p
        e += 1
    while d % p == 0:
        d //= p
        e -= 1
    return e


def content(f, p):
    coeffs = [c for c in sp.Poly(sp.expand(f), t).all_coeffs() if c != 0]
    return min(vp(sp.Rational(c), p) for c in coeffs) if coeffs else None


def coeffs_in_ideal(f, p):
    f = sp.expand(f)
    if f == 0:
        return True
    gens = sorted(f.free_symbols, key=str) or [t]
    return all(vp(sp.Rational(c), p) >= 1 for c in sp.Poly(f, *gens).coeffs())


def valuation(text, f, p):
    """Exponent of |f|_v for the valuation strings written by zadic; None for 0."""
    num, den = sp.fraction(sp.cancel(sp.together(f)))
    if num == 0:
        return None
    if text == "gauss":
        return content(num, p) - content(den, p)
    if text.startswith("eval("):
        c = expr(text[5:-1])
        a, b = num.subs(t, c), den.subs(t, c)
        if a == 0:
            return None
        return vp(a, p) - vp(b, p)
    if text.startswith("disc("):
        c, k = text[5:-1].rsplit(",", 1)
        s = sp.Symbol("s")
        sub = {t: expr(c) + sp.Integer(p) ** int(k) * s}

        def disc(g):
            cs = [x for x in sp.Poly(sp.expand(g.subs(sub)), s).all_coeffs() if x != 0]
            return min(vp(sp.Rational(x), p) for x in cs)
        return disc(num) - disc(den)
    raise ValueError("no oracle for " + text)


def check_zar(r):
    p = r["result"]["presentation"]["prime"]
    for e in r["result"]["elements"]:
        if not e["member"]:
            continue
        x = expr(e["element"])
        rep = e["representation"]
        check(same(expr(rep["value"]), x), "representation of %s" % e["element"])
        check(coeffs_in_ideal(expr(rep["cert"]), p), "certificate of %s in pA0" % e["element"])
        if e["unit"]:
            inv = e["inverse"]
            check(same(expr(inv["value"]) * x, 1), "inverse of %s" % e["element"])
            check(coeffs_in_ideal(expr(inv["cert"]), p), "inverse certificate of %s in pA0" % e["element"])


def check_spa(r):
    res = r["result"]
    p = r["config"].get("p") or (res.get("localization") or {}).get("prime")
    if "subset" in res:
        sub = res["subset"]
        gens = [expr(f) for f in sub["nums"]] + [expr(sub["den"])]
        cert = sub["openness"]
        total = sum(expr(c) * g for c, g in zip(cert["coefficients"], gens))
        check(same(total, sp.Integer(p) ** cert["exponent"]), "openness certificate")
        for row in res.get("membership", []):
            if row["member"] is None:
                continue
            v = row["valuation"]
            dv = valuation(v, gens[-1], p)
            nv = [valuation(v, g, p) for g in gens[:-1]]
            check(dv == row["den"] and nv == row["nums"], "values at " + v)
            # |f| <= |g| means exponent(f) >= exponent(g); None is |0|.
            member = dv is not None and all(n is None or n >= dv for n in nv)
            check(member == row["member"], "membership at " + v)
    for kp in res.get("kernel_points", []):
        if kp["point"] and kp["point"].startswith("eval("):
            c = expr(kp["point"][5:-1])
            check(expr(kp["ideal"]).subs(t, c) == 0, "kernel point %s kills %s" % (kp["point"], kp["ideal"]))


def check_cech(r):
    res = r["result"]
    p = res["global"]["prime"]
    cov = res["cover"]
    total = sum(expr(g) * expr(f) for g, f in zip(cov["bezout"], cov["gens"]))
    z = expr(cov["z"])
    check(same(total, 1 + z) and coeffs_in_ideal(z, p), "cover Bezout identity sum g_i f_i = 1 + z")
    for i, w in enumerate(res["witnesses"]):
        if w["glued"] is None:
            check(False, "witness %d glued" % i)
            continue
        cyclic = res["module"].startswith("A/(")
        for c, g in enumerate(w["glued"]):
            gv = expr(g["value"])
            diff = gv - expr(w["global"][c]["value"])
            if cyclic:
                # equal modulo the relation: the relation divides the numerator
                rel = expr(res["module"][3:-1])
                num = sp.fraction(sp.cancel(sp.together(diff)))[0]
                ok = num == 0 or sp.cancel(num / rel).is_polynomial(t)
            else:
                ok = same(diff, 0)
            check(ok, "witness %d component %d glues to the global" % (i, c))
            check(coeffs_in_ideal(expr(g["cert"]), p), "witness %d glued certificate in pA0" % i)
            if cyclic:
                continue
            for k, piece in enumerate(w["cocycle"]):
                check(same(expr(piece[c]["value"]), gv), "witness %d piece %d restricts correctly" % (i, k))
    rep = res["report"]
    check(rep["glue_roundtrips"] == rep["trials"] and rep["cocycle_roundtrips"] == rep["trials"]
          and not rep["failures"], "cech counts")


def check_cex(r):
    res = r["result"]
    p = res["p"]
    q = t**2 - 1 + p
    cert = res["certificates"]
    disc = expr(cert["irreducible"]["discriminant"])
    check(disc == 4 - 4 * p and not sp.sqrt(disc).is_rational and sp.Poly(q, t).is_irreducible,
          "t^2 - 1 + p irreducible over Q")
    check(sp.rem(t**2 - 1, q, t) == -p and expr(cert["quotient_domain"]["witness"]) == -p,
          "t^2 - 1 = -p modulo t^2 - 1 + p")
    fp = sp.GF(p)
    a, b = sp.Poly(t - 1, t, domain=fp), sp.Poly(t + 1, t, domain=fp)
    m = sp.Poly(t**2 - 1, t, domain=fp)
    check((a * b).rem(m).is_zero and not a.rem(m).is_zero and not b.rem(m).is_zero
          and sp.Poly(q, t, domain=fp) == m, "(t - 1)(t + 1) = 0 in F_p[t]/(t^2 - 1)")
    vm = cert["valuation_mismatch"]
    check(vm["pass"] and vm["rhs_min_exponent"] >= 1 and vp(sp.Rational(p, 2), p) == 1, "valuation mismatch")
    target = (t**2 - 1) / q
    check(same(expr(res["target"]["value"]), target), "target normal form")
    for ex in res["examples"]:
        f1, f2, g1, g2 = (expr(ex[k]) for k in ("f1", "f2", "g1", "g2"))
        s1 = (g1 / (1 + p * f1)).subs({X: t, Y: 1 / (t + 1)})
        s2 = (g2 / (1 + p * f2)).subs({X: t, Y: 1 / (t - 1)})
        d = expr(ex["difference"])
        check(same(s1 - s2 - target, d) and not same(d, 0), "refutation of g1=%s g2=%s" % (ex["g1"], ex["g2"]))
    cc = res["cover_check"]
    check(not cc["violations"] and cc["checked"] == cc["only_u1"] + cc["only_u2"] + cc["both"], "cover check")
    check(not res["grid"]["surprises"] and res["grid"]["refuted"] == res["grid"]["candidates"], "grid refuted")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("report")
    ap.add_argument("--schema")
    args = ap.parse_args()
    with open(args.report) as fh:
        r = json.load(fh)
    if args.schema:
        import jsonschema
        with open(args.schema) as fh:
            jsonschema.validate(r, json.load(fh))
        check(True, "schema")
    handlers = {"zar": check_zar, "spa": check_spa, "cech": check_cech, "cex": check_cex}
    if r["subcommand"] in handlers:
        handlers[r["subcommand"]](r)
    failed_checks = [c["name"] for c in r["checks"] if c["status"] == "fail"]
    check(not failed_checks, "no failed checks in the report " + ", ".join(failed_checks))
    if failures:
        print("%d re-check(s) failed" % len(failures))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
