"""Independent derivation of the frozen fixture values used by the C++ tests.

Works directly from the model definitions with exact rational arithmetic
(sympy), without sharing any code path with the library.
Run: python3 tests/oracle/derive_fixtures.py
"""
import sympy as sp
from sympy import Rational as R

F = ["T", "K", "L"]


def shares(theta, th1):
    th = {1: th1, 2: 1 - th1}
    tf = {f: sum(th[j] * theta[f][j - 1] for j in (1, 2)) for f in F}
    lam = {f: {j: th[j] * theta[f][j - 1] / tf[f] for j in (1, 2)} for f in F}
    return th, tf, lam


def aes_full(theta, j, lk, lt, kt):
    off = {("L", "K"): lk, ("L", "T"): lt, ("K", "T"): kt}
    s = {}
    for (a, b), v in off.items():
        s[(a, b)] = v
        s[(b, a)] = v
    for i in F:
        s[(i, i)] = -sum(theta[h][j - 1] * s[(i, h)] for h in F if h != i) / theta[i][j - 1]
    return s


def ews(theta, lam, a1, a2):
    g = {}
    for i in F:
        for h in F:
            g[(i, h)] = sum(lam[i][j] * theta[h][j - 1] * (a1, a2)[j - 1][(i, h)] for j in (1, 2))
    return g


def matrix(theta, lam, g):
    return sp.Matrix([
        [0, theta["K"][0], theta["L"][0], 0, 0],
        [0, theta["K"][1], theta["L"][1], 0, 0],
        [-1, g[("T", "K")], g[("T", "L")], lam["T"][1], lam["T"][2]],
        [0, g[("K", "K")], g[("K", "L")], lam["K"][1], lam["K"][2]],
        [0, g[("L", "K")], g[("L", "L")], lam["L"][1], lam["L"][2]],
    ])


def shock(theta, g, p1=0, p2=0, wT=0, VK=0, VL=0):
    return sp.Matrix([
        p1 - theta["T"][0] * wT,
        p2 - theta["T"][1] * wT,
        -g[("T", "T")] * wT,
        VK - g[("K", "T")] * wT,
        VL - g[("L", "T")] * wT,
    ])


def report(name, theta, th1, a1, a2, exact=True):
    th, tf, lam = shares(theta, th1)
    s1 = aes_full(theta, 1, *a1)
    s2 = aes_full(theta, 2, *a2)
    g = ews(theta, lam, s1, s2)
    S, T, U = g[("L", "K")], g[("L", "T")], g[("K", "T")]
    A = matrix(theta, lam, g)
    D = A.det()
    print(f"== {name}")
    print(" theta_i", {f: sp.nsimplify(tf[f]) for f in F})
    print(" lambda_1", {f: lam[f][1] for f in F})
    print(" diag1", [s1[(f, f)] for f in F], [float(s1[(f, f)]) for f in F])
    print(" diag2", [s2[(f, f)] for f in F], [float(s2[(f, f)]) for f in F])
    print(" STU", S, T, U, [float(x) for x in (S, T, U)])
    print(" S'U'", float(S / T), float(U / T))
    print(" Delta", D, float(D))
    sol = {}
    for nm, kw in [("wT", dict(wT=1)), ("p1", dict(p1=1)), ("p2", dict(p2=1)), ("VK", dict(VK=1)), ("VL", dict(VL=1))]:
        x = A.LUsolve(shock(theta, g, **kw))
        x = [sp.simplify(v) for v in x]
        sol[nm] = x
        print(f" shock {nm}: VT={float(x[0]):.15g} wK={float(x[1]):.15g} wL={float(x[2]):.15g} X1={float(x[3]):.15g} X2={float(x[4]):.15g}   exact X1={x[3]} X2={x[4]} VT={x[0]}")
    # Reciprocity
    print(" recip VT/p1 vs -(th1/thT) X1/wT:", float(sol["p1"][0]), float(-th[1] / tf["T"] * sol["wT"][3]))
    print(" recip VT/p2 vs -(th2/thT) X2/wT:", float(sol["p2"][0]), float(-th[2] / tf["T"] * sol["wT"][4]))
    # closed forms
    Aa = theta["T"][0] - theta["T"][1]
    Bb = theta["K"][0] - theta["K"][1]
    Ee = theta["L"][0] - theta["L"][1]
    d_cf = -(theta["K"][0] * theta["L"][1] - theta["K"][1] * theta["L"][0]) ** 2 * th[1] * th[2] / (tf["K"] * tf["L"])
    print(" Delta closed form", d_cf, "ok" if sp.simplify(d_cf - D) == 0 else "MISMATCH")
    CT1_det = sp.Matrix([[Bb, Ee, 0], [g[("K", "K")], g[("K", "L")], lam["K"][2]], [g[("L", "K")], g[("L", "L")], lam["L"][2]]]).det()
    CT2_det = sp.Matrix([[Bb, Ee, 0], [g[("K", "K")], g[("K", "L")], lam["K"][1]], [g[("L", "K")], g[("L", "L")], lam["L"][1]]]).det()
    CT1_lin = -Aa * (1 - theta["T"][1]) * (th[2] / tf["K"]) * S + Bb * lam["K"][2] * T + Ee * lam["L"][2] * U
    CT2_lin = -Aa * (1 - theta["T"][0]) * (th[1] / tf["K"]) * S + Bb * lam["K"][1] * T + Ee * lam["L"][1] * U
    C21_det = sp.Matrix([[theta["K"][0], theta["L"][0], 0], [g[("K", "K")], g[("K", "L")], lam["K"][2]], [g[("L", "K")], g[("L", "L")], lam["L"][2]]]).det()
    a = (theta["K"][0] + theta["L"][0]) * (theta["K"][1] + theta["L"][1]) * th[2] / tf["K"]
    b = theta["K"][0] * lam["K"][2]
    c = theta["L"][0] * lam["L"][2]
    C21_lin = a * S + b * T + c * U
    print(" CT1 det/lin", float(CT1_det), float(CT1_lin), sp.simplify(CT1_det - CT1_lin) == 0)
    print(" CT2 det/lin", float(CT2_det), float(CT2_lin), sp.simplify(CT2_det - CT2_lin) == 0)
    print(" C21 det/lin", float(C21_det), float(C21_lin), sp.simplify(C21_det - C21_lin) == 0, " a,b,c", a, b, c, float(c))
    print(" X1/wT=-CT1/D", float(-CT1_det / D), " X2/wT=CT2/D", float(CT2_det / D), " X1/p2=C21/D", float(C21_det / D))
    Sp, Up = S / T, U / T
    fT1 = lambda s: (Aa * (1 - theta["T"][1]) * (th[2] / tf["K"]) * s - Bb * lam["K"][2]) / (Ee * lam["L"][2])
    fT2 = lambda s: (Aa * (1 - theta["T"][0]) * (th[1] / tf["K"]) * s - Bb * lam["K"][1]) / (Ee * lam["L"][1])
    f21 = lambda s: -(a / c) * s - b / c
    hyp = lambda s: -(tf["L"] / tf["K"]) * s / (s + 1)
    print(" fT1 slope/int", float(fT1(1) - fT1(0)), float(fT1(0)))
    print(" fT2 slope/int", float(fT2(1) - fT2(0)), float(fT2(0)))
    print(" f21 slope/int", float(-a / c), float(-b / c))
    print(" U'-fT1", float(Up - fT1(Sp)), " U'-fT2", float(Up - fT2(Sp)), " U'-f21", float(Up - f21(Sp)))
    print(" boundary(S')", float(hyp(Sp)))
    Q = (Bb / Aa, Bb * tf["L"] / (Ee * tf["K"]))
    RT1 = (-theta["K"][1] / (1 - theta["T"][1]), theta["K"][1] * tf["L"] / (theta["L"][1] * tf["K"]))
    RT2 = (-theta["K"][0] / (1 - theta["T"][0]), theta["K"][0] * tf["L"] / (theta["L"][0] * tf["K"]))
    print(" Q", Q, [float(v) for v in Q], " fT1(Q)", float(fT1(Q[0])), " fT2(Q)", float(fT2(Q[0])))
    print(" RT1", RT1, [float(v) for v in RT1], " fT1", float(fT1(RT1[0])), " hyp", float(hyp(RT1[0])), " f21", float(f21(RT1[0])))
    print(" RT2", RT2, [float(v) for v in RT2], " fT2", float(fT2(RT2[0])), " hyp", float(hyp(RT2[0])), " f21", float(f21(RT2[0])))
    x = theta["K"][0] / theta["L"][0]
    z = theta["K"][1] / theta["L"][1]
    print(" x,z", x, z, " disc", ((x + z) + 2 * x * z) ** 2 - 4 * (1 + x) * (1 + z) * x * z, (x - z) ** 2)
    # Thompson route 2
    def ld(p, q):
        return lam[p][1] * lam[q][2] - lam[p][2] * lam[q][1]
    lKL, lTK, lTL = ld("K", "L"), ld("T", "K"), ld("T", "L")
    sig1 = (lKL - lTK) * g[("T", "L")] - (lTL + lTK) * g[("K", "L")]
    sig2 = (lKL + lTL) * g[("T", "K")] + (lTK + lTL) * g[("L", "K")]
    route2 = (theta["K"][1] * sig1 - theta["L"][1] * sig2) / D
    route1 = (th[1] / tf["T"]) * CT1_lin / D
    print(" route1", float(route1), " route2", float(route2), " direct VT/p1", float(sol["p1"][0]))
    a12 = -theta["L"][1] * ((lam["K"][1] - lam["L"][1]) + (lam["T"][1] - lam["L"][1])) * (tf["K"] / tf["T"]) / D
    a13 = (th[1] / tf["T"]) * Ee * lam["L"][2] / D
    print(" A12 coef", float(a12), " A13 coef", float(a13))


CP1 = {"T": [R(2, 5), R(1, 5)], "K": [R(1, 4), R(1, 2)], "L": [R(7, 20), R(3, 10)]}
CD = (1, 1, 1)
report("CP1 Cobb-Douglas", CP1, R(1, 2), CD, CD)
report("PB1", CP1, R(1, 2), (R(-42105, 100000), 1, R(95, 100)), (R(-42105, 100000), R(13, 10), R(95, 100)))
report("CP1 CES 0.5", CP1, R(1, 2), (R(1, 2),) * 3, (R(1, 2),) * 3)
s2 = aes_full(CP1, 2, R(-1, 2), 1, 1)
print("sector2 offdiag (-0.5,1,1) diag", [s2[(f, f)] for f in F])
