"""Independent symbolic oracle for the frozen values in the C++ tests.

Computes the Levi-Civita connection and curvature of R^5(-3) symbolically,
then O'Neill tensors, scalar invariants and theorem slacks for a split of
the tangent bundle into vertical and horizontal fields, at one point.

    python3 sympy_oracle.py coords      # coordinate Christoffel / curvature values
    python3 sympy_oracle.py vertical    # xi vertical:  V = E1-E3, E2-E4, xi
    python3 sympy_oracle.py horizontal  # xi horizontal: V = E1-E3, E2-E4
    python3 sympy_oracle.py reeb        # V = xi
    python3 sympy_oracle.py yplane      # V = E1, E2
"""
import json
import sys

import sympy as sp

x1, x2, y1, y2, z = sp.symbols("x1 x2 y1 y2 z", real=True)
X = [x1, x2, y1, y2, z]
D = 5
C = -3

eta = sp.Matrix([-y1 / 2, -y2 / 2, 0, 0, sp.Rational(1, 2)])
g = eta * eta.T + sp.diag(*([sp.Rational(1, 4)] * 4 + [0]))
gi = sp.simplify(g.inv())
Gam = [[[sp.simplify(sum(gi[k, l] * (sp.diff(g[j, l], X[i]) + sp.diff(g[i, l], X[j]) - sp.diff(g[i, j], X[l]))
                         for l in range(D)) / 2) for j in range(D)] for i in range(D)] for k in range(D)]


def r_up(l, i, j, k):
    # R(d_i, d_j) d_k = R^l_ijk d_l
    return (sp.diff(Gam[l][j][k], X[i]) - sp.diff(Gam[l][i][k], X[j])
            + sum(Gam[l][i][m] * Gam[m][j][k] - Gam[l][j][m] * Gam[m][i][k] for m in range(D)))


Rl = [[[[sp.simplify(sum(r_up(m, i, j, k) * g[m, l] for m in range(D))) for l in range(D)]
        for k in range(D)] for j in range(D)] for i in range(D)]

phi = sp.zeros(5, 5)
phi[0, 2] = 1
phi[1, 3] = 1
phi[2, 0] = -1
phi[3, 1] = -1
phi[4, 2] = y1
phi[4, 3] = y2


def vec(*c):
    return sp.Matrix(c)


E1 = vec(0, 0, 2, 0, 0)
E2 = vec(0, 0, 0, 2, 0)
E3 = vec(2, 0, 0, 0, 2 * y1)
E4 = vec(0, 2, 0, 0, 2 * y2)
xi = vec(0, 0, 0, 0, 2)


def ip(a, b):
    return (a.T * g * b)[0]


def nab(f, h):
    return sp.Matrix([sum(f[i] * sp.diff(h[k], X[i]) for i in range(D))
                      + sum(Gam[k][i][j] * f[i] * h[j] for i in range(D) for j in range(D)) for k in range(D)])


def r4(a, b, c, d):
    return sum(Rl[i][j][k][l] * a[i] * b[j] * c[k] * d[l]
               for i in range(D) for j in range(D) for k in range(D) for l in range(D) if Rl[i][j][k][l] != 0)


P0 = {x1: 0.3, x2: -0.7, y1: 1.1, y2: 0.4, z: 0.25}
P1 = {x1: 1.5, x2: 0.2, y1: 0.3, y2: -0.9, z: 0.4}


def num(e, pt):
    return float(sp.N(e.subs(pt)))


def coords():
    out = {"point": [P0[s] for s in X]}
    out["g"] = [[num(g[i, j], P0) for j in range(D)] for i in range(D)]
    out["gamma"] = {f"{k}{i}{j}": num(Gam[k][i][j], P0) for k in range(D) for i in range(D) for j in range(i, D)
                    if num(Gam[k][i][j], P0) != 0.0}
    out["R"] = {f"{i}{j}{k}{l}": num(Rl[i][j][k][l], P0) for i in range(D) for j in range(D)
                for k in range(D) for l in range(D) if i < j and k < l and num(Rl[i][j][k][l], P0) != 0.0}
    out["K_E1E3"] = num(r4(E1, E3, E3, E1), P0)
    out["K_E1xi"] = num(r4(E1, xi, xi, E1), P0)
    return out


def split(case):
    if case == "vertical":
        return [E1 - E3, E2 - E4, xi], [E1 + E3, E2 + E4], "v", P0
    if case == "horizontal":
        return [E1 - E3, E2 - E4], [E1 + E3, E2 + E4, xi], "h", P1
    if case == "reeb":
        return [xi], [E1, E2, E3, E4], "v", P0
    if case == "yplane":
        return [E1, E2], [E3, E4, xi], "h", P0
    raise SystemExit(__doc__)


def submersion(case):
    vf, hf, xcase, pt = split(case)
    U = [sp.simplify(v / sp.sqrt(ip(v, v))) for v in vf]
    H = [sp.simplify(v / sp.sqrt(ip(v, v))) for v in hf]
    r, n = len(U), len(H)

    def vproj(w):
        return sum((ip(w, u) * u for u in U), sp.zeros(5, 1))

    def hproj(w):
        return sum((ip(w, u) * u for u in H), sp.zeros(5, 1))

    def T(e, f):
        return hproj(nab(vproj(e), vproj(f))) + vproj(nab(vproj(e), hproj(f)))

    def A(e, f):
        return hproj(nab(hproj(e), vproj(f))) + vproj(nab(hproj(e), hproj(f)))

    def ipn(a, b):
        return num(ip(a, b), pt)

    def Rn(a, b, c, d):
        return num(r4(a, b, c, d), pt)

    def nabT(e, f, h):
        return nab(e, T(f, h)) - T(nab(e, f), h) - T(f, nab(e, h))

    Tc = [[[ipn(T(U[i], U[j]), H[s]) for s in range(n)] for j in range(r)] for i in range(r)]
    Ac = [[[ipn(A(H[i], H[j]), U[a]) for a in range(r)] for j in range(n)] for i in range(n)]
    Nv = sum((T(U[j], U[j]) for j in range(r)), sp.zeros(5, 1))
    normN = ipn(Nv, Nv)
    normT = sum(v * v for a in Tc for b in a for v in b)
    normA = sum(v * v for a in Ac for b in a for v in b)
    TV = sum(ipn(T(u, x), T(u, x)) for u in U for x in H)
    AH = sum(ipn(A(x, u), A(x, u)) for u in U for x in H)
    dN = sum(ipn(nabT(H[i], U[k], U[k]), H[i]) for i in range(n) for k in range(r))

    def rhat(u, v, f, w):
        return Rn(u, v, f, w) - ipn(T(u, w), T(v, f)) + ipn(T(v, w), T(u, f))

    def rstar(a, b, c, h):
        return Rn(a, b, c, h) + 2 * ipn(A(a, b), A(c, h)) - ipn(A(b, c), A(a, h)) + ipn(A(a, c), A(b, h))

    tau_hat = sum(rhat(U[i], U[j], U[j], U[i]) for i in range(r) for j in range(i + 1, r))
    tau_star = sum(rstar(H[i], H[j], H[j], H[i]) for i in range(n) for j in range(i + 1, n))
    two_tau = sum(Rn(a, b, b, a) for a in U + H for b in U + H)

    g0 = g.subs(pt)
    p0 = phi.subs(pt)

    def proj(w, basis):
        return sum((float(sp.N((w.T * g0 * u.subs(pt))[0])) * u.subs(pt) for u in basis), sp.zeros(5, 1))

    tr_phiB = 0.0
    CX = []
    for h in H:
        ph = p0 * h.subs(pt)
        B = proj(ph, U)
        CX.append(proj(ph, H))
        tr_phiB += float(sp.N(((p0 * B).T * g0 * h.subs(pt))[0]))
    CX1 = float(sp.N((CX[0].T * g0 * CX[0])[0]))
    etaU1 = num((eta.T * U[0])[0], pt)
    etaX1 = num((eta.T * H[0])[0], pt)
    ric_hat = sum(rhat(U[0], u, u, U[0]) for u in U)
    ric_star = sum(rstar(H[0], x, x, H[0]) for x in H)
    H2 = normN / r ** 2
    gTH = ipn(T(U[0], U[0]), Nv) / r
    A1 = sum(Ac[0][s][a] ** 2 for s in range(1, n) for a in range(r))
    cp, cm = (C + 3) / 4, (C - 1) / 4

    out = {"case": case, "point": [pt[s] for s in X], "r": r, "n": n, "T": Tc, "A": Ac,
           "norm_N_sq": normN, "norm_T_sq": normT, "norm_A_sq": normA, "norm_TV_sq": TV, "norm_AH_sq": AH,
           "delta_N": dN, "two_tau_hat": 2 * tau_hat, "two_tau_star": 2 * tau_star, "two_tau": two_tau,
           "trace_phiB": tr_phiB, "ric_hat_U1": ric_hat, "ric_star_X1": ric_star}
    s = {}
    if xcase == "v":
        s["V1"] = ric_hat - (cp * (r - 1) - cm * ((r - 2) * etaU1 ** 2 + 1) - r * gTH)
        s["V2"] = 2 * tau_hat - (cp * r * (r - 1) - 2 * cm * (r - 1) - r * r * H2)
        s["H1"] = cp * n * (n - 1) + 3 * cm * (n + tr_phiB) - 2 * tau_star
        s["CRV1"] = ric_hat - (cp * (r - 1) - cm * ((r - 2) * etaU1 ** 2 + 1) - r * r * H2 / 4)
        s["CRH1_kappa_3/4"] = cp * (n - 1) + 0.75 * (C - 1) * CX1 - ric_star
        s["CRH1_kappa_3/8"] = cp * (n - 1) + 0.375 * (C - 1) * CX1 - ric_star
        lhs = cp * (n * r + n + r - 2) + cm * (3 * r - 4 - n - (r - 2) * etaU1 ** 2 + 3 * CX1)
        s["CMB1"] = ric_hat + ric_star + r * r * H2 / 4 + 3 * A1 - dN + TV - AH - lhs
    else:
        s["V3"] = 2 * tau_hat - (cp * r * (r - 1) - r * r * H2)
        s["H2"] = cp * n * (n - 1) + cm * (3 * tr_phiB + n - 1) - 2 * tau_star
        s["CRV2"] = ric_hat - (cp * (r - 1) - r * r * H2 / 4)
        s["CRH2"] = cp * (n - 1) + cm * ((2 - n) * etaX1 ** 2 - 1 + 3 * CX1) - ric_star
        lhs = cp * (n * r + n + r - 2) + cm * (2 * r - 4 - (n - 2) * etaX1 ** 2 + 3 * CX1)
        s["CMB2"] = ric_hat + ric_star + r * r * H2 / 4 + 3 * A1 - dN + TV - AH - lhs
    out["slack"] = s
    return out


if __name__ == "__main__":
    if len(sys.argv) != 2:
        raise SystemExit(__doc__)
    result = coords() if sys.argv[1] == "coords" else submersion(sys.argv[1])
    print(json.dumps(result, indent=1))
