"""Reference values computed with mpmath / plain enumeration.

Run from the repository root:  python3 tests/oracles/make_oracles.py
Writes tests/oracles/oracles.json, which the C++ tests read.
"""
import itertools
import json
import math
import os

import mpmath as mp

mp.mp.dps = 60


def c2j(z):
    z = mp.mpc(z)
    return [float(z.real), float(z.imag)]


def gamma_values():
    pts = [mp.mpc(0.3, 0.2), mp.mpc(-2.7, 0.4), mp.mpc(5.5, -3.0), mp.mpc(-0.45, -0.1), mp.mpc(12.25, 7.5)]
    return [{"z": c2j(p), "gamma": c2j(mp.gamma(p)), "log_gamma": c2j(mp.loggamma(p))} for p in pts]


def complete_h(xs, d):
    if d < 0:
        return mp.mpc(0)
    tot = mp.mpc(0)
    for combo in itertools.combinations_with_replacement(range(len(xs)), d):
        term = mp.mpc(1)
        for i in combo:
            term *= xs[i]
        tot += term
    return tot


def euler_values():
    # chi(O(a), O(b)) = h_{b-a}(x), x_i = exp(-2 pi i z_i), by monomial enumeration
    out = []
    for z in ([0.1, 0.37, -0.45], [0.13, -0.21], [0.05, 0.31, -0.22, 0.41]):
        zz = [mp.mpf(v) for v in z]
        xs = [mp.exp(-2j * mp.pi * v) for v in zz]
        m = len(z)
        for a, b in [(0, 0), (0, 1), (0, 2), (1, 3), (-1, 3), (2, 1), (0, 4)]:
            if b - a < -(m - 1):
                continue
            out.append({"z": z, "a": a, "b": b, "chi": c2j(complete_h(xs, b - a))})
    return out


def residue_term(J, r, L, z):
    m = len(z)
    t0 = z[J] + r

    def f(t):
        v = mp.exp(1j * mp.pi * sum(z) + t * L)
        for zi in z:
            v *= mp.gamma(zi - t)
        return v

    rad = mp.mpf("0.05")
    vals = []
    for I in range(m):
        def g(a, I=I):
            t = t0 + rad * mp.expj(a)
            w = mp.mpc(1)
            for i in range(m):
                if i != I:
                    w *= z[i] - t
            return f(t) * w * 1j * rad * mp.expj(a)
        vals.append(-mp.quad(g, [0, mp.pi / 2, mp.pi, 3 * mp.pi / 2, 2 * mp.pi]) / (2j * mp.pi))
    return vals


def series_values():
    # Phi_J at a few points by summing contour-integrated residues
    out = []
    mp.mp.dps = 30
    for z, q in (([0.1, mp.mpc(0.37, 0.2), -0.45], mp.mpc(2, 1)), ([0.13, -0.21], mp.mpc(-3, 0.5))):
        zz = [mp.mpc(v) for v in z]
        m = len(zz)
        L = mp.log(q) - 1j * mp.pi * m
        for J in range(m):
            acc = [mp.mpc(0)] * m
            for r in range(60):
                term = residue_term(J, r, L, zz)
                acc = [a + t for a, t in zip(acc, term)]
                if max(abs(t) for t in term) < mp.mpf(10) ** -22 * max(abs(a) for a in acc):
                    break
            out.append({"z": [c2j(v) for v in zz], "q": c2j(q), "J": J, "phi": [c2j(v) for v in acc]})
    mp.mp.dps = 60
    return out


def central_charges():
    # log Z(O(j)) with the sector shift, along theta = 0.05, by closed-form residues at high precision
    mp.mp.dps = 160
    z = [mp.mpf("0.1"), mp.mpf("0.37"), mp.mpf("-0.45")]
    m, theta, d = 3, mp.mpf("0.05"), 3
    out = []
    for rad in (5, 20):
        logq = m * (mp.log(rad) - 2j * mp.pi * theta)
        L = logq - 1j * mp.pi * m
        phis = []
        for J in range(m):
            acc = [mp.mpc(0)] * m
            r = 0
            while True:
                b = (-1) ** r / mp.factorial(r) * mp.exp(1j * mp.pi * sum(z) + (z[J] + r) * L)
                for i in range(m):
                    if i != J:
                        b *= mp.gamma(z[i] - z[J] - r)
                term = []
                for I in range(m):
                    w = mp.mpc(1)
                    for i in range(m):
                        if i != I:
                            w *= z[i] - z[J] - r
                    term.append(b * w)
                acc = [a + t for a, t in zip(acc, term)]
                r += 1
                if r > 20 and max(abs(t) for t in term) < mp.mpf(10) ** -140:
                    break
            phis.append(acc)
        loc = []
        for I in range(m):
            den = mp.mpc(1)
            for i in range(m):
                if i != I:
                    den *= z[i] - z[I]
            loc.append(1 / den)
        for j in range(m):
            n = d - j
            v = [sum(mp.exp(2j * mp.pi * n * z[J]) * phis[J][I] for J in range(m)) for I in range(m)]
            zc = sum(v[I] * loc[I] for I in range(m))
            out.append({"r": rad, "j": j, "log_abs": float(mp.log(abs(zc))), "arg": float(mp.arg(zc))})
    mp.mp.dps = 60
    return out


def quantum_eigen():
    # eigenvalues of x * q: roots of prod (lambda - z_i) - q
    out = []
    for z, q in (([0.1, 0.37, -0.45], mp.mpc(2, 1)), ([0.13, -0.21], mp.mpc(-3, 0.5))):
        zz = [mp.mpf(v) for v in z]
        poly = [mp.mpf(1)]
        for zi in zz:
            poly = [a - zi * b for a, b in itertools.zip_longest(poly + [0], [0] + poly, fillvalue=0)]
        poly[-1] -= q
        roots = mp.polyroots(poly, maxsteps=200, extraprec=100)
        roots = sorted(roots, key=lambda x: (float(mp.re(x)), float(mp.im(x))))
        out.append({"z": z, "q": c2j(q), "eigenvalues": [c2j(x) for x in roots]})
    return out


def z3_sym2():
    # V = diag(1, w, w^2): chi_{S^2 V*}(g^k) by enumerating the 6 degree-2 monomials
    w = [0, 1, 2]
    vals = []
    for k in range(3):
        tot = 0
        for combo in itertools.combinations_with_replacement(range(3), 2):
            wt = (-sum(w[i] for i in combo) * k) % 3
            tot += mp.expj(2 * mp.pi * wt / 3)
        vals.append(round(float(mp.re(tot)), 12))
    return vals


def s3_homs():
    # S3 permuting coordinates of C^3; chi_{S^d}(g) = monomials fixed by g
    perms = list(itertools.permutations(range(3)))

    def cls(p):
        fixed = sum(1 for i in range(3) if p[i] == i)
        return {3: 0, 0: 1, 1: 2}[fixed]  # identity, 3-cycles, transpositions

    table = [[1, 1, 1], [1, 1, -1], [2, -1, 0]]
    sizes = [1, 2, 3]
    mats = {}
    for d in range(4):
        chi_s = [0, 0, 0]
        for p in perms:
            cnt = 0
            for mono in itertools.combinations_with_replacement(range(3), d):
                img = tuple(sorted(p[i] for i in mono))
                cnt += img == tuple(sorted(mono))
            chi_s[cls(p)] = cnt
        mat = []
        for a in range(3):
            row = []
            for b in range(3):
                # dim Hom_G(V_a, S^d (x) V_b)
                v = sum(sizes[c] * chi_s[c] * table[b][c] * table[a][c] for c in range(3)) / 6
                row.append(int(round(v)))
            mat.append(row)
        mats[str(d)] = mat
    return mats


def main():
    data = {
        "gamma": gamma_values(),
        "euler": euler_values(),
        "series": series_values(),
        "central_charge": central_charges(),
        "quantum_eigenvalues": quantum_eigen(),
        "z3_sym2_dual": z3_sym2(),
        "s3_hom0": s3_homs(),
        "binomial_limits": {str(m): {str(d): math.comb(d + m - 1, m - 1) if d >= 0 else 0 for d in range(-(m - 1), 5)}
                            for m in (2, 3, 4)},
    }
    path = os.path.join(os.path.dirname(__file__), "oracles.json")
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":
    main()
