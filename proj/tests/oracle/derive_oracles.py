"""Independent numpy oracle for the derived test values.

Run from the repository root:  python3 tests/oracle/derive_oracles.py > tests/oracle_values.hpp
"""
import itertools
import math

import numpy as np

out = {}


def put(name, value):
    out[name] = float(value)


# core linear algebra
put("defect_e1_diag", np.linalg.svd(np.column_stack([[1, 0], [1 / math.sqrt(2), 1 / math.sqrt(2)]]), compute_uv=False)[-1])
u = np.array([1.0, 1.0, 1.0]) / math.sqrt(3)
# principal angles of span(e1, (1,1,1)) against span(e1, e2)
X, _ = np.linalg.qr(np.column_stack([[1, 0, 0], [1, 1, 1]]))
Y = np.eye(3)[:, :2]
cos = np.linalg.svd(X.T @ Y, compute_uv=False)
put("angle_e1_111_vs_e1e2", math.acos(min(1.0, cos[-1])))

# the fg family at x = 1
G1 = np.array([[4.0, 4, 1], [2, 3, 1], [1, 2, 1]])
ev = sorted(np.linalg.eigvals(G1).real, reverse=True)
put("g1_lambda1", ev[0])
put("g1_lambda3", ev[2])
s = np.linalg.svd(G1, compute_uv=False)
put("g1_sigma_gap1", s[0] / s[1])
put("g1_sigma_gap2", s[1] / s[2])
w, V = np.linalg.eig(G1)
v = np.real(V[:, np.argmax(abs(w))])
v = v / np.linalg.norm(v) * np.sign(v[0])
for i in range(3):
    put(f"g1_attracting_line_{i}", v[i])
put("g1_weight_length", math.log(ev[0] / ev[2]))
put("g1_root_length", math.log(ev[0] / ev[1]))

# upper triangular 2x2 with an eigenline of 2
T = np.array([[2.0, 1.0], [0.0, 0.5]])
w, V = np.linalg.eig(T)
v = np.real(V[:, np.argmax(abs(w))])
put("tri_attracting_slope", v[1] / v[0])

# golden-ratio fixed points of [[1,1],[1,2]]
A = np.array([[1.0, 1], [1, 2]])
w, V = np.linalg.eig(A)
order = np.argsort(-abs(w))
for name, idx in (("a_attracting_angle", order[0]), ("a_repelling_angle", order[1])):
    vv = V[:, idx]
    put(name, math.atan2(vv[1], vv[0]) % math.pi)


# shear with a perturbed fourth line
def wedge(*cols):
    return np.linalg.det(np.column_stack(cols))


def quotient_pcr(lo, w1, w2, w3, w4):
    # pencil of planes through the line lo in R^3, coordinates from a normal frame
    q, _ = np.linalg.qr(np.column_stack([lo, np.eye(3)]))
    frame = q[:, 1:3]
    pts = []
    for wv in (w1, w2, w3, w4):
        p = frame.T @ wv
        pts.append(p / np.linalg.norm(p))
    x1, x2, x3, x4 = pts
    w2d = lambda a, b: a[0] * b[1] - a[1] * b[0]
    return (w2d(x1, x3) / w2d(x1, x2)) * (w2d(x4, x2) / w2d(x4, x3))


e1, e2, e3 = np.eye(3)
lb = np.array([1.0, -1, 1])
ld = np.array([1.0, 1.1, 1])
# A plane enters through its direction modulo the line: e2 for A = (e1, <e1,e2>)
p1 = quotient_pcr(e1, e2, lb, ld, e3)
p2 = quotient_pcr(e3, e2, lb, ld, e1)
put("shear_perturbed_0", math.log(-p1))
put("shear_perturbed_1", math.log(-p2))

# triple ratio of random flags, for the cyclic-shift identity
rng = np.random.default_rng(7)


def rand_flag():
    l = rng.normal(size=3)
    m = rng.normal(size=3)
    return l, m


def plane_line(flag, line):
    l, m = flag
    return wedge(l, m, line)


def triple(a, b, c):
    return (plane_line(a, b[0]) / plane_line(a, c[0])) * (plane_line(b, c[0]) / plane_line(b, a[0])) * (
        plane_line(c, a[0]) / plane_line(c, b[0]))


fa, fb, fc = rand_flag(), rand_flag(), rand_flag()
for i, f in enumerate((fa, fb, fc)):
    for j in range(3):
        put(f"tr_flag{i}_line_{j}", f[0][j])
        put(f"tr_flag{i}_second_{j}", f[1][j])
put("tr_value", triple(fa, fb, fc))

# counterexample root oracle at x = 1e-6 (y = x^(-1/3) = 100)
x = 1e-6
y = x ** (-1 / 3)
roots = np.roots([1, -(4 * y + 4 * y ** -2), (4 / y + 4 * y ** 2), -1])
mods = sorted(abs(roots), reverse=True)
put("fg_ratio_at_1e-6", mods[0] / mods[1])

# SO(5,6) and SO(4,5) coefficient oracle with unit entries
def so_form(p, q):
    d = p + q
    m = p - 1
    n = q - p + 2
    K = np.zeros((m, m))
    for i in range(m):
        K[i, m - 1 - i] = (-1) ** i
    J = np.zeros((n, n))
    J[0, n - 1] = J[n - 1, 0] = (-1) ** (p - 1)
    for i in range(1, n - 1):
        J[i, i] = -1
    Q = np.zeros((d, d))
    Q[:m, d - m:] = K
    Q[m:m + n, m:m + n] = J
    Q[d - m:, :m] = (-1) ** p * K
    return Q, J


def so_E(p, q, k, v, Q, J):
    d = p + q
    g = np.eye(d)
    if k <= p - 2:
        g[k - 1, k] = v
        g[d - k - 1, d - k] = v
        return g
    g[p - 2, p - 1:q + 1] = v
    g[p - 1:q + 1, q + 1] = (-1) ** (p - 1) * (J @ v)

    def res(c):
        h = g.copy()
        h[p - 2, q + 1] = c
        return (h.T @ Q @ h - Q).ravel()

    r0 = res(0.0)
    r1 = res(1.0) - r0
    g[p - 2, q + 1] = -(r1 @ r0) / (r1 @ r1)
    return g


def unit_vbar(p, q):
    n = q - p + 2
    v = np.ones(n)
    v[-1] = (-1) ** (p - 1) * (n - 1) / 2
    return [1.0] * (p - 2), v


for p, q in ((4, 5), (5, 6)):
    Q, J = so_form(p, q)
    d = p + q
    P = np.eye(d)
    for _ in range(p - 1):
        sc, vec = unit_vbar(p, q)
        even = np.eye(d)
        odd = np.eye(d)
        for k in range(1, p):
            f = so_E(p, q, k, vec if k == p - 1 else sc[k - 1], Q, J)
            if k % 2 == 0:
                even = even @ f
            else:
                odd = odd @ f
        P = P @ even @ odd
    Pi = np.linalg.inv(P)
    for k in range(1, p - 2):
        put(f"so{p}{q}_coeff_k{k}", P[d - k - 2, d - k])
        put(f"so{p}{q}_coeff_inv_k{k}", Pi[d - k - 2, d - k])

# fixed points of the punctured-torus reference in the length-3 ball
Aref = np.array([[1.0, 1], [1, 2]])
Bref = np.array([[1.0, -1], [-1, 2]])
gens2 = {1: Aref, -1: np.linalg.inv(Aref), 2: Bref, -2: np.linalg.inv(Bref)}


def words(L):
    res = []
    frontier = [()]
    for _ in range(L):
        frontier = [w + (s,) for w in frontier for s in (1, -1, 2, -2) if not (w and w[-1] == -s)]
        res += frontier
    return res


def evaluate(g, w):
    M = np.eye(g[1].shape[0])
    for s in w:
        M = M @ g[s]
    return M


def samples(L):
    pts = []
    for w in words(L):
        M = evaluate(gens2, w)
        if abs(np.trace(M)) <= 2 + 1e-8:
            continue
        e, V = np.linalg.eig(M)
        vv = np.real(V[:, np.argmax(abs(e))])
        a = math.atan2(vv[1], vv[0]) % math.pi
        if any(min(abs(a - b) % math.pi, math.pi - abs(a - b) % math.pi) <= 1e-9 for b, _ in pts):
            continue
        pts.append((a, w))
    return pts


pts3 = samples(3)
put("ball3_fixed_points", len(pts3))
angles = sorted(a for a, _ in pts3)
put("ball3_min_separation", min(np.diff(angles + [angles[0] + math.pi])))


def attr(M, k):
    e, V = np.linalg.eig(M)
    i = np.argsort(-abs(e), kind="stable")
    q, _ = np.linalg.qr(np.real(V[:, i[:k]]))
    return q


# strongly positively ratioed minimum for the fg family at x = 1
G = np.array([[4.0, 4, 1], [2, 3, 1], [1, 2, 1]])
D = np.array([[4.0, -4, 1], [-2, 3, -1], [1, -2, 1]])
gens3 = {1: G, -1: np.linalg.inv(G), 2: D, -2: np.linalg.inv(D)}
sorted_pts = sorted(pts3)
F = [(attr(evaluate(gens3, w), 1), attr(evaluate(gens3, w), 2)) for _, w in sorted_pts]


def gcr(V1, W2, W3, V4):
    det = lambda a, b: np.linalg.det(np.column_stack([a, b]))
    return det(V1, W3) / det(V1, W2) * det(V4, W2) / det(V4, W3)


best = math.inf
for q4 in itertools.combinations(range(len(F)), 4):
    for rev in (0, 1):
        for r in range(4):
            o = [q4[(r - j) % 4] if rev else q4[(r + j) % 4] for j in range(4)]
            best = min(best, gcr(F[o[0]][0], F[o[1]][1], F[o[2]][1], F[o[3]][0]))
put("fg1_min_gcr_ball3", best)


# raw H_1 defect minimum for the (5,1) Fuchsian locus on the same samples
def sym(M, d):
    n = d - 1
    a, b = M[0]
    c, dd = M[1]
    R = np.zeros((d, d))
    for i in range(d):
        p = np.array([1.0])
        for _ in range(n - i):
            p = np.convolve(p, [a, b])
        for _ in range(i):
            p = np.convolve(p, [c, dd])
        R[i, :] = p
    wts = np.sqrt([math.comb(n, i) for i in range(d)])
    return (wts[:, None] * R) / wts[None, :]


def blockdiag(ms):
    d = sum(m.shape[0] for m in ms)
    R = np.zeros((d, d))
    o = 0
    for m in ms:
        s_ = m.shape[0]
        R[o:o + s_, o:o + s_] = m
        o += s_
    return R


fl = [(attr(blockdiag([sym(evaluate(gens2, w), 5), np.eye(1)]), 1),
       attr(blockdiag([sym(evaluate(gens2, w), 5), np.eye(1)]), 4)) for _, w in pts3]
mn = 1.0
for z in range(len(fl)):
    for x_, y_ in itertools.combinations([i for i in range(len(fl)) if i != z], 2):
        S = np.column_stack([fl[x_][0], fl[y_][0], fl[z][1]])
        mn = min(mn, np.linalg.svd(S, compute_uv=False)[-1])
put("fuchsian51_h1_min_defect_ball3", mn)

print("#pragma once")
print("// Generated by tests/oracle/derive_oracles.py; do not edit.")
print()
print("namespace oracle {")
for k, v in out.items():
    name = k.replace("-", "m")
    print(f"inline constexpr double {name} = {v!r};")
print("}  // namespace oracle")
