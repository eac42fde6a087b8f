"""Symbolic oracle for the frozen reference values used in the test suite.

Run with ``python3 tests/oracles/derive_values.py``; it prints every value
the tests hard-code.  The package never imports sympy; this script is the
independent derivation the frozen numbers come from.
"""

import sympy as sp

s, t, u1, u2 = sp.symbols("s t u1 u2", real=True)


def frenet(alpha):
    d1 = alpha.diff(s)
    d2 = d1.diff(s)
    d3 = d2.diff(s)
    kappa = sp.simplify(sp.sqrt(d2.dot(d2)))
    N = sp.simplify(d2 / kappa)
    B = sp.simplify(d1.cross(N))
    tau = sp.simplify(d3.dot(B) / kappa)
    return kappa, tau, d1, N, B


def main():
    r2 = sp.sqrt(2)
    helix = sp.Matrix([sp.cos(s / r2), sp.sin(s / r2), s / r2])
    kappa, tau, T, N, B = frenet(helix)
    print("helix kappa, tau:", kappa, tau)

    x, y, z = helix
    grad = sp.Matrix([2 * x, 2 * y, 1])
    print("|grad f| along helix:", sp.simplify(sp.sqrt(grad.dot(grad))))
    print("<grad f, T>:", sp.simplify(grad.dot(T)))
    print("cos theta (grad, T):", sp.nsimplify(sp.simplify(grad.dot(T) / sp.sqrt(grad.dot(grad)))))
    print("f(alpha(s)):", sp.simplify(x**2 + y**2 + z))
    g_t = sp.simplify(grad.dot(T))
    print("lift cos:", sp.simplify(g_t / sp.sqrt(1 + g_t**2)))
    print("tangent . e3:", sp.simplify(T[2]))

    # circle (cos s, sin s, 0)
    circ = sp.Matrix([sp.cos(s), sp.sin(s), 0])
    k, tt, _, _, Bc = frenet(circ)
    print("circle kappa, tau, B:", k, tt, list(Bc))

    # helix of radius r, pitch c: tau/kappa = c/r
    r, c = sp.Rational(2), sp.Rational(3)
    w = sp.sqrt(r**2 + c**2)
    hx = sp.Matrix([r * sp.cos(s / w), r * sp.sin(s / w), c * s / w])
    k, tt, *_ = frenet(hx)
    print("helix r=2 c=3 kappa, tau, ratio:", k, tt, sp.simplify(tt / k))

    # derivative oracle for (cos s, sin s, s) at s = 0 and s = 1
    cur = sp.Matrix([sp.cos(s), sp.sin(s), s])
    for order in (1, 2, 3):
        print(f"(cos, sin, s) order {order} at 0:", list(cur.diff(s, order).subs(s, 0)))

    # derivative oracles for the h-halving convergence curves
    for label, cur in (("trig-poly", sp.Matrix([sp.cos(s), sp.sin(2 * s), s**3 / 3])),
                       ("exponential", sp.Matrix([sp.exp(s), sp.exp(-s), s * sp.exp(s / 2)]))):
        for order in (1, 2, 3):
            print(f"{label} order {order}:", [sp.factor(c) for c in cur.diff(s, order)])

    # sphere metric and Christoffel symbols
    X = sp.Matrix([sp.sin(u1) * sp.cos(u2), sp.sin(u1) * sp.sin(u2), sp.cos(u1)])
    J = X.jacobian([u1, u2])
    g = sp.simplify(J.T * J)
    ginv = g.inv()
    us = [u1, u2]
    gamma = [[[sp.simplify(sum(ginv[i, m] * (g[m, l].diff(us[j]) + g[m, j].diff(us[l])
                                              - g[j, l].diff(us[m])) / 2 for m in range(2)))
               for l in range(2)] for j in range(2)] for i in range(2)]
    print("sphere metric:", g)
    print("sphere Gamma^1_22, Gamma^2_12:", gamma[0][1][1], gamma[1][0][1])
    val = {u1: sp.Rational(7, 10), u2: sp.Rational(3, 10)}
    print("sphere Gamma^1_22(0.7), Gamma^2_12(0.7):",
          sp.N(gamma[0][1][1].subs(val), 17), sp.N(gamma[1][0][1].subs(val), 17))

    # graph z = u1: split of d = (0, 0, 1)
    Jg = sp.Matrix([[1, 0], [0, 1], [1, 0]])
    P = Jg * (Jg.T * Jg).inv() * Jg.T
    d = sp.Matrix([0, 0, 1])
    print("graph z=u1 tangential part of e3:", list(P * d), "normal:", list(d - P * d))

    # cylinder geodesic with a = c = 1, f = u2: slope of f along alpha
    a_, c_ = sp.Integer(1), sp.Integer(1)
    print("cylinder slope:", a_ / sp.sqrt(a_**2 + c_**2))

    # intrinsic helix in S^1 x R^2 (flat chart): r = 1/2, c = 1
    r, c = sp.Rational(1, 2), sp.Integer(1)
    w2 = r**2 + c**2
    print("s1r2 helix kappa, tau, cot theta:", r / w2, c / w2, sp.simplify((c / sp.sqrt(w2))
                                                                        / (r / sp.sqrt(w2))))

    # helix line on the cone of half angle pi/6 w.r.t. its axis
    beta = sp.pi / 6
    print("cone tangential length of e3:", sp.cos(beta), sp.N(sp.cos(beta), 17))

    # helicoid along u1 = 1 with d = e3: tangential length
    H = sp.Matrix([u1 * sp.cos(u2), u1 * sp.sin(u2), u2])
    Jh = H.jacobian([u1, u2])
    Ph = Jh * (Jh.T * Jh).inv() * Jh.T
    tl = sp.simplify(sp.sqrt((Ph * d).dot(Ph * d)))
    print("helicoid tangential length of e3:", tl, "at u1=1:", sp.simplify(tl.subs(u1, 1)))

    # constancy example [1]*7 + [2]
    xs = [1] * 7 + [2]
    mean = sp.Rational(sum(xs), len(xs))
    dev = max(abs(v - mean) for v in xs)
    print("constancy mean, dev, rel:", mean, dev, dev / mean)

    # offset line under |x|: <grad, T> = s / sqrt(1 + s^2) with point (-3, 1, 0)
    line = sp.Matrix([s - 3, 1, 0])
    gl = line / sp.sqrt(line.dot(line))
    print("line/|x| <grad,T>:", sp.simplify(gl.dot(sp.Matrix([1, 0, 0]))))


if __name__ == "__main__":
    main()
