"""Independent reference computations for the built-in example.

Nothing here imports the package; everything is rebuilt from the raw data
of the 9-cycle: arrows i -> i+1, identities on the diagonal, Sigma^3 = +5,
and composites of two arrows vanishing (the algebra is kQ/rad^2).
"""

import itertools

N = 9
NAMES = ["P1", "P2", "P3", "P4", "I4", "Sigma3P1", "Sigma3P2", "Sigma3P3", "Sigma3P4"]
TILTING = [0, 1, 2, 3]


def hom(a, b):
    return 1 if a == b or b == (a + 1) % N else 0


def sigma(a):
    return (a + 5) % N


def yoneda(x):
    """Composition factors of F(x) = Hom(t, x): (dim Hom(P_i, x))_i."""
    return tuple(hom(p, x) for p in TILTING)


def image_of_arrow(s0):
    """Im F(gamma) for gamma the arrow s0 -> s0+1.

    A map P_i -> s0 composed with the arrow survives only when it is the
    identity (P_i = s0); a composite of two arrows is zero in rad^2.
    """
    target = (s0 + 1) % N
    return tuple(1 if (p == s0 and hom(p, target)) else 0 for p in TILTING)


def window_labels():
    return [image_of_arrow(q) for q in range(N)]


def trivial_labels():
    # gamma: Sigma^3 s0 -> Sigma^3 s0 is an iso, so Im F(gamma) = F(Sigma^3 s0)
    return [yoneda(sigma(q)) for q in range(N)]


def reference_cone_rows():
    # alpha, beta, gamma, delta = phi(P1..P4)
    return [(0, 1, -1, 1), (-1, 0, 1, -1), (1, -1, 0, 1), (-1, 1, -1, 0)]


def admissible_by_brute_force(bound):
    rows = reference_cone_rows()
    return [v for v in itertools.product(range(-bound, bound + 1), repeat=4)
            if all(sum(r[i] * v[i] for i in range(4)) >= 0 for r in rows)]


def exchange_pairs_by_scan():
    return [(a, b) for a in range(N) for b in range(N) if hom(a, sigma(b)) == 1]


def frieze_values(phi):
    a, b, c, d = phi
    return (a, b, c, d, -a + b - c + d, -a, -b, -c, -d)


def windows_hold(values):
    """Every five consecutive a..e satisfy f(a) + f(e) = max(f(b) - f(c) + f(d), 0)."""
    return all(values[i] + values[(i + 4) % N]
               == max(values[(i + 1) % N] - values[(i + 2) % N] + values[(i + 3) % N], 0)
               for i in range(N))
