"""Independent reference computations for the tests.

Nothing here imports the library's algorithms; each oracle is the most
direct (and slowest) definition of the quantity it computes.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import reduce


def det_fraction(M):
    """Determinant by Gaussian elimination over the rationals."""
    a = [[Fraction(x) for x in r] for r in M]
    n = len(a)
    det = Fraction(1)
    for j in range(n):
        piv = next((i for i in range(j, n) if a[i][j] != 0), None)
        if piv is None:
            return 0
        if piv != j:
            a[j], a[piv] = a[piv], a[j]
            det = -det
        det *= a[j][j]
        for i in range(j + 1, n):
            q = a[i][j] / a[j][j]
            a[i] = [x - q * y for x, y in zip(a[i], a[j])]
    assert det.denominator == 1
    return int(det)


def determinantal_divisors(M):
    """``d_k`` = gcd of all ``k x k`` minors, for ``k = 0..min(m, n)``."""
    m = len(M)
    n = len(M[0]) if m else 0
    out = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, det_fraction([[M[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


def invariant_factors_by_minors(M):
    """Invariant factors ``d_k / d_{k-1}`` padded with zeros past the rank."""
    d = determinantal_divisors(M)
    out = []
    for k in range(1, len(d)):
        out.append(0 if d[k] == 0 else d[k] // d[k - 1])
    return out


def rank_over_q(M):
    a = [[Fraction(x) for x in r] for r in M]
    r = 0
    ncols = len(a[0]) if a else 0
    for j in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][j] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][j] != 0:
                q = a[i][j] / a[r][j]
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


# -- groups -----------------------------------------------------------------


def closure(elements, mul, gens, one):
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def abelianization_order(elements, mul, inv, one):
    """``|G| / |[G, G]|`` with the derived subgroup generated by all commutators."""
    comms = {mul(mul(inv(a), inv(b)), mul(a, b)) for a in elements for b in elements}
    return len(elements) // len(closure(elements, mul, list(comms), one))


# -- rings ------------------------------------------------------------------


def additive_order(x, add, zero):
    n, y = 1, x
    while y != zero:
        y = add(y, x)
        n += 1
    return n


def characteristic_by_orders(elements, add, zero):
    """The exponent of the additive group: lcm of all element orders."""
    return reduce(math.lcm, (additive_order(x, add, zero) for x in elements), 1)


# -- simplicial homology ----------------------------------------------------


def all_faces(facets):
    out = set()
    for F in facets:
        F = tuple(sorted(F))
        for k in range(1, len(F) + 1):
            out.update(itertools.combinations(F, k))
    return out


def betti_over_q(facets, nmax):
    """Betti numbers from ranks of boundary matrices over Q, ``b_0..b_nmax``."""
    faces = all_faces(facets)
    by_dim = {}
    for s in faces:
        by_dim.setdefault(len(s) - 1, []).append(s)
    for v in by_dim.values():
        v.sort()

    def boundary_rank(k):
        # d_k: C_k -> C_{k-1}
        if k == 0 or k not in by_dim or (k - 1) not in by_dim:
            return 0
        rows = {s: i for i, s in enumerate(by_dim[k - 1])}
        M = [[0] * len(by_dim[k]) for _ in rows]
        for j, s in enumerate(by_dim[k]):
            for i in range(len(s)):
                M[rows[s[:i] + s[i + 1 :]]][j] = (-1) ** i
        return rank_over_q(M)

    return tuple(
        len(by_dim.get(k, [])) - boundary_rank(k) - boundary_rank(k + 1) for k in range(nmax + 1)
    )
