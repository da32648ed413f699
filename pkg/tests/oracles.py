"""Independent reference computations used to freeze expected values.

These deliberately avoid the library's algorithms: colour permutations are
searched over all of Sym(colors) rather than forced edge by edge, special
bijections are tested on every quadruple, and so on.
"""
import math
from fractions import Fraction
from itertools import permutations, product


def cpa_by_search(n_vertices, n_colors, coloring):
    """CPA by trying every (vertex perm, colour perm) pair."""
    def col(a, b):
        return coloring.get((min(a, b), max(a, b)))

    found = []
    for sigma in permutations(range(n_vertices)):
        if not all(col(sigma[u], sigma[v]) is not None for u, v in coloring):
            continue
        for phi in permutations(range(n_colors)):
            if all(phi[c] == col(sigma[u], sigma[v]) for (u, v), c in coloring.items()):
                found.append(sigma)
                break
    return found


def gla_by_search(n_vertices, n_colors, dcoloring):
    """GLA by trying every permutation of the signed colour set."""
    signed = [(c, s) for c in range(n_colors) for s in (1, -1)]

    def col(a, b):
        if (a, b) in dcoloring:
            return (dcoloring[(a, b)], 1)
        if (b, a) in dcoloring:
            return (dcoloring[(b, a)], -1)
        return None

    arcs = list(dcoloring) + [(b, a) for a, b in dcoloring]
    found = []
    for sigma in permutations(range(n_vertices)):
        if any(col(sigma[a], sigma[b]) is None for a, b in arcs):
            continue
        for images in permutations(signed):
            phi = dict(zip(signed, images))
            if all(phi[col(a, b)] == col(sigma[a], sigma[b]) for a, b in arcs):
                found.append(sigma)
                break
    return found


def special_by_quadruples(tau, n):
    for a, b, c, d in product(range(n), repeat=4):
        if a != b and c != d and (a + b) % n == (c + d) % n:
            if (tau[a] + tau[b]) % n != (tau[c] + tau[d]) % n:
                return False
    return True


def affine_by_search(f, n):
    """All (translation, unit) pairs reproducing f; at most one exists."""
    return [
        (a, u)
        for u in range(n)
        for a in range(n)
        if math.gcd(u, n) == 1 and all(f[x] == (u * x + a) % n for x in range(n))
    ]


def rank_by_gauss(rows):
    """Plain Gauss-Jordan over Fractions."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    r = 0
    for col in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col] / m[r][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def closure_by_products(gens, n):
    """Group generated by gens via repeated products until stable."""
    ident = tuple(range(n))
    elems = {ident, *map(tuple, gens)}
    while True:
        new = {tuple(a[x] for x in b) for a in elems for b in elems} | elems
        if new == elems:
            return elems
        elems = new


def gla_by_forcing(n_vertices, dcoloring):
    """GLA over all of S_n, forcing a signed colour map on E and its reversal."""
    def col(a, b):
        if (a, b) in dcoloring:
            return (dcoloring[(a, b)], 1)
        if (b, a) in dcoloring:
            return (dcoloring[(b, a)], -1)
        return None

    arcs = list(dcoloring) + [(b, a) for a, b in dcoloring]
    found = []
    for sigma in permutations(range(n_vertices)):
        phi = {}
        ok = True
        for a, b in arcs:
            img = col(sigma[a], sigma[b])
            if img is None or phi.setdefault(col(a, b), img) != img:
                ok = False
                break
        if ok and len(set(phi.values())) == len(phi):
            found.append(sigma)
    return found
