"""Pure-Python reference kernels; same contract as the compiled ``_kernels``."""
from itertools import permutations


def scan_cpa(color, n, n_colors):
    """All color-permuting vertex permutations, in lexicographic order.

    ``color`` is a row-major n*n table with -1 on non-edges.  Every one of
    the n! permutations is tested; the color map is forced edge by edge.
    """
    edges = [(i, j, color[i * n + j]) for i in range(n) for j in range(i + 1, n) if color[i * n + j] >= 0]
    found = []
    for p in permutations(range(n)):
        phi = [-1] * n_colors
        used = [False] * n_colors
        for i, j, c in edges:
            d = color[p[i] * n + p[j]]
            if d < 0:
                break
            f = phi[c]
            if f < 0:
                if used[d]:
                    break
                phi[c] = d
                used[d] = True
            elif f != d:
                break
        else:
            found.append(p)
    return found


def count_special_violations(images, n):
    """Number of sum classes on which the images' pairwise sums disagree."""
    bad = 0
    for s in range(n):
        ref = -1
        for a in range(n):
            b = (s - a) % n
            if a >= b:
                continue
            t = (images[a] + images[b]) % n
            if ref < 0:
                ref = t
            elif t != ref:
                bad += 1
                break
    return bad
