"""Symmetries of edge-colored graphs.

Covers plain graph automorphisms, color-permuting automorphisms (CPA),
special and affine bijections of Z_n, and graph Lie automorphisms (GLA)
of directed graphs.  Enumeration has a brute-force path and, for the
G_n / H_n families, a closed-form fast path; ``method="both"`` runs the
two and insists they agree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from . import kernels
from .config import resolve_cap
from .graph import (
    DirectedEdgeColoredGraph,
    EdgeColoredGraph,
    GraphError,
    check_odd_order,
    underlying_undirected,
)
from .groups import Perm, PermutationGroup, check_perm, compose, identity

__all__ = [
    "AutomorphismError",
    "SignedColor",
    "AffineWitness",
    "HalfSplit",
    "LemmaReport",
    "is_graph_automorphism",
    "color_permutation_witness",
    "is_special",
    "affine_witness",
    "is_gn_pattern",
    "is_hn_pattern",
    "enumerate_cpa",
    "gla_witness",
    "enumerate_gla",
    "half_split",
    "verify_stabilizer_lemmas",
    "witness_to_dict",
]

METHODS = ("brute", "fast", "both")


class AutomorphismError(ValueError):
    pass


class SignedColor(NamedTuple):
    color: int
    sign: int


class AffineWitness(NamedTuple):
    translation: int
    unit: int


class HalfSplit(NamedTuple):
    right: frozenset[int]
    left: frozenset[int]


def _as_perm(sigma, n: int) -> Perm:
    try:
        return check_perm(sigma, n)
    except ValueError as exc:
        raise AutomorphismError(str(exc)) from None


def is_graph_automorphism(sigma: Sequence[int], G: EdgeColoredGraph) -> bool:
    """True iff sigma maps the (uncolored) edge set onto itself."""
    p = _as_perm(sigma, G.n_vertices)
    # an injective map of a finite edge set into itself is onto
    return all(G.has_edge(p[u], p[v]) for u, v in G.coloring)


def color_permutation_witness(sigma: Sequence[int], G: EdgeColoredGraph) -> tuple[int, ...] | None:
    """The color permutation forced by sigma, or None if it is not well defined.

    Raises AutomorphismError if sigma is not a graph automorphism of G.
    """
    p = _as_perm(sigma, G.n_vertices)
    if not is_graph_automorphism(p, G):
        raise AutomorphismError(f"{list(p)} is not a graph automorphism")
    phi: list[int | None] = [None] * G.n_colors
    for (u, v), c in G.coloring.items():
        d = G.color(p[u], p[v])
        if phi[c] is None:
            phi[c] = d
        elif phi[c] != d:
            return None
    # coloring is surjective, so phi is total; only injectivity is left
    if len(set(phi)) != G.n_colors:
        return None
    return tuple(phi)


def is_special(tau: Sequence[int], n: int) -> bool:
    """Whether tau preserves equality of sums of distinct pairs in Z_n."""
    p = _as_perm(tau, n)
    return kernels.count_special_violations(p, n) == 0


def affine_witness(f: Sequence[int], n: int) -> AffineWitness | None:
    p = _as_perm(f, n)
    a = p[0]
    u = (p[1] - p[0]) % n if n > 1 else 0
    if math.gcd(u, n) != 1:
        return None
    if any(p[x] != (u * x + a) % n for x in range(n)):
        return None
    return AffineWitness(a, u)


def is_gn_pattern(G) -> bool:
    """Re-derive the G_n coloring: complete graph on Z_n, odd n, c({i,j}) = i+j."""
    if not isinstance(G, EdgeColoredGraph):
        return False
    n = G.n_vertices
    if n < 3 or n % 2 == 0 or G.n_colors != n or len(G.coloring) != n * (n - 1) // 2:
        return False
    return all(G.color(i, j) == (i + j) % n for i in range(n) for j in range(i + 1, n))


def _hn_forward(u: int, v: int, n: int) -> bool:
    # (u, v) = (m + i, m - i) with 1 <= i <= (n-1)/2, where 2m = u + v
    half = (n + 1) // 2  # inverse of 2 mod n
    m = (u + v) * half % n
    return 1 <= (u - m) % n <= (n - 1) // 2


def is_hn_pattern(H) -> bool:
    if not isinstance(H, DirectedEdgeColoredGraph):
        return False
    n = H.n_vertices
    if not is_gn_pattern(underlying_undirected(H)):
        return False
    return all(_hn_forward(u, v, n) for u, v in H.coloring)


def _check_method(method: str):
    if method not in METHODS:
        raise AutomorphismError(f"method must be one of {METHODS}, got {method!r}")


def _brute_cpa(G: EdgeColoredGraph, cap: int | None) -> list[Perm]:
    limit = resolve_cap(cap)
    if G.n_vertices > limit:
        raise AutomorphismError(f"brute force over {G.n_vertices}! permutations exceeds cap {limit}")
    return kernels.scan_cpa(G.color_matrix(), G.n_vertices, G.n_colors)


def _affine_maps(n: int) -> list[Perm]:
    units = [u for u in range(1, n) if math.gcd(u, n) == 1]
    return sorted(tuple((u * x + a) % n for x in range(n)) for u in units for a in range(n))


def _dihedral_maps(n: int) -> list[Perm]:
    rot = [tuple((x + k) % n for x in range(n)) for k in range(n)]
    refl = [tuple((k - x) % n for x in range(n)) for k in range(n)]
    return sorted(rot + refl)


def _agree(label: str, brute: list[Perm], fast: list[Perm]):
    if sorted(brute) != sorted(fast):
        extra = sorted(set(brute) ^ set(fast))[:3]
        raise AutomorphismError(f"{label}: brute and fast paths disagree, e.g. {extra}")


def enumerate_cpa(G: EdgeColoredGraph, method: str = "brute", cap: int | None = None) -> PermutationGroup:
    """CPA(G) as a permutation group.

    ``fast`` applies only to graphs that pass :func:`is_gn_pattern`, and
    emits the n * phi(n) affine maps of Z_n.
    """
    _check_method(method)
    if method in ("fast", "both") and not is_gn_pattern(G):
        raise AutomorphismError("fast path requires the G_n coloring pattern")
    brute = _brute_cpa(G, cap) if method in ("brute", "both") else None
    fast = _affine_maps(G.n_vertices) if method in ("fast", "both") else None
    if brute is not None and fast is not None:
        _agree("CPA", brute, fast)
    elements = brute if brute is not None else fast
    return PermutationGroup.from_elements(elements, G.n_vertices, verify=False)


def gla_witness(chi: Sequence[int], H: DirectedEdgeColoredGraph) -> tuple[SignedColor, ...] | None:
    """Signed color permutation forced by chi over E and its reversal.

    Returns None when chi is a CPA of the underlying graph but the forced
    signed map is inconsistent.  Raises AutomorphismError if chi is not a
    CPA of the underlying graph at all.
    """
    p = _as_perm(chi, H.n_vertices)
    Hu = underlying_undirected(H)
    if not is_graph_automorphism(p, Hu) or color_permutation_witness(p, Hu) is None:
        raise AutomorphismError(f"{list(p)} is not a color permuting automorphism of the underlying graph")
    phi: list[SignedColor | None] = [None] * H.n_colors
    # reversed edges carry -Z and map to -phi(Z); checking E alone covers them
    for (u, v), c in H.coloring.items():
        image = SignedColor(*H.signed_color(p[u], p[v]))
        if phi[c] is None:
            phi[c] = image
        elif phi[c] != image:
            return None
    if len({s.color for s in phi}) != H.n_colors:
        return None
    return tuple(phi)


def _gla_members(H: DirectedEdgeColoredGraph, pool: list[Perm]) -> list[Perm]:
    return [chi for chi in pool if gla_witness(chi, H) is not None]


def enumerate_gla(H: DirectedEdgeColoredGraph, method: str = "brute", cap: int | None = None) -> PermutationGroup:
    """GLA(H) as a permutation group.

    The brute path filters CPA(H_u) (computed by brute force when
    ``n <= cap``, else by the affine formula when H_u has the G_n
    pattern).  The fast path emits the 2n rotations and reflections of
    Z_n and requires :func:`is_hn_pattern`.
    """
    _check_method(method)
    n = H.n_vertices
    if method in ("fast", "both") and not is_hn_pattern(H):
        raise AutomorphismError("fast path requires the H_n pattern")
    brute = None
    if method in ("brute", "both"):
        Hu = underlying_undirected(H)
        if n <= resolve_cap(cap):
            pool = _brute_cpa(Hu, cap)
        elif is_gn_pattern(Hu):
            pool = _affine_maps(n)
        else:
            raise AutomorphismError(f"brute force over {n}! permutations exceeds cap {resolve_cap(cap)}")
        brute = _gla_members(H, pool)
    fast = _dihedral_maps(n) if method in ("fast", "both") else None
    if brute is not None and fast is not None:
        _agree("GLA", brute, fast)
    elements = brute if brute is not None else fast
    return PermutationGroup.from_elements(elements, n, verify=False)


def witness_to_dict(sigma: Sequence[int], phi) -> dict:
    """Serialize a witness; plain color maps get sign +1 throughout."""
    entries = []
    for item in phi:
        if isinstance(item, tuple):
            entries.append({"color": item[0], "sign": item[1]})
        else:
            entries.append({"color": item, "sign": 1})
    return {"sigma": list(sigma), "phi": entries}


def half_split(n: int) -> HalfSplit:
    check_odd_order(n)
    h = (n - 1) // 2
    return HalfSplit(frozenset(range(1, h + 1)), frozenset(range(h + 1, n)))


@dataclass
class LemmaReport:
    n: int
    checks: dict[str, bool] = field(default_factory=dict)
    counterexamples: dict[str, list] = field(default_factory=dict)
    gla_order: int = 0
    stabilizer: list[Perm] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, bad: list):
        self.checks[name] = not bad
        if bad:
            self.counterexamples[name] = bad[:5]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "checks": dict(sorted(self.checks.items())),
            "counterexamples": {
                k: [list(x) if isinstance(x, tuple) else x for x in v] for k, v in sorted(self.counterexamples.items())
            },
            "gla_order": self.gla_order,
            "stabilizer": [list(s) for s in self.stabilizer],
        }


def verify_stabilizer_lemmas(n: int, cap: int | None = None) -> LemmaReport:
    """Exhaustively check the half-set lemmas and Stab(0) = {id, -id} for H_n.

    GLA(H_n) comes from the brute path: the CPA pool is scanned by brute
    force when n is within the cap and otherwise taken from the affine
    formula, which the brute scan confirms at every n it can reach.
    """
    from .graph import build_hn

    split = half_split(n)
    R = split.right
    report = LemmaReport(n)

    bad_units = []
    for u in range(2, n):
        if math.gcd(u, n) != 1:
            continue
        image = frozenset(u * x % n for x in R)
        if image == R:
            bad_units.append(u)
    report.record("unit_moves_R", bad_units)

    H = build_hn(n)
    try:
        gla = enumerate_gla(H, "brute", cap=cap)
    except (AutomorphismError, GraphError) as exc:
        report.record("gla_enumerated", [str(exc)])
        return report
    report.gla_order = gla.order
    ident = identity(n)
    neg = tuple((-x) % n for x in range(n))
    stab = [g for g in gla.elements if g[0] == 0]
    report.stabilizer = stab

    bad_r = []
    for chi in stab:
        hits = [k for k in R if chi[k] in R]
        if hits and frozenset(chi[k] for k in R) != R:
            bad_r.append(chi)
    report.record("R_preserved_or_swapped", bad_r)
    report.record("stabilizer_involutions", [chi for chi in stab if compose(chi, chi) != ident])
    report.record("stabilizer_is_pm_id", [] if sorted(stab) == sorted({ident, neg}) else stab)
    report.record("orbit_stabilizer_equation", [] if gla.order == n * len(stab) else [(gla.order, n, len(stab))])
    return report
