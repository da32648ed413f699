"""Finite permutation groups on {0, ..., degree-1}.

Permutations are tuples of images.  Products compose right to left:
``compose(a, b)`` is ``x -> a[b[x]]``.  A group keeps its elements sorted
lexicographically, which is the canonical order used in every report.
"""
from __future__ import annotations

import math
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "GroupError",
    "Perm",
    "PermutationGroup",
    "GroupIdentification",
    "identity",
    "compose",
    "inverse",
    "perm_order",
    "check_perm",
    "closure",
    "orbit",
    "stabilizer",
    "build_cyclic",
    "build_holomorph",
    "build_dihedral",
    "is_isomorphic",
    "verify_isomorphism",
    "identify",
    "totient",
]

Perm = tuple[int, ...]

DEFAULT_CLOSURE_BOUND = 10**6
DEFAULT_ISO_BOUND = 10**4
EXHAUSTIVE_HOM_CHECK = 200


class GroupError(ValueError):
    pass


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    return tuple(a[x] for x in b)


def inverse(a: Sequence[int]) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def perm_order(a: Sequence[int]) -> int:
    seen = [False] * len(a)
    order = 1
    for start in range(len(a)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = a[x]
            length += 1
        order = math.lcm(order, length)
    return order


def check_perm(a, degree: int | None = None) -> Perm:
    """Return ``a`` as a tuple, raising GroupError unless it is a bijection."""
    p = tuple(a)
    if degree is not None and len(p) != degree:
        raise GroupError(f"permutation {list(p)} has length {len(p)}, expected {degree}")
    if any(isinstance(x, bool) or not isinstance(x, int) for x in p) or sorted(p) != list(range(len(p))):
        raise GroupError(f"{list(p)} is not a permutation of 0..{len(p) - 1}")
    return p


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


class PermutationGroup:
    """A finite group of permutations, stored as its full sorted element list."""

    __slots__ = ("degree", "elements", "generators", "_members")

    def __init__(self, degree: int, elements: Iterable[Perm], generators: Iterable[Perm]):
        self.degree = degree
        self.elements: tuple[Perm, ...] = tuple(sorted(set(elements)))
        self.generators: tuple[Perm, ...] = tuple(generators)
        self._members = frozenset(self.elements)

    @classmethod
    def from_elements(cls, elements: Iterable[Sequence[int]], degree: int, verify: bool = True):
        """Wrap a known element set, deriving a small generating set greedily."""
        elems = {check_perm(e, degree) for e in elements}
        if verify:
            _check_axioms(elems, degree)
        return cls(degree, elems, _greedy_generators(elems, degree))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return identity(self.degree)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, item):
        return tuple(item) in self._members

    def __eq__(self, other):
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return self.degree == other.degree and self._members == other._members

    def __hash__(self):
        return hash((self.degree, self._members))

    def __repr__(self):
        return f"PermutationGroup(degree={self.degree}, order={self.order})"

    def is_group(self) -> bool:
        try:
            _check_axioms(self._members, self.degree)
        except GroupError:
            return False
        return True

    def to_dict(self) -> dict:
        return {"degree": self.degree, "generators": [list(g) for g in self.generators], "order": self.order}

    @classmethod
    def from_dict(cls, data) -> "PermutationGroup":
        try:
            degree = data["degree"]
            gens = data["generators"]
            order = data["order"]
        except (KeyError, TypeError):
            raise GroupError("group JSON needs keys degree, generators, order") from None
        group = closure(gens, degree)
        if group.order != order:
            raise GroupError(f"generators give a group of order {group.order}, file says {order}")
        return group


def _check_axioms(elems, degree):
    elems = set(elems)
    if identity(degree) not in elems:
        raise GroupError("identity missing")
    for a in elems:
        if inverse(a) not in elems:
            raise GroupError(f"inverse of {list(a)} missing")
        for b in elems:
            if compose(a, b) not in elems:
                raise GroupError(f"product of {list(a)} and {list(b)} missing")


def _greedy_generators(elems, degree) -> tuple[Perm, ...]:
    # largest-order elements first keeps generating sets short
    gens: list[Perm] = []
    current = {identity(degree)}
    for g in sorted(elems, key=lambda p: (-perm_order(p), p)):
        if g in current:
            continue
        gens.append(g)
        current = set(closure(gens, degree).elements)
        if len(current) == len(elems):
            break
    return tuple(gens)


def closure(generators: Iterable[Sequence[int]], degree: int, bound: int = DEFAULT_CLOSURE_BOUND) -> PermutationGroup:
    gens = tuple(check_perm(g, degree) for g in generators)
    ident = identity(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > bound:
                    raise GroupError(f"closure exceeded bound of {bound} elements")
                queue.append(y)
    return PermutationGroup(degree, seen, gens)


def orbit(G: PermutationGroup, point: int) -> frozenset[int]:
    if not 0 <= point < G.degree:
        raise GroupError(f"point {point} outside degree {G.degree}")
    gens = G.generators or (G.identity,)
    seen = {point}
    queue = [point]
    while queue:
        x = queue.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def stabilizer(G: PermutationGroup, point: int) -> PermutationGroup:
    orb = orbit(G, point)
    fixing = [g for g in G.elements if g[point] == point]
    if len(orb) * len(fixing) != G.order:
        raise GroupError(f"orbit-stabilizer failed: {len(orb)} * {len(fixing)} != {G.order}")
    return PermutationGroup.from_elements(fixing, G.degree, verify=False)


def build_cyclic(m: int) -> PermutationGroup:
    if m == 1:
        return PermutationGroup(1, [(0,)], ())
    return closure([tuple((x + 1) % m for x in range(m))], m)


def build_holomorph(n: int) -> PermutationGroup:
    """All affine maps x -> u*x + a of Z_n with u a unit."""
    if n < 2:
        raise GroupError("holomorph needs n >= 2")
    units = [u for u in range(1, n) if math.gcd(u, n) == 1]
    elems = [tuple((u * x + a) % n for x in range(n)) for u in units for a in range(n)]
    return PermutationGroup.from_elements(elems, n, verify=False)


def build_dihedral(n: int) -> PermutationGroup:
    """Rotations x -> x + k and reflections x -> k - x of Z_n."""
    if n < 3:
        raise GroupError("dihedral group needs n >= 3")
    rot = tuple((x + 1) % n for x in range(n))
    flip = tuple((-x) % n for x in range(n))
    return closure([rot, flip], n)


# -- isomorphism -------------------------------------------------------------

class _Indexed:
    """Elements of a group numbered 0..|G|-1 with a full multiplication table."""

    def __init__(self, G: PermutationGroup):
        self.elements = G.elements
        self.index = {g: i for i, g in enumerate(G.elements)}
        self.ident = self.index[G.identity]
        self.mul = [[self.index[compose(a, b)] for b in G.elements] for a in G.elements]
        self.orders = [perm_order(g) for g in G.elements]


def _extend(gens: list[int], images: list[int], A: _Indexed, B: _Indexed) -> dict[int, int] | None:
    """Extend gens -> images along the Cayley graph; None on any conflict."""
    f = {A.ident: B.ident}
    used = {B.ident}
    queue = deque([A.ident])
    while queue:
        x = queue.popleft()
        fx = f[x]
        for g, h in zip(gens, images):
            y = A.mul[g][x]
            fy = B.mul[h][fx]
            known = f.get(y)
            if known is None:
                if fy in used:
                    return None
                f[y] = fy
                used.add(fy)
                queue.append(y)
            elif known != fy:
                return None
    return f


def verify_isomorphism(iso: dict, A: PermutationGroup, B: PermutationGroup, samples: int = 20000) -> bool:
    """Check bijectivity and f(a*b) = f(a)*f(b); exhaustive for small groups."""
    if A.order != B.order or len(iso) != A.order:
        return False
    if set(iso) != set(A.elements) or set(iso.values()) != set(B.elements):
        return False
    if A.order <= EXHAUSTIVE_HOM_CHECK:
        pairs = ((a, b) for a in A.elements for b in A.elements)
    else:
        rng = random.Random(0)
        pairs = ((rng.choice(A.elements), rng.choice(A.elements)) for _ in range(samples))
    return all(iso[compose(a, b)] == compose(iso[a], iso[b]) for a, b in pairs)


def is_isomorphic(A: PermutationGroup, B: PermutationGroup, bound: int = DEFAULT_ISO_BOUND) -> dict[Perm, Perm] | None:
    """A verified isomorphism A -> B, or None.

    Backtracks over images of A's generators, restricted to elements of B
    with the same order, extending each partial assignment to the subgroup
    it generates and abandoning it on the first inconsistency.
    """
    if A.order > bound or B.order > bound:
        raise GroupError(f"isomorphism search bound {bound} exceeded")
    if A.order != B.order:
        return None
    ta, tb = _Indexed(A), _Indexed(B)
    if Counter(ta.orders) != Counter(tb.orders):
        return None
    gens = [ta.index[g] for g in A.generators if g != A.identity]
    if not gens:
        return {A.identity: B.identity}
    by_order: dict[int, list[int]] = {}
    for i, o in enumerate(tb.orders):
        by_order.setdefault(o, []).append(i)

    def search(k: int, images: list[int]):
        if k == len(gens):
            f = _extend(gens, images, ta, tb)
            return f if f is not None and len(f) == A.order else None
        for h in by_order.get(ta.orders[gens[k]], ()):
            trial = images + [h]
            if _extend(gens[: k + 1], trial, ta, tb) is None:
                continue
            found = search(k + 1, trial)
            if found is not None:
                return found
        return None

    f = search(0, [])
    if f is None:
        return None
    iso = {ta.elements[a]: tb.elements[b] for a, b in f.items()}
    if not verify_isomorphism(iso, A, B):
        raise GroupError("internal error: constructed map is not an isomorphism")
    return iso


# -- recognition -------------------------------------------------------------

@dataclass
class GroupIdentification:
    """Recognized isomorphism type, with the map into the reference group.

    ``also`` lists further verified identifications; small groups can match
    several families (Hol(Z_3) is also D_3).
    """

    kind: str
    parameter: int
    isomorphism: dict[Perm, Perm] | None = None
    verified: bool = False
    also: list["GroupIdentification"] = field(default_factory=list)

    def kinds(self) -> set[tuple[str, int]]:
        return {(self.kind, self.parameter)} | {(x.kind, x.parameter) for x in self.also}

    def find(self, kind: str) -> "GroupIdentification | None":
        for ident in [self, *self.also]:
            if ident.kind == kind:
                return ident
        return None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "parameter": self.parameter,
            "verified": self.verified,
            "also": [{"kind": x.kind, "parameter": x.parameter, "verified": x.verified} for x in self.also],
        }


def _power(g: Perm, k: int) -> Perm:
    out = identity(len(g))
    for _ in range(k):
        out = compose(g, out)
    return out


def _as_cyclic(G: PermutationGroup) -> GroupIdentification | None:
    m = G.order
    gen = next((g for g in G.elements if perm_order(g) == m), None)
    if gen is None:
        return None
    ref = build_cyclic(m)
    t = ref.generators[0] if ref.generators else ref.identity
    iso = {}
    x, y = G.identity, ref.identity
    for _ in range(m):
        iso[x] = y
        x, y = compose(gen, x), compose(t, y)
    return GroupIdentification("cyclic", m, iso, verify_isomorphism(iso, G, ref))


def _as_dihedral(G: PermutationGroup) -> GroupIdentification | None:
    if G.order % 2 or G.order < 6:
        return None
    m = G.order // 2
    ident = G.identity
    involutions = [s for s in G.elements if perm_order(s) == 2]
    for r in G.elements:
        if perm_order(r) != m:
            continue
        rotations = [ident]
        for _ in range(m - 1):
            rotations.append(compose(r, rotations[-1]))
        rot_set = set(rotations)
        r_inv = inverse(r)
        for s in involutions:
            if s in rot_set or compose(s, compose(r, s)) != r_inv:
                continue
            # r and s now satisfy the dihedral presentation, and <r, s> has 2m = |G| elements
            ref = build_dihedral(m)
            rot = tuple((x + 1) % m for x in range(m))
            flip = tuple((-x) % m for x in range(m))
            iso = {}
            ref_rot = identity(m)
            for k in range(m):
                iso[rotations[k]] = ref_rot
                iso[compose(s, rotations[k])] = compose(flip, ref_rot)
                ref_rot = compose(rot, ref_rot)
            return GroupIdentification("dihedral", m, iso, verify_isomorphism(iso, G, ref))
    return None


def _as_holomorph(G: PermutationGroup, max_param: int | None = None) -> GroupIdentification | None:
    limit = max_param if max_param is not None else max(G.degree, G.order)
    candidates = [G.degree] + [m for m in range(2, limit + 1) if m != G.degree]
    for m in candidates:
        if m < 2 or m * totient(m) != G.order:
            continue
        ref = build_holomorph(m)
        iso = is_isomorphic(G, ref)
        if iso is not None:
            return GroupIdentification("holomorph", m, iso, True)
    return None


def identify(G: PermutationGroup, max_holomorph_param: int | None = None) -> GroupIdentification:
    """Recognize G as cyclic, dihedral (order >= 6), or a holomorph of Z_m.

    The first match in that order is primary; any others go in ``also``.
    """
    if G.order > DEFAULT_ISO_BOUND:
        raise GroupError(f"group of order {G.order} exceeds identification bound")
    found = [
        ident
        for ident in (_as_cyclic(G), _as_dihedral(G), _as_holomorph(G, max_holomorph_param))
        if ident is not None
    ]
    if not found:
        return GroupIdentification("other", G.order)
    primary, *rest = found
    primary.also = rest
    return primary
