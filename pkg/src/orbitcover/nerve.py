"""Nerve complexes of covers, integral homology, and isomorphism search."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence, Union

import numpy as np

from . import kernels
from .covers import OrbitCover
from .errors import DomainError

Simplex = tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of vertex-index tuples.

    Simplices are sorted tuples of indices into ``vertex_labels``; boundary
    signs follow that order. Use ``from_simplices`` to close a generating
    family downward.
    """

    vertex_labels: tuple[Hashable, ...]
    simplices_by_dim: tuple[tuple[Simplex, ...], ...]
    _all: frozenset[Simplex] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        all_simplices = frozenset(s for layer in self.simplices_by_dim for s in layer)
        object.__setattr__(self, "_all", all_simplices)
        for s in all_simplices:
            for face in combinations(s, len(s) - 1):
                if face and face not in all_simplices:
                    raise DomainError(f"{face} is a face of {s} but is missing")
        for v in range(len(self.vertex_labels)):
            if (v,) not in all_simplices:
                raise DomainError(f"vertex {self.vertex_labels[v]!r} is not a 0-simplex")

    @classmethod
    def from_simplices(
        cls, vertex_labels: Sequence[Hashable], generators: Iterable[Iterable[int]]
    ) -> "SimplicialComplex":
        labels = tuple(vertex_labels)
        closed: set[Simplex] = {(v,) for v in range(len(labels))}
        for gen in generators:
            s = tuple(sorted(set(gen)))
            if any(not 0 <= v < len(labels) for v in s):
                raise DomainError(f"simplex {s} uses an unknown vertex")
            for r in range(1, len(s) + 1):
                closed.update(combinations(s, r))
        top = max(len(s) for s in closed) if closed else 0
        layers = tuple(tuple(sorted(s for s in closed if len(s) == d + 1)) for d in range(top))
        return cls(labels, layers)

    def __contains__(self, simplex: object) -> bool:
        return tuple(sorted(simplex)) in self._all  # type: ignore[arg-type]

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_labels)

    @property
    def dimension(self) -> int:
        return len(self.simplices_by_dim) - 1

    @property
    def simplices(self) -> frozenset[Simplex]:
        return self._all

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.simplices_by_dim)

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * f for p, f in enumerate(self.f_vector()))

    def facets(self) -> list[Simplex]:
        """Maximal simplices."""
        out = []
        for s in self._all:
            others = set(range(self.num_vertices)) - set(s)
            if not any(tuple(sorted(s + (v,))) in self._all for v in others):
                out.append(s)
        return sorted(out)

    def boundary_matrix(self, p: int) -> np.ndarray:
        """Integer matrix of the boundary from p-chains to (p-1)-chains."""
        if not 1 <= p <= self.dimension:
            raise DomainError(f"no boundary map in degree {p} for a {self.dimension}-complex")
        lower = {s: r for r, s in enumerate(self.simplices_by_dim[p - 1])}
        upper = self.simplices_by_dim[p]
        mat = np.zeros((len(lower), len(upper)), dtype=np.int64)
        for c, s in enumerate(upper):
            for i in range(len(s)):
                mat[lower[s[:i] + s[i + 1 :]], c] = (-1) ** i
        return mat

    def vertex_signature(self, v: int) -> tuple[int, ...]:
        """Number of simplices of each dimension that contain ``v``."""
        counts = [0] * (self.dimension + 1)
        for s in self._all:
            if v in s:
                counts[len(s) - 1] += 1
        return tuple(counts)

    def to_record(self) -> dict:
        labels = self.vertex_labels
        return {
            "vertices": list(labels),
            "simplices_by_dim": [[[labels[v] for v in s] for s in layer] for layer in self.simplices_by_dim],
        }

    @classmethod
    def from_record(cls, record: Mapping) -> "SimplicialComplex":
        labels = list(record["vertices"])
        index = {lab: i for i, lab in enumerate(labels)}
        gens = [[index[lab] for lab in s] for layer in record["simplices_by_dim"] for s in layer]
        return cls.from_simplices(labels, gens)


CoverInput = Union[OrbitCover, Sequence[Iterable[int]]]


def _distinct_members(cover: CoverInput) -> tuple[list[int], list[frozenset[int]]]:
    if isinstance(cover, OrbitCover):
        return list(cover.distinct_indices), list(cover.distinct_members)
    labels: list[int] = []
    members: list[frozenset[int]] = []
    for i, m in enumerate(cover):
        s = frozenset(m)
        if not s:
            raise DomainError(f"cover member {i} is empty")
        if s not in members:
            labels.append(i)
            members.append(s)
    return labels, members


def membership(cover: CoverInput) -> dict[int, frozenset[int]]:
    """For each covered element, the vertex indices of the members containing it."""
    _, members = _distinct_members(cover)
    out: dict[int, set[int]] = {}
    for i, m in enumerate(members):
        for x in m:
            out.setdefault(x, set()).add(i)
    return {x: frozenset(s) for x, s in sorted(out.items())}


def build_nerve(cover: CoverInput) -> SimplicialComplex:
    """Nerve over the distinct members; vertex labels are member indices.

    Every simplex has a common element ``x`` and so lies inside the set of
    members containing ``x``; closing those sets downward gives the nerve.
    """
    labels, _ = _distinct_members(cover)
    return SimplicialComplex.from_simplices(labels, membership(cover).values())


def harmonic_regions(cover: OrbitCover) -> dict[int, frozenset[int]]:
    """``x -> {i : x in members[i]}`` for a primitive cover."""
    if not cover.is_primitive:
        raise DomainError(f"cover of type {cover.sigma} over {cover.n} notes is not primitive")
    sets = cover.member_sets
    return {x: frozenset(i for i in range(cover.n) if x in sets[i]) for x in cover.scale.elements}


@dataclass(frozen=True)
class HomologyProfile:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    euler_characteristic: int

    def to_record(self) -> dict:
        return {
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "euler": self.euler_characteristic,
        }


def _components(cx: SimplicialComplex) -> int:
    parent = list(range(cx.num_vertices))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s in cx.simplices_by_dim[1] if cx.dimension >= 1 else ():
        a, b = find(s[0]), find(s[1])
        if a != b:
            parent[a] = b
    return len({find(v) for v in range(cx.num_vertices)})


def homology(cx: SimplicialComplex, backend: str = "auto") -> HomologyProfile:
    """Integral homology from invariant factors of the boundary matrices."""
    dim = cx.dimension
    if dim < 0:
        return HomologyProfile((), (), 0)
    f = cx.f_vector()
    ranks = [0] * (dim + 2)
    factors: list[list[int]] = [[] for _ in range(dim + 2)]
    for p in range(1, dim + 1):
        factors[p] = kernels.smith_diagonal(cx.boundary_matrix(p), backend=backend)
        ranks[p] = len(factors[p])
    betti = tuple(f[p] - ranks[p] - ranks[p + 1] for p in range(dim + 1))
    torsion = tuple(tuple(d for d in factors[p + 1] if d > 1) for p in range(dim + 1))
    euler = cx.euler_characteristic()
    if betti[0] != _components(cx):
        raise RuntimeError("rank-based b_0 disagrees with union-find component count")
    if sum((-1) ** p * b for p, b in enumerate(betti)) != euler:
        raise RuntimeError("Betti numbers disagree with the f-vector Euler characteristic")
    return HomologyProfile(betti, torsion, euler)


def is_isomorphism(c1: SimplicialComplex, c2: SimplicialComplex, image: Sequence[int]) -> bool:
    """Check simplex by simplex that the vertex map ``image`` is a bijection of complexes."""
    if c1.num_vertices != c2.num_vertices or sorted(image) != list(range(c2.num_vertices)):
        return False
    mapped = {tuple(sorted(image[v] for v in s)) for s in c1.simplices}
    return len(mapped) == len(c1.simplices) and mapped == set(c2.simplices)


def nerve_isomorphic(
    c1: SimplicialComplex, c2: SimplicialComplex, backend: str = "auto"
) -> dict[Hashable, Hashable] | None:
    """A label-to-label isomorphism ``c1 -> c2``, or ``None``.

    Candidates are pruned by f-vector and per-vertex simplex counts; the
    search then backtracks over vertex bijections that map facets to facets.
    """
    n = c1.num_vertices
    if n != c2.num_vertices or c1.f_vector() != c2.f_vector():
        return None
    sig1 = [c1.vertex_signature(v) for v in range(n)]
    sig2 = [c2.vertex_signature(v) for v in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    identity = list(range(n))
    if is_isomorphism(c1, c2, identity):
        return {c1.vertex_labels[v]: c2.vertex_labels[v] for v in range(n)}
    compat = np.array([[a == b for b in sig2] for a in sig1], dtype=np.bool_)
    masks1 = [sum(1 << v for v in s) for s in c1.facets()]
    masks2 = [sum(1 << v for v in s) for s in c2.facets()]
    image = kernels.find_facet_bijection(n, masks1, masks2, compat, backend=backend)
    if image is None:
        return None
    if not is_isomorphism(c1, c2, image):
        raise RuntimeError("isomorphism search returned a map that fails verification")
    return {c1.vertex_labels[v]: c2.vertex_labels[image[v]] for v in range(n)}
