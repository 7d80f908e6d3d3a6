"""Interval compositions, their rotation classes, and the unit-group action.

A composition ``(i_1, ..., i_k)`` of ``n`` lists the step intervals of a
``k``-note chord around an ``n``-note scale. Rotating it changes only which
chord tone is read first. Multiplying the partial sums by a unit ``u`` mod n
and re-sorting gives the ``u``-transform, which is how affine maps of ``Z_n``
act on chord types.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd
from typing import Mapping, Sequence, Union

from .errors import DomainError, ParseError


@dataclass(frozen=True, order=True)
class IntervalComposition:
    """Ordered positive parts; ``n`` is their sum."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise DomainError("a composition needs at least one part")
        if any(p < 1 for p in parts):
            raise DomainError(f"composition parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def partial_sums(self) -> tuple[int, ...]:
        """``(S_0, S_1, ..., S_k)`` with ``S_0 = 0`` and ``S_k = n``."""
        sums = [0]
        for p in self.parts:
            sums.append(sums[-1] + p)
        return tuple(sums)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


CompositionLike = Union[IntervalComposition, Sequence[int]]


def as_composition(sigma: CompositionLike) -> IntervalComposition:
    if isinstance(sigma, IntervalComposition):
        return sigma
    return IntervalComposition(tuple(sigma))


def parse_composition(text: str) -> IntervalComposition:
    """Parse ``"(2,2,3)"``; the parentheses are optional."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        parts = tuple(int(tok) for tok in body.replace(" ", "").split(","))
    except ValueError:
        raise ParseError(f"cannot parse composition {text!r}") from None
    try:
        return IntervalComposition(parts)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def _check_nk(n: int, k: int) -> None:
    if not (isinstance(n, int) and isinstance(k, int)) or not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n!r}, k={k!r}")


def enumerate_compositions(n: int, k: int) -> list[IntervalComposition]:
    """All compositions of ``n`` into ``k`` positive parts, lexicographic.

    Each one is a choice of ``k - 1`` cut points in ``1..n-1``; cut sets taken
    in lexicographic order give compositions in lexicographic order.
    """
    _check_nk(n, k)
    out = []
    for cuts in combinations(range(1, n), k - 1):
        bounds = (0, *cuts, n)
        out.append(IntervalComposition(tuple(b - a for a, b in zip(bounds, bounds[1:]))))
    assert len(out) == comb(n - 1, k - 1)
    return out


def rotate(sigma: CompositionLike, i: int) -> IntervalComposition:
    """Cyclic left rotation: ``rotate((2,2,3), 2) == (3,2,2)``."""
    sigma = as_composition(sigma)
    i %= sigma.k
    return IntervalComposition(sigma.parts[i:] + sigma.parts[:i])


@dataclass(frozen=True)
class RotationClass:
    """Distinct rotations of a composition, lexicographically sorted."""

    representative: IntervalComposition
    members: tuple[IntervalComposition, ...]

    @classmethod
    def of(cls, sigma: CompositionLike) -> "RotationClass":
        sigma = as_composition(sigma)
        members = tuple(sorted({rotate(sigma, i) for i in range(sigma.k)}))
        return cls(members[0], members)

    def __contains__(self, sigma: object) -> bool:
        try:
            return as_composition(sigma) in self.members  # type: ignore[arg-type]
        except (DomainError, TypeError):
            return False

    def __str__(self) -> str:
        return f"[{self.representative}]"


def canonical_rotation(sigma: CompositionLike) -> IntervalComposition:
    sigma = as_composition(sigma)
    return min(rotate(sigma, i) for i in range(sigma.k))


def rotation_classes(n: int, k: int) -> list[RotationClass]:
    seen: dict[IntervalComposition, RotationClass] = {}
    for sigma in enumerate_compositions(n, k):
        rep = canonical_rotation(sigma)
        if rep not in seen:
            seen[rep] = RotationClass.of(rep)
    return [seen[rep] for rep in sorted(seen)]


def units(n: int) -> list[int]:
    """``Z_n^x`` as residues in ``1..n-1`` (``[0]`` for ``n = 1``)."""
    if n == 1:
        return [0]
    return [u for u in range(1, n) if gcd(u, n) == 1]


def u_transform(sigma: CompositionLike, u: int) -> IntervalComposition:
    """Scale the partial sums by ``u`` mod n, re-sort, take successive gaps.

    >>> str(u_transform((2, 2, 3), 5))
    '(3,3,1)'
    """
    sigma = as_composition(sigma)
    n = sigma.n
    if gcd(u, n) != 1:
        raise DomainError(f"{u} is not a unit mod {n}")
    marks = sorted((u * s) % n if s < n else n for s in sigma.partial_sums())
    gaps = tuple(b - a for a, b in zip(marks, marks[1:]))
    return IntervalComposition(gaps)


@dataclass(frozen=True)
class AffineOrbit:
    """Rotation classes related by the unit action.

    ``witnesses[(a, b)]`` is the least unit carrying class ``a`` to class
    ``b`` (keys are representatives).
    """

    classes: tuple[RotationClass, ...]
    witnesses: Mapping[tuple[IntervalComposition, IntervalComposition], int] = field(
        compare=False, repr=False
    )

    @property
    def representatives(self) -> tuple[IntervalComposition, ...]:
        return tuple(c.representative for c in self.classes)

    def __contains__(self, sigma: object) -> bool:
        return any(sigma in c for c in self.classes)

    def __str__(self) -> str:
        return "{" + ", ".join(str(c) for c in self.classes) + "}"


def unit_action_table(n: int, k: int) -> dict[IntervalComposition, dict[int, IntervalComposition]]:
    """``table[rep][u]`` = representative of the class of ``u . rep``."""
    return {
        cls.representative: {
            u: canonical_rotation(u_transform(cls.representative, u)) for u in units(n)
        }
        for cls in rotation_classes(n, k)
    }


def affine_orbits(n: int, k: int) -> list[AffineOrbit]:
    """Partition the rotation classes of ``(n, k)`` into unit-group orbits."""
    classes = {c.representative: c for c in rotation_classes(n, k)}
    table = unit_action_table(n, k)
    remaining = sorted(classes)
    orbits = []
    while remaining:
        start = remaining[0]
        reps = sorted({table[start][u] for u in units(n)})
        witnesses = {}
        for a in reps:
            for b in reps:
                witnesses[(a, b)] = min(u for u in units(n) if table[a][u] == b)
        orbits.append(AffineOrbit(tuple(classes[r] for r in reps), witnesses))
        remaining = [r for r in remaining if r not in reps]
    return orbits


def same_affine_orbit(alpha: CompositionLike, beta: CompositionLike) -> int | None:
    """Least unit ``u`` with ``u . alpha`` a rotation of ``beta``, or ``None``."""
    alpha, beta = as_composition(alpha), as_composition(beta)
    if alpha.n != beta.n or alpha.k != beta.k:
        return None
    target = canonical_rotation(beta)
    for u in units(alpha.n):
        if canonical_rotation(u_transform(alpha, u)) == target:
            return u
    return None
