"""Pitch-class sets, modes as cyclic group structures, scales as torsors.

A pitch-class set ``X`` in ``Z_N`` with ``n`` elements is labelled by degrees
through its normal order. The mode with index ``i`` shifts those labels by
``+i`` (degree of ``norm[j]`` is ``j + i mod n``), so its tonic is the element
at normal-order position ``-i mod n``. The scale forgets the tonic and keeps
only the step action ``translate(g, x)``, which does not depend on ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping

from .errors import DomainError, MembershipError, ParseError


@dataclass(frozen=True)
class PitchClassSet:
    """A nonempty subset of ``Z_N``; ``elements`` is stored ascending."""

    universe: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.universe, int) or self.universe < 1:
            raise DomainError(f"universe size must be a positive integer, got {self.universe!r}")
        elems = tuple(int(e) for e in self.elements)
        if not elems:
            raise DomainError("a pitch-class set must be nonempty")
        for e in elems:
            if not 0 <= e < self.universe:
                raise DomainError(f"{e} is not a residue mod {self.universe}")
        if len(set(elems)) != len(elems):
            raise DomainError(f"repeated pitch classes in {list(elems)}")
        object.__setattr__(self, "elements", tuple(sorted(elems)))

    @classmethod
    def of(cls, universe: int, elements: Iterable[int]) -> "PitchClassSet":
        return cls(universe, tuple(elements))

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def to_record(self) -> dict:
        return {"universe": self.universe, "elements": list(self.elements)}

    @classmethod
    def from_record(cls, record: Mapping) -> "PitchClassSet":
        return cls(int(record["universe"]), tuple(record["elements"]))


def normal_order(pcs: PitchClassSet) -> tuple[int, ...]:
    """Most compact rotation of the ascending circular ordering.

    Rotations are ranked by circular span (last minus first mod N), then by
    the vector of offsets from the first element read left to right, then by
    the first residue.

    >>> normal_order(PitchClassSet.of(12, [0, 2, 4, 5, 7, 9, 11]))
    (11, 0, 2, 4, 5, 7, 9)
    """
    elems = pcs.elements
    n, N = len(elems), pcs.universe

    def key(start: int) -> tuple:
        rot = elems[start:] + elems[:start]
        offsets = tuple((e - rot[0]) % N for e in rot[1:])
        span = offsets[-1] if offsets else 0
        return (span, offsets, rot[0])

    best = min(range(n), key=key)
    return elems[best:] + elems[:best]


@dataclass(frozen=True)
class Mode:
    """The group ``(X, +)`` whose degree map is normal-order position plus ``mode_index``."""

    base: PitchClassSet
    mode_index: int
    order: tuple[int, ...] = field(init=False, repr=False, compare=False)
    degree_map: Mapping[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.base.size
        if not isinstance(self.mode_index, int) or not 0 <= self.mode_index < n:
            raise DomainError(f"mode index must lie in 0..{n - 1}, got {self.mode_index!r}")
        order = normal_order(self.base)
        object.__setattr__(self, "order", order)
        object.__setattr__(
            self, "degree_map", {x: (j + self.mode_index) % n for j, x in enumerate(order)}
        )

    @property
    def n(self) -> int:
        return self.base.size

    @property
    def tonic(self) -> int:
        return self.order[(-self.mode_index) % self.n]

    def degree(self, x: int) -> int:
        try:
            return self.degree_map[x]
        except KeyError:
            raise MembershipError(f"{x} is not in {list(self.base.elements)}") from None

    def element(self, d: int) -> int:
        """Inverse of the degree map; ``d`` is read mod n."""
        return self.order[(d - self.mode_index) % self.n]

    def add(self, x: int, y: int) -> int:
        return self.element(self.degree(x) + self.degree(y))

    def neg(self, x: int) -> int:
        return self.element(-self.degree(x))

    @property
    def scale(self) -> "Scale":
        return Scale.from_mode(self)

    def to_record(self) -> dict:
        return {**self.base.to_record(), "mode_index": self.mode_index}

    @classmethod
    def from_record(cls, record: Mapping) -> "Mode":
        return cls(PitchClassSet.from_record(record), int(record.get("mode_index", 0)))


def build_mode(pcs: PitchClassSet, i: int) -> Mode:
    return Mode(pcs, i)


def mode_add(m: Mode, x: int, y: int) -> int:
    """``x (+) y`` in the mode's group; the tonic is the identity."""
    return m.add(x, y)


@dataclass(frozen=True)
class Scale:
    """The ``Z_n``-torsor of a pitch-class set.

    ``table[g][p]`` is the element ``g`` steps above the ``p``-th element of
    ``base.elements`` (ascending order, not normal order). Equality only
    looks at ``base``.
    """

    base: PitchClassSet
    table: tuple[tuple[int, ...], ...] = field(default=(), repr=False, compare=False)
    _index: Mapping[int, int] = field(init=False, repr=False, compare=False)
    _order: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _position: Mapping[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {x: p for p, x in enumerate(self.base.elements)})
        object.__setattr__(self, "_order", normal_order(self.base))
        object.__setattr__(self, "_position", {x: j for j, x in enumerate(self._order)})
        if not self.table:
            object.__setattr__(self, "table", Scale.from_mode(Mode(self.base, 0)).table)

    @classmethod
    def from_mode(cls, mode: Mode) -> "Scale":
        """Tabulate ``tau(g, x) = mu_i^-1(g + mu_i(x))`` using the mode's own labels."""
        n = mode.n
        rows = tuple(
            tuple(mode.element(g + mode.degree(x)) for x in mode.base.elements) for g in range(n)
        )
        return cls(mode.base, rows)

    @classmethod
    def of(cls, universe: int, elements: Iterable[int]) -> "Scale":
        return cls(PitchClassSet.of(universe, elements))

    @property
    def n(self) -> int:
        return self.base.size

    @property
    def universe(self) -> int:
        return self.base.universe

    @property
    def elements(self) -> tuple[int, ...]:
        return self.base.elements

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def check(self, x: int) -> int:
        if x not in self._index:
            raise MembershipError(f"{x} is not in scale {list(self.base.elements)}")
        return x

    def translate(self, g: int, x: int) -> int:
        return self.table[g % self.n][self._index[self.check(x)]]

    def steps(self, x: int, y: int) -> int:
        """The unique ``g`` with ``translate(g, x) == y``."""
        return (self._position[self.check(y)] - self._position[self.check(x)]) % self.n

    def mode(self, i: int = 0) -> Mode:
        return Mode(self.base, i)

    def mode_with_tonic(self, t: int) -> Mode:
        """The unique mode of this scale whose tonic is ``t``."""
        return Mode(self.base, (-self._position[self.check(t)]) % self.n)

    def ascending_from(self, x: int) -> tuple[int, ...]:
        """Elements in step order starting at ``x``."""
        return tuple(self.translate(g, x) for g in range(self.n))

    def to_record(self) -> dict:
        return self.base.to_record()

    @classmethod
    def from_record(cls, record: Mapping) -> "Scale":
        return cls(PitchClassSet.from_record(record))


def translate(s: Scale, g: int, x: int) -> int:
    """The element ``g`` scalar steps above ``x``."""
    return s.translate(g, x)


def canonical_multiplier(n: int, n_target: int) -> int:
    return n_target // gcd(n, n_target)


def _check_group_hom(multiplier: int, n: int, n_target: int) -> int:
    a = multiplier % n_target
    if (a * n) % n_target != 0:
        raise DomainError(f"j -> {a}j is not a homomorphism Z_{n} -> Z_{n_target}")
    return a


@dataclass(frozen=True)
class ModeHom:
    """``phi = mu_target^-1 . (j -> a j) . mu_source`` as a lookup table."""

    source: Mode
    target: Mode
    multiplier: int
    mapping: Mapping[int, int] = field(compare=False)

    def __call__(self, x: int) -> int:
        try:
            return self.mapping[x]
        except KeyError:
            raise MembershipError(f"{x} is not in the source mode") from None

    def group_part(self, j: int) -> int:
        return (self.multiplier * j) % self.target.n

    def commutes(self) -> bool:
        return all(
            self.target.degree(self.mapping[x]) == self.group_part(self.source.degree(x))
            for x in self.source.base.elements
        )

    @property
    def is_canonical(self) -> bool:
        return self.multiplier == canonical_multiplier(self.source.n, self.target.n) % self.target.n


def mode_hom(source: Mode, target: Mode, multiplier: int | None = None) -> ModeHom:
    """Mode homomorphism with group part ``j -> a j``.

    By default ``a = n' / gcd(n, n')``; any ``a`` with ``a n = 0 mod n'`` is
    accepted explicitly (composites carry products of multipliers).
    """
    if multiplier is None:
        multiplier = canonical_multiplier(source.n, target.n)
    a = _check_group_hom(multiplier, source.n, target.n)
    mapping = {x: target.element(a * source.degree(x)) for x in source.base.elements}
    return ModeHom(source, target, a, mapping)


def compose_mode_homs(second: ModeHom, first: ModeHom) -> ModeHom:
    """``second . first``."""
    if first.target != second.source:
        raise DomainError("mode homomorphisms are not composable")
    return mode_hom(first.source, second.target, first.multiplier * second.multiplier)


def identity_mode_hom(m: Mode) -> ModeHom:
    return mode_hom(m, m, 1)


@dataclass(frozen=True)
class ScaleHom:
    """An equivariant pair: ``mapping(translate(g, x)) == translate'(a g, mapping(x))``."""

    source: Scale
    target: Scale
    multiplier: int
    mapping: Mapping[int, int] = field(compare=False)
    mode_pair: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "multiplier", _check_group_hom(self.multiplier, self.source.n, self.target.n)
        )
        if set(self.mapping) != set(self.source.elements):
            raise DomainError("scale map must be defined on every source element")
        for y in self.mapping.values():
            self.target.check(y)

    def __call__(self, x: int) -> int:
        try:
            return self.mapping[x]
        except KeyError:
            raise MembershipError(f"{x} is not in the source scale") from None

    def group_part(self, g: int) -> int:
        return (self.multiplier * g) % self.target.n

    def is_equivariant(self) -> bool:
        src, tgt = self.source, self.target
        return all(
            self.mapping[src.translate(g, x)] == tgt.translate(self.group_part(g), self.mapping[x])
            for g in range(src.n)
            for x in src.elements
        )


def scale_hom(source: Scale, target: Scale, i: int, i_target: int) -> ScaleHom:
    """The scale homomorphism read off the modes ``i`` and ``i_target``."""
    m = mode_hom(Mode(source.base, i), Mode(target.base, i_target))
    return ScaleHom(source, target, m.multiplier, dict(m.mapping), (i, i_target))


def compose_scale_homs(second: ScaleHom, first: ScaleHom) -> ScaleHom:
    """``second . first``; the group part is the product of multipliers."""
    if first.target != second.source:
        raise DomainError("scale homomorphisms are not composable")
    mapping = {x: second.mapping[y] for x, y in first.mapping.items()}
    return ScaleHom(first.source, second.target, first.multiplier * second.multiplier, mapping)


def parse_scale(text: str) -> tuple[Scale, int]:
    """Parse ``"N: e1,e2,...,en"``; returns the scale and the first listed element."""
    head, sep, tail = text.partition(":")
    if not sep:
        raise ParseError(f"expected 'N: e1,e2,...' but got {text!r}")
    try:
        universe = int(head.strip())
        elems = [int(tok) for tok in tail.replace(" ", "").split(",") if tok != ""]
    except ValueError:
        raise ParseError(f"non-integer token in scale {text!r}") from None
    if not elems:
        raise ParseError(f"scale {text!r} lists no elements")
    try:
        scale = Scale(PitchClassSet(universe, tuple(elems)))
    except DomainError as exc:
        raise ParseError(f"invalid scale {text!r}: {exc}") from None
    return scale, elems[0]


def format_scale(scale: Scale, start: int | None = None) -> str:
    elems = scale.ascending_from(start) if start is not None else scale.elements
    return f"{scale.universe}: " + ",".join(str(e) for e in elems)
