"""Orbit covers of scales and maps between covers.

An orbit cover is the family of all scalar translates of one chord. With
the chord written as a composition ``sigma`` stacked above ``root``,
``members[i]`` is ``sigma`` stacked above the element ``i`` steps above the
root, so members are indexed by ``Z_n``. Chords are tuples in stacking order
(root first); use ``member_sets`` for set semantics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Mapping, Sequence, Union

from .compositions import CompositionLike, IntervalComposition, as_composition, parse_composition, u_transform
from .errors import DomainError, ParseError
from .scale_core import Scale, ScaleHom, parse_scale

Chord = tuple[int, ...]


def realize(sigma: CompositionLike, scale: Scale, x: int) -> Chord:
    """Stack ``sigma`` above ``x``: elements at offsets ``S_0, ..., S_{k-1}``."""
    sigma = as_composition(sigma)
    if sigma.n != scale.n:
        raise DomainError(f"composition {sigma} sums to {sigma.n} but the scale has {scale.n} notes")
    scale.check(x)
    return tuple(scale.translate(s, x) for s in sigma.partial_sums()[:-1])


@dataclass(frozen=True)
class OrbitCover:
    scale: Scale
    sigma: IntervalComposition
    root: int
    members: tuple[Chord, ...] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", as_composition(self.sigma))
        members = tuple(
            realize(self.sigma, self.scale, self.scale.translate(i, self.root))
            for i in range(self.scale.n)
        )
        object.__setattr__(self, "members", members)

    @property
    def n(self) -> int:
        return self.scale.n

    @property
    def k(self) -> int:
        return self.sigma.k

    @property
    def generator(self) -> frozenset[int]:
        return frozenset(self.members[0])

    @property
    def member_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(m) for m in self.members)

    @property
    def distinct_indices(self) -> tuple[int, ...]:
        """First index at which each distinct member set occurs."""
        seen: set[frozenset[int]] = set()
        out = []
        for i, m in enumerate(self.member_sets):
            if m not in seen:
                seen.add(m)
                out.append(i)
        return tuple(out)

    @property
    def distinct_members(self) -> tuple[frozenset[int], ...]:
        sets = self.member_sets
        return tuple(sets[i] for i in self.distinct_indices)

    @property
    def is_primitive(self) -> bool:
        return gcd(self.n, self.k) == 1

    def covers_scale(self) -> bool:
        return set().union(*self.member_sets) == set(self.scale.elements)

    def to_record(self) -> dict:
        return {
            "scale": self.scale.to_record(),
            "sigma": list(self.sigma.parts),
            "root": self.root,
            "members": [list(m) for m in self.members],
        }

    @classmethod
    def from_record(cls, record: Mapping) -> "OrbitCover":
        cover = cls(
            Scale.from_record(record["scale"]),
            IntervalComposition(tuple(record["sigma"])),
            int(record["root"]),
        )
        if "members" in record and [list(m) for m in cover.members] != [list(m) for m in record["members"]]:
            raise DomainError("recorded members disagree with scale, sigma and root")
        return cover


def orbit_cover(scale: Scale, sigma: CompositionLike, root: int) -> OrbitCover:
    sigma = as_composition(sigma)
    realize(sigma, scale, root)  # validates size and membership
    return OrbitCover(scale, sigma, root)


def orbit_cover_of_chord(scale: Scale, chord: Sequence[int]) -> OrbitCover:
    """Orbit cover generated by an arbitrary nonempty chord of ``scale``.

    The chord is read upward from its lowest element in normal order, which
    picks one composition out of its rotation class.
    """
    tones = set(chord)
    if not tones:
        raise DomainError("a chord must be nonempty")
    for x in tones:
        scale.check(x)
    start = scale.mode(0).tonic
    root = min(tones, key=lambda x: scale.steps(start, x))
    offsets = sorted(scale.steps(root, x) for x in tones) + [scale.n]
    sigma = IntervalComposition(tuple(b - a for a, b in zip(offsets, offsets[1:])))
    return OrbitCover(scale, sigma, root)


def is_primitive(cover: OrbitCover) -> bool:
    return cover.is_primitive


def transport_cover(
    cover: OrbitCover,
    u: int,
    v: int,
    target_scale: Scale,
    target_root: int | None = None,
) -> tuple[OrbitCover, dict[int, int]]:
    """Carry ``cover`` to ``target_scale`` along ``j -> u j + v`` on degrees.

    Source degrees count steps above ``cover.root``; target degrees count
    steps above ``target_root`` (default: first element of the target's
    normal order). The returned cover has composition ``u . sigma`` and is
    rooted at the image of ``cover.root``, so source member ``i`` lands on
    target member ``u i mod n``.
    """
    n = cover.n
    if target_scale.n != n:
        raise DomainError(f"target scale has {target_scale.n} notes, expected {n}")
    if gcd(u, n) != 1:
        raise DomainError(f"{u} is not a unit mod {n}")
    origin = target_scale.mode(0).tonic if target_root is None else target_scale.check(target_root)
    src = cover.scale
    mapping = {
        x: target_scale.translate(u * src.steps(cover.root, x) + v, origin) for x in src.ascending_from(cover.root)
    }
    image = OrbitCover(target_scale, u_transform(cover.sigma, u), mapping[cover.root])
    return image, mapping


@dataclass(frozen=True)
class CoverMorphism:
    """A scale map with an index map such that ``f(U_i)`` lies in ``V_phi(i)``."""

    scale_map: ScaleHom
    index_map: Mapping[int, int]


CoverLike = Union[OrbitCover, Sequence[Sequence[int]]]


def _sets(cover: CoverLike) -> list[frozenset[int]]:
    if isinstance(cover, OrbitCover):
        return list(cover.member_sets)
    return [frozenset(m) for m in cover]


def verify_cover_morphism(m: CoverMorphism, source: CoverLike, target: CoverLike) -> bool:
    src, tgt = _sets(source), _sets(target)
    for i, member in enumerate(src):
        j = m.index_map.get(i)
        if j is None or not 0 <= j < len(tgt):
            return False
        if not {m.scale_map(x) for x in member} <= tgt[j]:
            return False
    return True


def transport_morphism(
    cover: OrbitCover,
    u: int,
    v: int,
    target_scale: Scale,
    target_root: int | None = None,
) -> tuple[CoverMorphism, OrbitCover]:
    """``transport_cover`` packaged as a cover morphism with index map ``i -> u i``."""
    image, mapping = transport_cover(cover, u, v, target_scale, target_root)
    hom = ScaleHom(cover.scale, target_scale, u, mapping)
    index_map = {i: (u * i) % cover.n for i in range(cover.n)}
    return CoverMorphism(hom, index_map), image


def identity_morphism(cover: OrbitCover) -> CoverMorphism:
    mapping = {x: x for x in cover.scale.elements}
    return CoverMorphism(ScaleHom(cover.scale, cover.scale, 1, mapping), {i: i for i in range(cover.n)})


def progression(cover: OrbitCover, step: int, length: int | None = None) -> list[Chord]:
    """Members at indices ``0, step, 2 step, ...`` (``n + 1`` chords by default)."""
    if length is None:
        length = cover.n + 1
    return [cover.members[(i * step) % cover.n] for i in range(length)]


def common_tone_counts(chords: Sequence[Sequence[int]]) -> tuple[list[int], list[int]]:
    """Sizes of consecutive pairwise and triple intersections along a progression."""
    sets = [set(c) for c in chords]
    pairs = [len(a & b) for a, b in zip(sets, sets[1:])]
    triples = [len(a & b & c) for a, b, c in zip(sets, sets[1:], sets[2:])]
    return pairs, triples


def parse_cover_spec(text: str) -> OrbitCover:
    """Parse ``"N: e1,...,en | (i1,...,ik) [| root]"``.

    Without a root the first listed scale element is used.
    """
    fields = [f.strip() for f in text.split("|")]
    if len(fields) not in (2, 3):
        raise ParseError(f"expected 'SCALE | SIGMA [| ROOT]' but got {text!r}")
    scale, first = parse_scale(fields[0])
    sigma = parse_composition(fields[1])
    if len(fields) == 3:
        try:
            root = int(fields[2])
        except ValueError:
            raise ParseError(f"root {fields[2]!r} is not an integer") from None
    else:
        root = first
    return orbit_cover(scale, sigma, root)
