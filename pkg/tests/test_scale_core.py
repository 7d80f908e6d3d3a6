import itertools
import json
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitcover.errors import DomainError, MembershipError, ParseError
from orbitcover.scale_core import (
    Mode,
    PitchClassSet,
    Scale,
    ScaleHom,
    build_mode,
    compose_mode_homs,
    compose_scale_homs,
    identity_mode_hom,
    mode_add,
    mode_hom,
    normal_order,
    parse_scale,
    scale_hom,
    translate,
)


@st.composite
def pitch_class_sets(draw, max_universe=12):
    universe = draw(st.integers(1, max_universe))
    elems = draw(st.sets(st.integers(0, universe - 1), min_size=1))
    return PitchClassSet.of(universe, elems)


def small_sets(max_universe):
    for universe in range(1, max_universe + 1):
        for r in range(1, universe + 1):
            for elems in itertools.combinations(range(universe), r):
                yield PitchClassSet.of(universe, elems)


# -- PitchClassSet ----------------------------------------------------------


def test_pcs_is_stored_ascending():
    assert PitchClassSet.of(12, [11, 0, 4]).elements == (0, 4, 11)


@pytest.mark.parametrize(
    "universe, elems",
    [(12, []), (12, [12]), (12, [-1]), (12, [3, 3]), (0, [0])],
)
def test_pcs_rejects_invalid(universe, elems):
    with pytest.raises(DomainError):
        PitchClassSet.of(universe, elems)


# -- normal order -----------------------------------------------------------


def test_normal_order_c_major(c_major_pcs):
    assert normal_order(c_major_pcs) == (11, 0, 2, 4, 5, 7, 9)


def test_normal_order_singleton():
    assert normal_order(PitchClassSet.of(12, [5])) == (5,)


def test_normal_order_aggregate():
    assert normal_order(PitchClassSet.of(12, range(12))) == tuple(range(12))


def test_normal_order_symmetric_set_takes_smallest_start():
    # whole-tone set: every rotation has the same span and offsets
    assert normal_order(PitchClassSet.of(12, [10, 0, 2, 4, 6, 8])) == (0, 2, 4, 6, 8, 10)


@given(pitch_class_sets())
def test_normal_order_properties(pcs):
    order = normal_order(pcs)
    asc = pcs.elements
    n, N = len(asc), pcs.universe
    rotations = [asc[i:] + asc[:i] for i in range(n)]
    assert order in rotations
    assert sorted(order) == list(asc)
    gaps = [(order[(j + 1) % n] - order[j]) % N or N for j in range(n)]
    assert sum(gaps) == N
    # minimal span over all rotations
    span = (order[-1] - order[0]) % N
    assert span == min((r[-1] - r[0]) % N for r in rotations)
    # idempotent
    assert normal_order(PitchClassSet.of(N, order)) == order


# -- modes ------------------------------------------------------------------


def test_mode_zero_is_locrian(c_major_pcs):
    m = build_mode(c_major_pcs, 0)
    assert m.tonic == 11
    assert [m.degree(x) for x in normal_order(c_major_pcs)] == list(range(7))


def test_mode_one_shifts_labels_up(c_major_pcs):
    # degree = normal-order position + 1, so degree 0 sits at position 6
    m = build_mode(c_major_pcs, 1)
    assert m.degree(11) == 1 and m.degree(0) == 2
    assert m.tonic == 9


def test_mode_with_tonic_round_trip(c_major):
    for t in c_major.elements:
        assert c_major.mode_with_tonic(t).tonic == t


def test_mode_index_out_of_range(c_major_pcs):
    with pytest.raises(DomainError):
        build_mode(c_major_pcs, 7)
    with pytest.raises(DomainError):
        build_mode(c_major_pcs, -1)


def test_mode_add_locrian_example(c_major_pcs):
    m = build_mode(c_major_pcs, 0)
    # degrees 1 + 2 = 3 -> element at normal-order position 3
    assert mode_add(m, 0, 2) == 4


def test_mode_add_membership_error(c_major_pcs):
    m = build_mode(c_major_pcs, 0)
    with pytest.raises(MembershipError):
        mode_add(m, 1, 2)


def test_mode_add_commutative_c_major(c_major_pcs):
    m = build_mode(c_major_pcs, 0)
    for x, y in itertools.product(c_major_pcs.elements, repeat=2):
        assert mode_add(m, x, y) == mode_add(m, y, x)


def test_group_laws_exhaustive_small():
    # every set in Z_N for N <= 7, plus all 7-element subsets of Z_12
    sets = list(small_sets(7)) + [PitchClassSet.of(12, c) for c in itertools.combinations(range(12), 7)]
    for pcs in sets:
        for i in range(pcs.size):
            _assert_group_laws(Mode(pcs, i))


def _assert_group_laws(m):
    X = m.base.elements
    t = m.tonic
    assert m.degree(t) == 0
    assert sum(1 for x in X if m.degree(x) == 0) == 1
    for x in X:
        assert m.add(t, x) == x == m.add(x, t)
        assert m.add(x, m.neg(x)) == t
        for y in X:
            assert m.add(x, y) == m.add(y, x)
            for z in X:
                assert m.add(m.add(x, y), z) == m.add(x, m.add(y, z))


@settings(max_examples=60, deadline=None)
@given(pitch_class_sets(), st.data())
def test_group_laws_random(pcs, data):
    i = data.draw(st.integers(0, pcs.size - 1))
    _assert_group_laws(Mode(pcs, i))


def test_degree_group_is_cyclic_of_order_n(c_major_pcs):
    m = build_mode(c_major_pcs, 3)
    gen = m.element(1)
    x, seen = m.tonic, []
    for _ in range(7):
        seen.append(x)
        x = m.add(x, gen)
    assert x == m.tonic and sorted(seen) == list(c_major_pcs.elements)


# -- scales -----------------------------------------------------------------


def test_translate_examples(c_major):
    assert translate(c_major, 1, 0) == 2
    assert all(translate(c_major, 0, x) == x for x in c_major.elements)
    assert translate(c_major, 1, 11) == 0
    assert translate(c_major, -1, 0) == 11


def test_translate_membership(c_major):
    with pytest.raises(MembershipError):
        translate(c_major, 1, 1)


def test_torsor_same_for_every_mode(c_major_pcs):
    tables = {Scale.from_mode(Mode(c_major_pcs, i)).table for i in range(7)}
    assert len(tables) == 1
    s0, s3 = Scale.from_mode(Mode(c_major_pcs, 0)), Scale.from_mode(Mode(c_major_pcs, 3))
    for g, x in itertools.product(range(7), c_major_pcs.elements):
        assert s0.translate(g, x) == s3.translate(g, x)


def _assert_torsor_laws(s):
    X = s.elements
    n = s.n
    for x in X:
        assert s.translate(0, x) == x
        assert sorted(s.translate(g, x) for g in range(n)) == list(X)
        for g, h in itertools.product(range(n), repeat=2):
            assert s.translate(g + h, x) == s.translate(g, s.translate(h, x))
    for x, y in itertools.product(X, repeat=2):
        assert sum(1 for g in range(n) if s.translate(g, x) == y) == 1
        assert s.translate(s.steps(x, y), x) == y


def test_torsor_laws_exhaustive_small():
    for pcs in small_sets(7):
        tables = {Scale.from_mode(Mode(pcs, i)).table for i in range(pcs.size)}
        assert len(tables) == 1
        _assert_torsor_laws(Scale(pcs))


@settings(max_examples=40, deadline=None)
@given(pitch_class_sets())
def test_torsor_laws_random(pcs):
    tables = {Scale.from_mode(Mode(pcs, i)).table for i in range(pcs.size)}
    assert len(tables) == 1
    _assert_torsor_laws(Scale(pcs))


def test_parse_scale():
    s, first = parse_scale("12: 5,7,9,10,0,2,4")
    assert s.elements == (0, 2, 4, 5, 7, 9, 10) and first == 5
    for bad in ["5,7,9", "12: 5,x", "12: 13", "12: 1,1", "12:"]:
        with pytest.raises(ParseError):
            parse_scale(bad)


# -- homomorphisms ----------------------------------------------------------


def _zmode(n, i=0):
    return Mode(PitchClassSet.of(n, range(n)), i)


def test_mode_hom_equal_sizes_is_identity_on_degrees():
    h = mode_hom(_zmode(7), _zmode(7))
    assert h.multiplier == 1
    assert all(h.group_part(j) == j for j in range(7))


def test_mode_hom_seven_to_twelve_is_constant_to_tonic():
    src, tgt = _zmode(7), _zmode(12)
    h = mode_hom(src, tgt)
    assert h.multiplier % 12 == 0
    assert {h(x) for x in src.base.elements} == {tgt.tonic}
    assert h.commutes()


def test_mode_hom_six_to_twelve_doubles():
    h = mode_hom(_zmode(6), _zmode(12))
    assert h.multiplier == 2
    assert [h.group_part(j) for j in range(6)] == [0, 2, 4, 6, 8, 10]


def test_mode_hom_well_defined_all_sizes():
    for n in range(1, 13):
        for n2 in range(1, 13):
            a = n2 // gcd(n, n2)
            assert (a * n) % n2 == 0
            h = mode_hom(_zmode(n), _zmode(n2, n2 - 1))
            assert h.commutes()
            for j, k in itertools.product(range(n), repeat=2):
                assert h.group_part(j + k) == (h.group_part(j) + h.group_part(k)) % n2


def test_mode_hom_rejects_non_homomorphism():
    with pytest.raises(DomainError):
        mode_hom(_zmode(7), _zmode(12), multiplier=1)


def test_mode_hom_category_laws():
    sizes = (5, 6, 7, 12)
    for n, n2, n3 in itertools.product(sizes, repeat=3):
        f = mode_hom(_zmode(n, 1 % n), _zmode(n2, 2 % n2))
        g = mode_hom(_zmode(n2, 2 % n2), _zmode(n3))
        gf = compose_mode_homs(g, f)
        assert gf.commutes()
        assert all(gf(x) == g(f(x)) for x in f.source.base.elements)
        ident = identity_mode_hom(f.source)
        assert compose_mode_homs(f, ident).mapping == f.mapping
        assert compose_mode_homs(identity_mode_hom(f.target), f).mapping == f.mapping


def test_scale_hom_identity(c_major):
    h = scale_hom(c_major, c_major, 2, 2)
    assert all(h(x) == x for x in c_major.elements)
    assert h.is_equivariant()


def test_scale_hom_heptatonic_is_rotation_of_degrees(c_major, exotic):
    for i, j in itertools.product(range(7), repeat=2):
        h = scale_hom(c_major, exotic, i, j)
        assert h.is_equivariant()
        src, tgt = Mode(c_major.base, 0), Mode(exotic.base, 0)
        shifts = {(tgt.degree(h(x)) - src.degree(x)) % 7 for x in c_major.elements}
        assert shifts == {(i - j) % 7}


def test_scale_hom_composition():
    scales = {n: Scale.of(n, range(n)) for n in (6, 7, 12)}
    for a, b, c in itertools.product(scales, repeat=3):
        f = scale_hom(scales[a], scales[b], 1 % a, 0)
        g = scale_hom(scales[b], scales[c], 0, 3 % c)
        gf = compose_scale_homs(g, f)
        assert gf.is_equivariant()
        assert gf.multiplier == (f.multiplier * g.multiplier) % c
        assert all(gf(x) == g(f(x)) for x in scales[a].elements)


def test_scale_hom_index_range(c_major):
    with pytest.raises(DomainError):
        scale_hom(c_major, c_major, 7, 0)


def test_scale_hom_rejects_partial_map(c_major):
    with pytest.raises(DomainError):
        ScaleHom(c_major, c_major, 1, {0: 0})


# -- records ----------------------------------------------------------------


def test_records_round_trip(c_major_pcs):
    m = Mode(c_major_pcs, 3)
    rec = json.loads(json.dumps(m.to_record()))
    assert rec == {"universe": 12, "elements": [0, 2, 4, 5, 7, 9, 11], "mode_index": 3}
    assert Mode.from_record(rec) == m
    assert PitchClassSet.from_record(c_major_pcs.to_record()) == c_major_pcs
    s = Scale(c_major_pcs)
    assert s.to_record() == {"universe": 12, "elements": [0, 2, 4, 5, 7, 9, 11]}
    assert Scale.from_record(s.to_record()) == s
