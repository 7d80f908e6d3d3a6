"""Scales as torsors, orbit covers, and the topology of their nerves."""

__version__ = "0.1.0"

from .compositions import (
    AffineOrbit,
    IntervalComposition,
    RotationClass,
    affine_orbits,
    enumerate_compositions,
    rotate,
    rotation_classes,
    u_transform,
)
from .covers import (
    CoverMorphism,
    OrbitCover,
    is_primitive,
    orbit_cover,
    realize,
    transport_cover,
    verify_cover_morphism,
)
from .errors import DomainError, MembershipError, OrbitCoverError, ParseError
from .nerve import (
    HomologyProfile,
    SimplicialComplex,
    build_nerve,
    harmonic_regions,
    homology,
    nerve_isomorphic,
)
from .scale_core import (
    Mode,
    ModeHom,
    PitchClassSet,
    Scale,
    ScaleHom,
    build_mode,
    mode_add,
    mode_hom,
    normal_order,
    scale_hom,
    translate,
)
