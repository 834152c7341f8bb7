"""Cone systems, quasifans and fans.

A :class:`ConeSystem` is any finite set of cones in a common lattice.
:class:`Quasifan` and :class:`Fan` are face-closed systems built from their
maximal cones; they store the full face closure so that equality of two
fans is plain equality of their canonical cone tuples.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .cone import (Cone, contains_cone, cone_from_generators, faces, facets,
                   image_cone, intersect, is_face_of, zero_cone)
from .errors import (ConeNotInFan, InternalInvariantViolation, InvalidFan,
                     InvalidQuasifan, RankMismatch)
from .linalg import Matrix, SublatticeBasis, quotient_projection, sublattice

__all__ = [
    "ConeSystem", "Quasifan", "Fan", "FanClass", "Violation", "FanValidation",
    "validate_fan", "is_map_of_fans", "MapCheck",
    "quasifan_to_fan", "star_subfan", "orbit_closure_fan", "is_complete",
    "image_fan", "face_closure", "zero_fan", "common_lineality",
]


def _maximal(cones: Iterable[Cone]) -> tuple[Cone, ...]:
    cones = sorted(set(cones))
    return tuple(c for c in cones
                 if not any(d != c and contains_cone(d, c) for d in cones))


def face_closure(cones: Iterable[Cone]) -> tuple[Cone, ...]:
    out: set[Cone] = set()
    for c in cones:
        out.update(faces(c))
    return tuple(sorted(out))


@dataclass(frozen=True, eq=False)
class ConeSystem:
    """A finite set of cones in ``Z^n``, stored sorted and deduplicated.

    Equality ignores the subclass: two systems are equal when they hold the
    same canonical cones.
    """

    ambient_rank: int
    cones: tuple[Cone, ...]

    def __post_init__(self):
        for c in self.cones:
            if c.ambient_rank != self.ambient_rank:
                raise RankMismatch(f"{c} does not live in rank {self.ambient_rank}")
        object.__setattr__(self, "cones", tuple(sorted(set(self.cones))))

    @cached_property
    def maximal_cones(self) -> tuple[Cone, ...]:
        return _maximal(self.cones)

    @cached_property
    def rays(self) -> tuple[Cone, ...]:
        """One-dimensional strictly convex cones of the system."""
        return tuple(c for c in self.cones if c.dim == 1 and c.lineality.rank == 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConeSystem):
            return NotImplemented
        return (self.ambient_rank, self.cones) == (other.ambient_rank, other.cones)

    def __hash__(self) -> int:
        return hash((self.ambient_rank, self.cones))

    def __len__(self) -> int:
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones)

    def __contains__(self, c: Cone) -> bool:
        return c in set(self.cones)


class Quasifan(ConeSystem):
    """Face-closed system in which any two cones meet in a common face."""

    @classmethod
    def from_maximal_cones(cls, n: int, cones: Iterable[Cone], check: bool = True):
        system = cls(n, face_closure(cones))
        if check:
            report = validate_fan(system)
            if not report.at_least(FanClass.QUASIFAN if cls is Quasifan else FanClass.FAN):
                exc = InvalidQuasifan if cls is Quasifan else InvalidFan
                raise exc(f"not a {cls.__name__.lower()}: {report.violations}")
        return system


class Fan(Quasifan):
    """Quasifan all of whose cones are strictly convex."""

    @classmethod
    def from_rays(cls, n: int, rays: Sequence[Sequence[int]],
                  cones: Iterable[Iterable[int]], check: bool = True) -> "Fan":
        """Fan from a ray list and index lists of its maximal cones."""
        return cls.from_maximal_cones(
            n, [cone_from_generators(n, [rays[i] for i in idx]) for idx in cones], check)


def zero_fan(n: int) -> Fan:
    return Fan.from_maximal_cones(n, [zero_cone(n)], check=False)


# ---------------------------------------------------------------------------
# validation


class FanClass(enum.IntEnum):
    SYSTEM = 0
    QUASIFAN = 1
    FAN = 2


@dataclass(frozen=True)
class Violation:
    condition: str          # "not-strictly-convex" | "missing-face" | "common-face"
    indices: tuple[int, ...]  # indices into ConeSystem.cones
    detail: str = ""

    def as_dict(self) -> dict:
        return {"condition": self.condition, "indices": list(self.indices),
                "detail": self.detail}


@dataclass(frozen=True)
class FanValidation:
    kind: FanClass
    violations: tuple[Violation, ...] = field(default=())

    def at_least(self, kind: FanClass) -> bool:
        return self.kind >= kind

    @property
    def name(self) -> str:
        return {FanClass.FAN: "Fan", FanClass.QUASIFAN: "Quasifan",
                FanClass.SYSTEM: "ConeSystem"}[self.kind]


def validate_fan(S: ConeSystem) -> FanValidation:
    """Classify ``S`` as Fan, Quasifan or ConeSystem and list every violation.

    Common faces are checked on pairs of maximal cones; for face-closed
    systems this implies the condition for all pairs.
    """
    index = {c: i for i, c in enumerate(S.cones)}
    violations: list[Violation] = []
    closed = True
    for i, c in enumerate(S.cones):
        for f in faces(c):
            if f not in index:
                closed = False
                violations.append(Violation("missing-face", (i,), repr(f)))
    common = True
    for a, b in itertools.combinations(S.maximal_cones, 2):
        meet = intersect(a, b)
        bad = [x for x in (a, b) if not is_face_of(meet, x)]
        if bad:
            common = False
            violations.append(Violation(
                "common-face", (index[a], index[b]),
                f"intersection {meet!r} is not a face of "
                + " and ".join(repr(x) for x in bad)))
    strict = True
    for i, c in enumerate(S.cones):
        if c.lineality.rank:
            strict = False
            violations.append(Violation("not-strictly-convex", (i,), repr(c)))
    if closed and common:
        kind = FanClass.FAN if strict else FanClass.QUASIFAN
    else:
        kind = FanClass.SYSTEM
    return FanValidation(kind, tuple(violations))


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class MapCheck:
    ok: bool
    # source maximal cone index -> target cone index (into target.cones) or None
    witness: tuple[tuple[int, int | None], ...]
    failing: Cone | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_map_of_fans(F: Matrix, source: ConeSystem, target: ConeSystem) -> MapCheck:
    """Check that every source cone maps into some target cone."""
    if F and len(F[0]) != source.ambient_rank:
        raise RankMismatch("matrix columns do not match the source rank")
    if len(F) != target.ambient_rank:
        raise RankMismatch("matrix rows do not match the target rank")
    if not F and source.ambient_rank and target.ambient_rank:
        raise RankMismatch("empty matrix between nonzero lattices")
    tindex = {c: i for i, c in enumerate(target.cones)}
    sindex = {c: i for i, c in enumerate(source.cones)}
    witness = []
    for s in source.maximal_cones:
        img = image_cone(F, s, target.ambient_rank)
        hit = next((t for t in target.maximal_cones if contains_cone(t, img)), None)
        witness.append((sindex[s], None if hit is None else tindex[hit]))
        if hit is None:
            return MapCheck(False, tuple(witness), s)
    return MapCheck(True, tuple(witness))


def image_fan(A: Matrix, S: ConeSystem, target_rank: int | None = None) -> ConeSystem:
    """Images of the maximal cones of ``S`` under ``A`` together with their faces."""
    m = len(A) if target_rank is None else target_rank
    cls = type(S) if isinstance(S, Quasifan) else ConeSystem
    imgs = [image_cone(A, c, m) for c in S.maximal_cones]
    if cls is ConeSystem:
        return ConeSystem(m, tuple(imgs))
    return cls.from_maximal_cones(m, imgs, check=False)


# ---------------------------------------------------------------------------
# quasifans to fans, stars, orbit closures


def common_lineality(cones: Sequence[Cone], n: int) -> SublatticeBasis:
    """Maximal sublattice contained in the intersection of ``cones``."""
    if not cones:
        raise InvalidQuasifan("empty system has no maximal cones")
    meet = cones[0]
    for c in cones[1:]:
        meet = intersect(meet, c)
    return meet.lineality


def quasifan_to_fan(sigma: ConeSystem, check: bool = True
                    ) -> tuple[SublatticeBasis, Matrix, Fan]:
    """Collapse the common lineality of a quasifan.

    Returns ``(L, P, fan)`` where ``L`` is the common lineality lattice of
    the maximal cones, ``P`` its canonical quotient projection and ``fan``
    the images of the maximal cones with their faces.
    """
    if check and not validate_fan(sigma).at_least(FanClass.QUASIFAN):
        raise InvalidQuasifan("input is not a quasifan")
    n = sigma.ambient_rank
    L = common_lineality(sigma.maximal_cones, n)
    P = quotient_projection(L)
    m = n - L.rank
    imgs = [image_cone(P, c, m) for c in sigma.maximal_cones]
    for c in imgs:
        if c.lineality.rank:
            raise InternalInvariantViolation(f"projected cone {c} is not strictly convex")
    fan = Fan(m, face_closure(imgs))
    report = validate_fan(fan)
    if report.kind != FanClass.FAN:
        raise InternalInvariantViolation(f"collapsed quasifan is not a fan: {report.violations}")
    return L, P, fan


def star_subfan(delta: ConeSystem, tau: Cone) -> Fan:
    """The fan generated by the maximal cones having ``tau`` as a face."""
    if tau not in delta:
        raise ConeNotInFan(f"{tau} is not a cone of the fan")
    star = [s for s in delta.maximal_cones if is_face_of(tau, s)]
    sub = Fan(delta.ambient_rank, face_closure(star))
    return sub


def orbit_closure_fan(delta: ConeSystem, tau: Cone
                      ) -> tuple[SublatticeBasis, Matrix, Fan]:
    """Fan of the orbit closure of ``tau``: project the star of ``tau`` by ``Lin(tau)``."""
    if tau not in delta:
        raise ConeNotInFan(f"{tau} is not a cone of the fan")
    n = delta.ambient_rank
    L = sublattice(n, cone_from_generators(n, (), tau.generators).lineality.basis)
    P = quotient_projection(L)
    star = [s for s in delta.maximal_cones if is_face_of(tau, s)]
    m = n - L.rank
    return L, P, Fan(m, face_closure(image_cone(P, s, m) for s in star))


def is_complete(delta: ConeSystem) -> bool:
    """Whether the support of ``delta`` is all of ``R^n`` (facet-pairing test)."""
    n = delta.ambient_rank
    maxc = delta.maximal_cones
    if n == 0:
        return bool(delta.cones)
    if not maxc or any(c.dim < n for c in maxc):
        return False
    count: dict[Cone, int] = {}
    for c in maxc:
        for f in facets(c):
            count[f] = count.get(f, 0) + 1
    return all(v == 2 for v in count.values())
