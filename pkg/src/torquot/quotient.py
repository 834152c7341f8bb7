"""Quotient quasifans and quotient fans of cone systems by sublattices.

:func:`quotient_quasifan` projects the maximal cones to ``N/L`` and then
repairs improper overlaps by enlarging cones with faces of their
neighbours until any two cones meet in a common face.  :func:`quotient_fan`
collapses the common lineality of the result.  :func:`codim2_quotient_oracle`
is an independent construction valid when ``N/L`` has rank two, used to
cross-check the main algorithm.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from .cone import (Cone, contains, contains_cone, convex_hull_union, image_cone,
                   intersect, is_face_of, minimal_face_containing,
                   relative_interior_point)
from .errors import (InternalInvariantViolation, NonPrimitiveSublattice,
                     RankMismatch, WrongCodimension)
from .fan import (ConeSystem, Fan, FanClass, Quasifan, common_lineality,
                  face_closure, is_map_of_fans, validate_fan)
from .linalg import (Matrix, SublatticeBasis, dot, matmul, matvec,
                     preimage_lattice, quotient_projection, right_inverse,
                     saturate, sublattice)

log = logging.getLogger(__name__)

__all__ = ["LoopStep", "QuotientResult", "quotient_quasifan", "quotient_fan",
           "codim2_quotient_oracle", "check_sublattice"]


@dataclass(frozen=True)
class LoopStep:
    iteration: int
    pair: tuple[int, int]        # indices of tau_1, tau_2 in the sorted system
    face: Cone                   # the minimal face used to enlarge
    replaced: int                # index of the enlarged cone (0 -> tau_1, 1 -> tau_2)
    size_before: int
    size_after: int
    count_before: int
    count_after: int

    def as_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "pair": list(self.pair),
            "face": {"rays": [list(r) for r in self.face.rays],
                     "lineality": [list(b) for b in self.face.lineality.basis]},
            "replaced": "tau1" if self.replaced == 0 else "tau2",
            "systemSize": [self.size_before, self.size_after],
            "generatorCount": [self.count_before, self.count_after],
        }


@dataclass(frozen=True)
class QuotientResult:
    source: ConeSystem
    sublattice: SublatticeBasis
    enlarged_kernel: SublatticeBasis
    projection: Matrix
    fan: Fan
    quasifan: Quasifan | None = None
    trace: tuple[LoopStep, ...] = field(default=(), repr=False)

    @property
    def rank(self) -> int:
        """Rank of the quotient lattice."""
        return self.source.ambient_rank - self.enlarged_kernel.rank

    def key(self) -> tuple:
        return (self.enlarged_kernel.rank, self.projection, self.fan.cones)


def check_sublattice(S_rank: int, L: SublatticeBasis) -> None:
    if L.ambient_rank != S_rank:
        raise RankMismatch(f"sublattice of rank {L.ambient_rank} in a lattice of rank {S_rank}")
    if not L.is_primitive:
        raise NonPrimitiveSublattice(
            f"sublattice {[list(b) for b in L.basis]} is not primitive; saturate it first")


def _generator_images(S: ConeSystem, P: Matrix, m: int) -> frozenset:
    pts = set()
    for c in S.cones:
        for g in c.generators:
            pts.add(matvec(P, g) if P else ())
    return frozenset(pts)


def _measure(system: Sequence[Cone], pts: frozenset) -> int:
    return sum(sum(1 for p in pts if contains(t, p)) for t in system)


def _first_violation(system: Sequence[Cone]) -> tuple[int, int, Cone] | None:
    for i, t1 in enumerate(system):
        for j, t2 in enumerate(system):
            if i == j:
                continue
            meet = intersect(t1, t2)
            if not is_face_of(meet, t1):
                return i, j, meet
    return None


def quotient_quasifan(S: ConeSystem, L: SublatticeBasis
                      ) -> tuple[Quasifan, Matrix, tuple[LoopStep, ...]]:
    """Quotient quasifan of ``S`` by ``L`` in ``N/L``.

    Returns the quasifan, the projection ``N -> N/L`` and the loop trace.
    """
    check_sublattice(S.ambient_rank, L)
    if not S.cones:
        raise ValueError("empty cone system")
    P = quotient_projection(L)
    m = S.ambient_rank - L.rank
    images = [image_cone(P, c, m) for c in S.maximal_cones]
    system = sorted(c for c in set(images)
                    if not any(d != c and contains_cone(d, c) for d in images))
    pts = _generator_images(S, P, m)
    trace: list[LoopStep] = []
    while (hit := _first_violation(system)) is not None:
        i, j, meet = hit
        t1, t2 = system[i], system[j]
        size0, count0 = len(system), _measure(system, pts)
        rho2 = minimal_face_containing(t2, meet)
        if not contains_cone(t1, rho2):
            new, old, face, which = convex_hull_union(t1, rho2), t1, rho2, 0
        else:
            rho1 = minimal_face_containing(t1, meet)
            new, old, face, which = convex_hull_union(t2, rho1), t2, rho1, 1
        rest = [c for c in system if c != old and not contains_cone(new, c)]
        system = sorted(set(rest) | {new})
        step = LoopStep(len(trace), (i, j), face, which, size0, len(system),
                        count0, _measure(system, pts))
        log.debug("loop step %d: pair %s, enlarged %s by %r", step.iteration,
                  step.pair, "tau1" if which == 0 else "tau2", face)
        trace.append(step)
    sigma = Quasifan(m, face_closure(system))
    return sigma, P, tuple(trace)


def quotient_fan(S: ConeSystem, L: SublatticeBasis, check: bool = True) -> QuotientResult:
    """Quotient fan of ``S`` by the primitive sublattice ``L``.

    The result carries the enlarged kernel ``L_hat``, the canonical
    projection ``N -> N/L_hat`` and the quotient fan.  With ``check`` the
    defining properties are verified before returning.
    """
    sigma, P1, trace = quotient_quasifan(S, L)
    n, m1 = S.ambient_rank, sigma.ambient_rank
    L1 = common_lineality(sigma.maximal_cones, m1)
    L_hat = preimage_lattice(P1, L1, n)
    P = quotient_projection(L_hat)
    m = n - L_hat.rank
    # P factors as A @ P1 because ker(P1) = L lies in L_hat
    A = matmul(P, right_inverse(P1, cols=n), cols=len(P1))
    maxcones = [image_cone(A, c, m) for c in sigma.maximal_cones]
    fan = Fan(m, face_closure(maxcones))
    result = QuotientResult(S, L, L_hat, P, fan, sigma, trace)
    if check:
        _check_result(result)
    return result


def _check_result(q: QuotientResult) -> None:
    n = q.source.ambient_rank
    for b in q.enlarged_kernel.basis:
        if any(matvec(q.projection, b)):
            raise InternalInvariantViolation("projection does not vanish on the enlarged kernel")
    for b in q.sublattice.basis:
        if b not in q.enlarged_kernel:
            raise InternalInvariantViolation("sublattice not contained in the enlarged kernel")
    if not q.enlarged_kernel.is_primitive:
        raise InternalInvariantViolation("enlarged kernel is not primitive")
    if q.fan.ambient_rank != n - q.enlarged_kernel.rank:
        raise InternalInvariantViolation("quotient fan has the wrong rank")
    report = validate_fan(q.fan)
    if report.kind != FanClass.FAN:
        raise InternalInvariantViolation(f"quotient is not a fan: {report.violations}")
    if not is_map_of_fans(q.projection, q.source, q.fan):
        raise InternalInvariantViolation("projection is not a map of fans")


# ---------------------------------------------------------------------------
# rank-two oracle


def codim2_quotient_oracle(delta: ConeSystem, L: SublatticeBasis) -> QuotientResult:
    """Quotient fan by merging maximal cones whose projected interiors chain together.

    Only valid when ``N/L`` has rank two.  Two maximal cones are equivalent
    when a chain of cones of ``delta`` joins them with consecutive projected
    relative interiors overlapping; each class is replaced by its convex
    hull, and the linear parts of the projected hulls are collapsed.
    """
    check_sublattice(delta.ambient_rank, L)
    n = delta.ambient_rank
    if n - L.rank != 2:
        raise WrongCodimension(f"quotient lattice has rank {n - L.rank}, expected 2")
    P = quotient_projection(L)
    imgs = [image_cone(P, c, 2) for c in delta.cones]
    cones = list(delta.cones)
    # union-find over all cones, joined on overlapping projected relative interiors
    parent = list(range(len(cones)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(cones)):
        for j in range(i + 1, len(cones)):
            if find(i) != find(j) and _relints_meet(imgs[i], imgs[j]):
                parent[find(i)] = find(j)
    classes: dict[int, list[Cone]] = {}
    for c in delta.maximal_cones:
        classes.setdefault(find(cones.index(c)), []).append(c)
    hulls = []
    for members in classes.values():
        h = members[0]
        for c in members[1:]:
            h = convex_hull_union(h, c)
        hulls.append(h)
    V = []
    for h in hulls:
        V.extend(image_cone(P, h, 2).lineality.basis)
    V_lat = saturate(sublattice(2, V))
    L_hat = preimage_lattice(P, V_lat, n)
    Q = quotient_projection(L_hat)
    m = n - L_hat.rank
    fan = Fan(m, face_closure(image_cone(Q, h, m) for h in hulls))
    return QuotientResult(delta, L, L_hat, Q, fan)


def _relints_meet(a: Cone, b: Cone) -> bool:
    """Whether the relative interiors of two cones intersect."""
    meet = intersect(a, b)
    x = relative_interior_point(meet)
    # meet contains a relative-interior point of both iff it is not inside a
    # proper face of either; test its own relative-interior point
    return _in_relint(a, x) and _in_relint(b, x)


def _in_relint(c: Cone, x: Sequence[int]) -> bool:
    if not contains(c, x):
        return False
    return all(dot(u, x) > 0 for u in c.halfspaces)
