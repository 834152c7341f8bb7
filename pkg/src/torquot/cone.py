"""Rational convex polyhedral cones in exact arithmetic.

A :class:`Cone` carries both descriptions at once:

* generators: primitive extreme rays of the pointed part plus a lattice basis
  of the lineality space;
* inequalities: primitive inward facet normals plus a lattice basis of the
  integer linear forms vanishing on the linear span.

Rays are reduced modulo the lineality space by orthogonal projection onto its
complement, and facet normals are reduced modulo the equations by orthogonal
projection onto the linear span.  With these conventions every cone has a
single canonical form, so dataclass equality is geometric equality.

The conversion between the two descriptions is the incremental double
description method, run over the integers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NotContained, RankMismatch
from .linalg import (Matrix, SublatticeBasis, Vector, dot, identity, matvec,
                     orthogonal_complement_projection, primitive,
                     primitive_rational, rank, saturate, sublattice)

__all__ = [
    "Cone", "cone", "cone_from_generators", "cone_from_inequalities",
    "zero_cone", "contains", "contains_cone", "intersect", "convex_hull_union",
    "faces", "facets", "is_face_of", "minimal_face_containing",
    "lineality_space", "is_strictly_convex", "relative_interior_point",
    "image_cone", "face_generated_by", "linear_span_cone",
]


@dataclass(frozen=True)
class Cone:
    """Canonical rational polyhedral cone in ``R^n``.

    Build cones with :func:`cone_from_generators` or
    :func:`cone_from_inequalities`; the constructor trusts its arguments.
    """

    ambient_rank: int
    rays: tuple[Vector, ...]
    lineality: SublatticeBasis = field(repr=False)
    halfspaces: tuple[Vector, ...] = field(repr=False, compare=False)
    equations: tuple[Vector, ...] = field(repr=False, compare=False)
    dim: int = field(compare=False)

    @property
    def sort_key(self) -> tuple:
        return (self.rays, self.lineality.basis)

    def __lt__(self, other: "Cone") -> bool:
        return self.sort_key < other.sort_key

    @property
    def lineality_dim(self) -> int:
        return self.lineality.rank

    @property
    def generators(self) -> tuple[Vector, ...]:
        """Generators as a plain cone: rays plus both signs of the lineality basis."""
        lin = self.lineality.basis
        return self.rays + lin + tuple(tuple(-x for x in b) for b in lin)

    def __repr__(self) -> str:
        lin = list(map(list, self.lineality.basis))
        extra = f", lineality={lin}" if lin else ""
        return f"Cone(rank={self.ambient_rank}, rays={list(map(list, self.rays))}{extra})"


# ---------------------------------------------------------------------------
# double description


def _double_description(constraints: Sequence[Vector], m: int
                        ) -> tuple[list[Vector], list[Vector]]:
    """Generators of ``{x in R^m : a.x >= 0 for a in constraints}``.

    Returns ``(rays, lineality)``: extreme rays modulo the lineality space and
    a (rational) basis of the lineality space, all as integer vectors.
    """
    lin: list[Vector] = list(identity(m))
    rays: list[tuple[Vector, frozenset[int]]] = []
    processed: list[int] = []
    for idx, a in enumerate(constraints):
        if not any(a):
            continue
        vals = [dot(a, l) for l in lin]
        k = next((i for i, v in enumerate(vals) if v), None)
        if k is not None:
            l0, s = lin[k], vals[k]
            if s < 0:
                l0, s = tuple(-x for x in l0), -s
            lin = [primitive(tuple(s * x - v * y for x, y in zip(l, l0)))
                   for i, (l, v) in enumerate(zip(lin, vals)) if i != k]
            rays = [(primitive(tuple(s * x - dot(a, r) * y for x, y in zip(r, l0))),
                     tight | {idx}) for r, tight in rays]
            rays.append((l0, frozenset(processed)))
        else:
            d = m - len(lin)
            pos, neg, new = [], [], []
            for r, tight in rays:
                v = dot(a, r)
                if v > 0:
                    pos.append((r, tight, v))
                    new.append((r, tight))
                elif v < 0:
                    neg.append((r, tight, v))
                else:
                    new.append((r, tight | {idx}))
            if d >= 2:
                for p, tp, vp in pos:
                    for q, tq, vq in neg:
                        common = tp & tq
                        if len(common) < d - 2:
                            continue
                        # no third ray may be tight on all of common
                        if any(common <= t for r, t in rays if r is not p and r is not q):
                            continue
                        if rank([constraints[i] for i in common]) != d - 2:
                            continue
                        w = primitive(tuple(vp * y - vq * x for x, y in zip(p, q)))
                        new.append((w, common | {idx}))
            rays = new
        processed.append(idx)
    return [r for r, _ in rays], lin


# ---------------------------------------------------------------------------
# construction


def _reduce(vectors: Iterable[Sequence], modulo: Sequence[Vector]) -> tuple[Vector, ...]:
    out = set()
    for v in vectors:
        w = primitive_rational(orthogonal_complement_projection(v, modulo))
        if any(w):
            out.add(w)
    return tuple(sorted(out))


@lru_cache(maxsize=65536)
def _canonical(n: int, gens: tuple[Vector, ...]) -> Cone:
    facet_normals, eq_span = _double_description(gens, n)
    eq_lattice = saturate(sublattice(n, eq_span))
    ineqs = list(facet_normals)
    for e in eq_lattice.basis:
        ineqs.append(e)
        ineqs.append(tuple(-x for x in e))
    rays, lin_span = _double_description(ineqs, n)
    lin_lattice = saturate(sublattice(n, lin_span))
    return Cone(
        ambient_rank=n,
        rays=_reduce(rays, lin_lattice.basis),
        lineality=lin_lattice,
        halfspaces=_reduce(facet_normals, eq_lattice.basis),
        equations=eq_lattice.basis,
        dim=n - eq_lattice.rank,
    )


def cone_from_generators(n: int, generators: Iterable[Sequence[int]] = (),
                         lineality: Iterable[Sequence[int]] = ()) -> Cone:
    """Cone generated by ``generators`` plus the linear span of ``lineality``.

    Zero and parallel generators are merged; lineality contained in the
    conic hull of the generators is detected automatically.
    """
    gens = set()
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != n:
            raise RankMismatch(f"generator {list(g)} does not have rank {n}")
        if any(g):
            gens.add(primitive(g))
    for l in lineality:
        l = tuple(int(x) for x in l)
        if len(l) != n:
            raise RankMismatch(f"lineality generator {list(l)} does not have rank {n}")
        if any(l):
            l = primitive(l)
            gens.add(l)
            gens.add(tuple(-x for x in l))
    return _canonical(n, tuple(sorted(gens)))


cone = cone_from_generators


def cone_from_inequalities(n: int, halfspaces: Iterable[Sequence[int]] = (),
                           equations: Iterable[Sequence[int]] = ()) -> Cone:
    """Cone ``{x : u.x >= 0 for u in halfspaces, e.x = 0 for e in equations}``."""
    ineqs = []
    for u in halfspaces:
        u = tuple(u)
        if len(u) != n:
            raise RankMismatch(f"halfspace {list(u)} does not have rank {n}")
        ineqs.append(primitive(u))
    for e in equations:
        e = tuple(e)
        if len(e) != n:
            raise RankMismatch(f"equation {list(e)} does not have rank {n}")
        ineqs.append(primitive(e))
        ineqs.append(tuple(-x for x in primitive(e)))
    rays, lin = _double_description(sorted(set(ineqs)), n)
    return cone_from_generators(n, rays, lin)


def zero_cone(n: int) -> Cone:
    return cone_from_generators(n)


def linear_span_cone(n: int, vectors: Iterable[Sequence[int]]) -> Cone:
    return cone_from_generators(n, (), vectors)


# ---------------------------------------------------------------------------
# predicates and operations


def _check_rank(a: int, b: int) -> None:
    if a != b:
        raise RankMismatch(f"rank {a} does not match rank {b}")


def contains(c: Cone, v: Sequence) -> bool:
    _check_rank(c.ambient_rank, len(v))
    return (all(dot(e, v) == 0 for e in c.equations)
            and all(dot(u, v) >= 0 for u in c.halfspaces))


def contains_cone(c: Cone, d: Cone) -> bool:
    _check_rank(c.ambient_rank, d.ambient_rank)
    return all(contains(c, g) for g in d.generators)


def intersect(c1: Cone, c2: Cone) -> Cone:
    _check_rank(c1.ambient_rank, c2.ambient_rank)
    return cone_from_inequalities(c1.ambient_rank, c1.halfspaces + c2.halfspaces,
                                  c1.equations + c2.equations)


def convex_hull_union(c1: Cone, c2: Cone) -> Cone:
    _check_rank(c1.ambient_rank, c2.ambient_rank)
    return cone_from_generators(c1.ambient_rank, c1.rays + c2.rays,
                                c1.lineality.basis + c2.lineality.basis)


def _cut(c: Cone, normals: Sequence[Vector]) -> Cone:
    """The face of ``c`` on which all of ``normals`` vanish."""
    tight = [r for r in c.rays if all(dot(u, r) == 0 for u in normals)]
    return cone_from_generators(c.ambient_rank, tight, c.lineality.basis)


@lru_cache(maxsize=65536)
def facets(c: Cone) -> tuple[Cone, ...]:
    return tuple(sorted(_cut(c, [u]) for u in c.halfspaces))


@lru_cache(maxsize=65536)
def faces(c: Cone) -> tuple[Cone, ...]:
    """All faces, from the lineality space up to ``c`` itself, sorted canonically."""
    found = {c}
    for f in facets(c):
        found.update(faces(f))
    return tuple(sorted(found))


def _vanishing_normals(c: Cone, s: Cone) -> list[Vector]:
    return [u for u in c.halfspaces if all(dot(u, g) == 0 for g in s.generators)]


def is_face_of(f: Cone, c: Cone) -> bool:
    _check_rank(f.ambient_rank, c.ambient_rank)
    if not contains_cone(c, f):
        return False
    return _cut(c, _vanishing_normals(c, f)) == f


def minimal_face_containing(c: Cone, s: Cone) -> Cone:
    _check_rank(c.ambient_rank, s.ambient_rank)
    if not contains_cone(c, s):
        raise NotContained(f"{s} is not contained in {c}")
    return _cut(c, _vanishing_normals(c, s))


def face_generated_by(c: Cone, generators: Iterable[Sequence[int]]) -> Cone:
    """Conic hull of those ``generators`` lying in ``c``.

    When ``c`` is a face of a cone generated by ``generators`` this gives
    back ``c`` itself.
    """
    inside = [g for g in generators if contains(c, g)]
    return cone_from_generators(c.ambient_rank, inside)


def lineality_space(c: Cone) -> SublatticeBasis:
    return c.lineality


def is_strictly_convex(c: Cone) -> bool:
    return c.lineality.rank == 0


def relative_interior_point(c: Cone) -> Vector:
    """Sum of the ray generators; lies in the relative interior."""
    return tuple(sum(col) for col in zip(*c.rays)) if c.rays else (0,) * c.ambient_rank


def image_cone(P: Matrix, c: Cone, target_rank: int | None = None) -> Cone:
    """Image of ``c`` under the integer matrix ``P`` (rows = target rank)."""
    m = len(P) if target_rank is None else target_rank
    if P and len(P[0]) != c.ambient_rank:
        raise RankMismatch(f"matrix with {len(P[0])} columns applied to a cone of rank {c.ambient_rank}")
    if len(P) != m:
        raise RankMismatch(f"matrix with {len(P)} rows does not map to rank {m}")
    return cone_from_generators(m, [matvec(P, r) for r in c.rays],
                                [matvec(P, b) for b in c.lineality.basis])
