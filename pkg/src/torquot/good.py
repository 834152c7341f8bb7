"""Affine quotients, the good-quotient criterion, and good models."""
from __future__ import annotations

from dataclasses import dataclass

from .cone import (Cone, cone_from_generators, contains_cone, faces, image_cone,
                   intersect)
from .errors import (AmbiguousMaximalFace, InternalInvariantViolation, InvalidMap,
                     MismatchedQuotient, NotAMapOfFans, NotEquivariant,
                     NotStrictlyConvex)
from .fan import (ConeSystem, Fan, FanClass, face_closure, is_map_of_fans,
                  validate_fan)
from .linalg import (Matrix, SublatticeBasis, factor_through, image_lattice,
                     matmul, matvec, quotient_projection, saturate, sublattice)
from .quotient import QuotientResult, check_sublattice, quotient_fan

__all__ = [
    "AffineQuotient", "affine_quotient", "ConeMatch", "GoodnessReport",
    "check_good_quotient", "GoodModelResult", "good_model",
    "model_quotient", "induced_good_model_map",
]


# ---------------------------------------------------------------------------
# affine case


@dataclass(frozen=True)
class AffineQuotient:
    face: Cone                       # maximal face whose relative interior meets L
    enlarged_kernel: SublatticeBasis
    projection: Matrix
    image: Cone


def _relint_meets_span(tau: Cone, L: SublatticeBasis) -> bool:
    # relint(tau) meets L_R  <=>  the image of tau in N/L is a linear subspace
    P = quotient_projection(L)
    img = image_cone(P, tau, tau.ambient_rank - L.rank)
    return not img.rays


def affine_quotient(sigma: Cone, L: SublatticeBasis) -> AffineQuotient:
    """Quotient of the affine toric variety of ``sigma`` by the subtorus of ``L``."""
    check_sublattice(sigma.ambient_rank, L)
    if sigma.lineality.rank:
        raise NotStrictlyConvex(f"{sigma} is not strictly convex")
    hits = [f for f in faces(sigma) if _relint_meets_span(f, L)]
    top = [f for f in hits if not any(g != f and contains_cone(g, f) for g in hits)]
    if len(top) != 1:
        raise AmbiguousMaximalFace(f"{len(top)} maximal faces meet the sublattice: {top}")
    tau = top[0]
    n = sigma.ambient_rank
    L_hat = saturate(sublattice(n, list(L.basis) + list(tau.rays)))
    P = quotient_projection(L_hat)
    img = image_cone(P, sigma, n - L_hat.rank)
    if img.lineality.rank:
        raise InternalInvariantViolation(f"affine quotient image {img} is not strictly convex")
    return AffineQuotient(tau, L_hat, P, img)


# ---------------------------------------------------------------------------
# good quotient criterion


@dataclass(frozen=True)
class ConeMatch:
    target: Cone                 # maximal cone tau_i of the quotient fan
    source: Cone | None          # matched maximal cone sigma_i
    failure: str | None = None   # None | "NoSurjectiveMaximalCone" | "StrayRay"
    stray_ray: Cone | None = None

    @property
    def dims(self) -> tuple[int, int | None]:
        return (self.target.dim, None if self.source is None else self.source.dim)

    def as_dict(self) -> dict:
        out = {"tau": [list(r) for r in self.target.rays],
               "sigma": None if self.source is None else [list(r) for r in self.source.rays],
               "dims": list(self.dims), "failure": self.failure}
        if self.stray_ray is not None:
            out["strayRay"] = list(self.stray_ray.rays[0])
        return out


@dataclass(frozen=True)
class GoodnessReport:
    is_good: bool
    is_geometric: bool
    per_maximal_cone: tuple[ConeMatch, ...]


def check_good_quotient(delta: ConeSystem, q: QuotientResult) -> GoodnessReport:
    """Decide whether the toric quotient ``q`` of ``delta`` is good / geometric.

    For every maximal cone of the quotient fan some maximal cone of
    ``delta`` must map onto it, and every ray of ``delta`` mapping into it
    must lie in that cone.  Geometric additionally needs equal dimensions.
    """
    if q.source != delta:
        raise MismatchedQuotient("quotient was computed for a different fan")
    P, m = q.projection, q.rank
    ray_images = [(r, image_cone(P, r, m)) for r in delta.rays]
    images = [(s, image_cone(P, s, m)) for s in delta.maximal_cones]
    matches = []
    for tau in q.fan.maximal_cones:
        candidates = [s for s, img in images if img == tau]
        if not candidates:
            matches.append(ConeMatch(tau, None, "NoSurjectiveMaximalCone"))
            continue
        inward = [r for r, img in ray_images if contains_cone(tau, img)]
        match = None
        for s in candidates:
            stray = next((r for r in inward if not contains_cone(s, r)), None)
            if stray is None:
                match = ConeMatch(tau, s)
                break
            if match is None:
                match = ConeMatch(tau, s, "StrayRay", stray)
        matches.append(match)
    good = all(mt.failure is None for mt in matches)
    geometric = good and all(mt.target.dim == mt.source.dim for mt in matches)
    return GoodnessReport(good, geometric, tuple(matches))


# ---------------------------------------------------------------------------
# good model


@dataclass(frozen=True)
class GoodModelResult:
    source: ConeSystem
    sublattice: SublatticeBasis
    hull_cones: tuple[Cone, ...]          # sigma_i in N
    model_kernel: SublatticeBasis         # L_V = V ∩ N
    G: Matrix                             # N -> N/L_V
    fan: Fan                              # the good model fan in N/L_V
    P_bar: Matrix                         # N/L_V -> quotient lattice, P = P_bar @ G
    quotient: QuotientResult

    @property
    def rank(self) -> int:
        return self.source.ambient_rank - self.model_kernel.rank

    def model_sublattice(self) -> SublatticeBasis:
        """The acting sublattice expressed in the model lattice."""
        return saturate(image_lattice(self.G, self.sublattice, self.rank))


def good_model(delta: ConeSystem, L: SublatticeBasis, check: bool = True) -> GoodModelResult:
    """Good model of ``delta`` with respect to the subtorus of ``L``.

    Each maximal cone of the quotient fan pulls back to the conic hull of
    all rays of ``delta`` projecting into it; these hulls, with their common
    lineality collapsed, are the maximal cones of the model.
    """
    if not delta.cones:
        raise ValueError("empty fan")
    q = quotient_fan(delta, L, check=check)
    n, m = delta.ambient_rank, q.rank
    P = q.projection
    ray_gens = [(r.rays[0], image_cone(P, r, m)) for r in delta.rays]
    hulls = []
    for tau in q.fan.maximal_cones:
        gens = [v for v, img in ray_gens if contains_cone(tau, img)]
        hulls.append(cone_from_generators(n, gens))
    meet = hulls[0]
    for h in hulls[1:]:
        meet = intersect(meet, h)
    L_V = meet.lineality
    G = quotient_projection(L_V)
    k = n - L_V.rank
    model = Fan(k, face_closure(image_cone(G, h, k) for h in hulls))
    P_bar = factor_through(P, G, cols=n)
    if P_bar is None:
        raise InternalInvariantViolation("quotient projection does not factor through G")
    result = GoodModelResult(delta, L, tuple(hulls), L_V, G, model, P_bar, q)
    if check:
        _check_model(result)
    return result


def _check_model(gm: GoodModelResult) -> None:
    if validate_fan(gm.fan).kind != FanClass.FAN:
        raise InternalInvariantViolation("good model cones do not form a fan")
    n = gm.source.ambient_rank
    if matmul(gm.P_bar, gm.G, cols=n) != gm.quotient.projection:
        raise InternalInvariantViolation("P != P_bar @ G")
    if not is_map_of_fans(gm.G, gm.source, gm.fan):
        raise InternalInvariantViolation("G is not a map of fans")
    if not is_map_of_fans(gm.P_bar, gm.fan, gm.quotient.fan):
        raise InternalInvariantViolation("P_bar is not a map of fans")


def model_quotient(gm: GoodModelResult) -> QuotientResult:
    """Toric quotient of the good model by the induced action."""
    return quotient_fan(gm.fan, gm.model_sublattice())


def induced_good_model_map(F: Matrix, src: GoodModelResult, dst: GoodModelResult) -> Matrix:
    """The map between good models induced by an equivariant map of fans.

    Returns the integer matrix ``F_bar`` with ``F_bar @ G == G' @ F``.
    """
    n = src.source.ambient_rank
    if not is_map_of_fans(F, src.source, dst.source):
        raise InvalidMap("F is not a map of fans between the source fans")
    for b in src.sublattice.basis:
        if matvec(F, b) not in dst.sublattice:
            raise NotEquivariant(f"F maps {list(b)} outside the target sublattice")
    F_bar = factor_through(matmul(dst.G, F, cols=n), src.G, cols=n)
    if F_bar is None:
        raise NotAMapOfFans("G' @ F does not vanish on the kernel of G")
    if not F_bar:
        F_bar = tuple(() for _ in range(dst.rank))
    if not is_map_of_fans(F_bar, src.fan, dst.fan):
        raise NotAMapOfFans("induced map is not a map of the good model fans")
    return F_bar
