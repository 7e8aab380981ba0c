"""Rational simplicial fans: validation, predicates, stars, subdivisions.

Conventions used throughout the package:

* a cone is stored as the sorted tuple of its ray indices into the
  fan's global ray table; the zero cone is the empty tuple;
* all fans are simplicial (the generators of every cone are linearly
  independent) and closed under taking faces, so the faces of a cone
  are exactly the subsets of its ray tuple;
* every ordering downstream (boundary signs, wedge bases, Chow bases)
  derives from the global ray order, which makes all computations
  reproducible for a fixed input file.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .report import Report

RayTuple = tuple[int, ...]
Vector = tuple[int, ...]


class FanError(ValueError):
    """Raised when an input does not describe a valid weighted simplicial fan."""


@dataclass(frozen=True)
class Lattice:
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise FanError(f"lattice rank must be nonnegative, got {self.rank}")


@dataclass(frozen=True)
class Cone:
    """A simplicial cone, canonically the sorted tuple of its rays."""

    ray_indices: RayTuple
    generators: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.ray_indices)


class Fan:
    """A simplicial rational fan with optional facet weights.

    Construct through :meth:`from_max_cones`, which completes the face
    closure, verifies primitivity/independence and that cones meet
    along common faces, and fills in default weight one on every
    inclusion-maximal cone of a pure fan.
    """

    def __init__(self, lattice, rays, cones_by_dim, weights):
        self.lattice = lattice
        self.rays: tuple[Vector, ...] = tuple(tuple(int(x) for x in r) for r in rays)
        self.cones_by_dim: tuple[tuple[RayTuple, ...], ...] = tuple(
            tuple(cones_by_dim[d]) for d in range(len(cones_by_dim))
        )
        self.weights: dict[RayTuple, int] | None = dict(weights) if weights is not None else None
        self._cone_set = {c for cs in self.cones_by_dim for c in cs}
        self._proj_cache: dict[RayTuple, list[list[int]]] = {}
        self._maximal_cache = None
        self._unimodular_cache = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_max_cones(cls, rank, rays, max_cones, weights=None, check_intersections=True):
        lattice = Lattice(rank)
        rays = [tuple(int(x) for x in r) for r in rays]
        for r in rays:
            if len(r) != rank:
                raise FanError(f"ray {r} does not have {rank} coordinates")
            if linalg.gcd_vector(r) == 0:
                raise FanError(f"zero vector is not a valid ray: {r}")
            if not linalg.is_primitive(r):
                raise FanError(f"non-primitive ray: {r}")
        if len(set(rays)) != len(rays):
            raise FanError("duplicate rays in ray table")

        max_cones = [tuple(sorted(set(map(int, c)))) for c in max_cones]
        for c in max_cones:
            for i in c:
                if not 0 <= i < len(rays):
                    raise FanError(f"ray index {i} out of range in cone {c}")
            gens = [rays[i] for i in c]
            if gens and linalg.rank([list(g) for g in gens]) != len(gens):
                raise FanError(f"dependent generators in cone {c}")

        # face closure: every subset of a simplicial cone is a face
        cone_set = {()}
        for c in max_cones:
            for k in range(len(c) + 1):
                cone_set.update(itertools.combinations(c, k))
        # rays not supporting any cone are rejected: the table must match the fan
        used = {i for c in cone_set for i in c}
        if used != set(range(len(rays))):
            missing = sorted(set(range(len(rays))) - used)
            raise FanError(f"rays {missing} appear in no cone")

        dim_max = max((len(c) for c in cone_set), default=0)
        cones_by_dim = [sorted(c for c in cone_set if len(c) == d) for d in range(dim_max + 1)]

        fan = cls(lattice, rays, cones_by_dim, None)
        if check_intersections:
            fan._check_pairwise_intersections()

        maximal = fan.maximal_cones()
        if weights is not None:
            weights = {tuple(sorted(c)): int(w) for c, w in weights.items()}
            if set(weights) != set(maximal):
                raise FanError("weights must be assigned exactly to the inclusion-maximal cones")
            if any(w == 0 for w in weights.values()):
                raise FanError("weights must be nonzero")
            if not fan.is_pure():
                raise FanError("weighted fans must be pure-dimensional")
            fan.weights = weights
        elif fan.is_pure():
            fan.weights = {c: 1 for c in maximal}
        return fan

    def _check_pairwise_intersections(self):
        """Any two cones must intersect in a common face.

        For simplicial face-closed collections it suffices to test the
        inclusion-maximal cones pairwise; the test itself is an exact
        LP feasibility problem (a point of the intersection outside the
        common face exists iff the fan property fails).
        """
        from .convexity import cones_intersect_properly

        maxc = self.maximal_cones()
        for a, b in itertools.combinations(maxc, 2):
            ga = [self.rays[i] for i in a]
            gb = [self.rays[i] for i in b]
            common = set(a) & set(b)
            mask_a = [i in common for i in a]
            mask_b = [i in common for i in b]
            if not cones_intersect_properly(ga, gb, mask_a, mask_b):
                raise FanError(
                    f"cones {a} and {b} do not intersect in a common face"
                )

    # -- basic queries -------------------------------------------------

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def dim(self) -> int:
        return len(self.cones_by_dim) - 1

    def cones(self, d=None):
        if d is None:
            return [c for cs in self.cones_by_dim for c in cs]
        if d < 0 or d >= len(self.cones_by_dim):
            return []
        return list(self.cones_by_dim[d])

    def has_cone(self, c) -> bool:
        return tuple(sorted(c)) in self._cone_set

    def cone(self, c) -> Cone:
        t = tuple(sorted(c))
        if t not in self._cone_set:
            raise FanError(f"{t} is not a cone of this fan")
        return Cone(t, tuple(self.rays[i] for i in t))

    def generators(self, c):
        return [list(self.rays[i]) for i in c]

    def maximal_cones(self):
        if self._maximal_cache is None:
            out = []
            for d in range(self.dim, -1, -1):
                for c in self.cones_by_dim[d]:
                    if not any(set(c) < set(m) for m in out):
                        out.append(c)
            self._maximal_cache = sorted(out, key=lambda c: (len(c), c))
        return list(self._maximal_cache)

    def facets(self):
        return list(self.cones_by_dim[self.dim])

    def is_pure(self) -> bool:
        maximal = self.maximal_cones()
        return len({len(c) for c in maximal}) <= 1

    def weight(self, c) -> int:
        if self.weights is None:
            raise FanError("fan carries no weights")
        return self.weights[tuple(sorted(c))]

    def f_vector(self):
        return tuple(len(cs) for cs in self.cones_by_dim)

    def same_as(self, other) -> bool:
        return (
            self.rank == other.rank
            and self.rays == other.rays
            and self.cones_by_dim == other.cones_by_dim
            and self.weights == other.weights
        )

    # -- lattice data ---------------------------------------------------

    def projection(self, c):
        """Integer matrix of N -> N^c = N / N_c in quotient coordinates."""
        t = tuple(sorted(c))
        if t not in self._proj_cache:
            self._proj_cache[t] = linalg.quotient_projection(self.generators(t), self.rank)
        return self._proj_cache[t]


def validate_fan(rank, rays, max_cones, weights=None) -> Fan:
    """Build and fully validate a fan from raw data (see :class:`Fan`)."""
    return Fan.from_max_cones(rank, rays, max_cones, weights)


def fan_f_vector(fan: Fan):
    return fan.f_vector()


# ---------------------------------------------------------------------------
# structural predicates


def is_unimodular(fan: Fan) -> Report:
    """Each cone's generators must extend to a basis of the lattice.

    Equivalently the gcd of the maximal minors of the generator matrix
    is one, i.e. the Hermite pivots of the generators all equal one.
    """
    if fan._unimodular_cache is not None:
        return fan._unimodular_cache
    bad = []
    for c in fan.cones():
        if not c:
            continue
        if linalg.lattice_index(fan.generators(c)) != 1:
            bad.append(c)
    if bad:
        rep = Report.failed("unimodular", [f"cone {c}" for c in bad], cones=bad)
    else:
        rep = Report.passed("unimodular")
    fan._unimodular_cache = rep
    return rep


def is_balanced(fan: Fan) -> Report:
    """Weighted balancing around every codimension-one cone.

    At each cone tau of dimension d-1 the weighted sum of the primitive
    generators of the adjacent facets, taken modulo N_tau, must vanish
    in the quotient lattice.
    """
    if fan.weights is None:
        raise FanError("balancing requires weights")
    if not fan.is_pure():
        raise FanError("balancing requires a pure-dimensional fan")
    d = fan.dim
    bad = []
    for tau in fan.cones(d - 1):
        w = fan.projection(tau)
        total = [0] * len(w)
        for eta in fan.cones(d):
            if set(tau) <= set(eta):
                extra = next(i for i in eta if i not in tau)
                img = [sum(row[j] * fan.rays[extra][j] for j in range(fan.rank)) for row in w]
                if all(x == 0 for x in img):
                    raise FanError(f"ray {extra} degenerates in the star of {tau}")
                img = linalg.primitive(img)
                total = [t + fan.weight(eta) * x for t, x in zip(total, img)]
        if any(x != 0 for x in total):
            bad.append((tau, tuple(total)))
    if bad:
        return Report.failed(
            "balanced",
            [f"cone {tau}, defect {defect}" for tau, defect in bad],
            cones=[tau for tau, _ in bad],
        )
    return Report.passed("balanced")


# ---------------------------------------------------------------------------
# star fans


@dataclass
class StarFan:
    """The fan of images of the cones containing ``apex``.

    ``fan`` lives in the quotient lattice N / N_apex with coordinates
    given by the integer ``matrix`` (rows form a basis of the
    annihilator of the apex, so the projection is surjective and exact
    on lattice points).  ``image_of``/``preimages`` record the cone
    correspondence with the base fan; ``merged`` flags apex stars where
    distinct parent cones project onto one image cone, in which case
    inherited weights were accumulated.
    """

    base: Fan
    apex: RayTuple
    fan: Fan
    matrix: list[list[int]]
    image_of: dict[RayTuple, RayTuple]
    preimages: dict[RayTuple, tuple[RayTuple, ...]]
    ray_preimages: dict[int, tuple[int, ...]]
    merged: bool

    def parent_cone(self, image_cone) -> RayTuple:
        pre = self.preimages[tuple(sorted(image_cone))]
        if len(pre) != 1:
            raise FanError(f"image cone {image_cone} has several preimages")
        return pre[0]


def star_fan(fan: Fan, delta, check_unimodular=True) -> StarFan:
    """Star of ``delta``: cones ``pi(sigma)`` for ``sigma`` containing it.

    Weights are inherited from the facets of the base fan; if several
    facets have the same image their weights are summed and the star is
    flagged as merged.
    """
    delta = tuple(sorted(delta))
    if not fan.has_cone(delta):
        raise FanError(f"{delta} is not a cone of the fan")
    w = fan.projection(delta)
    q = len(w)

    ray_table: list[Vector] = []
    ray_index: dict[Vector, int] = {}
    ray_pre: dict[int, list[int]] = {}
    image_of: dict[RayTuple, RayTuple] = {}
    preimages: dict[RayTuple, list[RayTuple]] = {}

    supersets = [c for c in fan.cones() if set(delta) <= set(c)]
    supersets.sort(key=lambda c: (len(c), c))
    for sigma in supersets:
        img = []
        for i in sigma:
            if i in delta:
                continue
            v = tuple(sum(row[j] * fan.rays[i][j] for j in range(fan.rank)) for row in w)
            if all(x == 0 for x in v):
                raise FanError(f"ray {i} of {sigma} maps to zero in the star of {delta}")
            v = linalg.primitive(v)
            if v not in ray_index:
                ray_index[v] = len(ray_table)
                ray_table.append(v)
                ray_pre[ray_index[v]] = []
            if i not in ray_pre[ray_index[v]]:
                ray_pre[ray_index[v]].append(i)
            img.append(ray_index[v])
        img_t = tuple(sorted(set(img)))
        if len(img_t) != len(sigma) - len(delta):
            raise FanError(f"cone {sigma} degenerates in the star of {delta}")
        image_of[sigma] = img_t
        preimages.setdefault(img_t, []).append(sigma)

    merged = any(len(v) > 1 for v in preimages.values())

    image_cones = set(image_of.values())
    dim_max = max((len(c) for c in image_cones), default=0)
    cones_by_dim = [sorted(c for c in image_cones if len(c) == d) for d in range(dim_max + 1)]
    star = Fan(Lattice(q), ray_table, cones_by_dim, None)

    if fan.weights is not None:
        weights: dict[RayTuple, int] = {}
        for eta in fan.facets():
            if set(delta) <= set(eta):
                img = image_of[eta]
                weights[img] = weights.get(img, 0) + fan.weight(eta)
        if weights:
            star.weights = weights
    else:
        star.weights = {c: 1 for c in star.maximal_cones()} if star.is_pure() else None

    if check_unimodular and is_unimodular(fan).ok:
        rep = is_unimodular(star)
        assert rep.ok, f"star of {delta} lost unimodularity: {rep.witnesses}"

    return StarFan(fan, delta, star, [list(r) for r in w], image_of,
                   {k: tuple(v) for k, v in preimages.items()},
                   {k: tuple(v) for k, v in ray_pre.items()}, merged)


# ---------------------------------------------------------------------------
# barycentric star subdivision


def barycentric_star_subdivision(fan: Fan, sigma) -> Fan:
    """Stellar subdivision at the new ray generated by the ray sum of ``sigma``.

    Every cone containing ``sigma`` is replaced by the cones spanned by
    the new ray together with its proper faces; weights are inherited.
    The support is unchanged and unimodularity is preserved.
    """
    sigma = tuple(sorted(sigma))
    if not fan.has_cone(sigma):
        raise FanError(f"{sigma} is not a cone of the fan")
    if len(sigma) < 2:
        raise FanError("barycentric star subdivision needs a cone of dimension >= 2")

    rho = tuple(sum(fan.rays[i][j] for i in sigma) for j in range(fan.rank))
    assert linalg.is_primitive(rho), "ray sum of a unimodular cone must be primitive"
    rays = list(fan.rays) + [rho]
    rho_index = len(fan.rays)

    new_max = []
    new_weights = {}
    for gamma in fan.maximal_cones():
        if set(sigma) <= set(gamma):
            for drop in sigma:
                c = tuple(sorted([i for i in gamma if i != drop] + [rho_index]))
                new_max.append(c)
                if fan.weights is not None:
                    new_weights[c] = fan.weight(gamma)
        else:
            new_max.append(gamma)
            if fan.weights is not None:
                new_weights[gamma] = fan.weight(gamma)

    return Fan.from_max_cones(
        fan.rank, rays, new_max, new_weights if fan.weights is not None else None
    )
