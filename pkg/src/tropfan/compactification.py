"""The canonical compactification of a fan as a finite cell complex.

A fan compactifies inside its tropical toric variety; the resulting
cell complex has one face per pair of cones ``sigma <= gamma``, written
here as ``CompactFace(sedentarity=sigma, mother=gamma)`` of dimension
``dim gamma - dim sigma``.  The closed face is combinatorially a cube
whose coordinates are the rays of ``gamma``: rays in ``sigma`` sit at
infinity, rays of ``gamma`` outside ``sigma`` are free, and the
remaining rays are pinned at the origin.  Incidence signs below are the
standard cubical ones on the free rays, which gives a boundary operator
squaring to zero for every coefficient system.

Each face carries the multi-tangent space

    F_p(sigma, gamma) = sum over cones eta >= gamma of
                        wedge^p (N_eta / N_sigma) tensor Q

inside wedge^p of the quotient lattice, with structure maps induced by
inclusions (same sedentarity) and lattice projections (growing
sedentarity).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .fan import Fan, FanError, RayTuple


@dataclass(frozen=True)
class CompactFace:
    sedentarity: RayTuple
    mother: RayTuple

    def __post_init__(self):
        if not set(self.sedentarity) <= set(self.mother):
            raise FanError("sedentarity must be a face of the mother cone")

    @property
    def dim(self) -> int:
        return len(self.mother) - len(self.sedentarity)

    @property
    def free_rays(self) -> RayTuple:
        return tuple(i for i in self.mother if i not in self.sedentarity)

    def __repr__(self):
        return f"C[{','.join(map(str, self.mother))}]^[{','.join(map(str, self.sedentarity))}]"


@dataclass(frozen=True)
class MultiTangentSpace:
    """Basis of F_p at a face, in wedge coordinates of the quotient."""

    face: CompactFace
    p: int
    basis: tuple[tuple[Fraction, ...], ...]
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)


def _wedge_coords(vectors, p, r):
    """Coordinates of the wedge of ``p`` vectors of length ``r`` in the
    lexicographic basis of wedge^p Q^r."""
    coords = []
    for rows in itertools.combinations(range(r), p):
        sub = [[vectors[k][i] for k in range(p)] for i in rows]
        coords.append(linalg.det(sub))
    return coords


def exterior_power_matrix(q, p):
    """Matrix of wedge^p of the linear map with matrix ``q`` (rows x cols),
    in lexicographic wedge bases."""
    rows = len(q)
    cols = len(q[0]) if rows else 0
    row_idx = list(itertools.combinations(range(rows), p))
    col_idx = list(itertools.combinations(range(cols), p))
    out = []
    for tr in row_idx:
        line = []
        for tc in col_idx:
            sub = [[q[i][j] for j in tc] for i in tr]
            line.append(linalg.det(sub))
        out.append(line)
    return out


class CompactifiedComplex:
    """Cell complex of the canonical compactification of a unimodular fan."""

    def __init__(self, fan: Fan):
        from .fan import is_unimodular

        if not is_unimodular(fan).ok:
            raise FanError("the canonical compactification machinery needs a unimodular fan")
        self.fan = fan
        faces = []
        for gamma in fan.cones():
            for k in range(len(gamma) + 1):
                for sigma in itertools.combinations(gamma, k):
                    faces.append(CompactFace(sigma, gamma))
        dmax = max((f.dim for f in faces), default=0)
        self.faces_by_dim: list[list[CompactFace]] = [
            sorted(
                (f for f in faces if f.dim == d),
                key=lambda f: (f.sedentarity, f.mother),
            )
            for d in range(dmax + 1)
        ]
        self.index = {
            f: (d, i)
            for d, fs in enumerate(self.faces_by_dim)
            for i, f in enumerate(fs)
        }
        self._supersets_cache: dict[RayTuple, list[RayTuple]] = {}
        self._mt_cache: dict[tuple[CompactFace, int], MultiTangentSpace] = {}
        self._proj_between: dict[tuple[RayTuple, RayTuple], list[list[int]]] = {}

    # -- combinatorics ---------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.faces_by_dim) - 1

    def faces(self, d=None):
        if d is None:
            return [f for fs in self.faces_by_dim for f in fs]
        if d < 0 or d >= len(self.faces_by_dim):
            return []
        return list(self.faces_by_dim[d])

    def f_vector(self):
        return tuple(len(fs) for fs in self.faces_by_dim)

    def boundary_faces(self, face: CompactFace):
        """Codimension-one faces with cubical incidence signs.

        Setting a free ray to the origin drops it from the mother cone;
        sending it to infinity adds it to the sedentarity.  The sign
        depends on the position of the ray among the sorted free rays.
        """
        out = []
        free = face.free_rays
        for pos, t in enumerate(free, start=1):
            smaller = tuple(i for i in face.mother if i != t)
            out.append((CompactFace(face.sedentarity, smaller), (-1) ** pos))
            bigger = tuple(sorted(face.sedentarity + (t,)))
            out.append((CompactFace(bigger, face.mother), (-1) ** (pos - 1)))
        return out

    def is_face(self, alpha: CompactFace, beta: CompactFace) -> bool:
        return (
            set(beta.sedentarity) <= set(alpha.sedentarity)
            and set(alpha.sedentarity) <= set(alpha.mother)
            and set(alpha.mother) <= set(beta.mother)
        )

    # -- coefficient system ------------------------------------------------

    def _supersets(self, gamma: RayTuple):
        if gamma not in self._supersets_cache:
            self._supersets_cache[gamma] = [
                c for c in self.fan.cones() if set(gamma) <= set(c)
            ]
        return self._supersets_cache[gamma]

    def multi_tangent(self, face: CompactFace, p: int) -> MultiTangentSpace:
        """F_p(face): the sum over cones beyond the mother of the p-th
        wedge of their images in the quotient by the sedentarity."""
        key = (face, p)
        if key in self._mt_cache:
            return self._mt_cache[key]
        sigma = face.sedentarity
        w = self.fan.projection(sigma)
        r = len(w)
        if p < 0 or p > r:
            raise FanError(f"wedge degree {p} out of range for quotient rank {r}")
        ambient = len(list(itertools.combinations(range(r), p)))
        vectors = []
        for eta in self._supersets(face.mother):
            imgs = []
            for i in eta:
                if i in sigma:
                    continue
                imgs.append([
                    sum(row[j] * self.fan.rays[i][j] for j in range(self.fan.rank))
                    for row in w
                ])
            if len(imgs) < p:
                continue
            for chosen in itertools.combinations(imgs, p):
                vectors.append(_wedge_coords(list(chosen), p, r))
        basis = linalg.row_space_basis(vectors)
        mt = MultiTangentSpace(face, p, tuple(tuple(v) for v in basis), ambient)
        self._mt_cache[key] = mt
        return mt

    def _projection_between(self, sigma: RayTuple, sigma2: RayTuple):
        """Integer matrix of N^sigma -> N^sigma2 for sigma <= sigma2."""
        key = (sigma, sigma2)
        if key not in self._proj_between:
            w1 = self.fan.projection(sigma)
            w2 = self.fan.projection(sigma2)
            r1 = linalg.integer_right_inverse(w1)
            assert r1 is not None, "quotient projections are surjective"
            self._proj_between[key] = linalg.mat_mul(w2, r1)
        return self._proj_between[key]

    def coefficient_map(self, beta: CompactFace, alpha: CompactFace, p: int):
        """Matrix of iota: F_p(beta) -> F_p(alpha) in the chosen bases.

        An inclusion of subspaces when the sedentarities agree, the map
        induced by the lattice projection when the sedentarity grows.
        """
        if not self.is_face(alpha, beta):
            raise FanError(f"{alpha} is not a face of {beta}")
        src = self.multi_tangent(beta, p)
        dst = self.multi_tangent(alpha, p)
        if not src.basis:
            return [[] for _ in range(dst.dim)]
        if beta.sedentarity == alpha.sedentarity:
            images = [list(v) for v in src.basis]
        else:
            q = self._projection_between(beta.sedentarity, alpha.sedentarity)
            lam = exterior_power_matrix(q, p)
            images = [linalg.mat_vec(lam, list(v)) for v in src.basis]
        cols = []
        for img in images:
            coords = linalg.coords_in_basis([list(b) for b in dst.basis], img)
            assert coords is not None, "structure map must land in the target space"
            cols.append(coords)
        return linalg.transpose(cols) if cols else []


def build_complex(fan: Fan) -> CompactifiedComplex:
    return CompactifiedComplex(fan)
