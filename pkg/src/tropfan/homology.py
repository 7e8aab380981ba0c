"""Tropical (co)homology of canonically compactified fans.

The chain groups are C_{p,q} = direct sum of F_p over the dimension-q
faces of the compactification, with differentials assembled from the
signed structure maps of the coefficient system.  All ranks are exact,
so homology dimensions are plain rank bookkeeping; over a field the
cohomology dimensions agree with the homology ones.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .compactification import CompactFace, CompactifiedComplex, build_complex
from .fan import Fan, FanError, is_balanced, star_fan
from .report import Report


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TROPFAN_THREADS", "1")))
    except ValueError:
        return 1


def _map_maybe_parallel(fn, items):
    n = _threads()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _mt_dim(cplx, face, p):
    """dim F_p(face), treating wedge degrees beyond the quotient rank as zero."""
    r = len(cplx.fan.projection(face.sedentarity))
    if p > r:
        return 0
    return cplx.multi_tangent(face, p).dim


def chain_complex(cplx: CompactifiedComplex, p: int):
    """Boundary matrices of C_{p,*}.

    Returns ``(dims, boundaries)`` where ``dims[q] = dim C_{p,q}`` and
    ``boundaries[q]`` is the matrix of the differential C_{p,q} ->
    C_{p,q-1} for q >= 1.  The composition of consecutive matrices is
    zero; the test suite asserts this on every fixture.
    """
    top = cplx.dim
    layout = []  # per q: (faces, offsets, total)
    for q in range(top + 1):
        faces = cplx.faces(q)
        offsets = {}
        total = 0
        for f in faces:
            offsets[f] = total
            total += _mt_dim(cplx, f, p)
        layout.append((faces, offsets, total))
    dims = [layout[q][2] for q in range(top + 1)]

    boundaries = {}
    for q in range(1, top + 1):
        faces_q, off_q, tot_q = layout[q]
        _, off_q1, tot_q1 = layout[q - 1]
        m = linalg.zeros(tot_q1, tot_q)
        for beta in faces_q:
            src_dim = _mt_dim(cplx, beta, p)
            if src_dim == 0:
                continue
            for alpha, sign in cplx.boundary_faces(beta):
                dst_dim = _mt_dim(cplx, alpha, p)
                if dst_dim == 0:
                    continue
                block = cplx.coefficient_map(beta, alpha, p)
                r0, c0 = off_q1[alpha], off_q[beta]
                for i in range(dst_dim):
                    for j in range(src_dim):
                        m[r0 + i][c0 + j] += sign * block[i][j]
        boundaries[q] = m
    return dims, boundaries


def homology_dims(cplx: CompactifiedComplex, p: int):
    """dim H_{p,q} for q = 0..dim, by exact rank computation."""
    top = cplx.dim
    dims, boundaries = chain_complex(cplx, p)
    ranks = {q: linalg.rank(boundaries[q]) for q in range(1, top + 1)}
    ranks[0] = 0
    ranks[top + 1] = 0
    return [dims[q] - ranks[q] - ranks[q + 1] for q in range(top + 1)]


@dataclass
class BettiTable:
    """dim H_{p,q} of the compactification, 0 <= p,q <= d."""

    d: int
    entries: dict[tuple[int, int], int]

    def __getitem__(self, pq):
        return self.entries.get(pq, 0)

    def tropical_betti(self):
        """b_k = sum over p+q = k, the dimensions of H^k."""
        return [
            sum(self[p, k - p] for p in range(k + 1)) for k in range(2 * self.d + 1)
        ]

    def diagonal(self):
        return [self[k, k] for k in range(self.d + 1)]

    def rows(self):
        return [[self[p, q] for q in range(self.d + 1)] for p in range(self.d + 1)]


def betti_table(fan: Fan, cplx: CompactifiedComplex | None = None) -> BettiTable:
    cplx = cplx or build_complex(fan)
    d = cplx.dim
    entries = {}
    rows = _map_maybe_parallel(lambda p: homology_dims(cplx, p), list(range(d + 1)))
    for p in range(d + 1):
        for q, h in enumerate(rows[p]):
            if h:
                entries[(p, q)] = h
    return BettiTable(d, entries)


def cohomology_table(fan: Fan, cplx: CompactifiedComplex | None = None) -> BettiTable:
    """Tropical cohomology dimensions; equal to homology over Q."""
    return betti_table(fan, cplx)


def fan_open_cohomology(fan: Fan, p: int):
    """H^{p,0} of the open fanfold: the dual of F_p at the origin.

    Returns ``(dim, basis)`` where the basis spans F_p(0) in wedge
    coordinates (the dual basis represents the cohomology classes).
    """
    cplx = build_complex(fan)
    mt = cplx.multi_tangent(CompactFace((), ()), p)
    return mt.dim, [list(v) for v in mt.basis]


@dataclass
class FundamentalCycle:
    """The weighted top chain with coefficient wgt(gamma) * omega_gamma on
    each sedentarity-zero facet face; a cycle iff the fan is balanced."""

    complex: CompactifiedComplex
    coefficients: dict[CompactFace, list[Fraction]]

    def chain_vector(self):
        cplx = self.complex
        d = cplx.dim
        vec = []
        for f in cplx.faces(d):
            block = self.coefficients.get(f)
            n = _mt_dim(cplx, f, d)
            vec.extend(block if block is not None else [Fraction(0)] * n)
        return vec

    def boundary(self):
        cplx = self.complex
        d = cplx.dim
        _, boundaries = chain_complex(cplx, d)
        if d == 0:
            return []
        return linalg.mat_vec(boundaries[d], self.chain_vector())

    def is_cycle(self) -> bool:
        return all(x == 0 for x in self.boundary())


def omega_coords(fan: Fan, cone):
    """Wedge coordinates of the canonical multivector of a cone: the
    generators wedged in global ray order."""
    from .compactification import _wedge_coords

    gens = [list(fan.rays[i]) for i in sorted(cone)]
    return _wedge_coords(gens, len(gens), fan.rank)


def fundamental_class(fan: Fan, cplx: CompactifiedComplex | None = None) -> FundamentalCycle:
    if fan.weights is None:
        raise FanError("the fundamental class needs facet weights")
    if not fan.is_pure():
        raise FanError("the fundamental class needs a pure fan")
    cplx = cplx or build_complex(fan)
    d = fan.dim
    coeffs = {}
    for gamma in fan.facets():
        face = CompactFace((), gamma)
        mt = cplx.multi_tangent(face, d)
        omega = omega_coords(fan, gamma)
        coords = linalg.coords_in_basis([list(b) for b in mt.basis], omega)
        assert coords is not None and len(coords) == 1
        coeffs[face] = [fan.weight(gamma) * coords[0]]
    return FundamentalCycle(cplx, coeffs)


def pd_battery(fan: Fan, cplx: CompactifiedComplex | None = None) -> Report:
    """Necessary conditions for tropical Poincare duality.

    (a) dim H^{p,q} = dim H_{d-p,d-q} for all p, q;
    (b) dim H^{d,d} = 1;
    (c) H^{p,q} = 0 off the diagonal.

    This battery stands in for the cap-product isomorphism, which has
    no cellular formula here; it separates every positive example from
    every negative one in the shipped fixture set, but a pass is a
    necessary-condition verdict, not a duality proof.
    """
    table = betti_table(fan, cplx)
    d = table.d
    witnesses = []
    for p in range(d + 1):
        for q in range(d + 1):
            if table[p, q] != table[d - p, d - q]:
                witnesses.append(
                    f"(a) dim H^{{{p},{q}}}={table[p, q]} != dim H_{{{d - p},{d - q}}}={table[d - p, d - q]}"
                )
    if table[d, d] != 1:
        witnesses.append(f"(b) dim H^{{{d},{d}}}={table[d, d]} != 1")
    for p in range(d + 1):
        for q in range(d + 1):
            if p != q and table[p, q] != 0:
                witnesses.append(f"(c) dim H^{{{p},{q}}}={table[p, q]} != 0")
    data = {"battery": "PD battery (necessary conditions, not a PD proof)",
            "diagonal": table.diagonal()}
    if witnesses:
        return Report("pd_battery", "fail", witnesses, data)
    return Report("pd_battery", "pass", [], data)


def is_tropical_homology_manifold(fan: Fan) -> Report:
    """Run the PD battery on the star of every cone, the origin included.

    Whether the battery plus this star recursion is equivalent to full
    tropical Poincare duality for all unimodular tropical fans is not
    settled; the report says so.
    """
    cones = fan.cones()

    def run(sigma):
        st = star_fan(fan, sigma)
        return sigma, pd_battery(st.fan)

    results = _map_maybe_parallel(run, cones)
    witnesses = []
    for sigma, rep in results:
        if not rep.ok:
            witnesses.append(f"sigma={sigma}: " + "; ".join(rep.witnesses))
    data = {
        "checked_stars": len(cones),
        "caveat": "battery-based check; see pd_battery",
    }
    if witnesses:
        return Report("tropical_homology_manifold", "fail", witnesses, data)
    return Report("tropical_homology_manifold", "pass", [], data)
