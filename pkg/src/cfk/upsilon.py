"""Filtration levels, the gamma minimisation, and the exact upsilon function.

For a parameter t in [0, 2] every sector element carries the exact level
(t/2)*Alex + (1 - t/2)*alg.  gamma(t) is the least level threshold below
which some cycle supported on the admissible elements still represents the
distinguished degree-0 homology class, and upsilon(t) = -2*gamma(t).

upsilon is assembled exactly: candidate breakpoints are the parameters where
two grading-0 level lines cross, gamma is evaluated at every candidate and
every midpoint, and linearity between candidates is verified rather than
assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .complexes import BifilteredComplex, Generator, UnsupportedComplexError
from .exactnum import PiecewiseLinear, check_parameter
from .f2linalg import Echelon, F2Matrix, in_span, solve


class CertificateError(RuntimeError):
    """A certificate failed independent re-verification."""


class BreakpointVerificationError(RuntimeError):
    """gamma was not linear between consecutive candidate breakpoints.

    This indicates a missed breakpoint candidate; the computation aborts
    rather than interpolate silently.
    """


@dataclass(frozen=True)
class SectorElement:
    """A U-translate of a generator, pinned to one homological grading."""

    generator: Generator
    u_power: int

    @property
    def alg(self) -> int:
        return self.generator.alg - self.u_power

    @property
    def alex(self) -> int:
        return self.generator.alex - self.u_power

    @property
    def maslov(self) -> int:
        return self.generator.maslov - 2 * self.u_power


def sector(c: BifilteredComplex, m: int) -> tuple[SectorElement, ...]:
    """All U-translates of generators with effective grading m.

    Each generator of matching grading parity contributes exactly one
    translate, so the sector is finite and listed in generator order.
    """
    out = []
    for g in c.generators:
        shift = g.maslov - m
        if shift % 2 == 0:
            out.append(SectorElement(g, shift // 2))
    return tuple(out)


def level(t, e: SectorElement) -> Fraction:
    """Exact filtration level (t/2)*Alex + (1 - t/2)*alg of e at parameter t."""
    t = check_parameter(t)
    half = t / 2
    return half * e.alex + (1 - half) * e.alg


def level_slope(e: SectorElement) -> Fraction:
    """d(level)/dt, constant in t: (Alex - alg) / 2."""
    return Fraction(e.alex - e.alg, 2)


@dataclass(frozen=True)
class GammaCertificate:
    """Witness for gamma(t) = s: a minimal-level cycle in the h0 class."""

    t: Fraction
    s: Fraction
    cycle: tuple[SectorElement, ...]
    levels: tuple[Fraction, ...]


class _SectorEngine:
    """Graded sectors, boundary blocks, and the class-detecting functional.

    The boundary of the U-completed complex restricted to the grading-0 and
    grading-1 sectors equals the fundamental boundary restricted to even and
    odd generators, so all homology questions reduce to two bit matrices.
    The functional lam vanishes on boundaries and takes value 1 on the
    distinguished representative; because the completed grading-0 homology
    has rank one (checked here), a cycle z represents that class exactly
    when lam(z) = 1.
    """

    def __init__(self, c: BifilteredComplex):
        self.complex = c
        self.even = sector(c, 0)
        self.odd = sector(c, 1)
        even_pos = {}
        odd_pos = {}
        for i, g in enumerate(c.generators):
            if g.maslov % 2 == 0:
                even_pos[i] = len(even_pos)
            else:
                odd_pos[i] = len(odd_pos)
        even_idx = sorted(even_pos, key=even_pos.get)
        odd_idx = sorted(odd_pos, key=odd_pos.get)
        self.d_even = [
            _mask_of(c.boundary[i], odd_pos) for i in even_idx
        ]
        self.d_odd = [
            _mask_of(c.boundary[i], even_pos) for i in odd_idx
        ]
        self.h0_mask = _mask_of(c.h0_rep, even_pos)

        cycles = Echelon()
        rank_d = sum(cycles.add(v) for v in self.d_even)
        image = Echelon()
        rank_b = sum(image.add(v) for v in self.d_odd)
        if (len(self.even) - rank_d) - rank_b != 1:
            raise UnsupportedComplexError(
                "not a knot-like complex in scope: completed grading-0 homology "
                "must have rank one"
            )
        rows = tuple(self.d_odd) + (self.h0_mask,)
        sol = solve(F2Matrix.from_rows(rows, len(self.even)), 1 << len(self.d_odd))
        if sol.particular is None:
            raise AssertionError("no functional separates the h0 class from boundaries")
        self.lam = sol.particular

    def even_levels(self, t: Fraction) -> list[Fraction]:
        half = t / 2
        return [half * e.alex + (1 - half) * e.alg for e in self.even]

    def odd_levels(self, t: Fraction) -> list[Fraction]:
        half = t / 2
        return [half * e.alex + (1 - half) * e.alg for e in self.odd]

    def gamma(self, t) -> tuple[Fraction, int]:
        """Minimal threshold and a witness cycle (bitmask over the even sector).

        Columns [d(e); lam(e)] are fed to an incremental echelon in level
        order; the class is reachable once the pure-lam target reduces to
        zero, and the tag trail recovers the witness combination.
        """
        t = check_parameter(t)
        levels = self.even_levels(t)
        order = sorted(range(len(levels)), key=lambda k: (levels[k], k))
        lam_bit = 1 << len(self.odd)
        target = lam_bit
        ech = Echelon(track=True)
        i = 0
        while i < len(order):
            threshold = levels[order[i]]
            while i < len(order) and levels[order[i]] == threshold:
                k = order[i]
                col = self.d_even[k] | (lam_bit if (self.lam >> k) & 1 else 0)
                ech.add(col, 1 << k)
                i += 1
            residue, combo = ech.reduce_with_tag(target)
            if residue == 0:
                return threshold, combo
        raise AssertionError("the distinguished class was not reachable at any level")


def _mask_of(indices, positions) -> int:
    out = 0
    for i in indices:
        out |= 1 << positions[i]
    return out


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def gamma_at(c: BifilteredComplex, t) -> GammaCertificate:
    """gamma(t) with a re-checkable witness cycle."""
    engine = _SectorEngine(c)
    return _package_certificate(engine, check_parameter(t))


def _package_certificate(engine: _SectorEngine, t: Fraction) -> GammaCertificate:
    s, combo = engine.gamma(t)
    elems = tuple(engine.even[k] for k in _bits(combo))
    levels = tuple(level(t, e) for e in elems)
    assert max(levels) == s
    return GammaCertificate(t=t, s=s, cycle=elems, levels=levels)


def verify_gamma_certificate(c: BifilteredComplex, cert: GammaCertificate) -> None:
    """Re-check a certificate directly from the definitions.

    Verifies the cycle condition, the homology condition against the full
    grading-1 sector, the level bound, and minimality over thresholds; none
    of it reuses the class functional that guided the original search.
    """
    even = sector(c, 0)
    even_pos = {e: k for k, e in enumerate(even)}
    if not cert.cycle:
        raise CertificateError("certificate cycle is empty")
    if len(set(cert.cycle)) != len(cert.cycle):
        raise CertificateError("certificate cycle repeats an element")
    for e in cert.cycle:
        if e not in even_pos:
            raise CertificateError("certificate cycle leaves the grading-0 sector")
    levels = tuple(level(cert.t, e) for e in cert.cycle)
    if levels != cert.levels:
        raise CertificateError("stored levels do not match recomputation")
    if max(levels) != cert.s:
        raise CertificateError("threshold is not attained by the support")

    engine_free = _DirectChecker(c)
    zmask = 0
    for e in cert.cycle:
        zmask |= 1 << even_pos[e]
    if engine_free.boundary_of_even(zmask) != 0:
        raise CertificateError("certificate support is not a cycle")
    if not in_span(engine_free.image, zmask ^ engine_free.h0_mask):
        raise CertificateError("certificate cycle is not homologous to the h0 class")

    below = [lv for lv in engine_free.even_levels(cert.t) if lv < cert.s]
    if below and engine_free.feasible(cert.t, max(below)):
        raise CertificateError("a cycle in the h0 class exists below the threshold")


class _DirectChecker:
    """Definition-level feasibility checks used by certificate verification."""

    def __init__(self, c: BifilteredComplex):
        self.even = sector(c, 0)
        self.odd = sector(c, 1)
        even_pos = {}
        odd_pos = {}
        for i, g in enumerate(c.generators):
            if g.maslov % 2 == 0:
                even_pos[i] = len(even_pos)
            else:
                odd_pos[i] = len(odd_pos)
        even_idx = sorted(even_pos, key=even_pos.get)
        odd_idx = sorted(odd_pos, key=odd_pos.get)
        self.d_even = [_mask_of(c.boundary[i], odd_pos) for i in even_idx]
        self.image = [_mask_of(c.boundary[i], even_pos) for i in odd_idx]
        self.h0_mask = _mask_of(c.h0_rep, even_pos)

    def even_levels(self, t: Fraction) -> list[Fraction]:
        return [level(t, e) for e in self.even]

    def boundary_of_even(self, zmask: int) -> int:
        out = 0
        for k in _bits(zmask):
            out ^= self.d_even[k]
        return out

    def feasible(self, t: Fraction, s: Fraction) -> bool:
        """Does a cycle within level s represent the h0 class?"""
        levels = self.even_levels(t)
        admissible = [k for k, lv in enumerate(levels) if lv <= s]
        M = F2Matrix.from_columns([self.d_even[k] for k in admissible],
                                  len(self.odd))
        kernel = []
        for vec in solve(M, 0).kernel_basis:
            z = 0
            for b in _bits(vec):
                z |= 1 << admissible[b]
            kernel.append(z)
        return in_span(kernel + self.image, self.h0_mask)


def upsilon(c: BifilteredComplex) -> PiecewiseLinear:
    """The exact piecewise-linear function -2*gamma on [0, 2].

    Candidate breakpoints are all crossings of pairs of grading-0 level
    lines; between consecutive candidates gamma is verified to be linear by
    evaluating at the midpoint, so a missed breakpoint aborts loudly.
    """
    engine = _SectorEngine(c)
    points = sorted({(e.alg, e.alex) for e in engine.even})
    candidates = {Fraction(0), Fraction(2)}
    for (a1, x1), (a2, x2) in combinations(points, 2):
        denom = (x1 - a1) - (x2 - a2)
        if denom == 0:
            continue
        t = Fraction(2 * (a2 - a1), denom)
        if 0 < t < 2:
            candidates.add(t)
    ts = sorted(candidates)
    values = [engine.gamma(t)[0] for t in ts]
    for i in range(len(ts) - 1):
        mid = (ts[i] + ts[i + 1]) / 2
        gmid = engine.gamma(mid)[0]
        lhs = (values[i + 1] - values[i]) * (mid - ts[i])
        rhs = (gmid - values[i]) * (ts[i + 1] - ts[i])
        if lhs != rhs:
            raise BreakpointVerificationError(
                f"gamma is not linear on [{ts[i]}, {ts[i + 1]}]: missed breakpoint"
            )
    return PiecewiseLinear(tuple((t, -2 * v) for t, v in zip(ts, values)))
