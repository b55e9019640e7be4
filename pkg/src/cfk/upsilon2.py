"""Secondary upsilon at singularities where the slope of upsilon jumps up.

At such a parameter t0 the optimal cycles for t slightly below and slightly
above t0 are supported on different pivots.  The secondary invariant measures
how much deeper the filtration must reach before one cycle from each side
becomes homologous: upsilon2 = -2 * (gamma2 - gamma).

Infinitesimal side comparisons never use a numeric delta; levels at t0 +/- delta
are compared as jets (value, slope) ordered lexicographically, with the slope
sign flipped on the minus side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import BifilteredComplex
from .exactnum import PiecewiseLinear, check_parameter
from .f2linalg import F2Matrix, in_span, solve, span_intersection
from .upsilon import (
    SectorElement,
    _SectorEngine,
    _bits,
    level,
    level_slope,
    upsilon,
)

SIDE_MINUS = "minus"
SIDE_PLUS = "plus"


class NotApplicableError(ValueError):
    """t0 is not a singularity with a positive slope jump."""


@dataclass(frozen=True)
class Jet:
    """First-order level data at t0: value and d(level)/dt."""

    value: Fraction
    slope: Fraction

    def side_key(self, sign: int) -> tuple[Fraction, Fraction]:
        """Lexicographic comparison key on the side t0 + sign*delta."""
        return (self.value, sign * self.slope)


@dataclass(frozen=True)
class SideData:
    """Pivot data for one side of a singularity.

    ``cycle_particular`` plus the GF(2) span of ``cycle_basis`` is exactly
    the set of cycles supported on the admissible elements that represent
    the distinguished class.
    """

    side: str
    gamma_jet: Jet
    admissible: tuple[SectorElement, ...]
    cycle_particular: frozenset[SectorElement]
    cycle_basis: tuple[frozenset[SectorElement], ...]


@dataclass(frozen=True)
class MergeWitness:
    z_minus: frozenset[SectorElement]
    z_plus: frozenset[SectorElement]
    w: frozenset[SectorElement]


@dataclass(frozen=True)
class Gamma2Certificate:
    """gamma2 at t0 with the merging witness: dw = z_minus + z_plus."""

    t0: Fraction
    gamma: Fraction
    gamma2: Fraction
    witness: MergeWitness

    def upsilon2(self) -> Fraction:
        return -2 * (self.gamma2 - self.gamma)

    def to_json_dict(self) -> dict:
        def part(elems):
            rows = [
                {
                    "id": e.generator.name,
                    "u_power": e.u_power,
                    "level": str(level(self.t0, e)),
                }
                for e in elems
            ]
            rows.sort(key=lambda r: r["id"])
            return rows

        return {
            "t0": str(self.t0),
            "gamma": str(self.gamma),
            "gamma2": str(self.gamma2),
            "upsilon2": str(self.upsilon2()),
            "z_minus": part(self.witness.z_minus),
            "z_plus": part(self.witness.z_plus),
            "w": part(self.witness.w),
        }


def _slope_data(ups: PiecewiseLinear, t0: Fraction):
    """gamma value and one-sided gamma slopes at a positive-jump singularity."""
    left, right = ups.slopes_at(t0)
    if left is None or right is None:
        raise NotApplicableError("t0 must lie in the open interval (0, 2)")
    jump = right - left
    if jump == 0:
        raise NotApplicableError(f"upsilon has no singularity at t={t0}")
    if jump < 0:
        raise NotApplicableError(
            f"slope jump at t={t0} is negative; only positive jumps are supported"
        )
    gamma0 = -ups.evaluate(t0) / 2
    return gamma0, -left / 2, -right / 2


def _check_gamma_consistency(engine: _SectorEngine, t0: Fraction,
                             gamma0: Fraction) -> None:
    if engine.gamma(t0)[0] != gamma0:
        raise ValueError(
            "the provided upsilon function does not belong to this complex"
        )


def _side_masks(engine: _SectorEngine, t0: Fraction, gamma0: Fraction,
                gamma_slope: Fraction, sign: int):
    """Admissible even positions, one class cycle, and the null-cycle span."""
    gamma_key = (gamma0, sign * gamma_slope)
    admissible = []
    for k, e in enumerate(engine.even):
        jet = Jet(level(t0, e), level_slope(e))
        if jet.side_key(sign) <= gamma_key:
            admissible.append(k)
    lam_bit = 1 << len(engine.odd)
    cols = [
        engine.d_even[k] | (lam_bit if (engine.lam >> k) & 1 else 0)
        for k in admissible
    ]
    sol = solve(F2Matrix.from_columns(cols, len(engine.odd) + 1), lam_bit)
    if sol.particular is None:
        raise AssertionError("side cycles must attain gamma on each side of a singularity")
    z0 = 0
    for b in _bits(sol.particular):
        z0 |= 1 << admissible[b]
    plain = F2Matrix.from_columns([engine.d_even[k] for k in admissible],
                                  len(engine.odd))
    kernel = []
    for vec in solve(plain, 0).kernel_basis:
        z = 0
        for b in _bits(vec):
            z |= 1 << admissible[b]
        kernel.append(z)
    null_cycles = span_intersection(kernel, engine.d_odd)
    return admissible, z0, null_cycles


def _elements(engine: _SectorEngine, mask: int) -> frozenset[SectorElement]:
    return frozenset(engine.even[k] for k in _bits(mask))


def side_cycles(c: BifilteredComplex, t0, side: str,
                ups: PiecewiseLinear | None = None) -> SideData:
    """Admissible pivots and class cycles on one side of the singularity t0."""
    if side not in (SIDE_MINUS, SIDE_PLUS):
        raise ValueError(f"side must be '{SIDE_MINUS}' or '{SIDE_PLUS}'")
    t0 = check_parameter(t0)
    if ups is None:
        ups = upsilon(c)
    gamma0, slope_minus, slope_plus = _slope_data(ups, t0)
    sign = -1 if side == SIDE_MINUS else 1
    gamma_slope = slope_minus if side == SIDE_MINUS else slope_plus
    engine = _SectorEngine(c)
    _check_gamma_consistency(engine, t0, gamma0)
    admissible, z0, null_cycles = _side_masks(engine, t0, gamma0, gamma_slope, sign)
    return SideData(
        side=side,
        gamma_jet=Jet(gamma0, gamma_slope),
        admissible=tuple(engine.even[k] for k in admissible),
        cycle_particular=_elements(engine, z0),
        cycle_basis=tuple(_elements(engine, v) for v in null_cycles),
    )


def gamma2_at(c: BifilteredComplex, t0, ups: PiecewiseLinear | None = None,
              search: str = "binary") -> Gamma2Certificate:
    """Minimal threshold at which the two side classes merge, with witness.

    Feasibility at threshold r asks for z_minus, z_plus in the side cycle
    spaces and w supported on grading-1 elements of level at most r with
    dw = z_minus + z_plus; this is one affine GF(2) system per threshold.
    Solvability is monotone in r, so the threshold list may be binary
    searched (search='linear' scans instead; both must agree).
    """
    if search not in ("binary", "linear"):
        raise ValueError("search must be 'binary' or 'linear'")
    t0 = check_parameter(t0)
    if ups is None:
        ups = upsilon(c)
    gamma0, slope_minus, slope_plus = _slope_data(ups, t0)
    engine = _SectorEngine(c)
    _check_gamma_consistency(engine, t0, gamma0)
    _, z0m, null_m = _side_masks(engine, t0, gamma0, slope_minus, -1)
    _, z0p, null_p = _side_masks(engine, t0, gamma0, slope_plus, +1)
    target = z0m ^ z0p

    odd_levels = engine.odd_levels(t0)
    odd_order = sorted(range(len(odd_levels)), key=lambda j: (odd_levels[j], j))
    thresholds = sorted({gamma0} | {lv for lv in odd_levels if lv > gamma0})

    def feasible(r: Fraction) -> bool:
        cols = [engine.d_odd[j] for j in odd_order if odd_levels[j] <= r]
        return in_span(cols + null_m + null_p, target)

    last = len(thresholds) - 1
    if not feasible(thresholds[last]):
        raise AssertionError("side classes must merge once every element is admissible")
    if search == "linear":
        best = next(i for i in range(len(thresholds)) if feasible(thresholds[i]))
    else:
        lo, hi = 0, last
        while lo < hi:
            mid = (lo + hi) // 2
            if feasible(thresholds[mid]):
                hi = mid
            else:
                lo = mid + 1
        best = lo
    r_star = thresholds[best]

    support = [j for j in odd_order if odd_levels[j] <= r_star]
    cols = [engine.d_odd[j] for j in support] + null_m + null_p
    sol = solve(F2Matrix.from_columns(cols, len(engine.even)), target)
    assert sol.particular is not None
    x = sol.particular
    wmask = 0
    for b in range(len(support)):
        if (x >> b) & 1:
            wmask |= 1 << support[b]
    zm, zp = z0m, z0p
    off = len(support)
    for i, v in enumerate(null_m):
        if (x >> (off + i)) & 1:
            zm ^= v
    off += len(null_m)
    for i, v in enumerate(null_p):
        if (x >> (off + i)) & 1:
            zp ^= v

    acc = 0
    for j in _bits(wmask):
        acc ^= engine.d_odd[j]
    assert acc == zm ^ zp

    witness = MergeWitness(
        z_minus=_elements(engine, zm),
        z_plus=_elements(engine, zp),
        w=frozenset(engine.odd[j] for j in _bits(wmask)),
    )
    return Gamma2Certificate(t0=t0, gamma=gamma0, gamma2=r_star, witness=witness)


def upsilon2_at(c: BifilteredComplex, t0,
                ups: PiecewiseLinear | None = None) -> Fraction:
    """Secondary upsilon -2*(gamma2 - gamma) at the singularity t0."""
    return gamma2_at(c, t0, ups=ups).upsilon2()


def verify_gamma2_certificate(c: BifilteredComplex, cert: Gamma2Certificate,
                              ups: PiecewiseLinear | None = None) -> None:
    """Re-check a merge certificate against the definitions.

    Validates both side cycles (support, cycle and class conditions), the
    merging equation dw = z_minus + z_plus, the level bound on w, and
    minimality by infeasibility at the next lower threshold.
    """
    from .upsilon import CertificateError

    t0 = cert.t0
    if ups is None:
        ups = upsilon(c)
    gamma0, slope_minus, slope_plus = _slope_data(ups, t0)
    if gamma0 != cert.gamma:
        raise CertificateError("stored gamma does not match upsilon at t0")
    engine = _SectorEngine(c)
    even_pos = {e: k for k, e in enumerate(engine.even)}
    odd_pos = {e: j for j, e in enumerate(engine.odd)}

    def check_side(elems, gamma_slope, sign, label):
        gamma_key = (gamma0, sign * gamma_slope)
        zmask = 0
        for e in elems:
            if e not in even_pos:
                raise CertificateError(f"{label} leaves the grading-0 sector")
            if Jet(level(t0, e), level_slope(e)).side_key(sign) > gamma_key:
                raise CertificateError(f"{label} uses an element above the side bound")
            zmask |= 1 << even_pos[e]
        acc = 0
        for k in _bits(zmask):
            acc ^= engine.d_even[k]
        if acc:
            raise CertificateError(f"{label} is not a cycle")
        if not in_span(engine.d_odd, zmask ^ engine.h0_mask):
            raise CertificateError(f"{label} is not homologous to the h0 class")
        return zmask

    zm = check_side(cert.witness.z_minus, slope_minus, -1, "z_minus")
    zp = check_side(cert.witness.z_plus, slope_plus, +1, "z_plus")

    acc = 0
    for e in cert.witness.w:
        if e not in odd_pos:
            raise CertificateError("w leaves the grading-1 sector")
        if level(t0, e) > cert.gamma2:
            raise CertificateError("w uses an element above the threshold")
        acc ^= engine.d_odd[odd_pos[e]]
    if acc != zm ^ zp:
        raise CertificateError("dw does not equal z_minus + z_plus")

    _, z0m, null_m = _side_masks(engine, t0, gamma0, slope_minus, -1)
    _, z0p, null_p = _side_masks(engine, t0, gamma0, slope_plus, +1)
    odd_levels = engine.odd_levels(t0)
    thresholds = sorted({gamma0} | {lv for lv in odd_levels if lv > gamma0})
    if cert.gamma2 not in thresholds:
        raise CertificateError("threshold is not a grading-1 level at or above gamma")
    below = [r for r in thresholds if r < cert.gamma2]
    if below:
        cols = [engine.d_odd[j] for j, lv in enumerate(odd_levels) if lv <= below[-1]]
        if in_span(cols + null_m + null_p, z0m ^ z0p):
            raise CertificateError("the side classes already merge below the threshold")
