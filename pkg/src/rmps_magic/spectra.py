"""Spectra of the interaction blocks: numerics, closed forms and bound checks.

Closed forms are written for blocks built from the printed Weingarten table.
Gram-inverse blocks differ from those by the scalar ``f(dB)`` (see
:func:`rmps_magic.weingarten.table_rescale_factor`), so their closed forms are
the printed ones divided by ``f``.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import mpmath
import numpy as np

from . import polynomials as P
from .blocks import VARIANTS, build_block
from .errors import ClosedFormMismatchError, DomainError, NonRealSpectrumError
from .pauli import SiteClass
from .weingarten import table_rescale_factor

IMAG_TOL = 1e-9
BOUND_TOL = 1e-10
MATCH_TOL = 1e-9
GRID_MAX = 12
_DPS = 50


def spectral_bound(d: int, site_class: SiteClass) -> float:
    if site_class is SiteClass.IDENTITY:
        return 1.0
    if site_class is SiteClass.O1:
        return 2 / d**2
    if site_class is SiteClass.O2:
        return 3 / d**3
    raise DomainError(f"no spectral bound for {site_class}")


@dataclass(frozen=True)
class SpectralReport:
    d: int
    B: int
    site_class: SiteClass
    variant: str
    eigenvalues: np.ndarray = field(repr=False)
    spectral_radius: float
    bound: float
    bound_d2: float | None
    min_eigenvalue: float

    @property
    def bound_satisfied(self) -> bool:
        return self.spectral_radius <= self.bound + BOUND_TOL

    @property
    def bound_d2_satisfied(self) -> bool | None:
        if self.bound_d2 is None:
            return None
        return self.spectral_radius <= self.bound_d2 + BOUND_TOL

    @property
    def margin(self) -> float:
        return self.bound - self.spectral_radius


def numeric_spectrum(block) -> SpectralReport:
    """Eigenvalues of a :class:`TransferBlock`, sorted in decreasing order.

    Raises :class:`NonRealSpectrumError` if any imaginary part exceeds
    ``1e-9`` times the largest entry of the block.
    """
    M = block.entries
    ev = np.linalg.eigvals(M)
    scale = float(np.max(np.abs(M))) or 1.0
    worst = float(np.max(np.abs(ev.imag)))
    if worst > IMAG_TOL * scale:
        raise NonRealSpectrumError(
            f"{block.site_class.value} block at d={block.d}, B={block.B} has imaginary part {worst:.3g}"
        )
    re = np.sort(ev.real)[::-1]
    d = block.d
    return SpectralReport(
        d=d, B=block.B, site_class=block.site_class, variant=block.variant,
        eigenvalues=re,
        spectral_radius=float(np.max(np.abs(ev))),
        bound=spectral_bound(d, block.site_class),
        bound_d2=0.25 if (d == 2 and block.site_class is SiteClass.O1) else None,
        min_eigenvalue=float(re[-1]),
    )


# ---- closed forms ----------------------------------------------------------

@dataclass(frozen=True)
class ClosedFormSpectrum:
    """Distinct closed-form eigenvalues with multiplicities matched to numerics."""

    d: int
    B: int
    site_class: SiteClass
    variant: str
    values: tuple                # mpmath numbers, in printed order
    multiplicities: tuple[int, ...]
    radius_index: int            # which printed value is the spectral radius
    max_rel_deviation: float

    @property
    def spectral_radius(self):
        return self.values[self.radius_index]


def _printed_values(d: int, B: int, site_class: SiteClass) -> tuple[list, int]:
    mp = mpmath.mpf
    q2 = B * B * d * d
    den3 = (q2 - 3) * (q2 - 2) * (q2 - 1)
    sq = mpmath.sqrt
    if site_class is SiteClass.IDENTITY:
        cubic = B**5 - 5 * B**3 + 4 * B
        quart = B**4 * d**4 - 13 * q2 + 36
        A1, A2, A3 = P.id_A1(d, B), P.id_A2(d, B), P.id_A3(d, B)
        A4, A5, A6 = P.id_A4(d, B), P.id_A5(d, B), P.id_A6(d, B)
        r1 = (B**3 - B) * P.id_quad_factor(d, B) * sq(A2)
        r2 = (B**3 - B) * (d - 1) * d * sq(A5)
        vals = [
            mp(cubic * d * (q2 - 9)) / (B * den3),
            mp(cubic * d * d * (q2 - 9)) / (B * den3),
            mp((B**3 - B) * quart) / (B * den3),
            mp((B * B - 1) * d * quart) / den3,
            mp(quart) / ((q2 - 3) * (q2 - 2)),
            (A1 - r1) / A3, (A1 + r1) / A3,
            (A4 - r2) / A6, (A4 + r2) / A6,
        ]
        return vals, 4
    if site_class is SiteClass.O1:
        C1, C2, C3 = P.o1_C1(d, B), P.o1_C2(d, B), P.o1_C3(d, B)
        C4, C5, C6 = P.o1_C4(d, B), P.o1_C5(d, B), P.o1_C6(d, B)
        r1 = (B**3 - B) * P.id_quad_factor(d, B) * sq(C2)
        r2 = B * (d - 1) * d * sq(C5)
        vals = [
            mp(0),
            mp((B**3 - B) * (d**3 * B**4 - 4 * d * d * B * B - 9 * d * B * B + 36)) / (B * den3),
            (C1 - r1) / C3, (C1 + r1) / C3,
            (C4 - r2) / C6, (C4 + r2) / C6,
        ]
        return vals, 5
    if site_class is SiteClass.O2:
        vals = [
            mp(0),
            mp((B**3 - B) * (B**4 * d**3 - 4 * B * B * d * d - 9 * B * B * d + 36)) / (B * den3),
            mp(B**6 * d**3 + 5 * B**4 * d**3 - 20 * B**4 * d * d + B**4 * d
               - 16 * B * B * d * d + 65 * B * B * d - 36) / den3,
            mp((B**3 - B) * (B**4 * d**4 - 2 * B * B * d**3 - 11 * B * B * d * d + 18 * d + 18))
            / (B * d * den3),
        ]
        return vals, 2
    raise DomainError(f"no closed form for {site_class}")


def closed_form_spectrum(d: int, B: int, site_class: SiteClass, variant: str = "gram") -> ClosedFormSpectrum:
    """Evaluate the closed forms at 50 digits and match them to the numerics.

    Every numeric eigenvalue must lie within relative distance ``1e-9`` of a
    closed-form value, where the distance is ``|lam - mu| / max(|mu|, rho)``
    and ``rho`` is the numeric spectral radius. Every closed-form value must
    be hit at least once. Violations raise :class:`ClosedFormMismatchError`.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown Weingarten variant {variant!r}")
    with mpmath.workdps(_DPS):
        vals, ridx = _printed_values(d, B, site_class)
        if variant == "gram":
            f = table_rescale_factor(d * B)
            scale = mpmath.mpf(f.numerator) / f.denominator
            vals = [v / scale for v in vals]
        vals = [mpmath.mpf(v) for v in vals]
    rep = numeric_spectrum(build_block(d, B, site_class, variant))
    rho = rep.spectral_radius
    fv = np.array([float(v) for v in vals])
    mult = [0] * len(vals)
    worst = 0.0
    for lam in rep.eigenvalues:
        dev = np.abs(lam - fv) / np.maximum(np.abs(fv), rho)
        k = int(np.argmin(dev))
        worst = max(worst, float(dev[k]))
        if dev[k] > MATCH_TOL:
            raise ClosedFormMismatchError(
                f"eigenvalue {lam!r} of the {site_class.value} block (d={d}, B={B}) matches no closed form"
            )
        # ties (coincident closed forms) go to the first listed value
        mult[k] += 1
    for k, m in enumerate(mult):
        if m == 0:
            partner = [j for j in range(len(fv)) if j != k and mult[j]
                       and abs(fv[j] - fv[k]) <= MATCH_TOL * max(abs(fv[k]), rho)]
            if not partner:
                raise ClosedFormMismatchError(
                    f"closed-form value #{k + 1} = {fv[k]!r} of the {site_class.value} block "
                    f"(d={d}, B={B}) is not in the numeric spectrum"
                )
    return ClosedFormSpectrum(d, B, site_class, variant, tuple(vals), tuple(mult), ridx, worst)


# ---- grid checks -----------------------------------------------------------

_CLASSES = (SiteClass.IDENTITY, SiteClass.O1, SiteClass.O2)


def _check_range(r, what: str) -> list[int]:
    r = list(r)
    if not r or min(r) < 2 or max(r) > GRID_MAX:
        raise DomainError(f"{what} grid must lie within [2, {GRID_MAX}], got {r[:1]}..{r[-1:]}")
    return r


@dataclass(frozen=True)
class SubadditivityCheck:
    d: int
    B: int
    radius_sum_block: float
    radius_bound: float

    @property
    def holds(self) -> bool:
        return self.radius_sum_block <= self.radius_bound + BOUND_TOL


def subadditivity_check(d: int, B: int, variant: str = "gram") -> SubadditivityCheck:
    """``rho(G + n1 O1 + n2 O2) <= rho(G) + n1 rho(O1) + n2 rho(O2)``."""
    from .blocks import summed_block
    from .pauli import site_class_counts

    n1, n2 = site_class_counts(d)
    radii = {c: numeric_spectrum(build_block(d, B, c, variant)).spectral_radius for c in _CLASSES}
    M = summed_block(d, B, variant).astype(float)
    lhs = float(np.max(np.abs(np.linalg.eigvals(M))))
    rhs = radii[SiteClass.IDENTITY] + n1 * radii[SiteClass.O1] + n2 * radii[SiteClass.O2]
    return SubadditivityCheck(d, B, lhs, rhs)


@dataclass
class BoundsGrid:
    variant: str
    reports: list[SpectralReport]
    subadditivity: list[SubadditivityCheck]

    @property
    def violations(self) -> list[SpectralReport]:
        return [r for r in self.reports if not r.bound_satisfied]

    @property
    def d2_violations(self) -> list[SpectralReport]:
        return [r for r in self.reports if r.bound_d2_satisfied is False]

    @property
    def negative_eigenvalues(self) -> list[SpectralReport]:
        return [r for r in self.reports if r.min_eigenvalue < -BOUND_TOL]

    @property
    def all_hold(self) -> bool:
        return not (self.violations or self.d2_violations or self.negative_eigenvalues
                    or not all(s.holds for s in self.subadditivity))


def verify_bounds_grid(d_range=range(2, 11), B_range=range(2, 11), variant: str = "gram") -> BoundsGrid:
    ds, Bs = _check_range(d_range, "d"), _check_range(B_range, "B")
    reports, subs = [], []
    for d in ds:
        for B in Bs:
            for c in _CLASSES:
                reports.append(numeric_spectrum(build_block(d, B, c, variant)))
            subs.append(subadditivity_check(d, B, variant))
    return BoundsGrid(variant, reports, subs)


def write_spectral_csv(reports, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["variant", "d", "B", "class", "spectral_radius", "bound", "margin",
                    "bound_d2", "min_eigenvalue", "bound_satisfied"])
        for r in reports:
            w.writerow([r.variant, r.d, r.B, r.site_class.value, repr(r.spectral_radius), repr(r.bound),
                        repr(r.margin), "" if r.bound_d2 is None else repr(r.bound_d2),
                        repr(r.min_eigenvalue), int(r.bound_satisfied and r.bound_d2_satisfied is not False)])
    return path


# ---- inequality polynomials ------------------------------------------------

@dataclass(frozen=True)
class PolynomialFailure:
    name: str
    d: int
    B: int
    value: int


@dataclass
class PolynomialReport:
    evaluations: int
    failures: list[PolynomialFailure]

    @property
    def all_nonnegative(self) -> bool:
        return not self.failures


def verify_appendix_polynomials(d_range=range(2, 13), B_range=range(2, 13), catalogue=None) -> PolynomialReport:
    """Evaluate every catalogued inequality polynomial exactly on the grid."""
    ds, Bs = _check_range(d_range, "d"), _check_range(B_range, "B")
    catalogue = P.CATALOGUE if catalogue is None else catalogue
    count, bad = 0, []
    for ineq in catalogue:
        for d in ds:
            for B in Bs:
                if not ineq.applies(d, B):
                    continue
                v = ineq.poly(d, B)
                count += 1
                if v < 0 or (ineq.strict and v == 0):
                    bad.append(PolynomialFailure(ineq.name, d, B, v))
    return PolynomialReport(count, bad)


def exact_rescale(value: Fraction, q: int) -> Fraction:
    """Convert a table-variant quantity that is linear in Wg to the Gram variant."""
    return value / table_rescale_factor(q)


__all__ = [
    "SpectralReport", "numeric_spectrum", "ClosedFormSpectrum", "closed_form_spectrum",
    "verify_bounds_grid", "BoundsGrid", "subadditivity_check", "write_spectral_csv",
    "verify_appendix_polynomials", "PolynomialReport", "spectral_bound",
]
