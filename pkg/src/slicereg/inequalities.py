"""Checkable forms of the Bernstein, Erdős–Lax and Ankeny–Rivlin inequalities.

Each check returns a :class:`VerificationReport`.  Direct inequalities set
``holds`` to ``lhs <= rhs (1 + rel_tol) + abs_tol``.  A report is a genuine
violation only when its preconditions were met and it does not hold; see
:attr:`VerificationReport.violation`.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import numpy as np

from .analysis import (
    ClassificationAmbiguous,
    RootFindingError,
    complex_roots,
    growth_max,
    min_modulus_sphere,
    roots_real_poly,
    sup_norm_sphere,
    zero_set,
)
from .hypercomplex import (
    QUATERNION,
    Algebra,
    DomainError,
    ImaginaryUnit,
    algebra_from_tag,
    element_to_json,
)
from .slicepoly import (
    ComplexSlicePolynomial,
    SlicePolynomial,
    common_coefficient_slice,
    polynomial_to_json,
    restrict_to_slice,
    symmetrization,
)

__all__ = [
    "REL_TOL",
    "ABS_TOL",
    "CHECKS",
    "VerificationReport",
    "PolynomialGenerator",
    "CampaignResult",
    "bernstein_check",
    "bernstein_min_check",
    "bernstein_l2_check",
    "erdos_lax_subclass_check",
    "erdos_lax_zero_structure_check",
    "lax_ratio_check",
    "ankeny_growth_check",
    "ankeny_converse_scenario",
    "normalize_at_one",
    "fuzz_campaign",
    "config_hash",
]

REL_TOL = 1e-7
ABS_TOL = 1e-10
EQUALITY_BAND = 1e-6
MONOMIAL_MASS = 1e-8
ROOT_MARGIN = 1e-9
BOUNDARY_TOL = 1e-8
NORMALIZATION_TOL = 1e-8

CHECKS = (
    "bernstein",
    "bernstein-min",
    "bernstein-l2",
    "erdos-lax",
    "erdos-lax-zeros",
    "lax-ratio",
    "ankeny-growth",
    "ankeny-converse",
)


def _ratio(lhs: float, rhs: float) -> float:
    if rhs == 0.0:
        return 1.0 if lhs == 0.0 else math.inf
    return lhs / rhs


def _within(lhs, rhs, rel=REL_TOL, abs_=ABS_TOL) -> bool:
    return bool(lhs <= rhs * (1.0 + rel) + abs_)


def _finite(x):
    return x if isinstance(x, float) and math.isfinite(x) else None


@dataclass
class VerificationReport:
    name: str
    lhs: float
    rhs: float
    holds: bool
    equality_case: bool = False
    witnesses: dict = field(default_factory=dict)
    preconditions_met: bool = True
    reasons: list = field(default_factory=list)
    tolerances: dict = field(default_factory=lambda: {"rel_tol": REL_TOL, "abs_tol": ABS_TOL})
    seed: int | None = None
    degree: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def ratio(self) -> float:
        return _ratio(self.lhs, self.rhs)

    @property
    def violation(self) -> bool:
        return self.preconditions_met and not self.holds

    def to_dict(self, check: str | None = None, trial: int | None = None, config_hash: str | None = None) -> dict:
        return {
            "schema": "report_v1",
            "check": check or self.name,
            "trial": trial,
            "config_hash": config_hash,
            "name": self.name,
            "degree": self.degree,
            "lhs": _finite(float(self.lhs)),
            "rhs": _finite(float(self.rhs)),
            "ratio": _finite(float(self.ratio)),
            "holds": self.holds,
            "equality_case": self.equality_case,
            "witnesses": self.witnesses,
            "preconditions_met": self.preconditions_met,
            "reasons": list(self.reasons),
            "tolerances": dict(self.tolerances),
            "seed": self.seed,
            "details": self.details,
        }


def _degree_at_least_one(P: SlicePolynomial) -> int:
    if P.is_zero() or P.degree < 1:
        raise DomainError("constant polynomial")
    return int(P.degree)


def _subleading_mass(P: SlicePolynomial) -> float:
    return float(np.linalg.norm(P.coeffs[:-1]))


def _is_monomial(P: SlicePolynomial) -> bool:
    return _subleading_mass(P) <= MONOMIAL_MASS * max(1.0, P.coeff_norm())


def _equality(ratio: float, P: SlicePolynomial) -> tuple[bool, dict]:
    near = abs(ratio - 1.0) <= EQUALITY_BAND
    mono = _is_monomial(P)
    return near and mono, {
        "ratio_at_equality": near,
        "monomial": mono,
        "subleading_mass": _subleading_mass(P),
        # the equality case is characterized by monomials only
        "equality_consistent": (not near) or mono,
    }


def bernstein_check(P: SlicePolynomial, tol: float = 1e-9) -> VerificationReport:
    """``max_{|q|=1} |P'| <= n max_{|q|=1} |P|`` with equality exactly for ``q^n a_n``."""
    n = _degree_at_least_one(P)
    top = sup_norm_sphere(P, 1.0, tol)
    dtop = sup_norm_sphere(P.derivative(), 1.0, tol)
    lhs, rhs = dtop.value, n * top.value
    eq, info = _equality(_ratio(lhs, rhs), P)
    return VerificationReport(
        "bernstein", lhs, rhs, _within(lhs, rhs), eq,
        witnesses={"lhs": element_to_json(dtop.witness), "rhs": element_to_json(top.witness)},
        degree=n, details=info,
    )


def bernstein_min_check(P: SlicePolynomial, tol: float = 1e-9) -> VerificationReport:
    """``n min_{|q|=1} |P| <= min_{|q|=1} |P'|``.

    This dual form is false without a hypothesis on the zeros (``P = q + 3``
    gives ``2 > 1``); the report states the outcome as computed.
    """
    n = _degree_at_least_one(P)
    low = min_modulus_sphere(P, 1.0, tol)
    dlow = min_modulus_sphere(P.derivative(), 1.0, tol)
    lhs, rhs = n * low.value, dlow.value
    eq, info = _equality(_ratio(lhs, rhs), P)
    return VerificationReport(
        "bernstein-min", lhs, rhs, _within(lhs, rhs), eq,
        witnesses={"lhs": element_to_json(low.witness), "rhs": element_to_json(dlow.witness)},
        degree=n, details=info,
    )


def bernstein_l2_check(P: SlicePolynomial) -> VerificationReport:
    """Closed form: ``sum m^2 |a_m|^2 <= n^2 sum |a_m|^2``."""
    n = _degree_at_least_one(P)
    mods2 = np.sum(P.coeffs * P.coeffs, axis=1)
    m = np.arange(mods2.size)
    lhs = math.sqrt(float(np.sum(m * m * mods2)))
    rhs = n * math.sqrt(float(np.sum(mods2)))
    mono = _is_monomial(P)
    return VerificationReport(
        "bernstein-l2", lhs, rhs, _within(lhs, rhs, 1e-12, 0.0), mono,
        tolerances={"rel_tol": 1e-12, "abs_tol": 0.0},
        degree=n, details={"monomial": mono, "subleading_mass": _subleading_mass(P)},
    )


def _erdos_lax_sides(P: SlicePolynomial, n: int, tol: float):
    top = sup_norm_sphere(P, 1.0, tol)
    dtop = sup_norm_sphere(P.derivative(), 1.0, tol)
    return dtop, top, dtop.value, 0.5 * n * top.value


def erdos_lax_subclass_check(P: SlicePolynomial, tol: float = 1e-9) -> VerificationReport:
    """``||P'|| <= (n/2) ||P||`` when all coefficients share a slice C_I and ``P_I`` has no zero in the open disk."""
    if P.algebra is not QUATERNION:
        raise DomainError("Erdős–Lax subclass check is for quaternionic polynomials")
    n = _degree_at_least_one(P)
    reasons = []
    details: dict = {}
    unit = common_coefficient_slice(P)
    if unit is None:
        reasons.append("coefficients span no common slice C_I")
    else:
        details["slice_unit"] = list(unit.direction)
        cp = restrict_to_slice(P, unit)
        moduli = [abs(z) for z, _ in complex_roots(cp.array)]
        details["min_root_modulus"] = min(moduli)
        if min(moduli) < 1.0 - ROOT_MARGIN:
            reasons.append("restriction to C_I has a zero in the open unit disk")
    dtop, top, lhs, rhs = _erdos_lax_sides(P, n, tol)
    return VerificationReport(
        "erdos-lax", lhs, rhs, _within(lhs, rhs), False,
        witnesses={"lhs": element_to_json(dtop.witness), "rhs": element_to_json(top.witness)},
        preconditions_met=not reasons, reasons=reasons, degree=n, details=details,
    )


def erdos_lax_zero_structure_check(P: SlicePolynomial, tol: float = 1e-9) -> VerificationReport:
    """Erdős–Lax under: no zero in the open ball, only real/spherical zeros plus
    at most one isolated nonreal zero of multiplicity 1."""
    if P.algebra is not QUATERNION:
        raise DomainError("Erdős–Lax zero-structure check is for quaternionic polynomials")
    n = _degree_at_least_one(P)
    reasons = []
    details: dict = {}
    try:
        zs = zero_set(P)
    except (ClassificationAmbiguous, RootFindingError) as exc:
        reasons.append(f"zero set unavailable: {exc}")
    else:
        details["zero_set"] = zs.to_json()
        if min(zs.moduli(), default=math.inf) < 1.0 - ROOT_MARGIN:
            reasons.append("zero inside the open unit ball")
        if len(zs.isolated_zeros) > 1:
            reasons.append("more than one isolated nonreal zero")
        if any(m > 1 for _, m in zs.isolated_zeros):
            reasons.append("isolated zero of multiplicity > 1")
    dtop, top, lhs, rhs = _erdos_lax_sides(P, n, tol)
    return VerificationReport(
        "erdos-lax-zeros", lhs, rhs, _within(lhs, rhs), False,
        witnesses={"lhs": element_to_json(dtop.witness), "rhs": element_to_json(top.witness)},
        preconditions_met=not reasons, reasons=reasons, degree=n, details=details,
    )


def lax_ratio_check(zeros, theta: float) -> VerificationReport:
    """``|p'(a)/p(a)| > n/2`` at ``a = e^{i theta}`` for ``p`` with all zeros in the open disk."""
    z = np.asarray(zeros, dtype=complex).ravel()
    n = z.size
    if n == 0:
        raise DomainError("need at least one zero")
    a = complex(math.cos(theta), math.sin(theta))
    reasons = []
    if np.any(np.abs(z) >= 1.0):
        reasons.append("zero outside the open unit disk")
    if np.any(z == a):
        raise DomainError("evaluation point coincides with a zero")
    terms = a / (a - z)
    lhs = n / 2.0
    rhs = float(abs(np.sum(1.0 / (a - z))))
    term_re = terms.real
    holds = bool(rhs > lhs and np.all(term_re > 0.5))
    return VerificationReport(
        "lax-ratio", lhs, rhs, holds, False,
        witnesses={"a": [a.real, a.imag]},
        preconditions_met=not reasons, reasons=reasons,
        tolerances={"strict": True}, degree=n,
        details={"term_real_parts": [float(t) for t in term_re], "min_term_real_part": float(term_re.min())},
    )


def _is_ankeny_extremal(P: SlicePolynomial) -> bool:
    c = P.coeffs
    n = c.shape[0] - 1
    mods = np.linalg.norm(c, axis=1)
    inner = mods[1:n]
    return bool(
        np.all(inner <= MONOMIAL_MASS)
        and abs(mods[0] - 0.5) <= EQUALITY_BAND
        and abs(mods[n] - 0.5) <= EQUALITY_BAND
    )


def _zeros_avoid_ball(P: SlicePolynomial):
    """``(ok, reason)`` for "no zero in the open unit ball"; quaternions only."""
    if P.algebra is not QUATERNION:
        return None, "zero set not available for this algebra"
    try:
        zs = zero_set(P)
    except (ClassificationAmbiguous, RootFindingError) as exc:
        return None, f"zero set unavailable: {exc}"
    if min(zs.moduli(), default=math.inf) < 1.0 - ROOT_MARGIN:
        return False, "zero inside the open unit ball"
    return True, None


def ankeny_growth_check(P: SlicePolynomial, R: float, tol: float = 1e-9) -> VerificationReport:
    """``max_{|q|=R} |P| <= (1 + R^n)/2`` after normalizing ``||P|| = 1``."""
    if not R > 1.0:
        raise DomainError("Ankeny–Rivlin growth needs R > 1")
    n = _degree_at_least_one(P)
    norm = sup_norm_sphere(P, 1.0, tol).value
    Pn = P.scale(1.0 / norm)
    grow = sup_norm_sphere(Pn, R, tol)
    lhs, rhs = grow.value, (1.0 + R**n) / 2.0
    ok, reason = _zeros_avoid_ball(Pn)
    extremal = _is_ankeny_extremal(Pn)
    return VerificationReport(
        "ankeny-growth", lhs, rhs, _within(lhs, rhs), extremal and abs(_ratio(lhs, rhs) - 1.0) <= EQUALITY_BAND,
        witnesses={"lhs": element_to_json(grow.witness)},
        preconditions_met=bool(ok), reasons=[reason] if reason else [],
        degree=n, details={"R": R, "input_norm": norm, "extremal_form": extremal},
    )


def normalize_at_one(P: SlicePolynomial) -> SlicePolynomial:
    """Rotate and scale a common-slice polynomial so that ``P(1) = ||P|| = 1``."""
    unit = common_coefficient_slice(P)
    if unit is None:
        raise DomainError("normalization by rotation needs coefficients in a common slice")
    cp = restrict_to_slice(P, unit)
    top = sup_norm_sphere(P)
    w = top.witness
    x = w.real
    y = float(np.dot(w.coeffs[list(P.algebra.units)], unit.vector()))
    zstar = complex(x, y)
    zstar /= abs(zstar)
    a = cp.array * zstar ** np.arange(cp.array.size)
    a /= np.polynomial.polynomial.polyval(1.0, a)
    return ComplexSlicePolynomial(unit, tuple(a)).to_slice_polynomial()


def default_r_samples(delta: float, count: int = 16) -> np.ndarray:
    """``count`` radii in ``(1, delta)`` with ``R - 1`` log-spaced over three decades."""
    return 1.0 + (delta - 1.0) * np.geomspace(1e-3, 1.0, count, endpoint=False)


def ankeny_converse_scenario(P: SlicePolynomial, delta: float = 2.0, R_samples=None, tol: float = 1e-9) -> VerificationReport:
    """If ``P(1) = ||P|| = 1`` and ``max_{|q|=R} |P| <= (1+R^n)/2`` on ``(1, delta)``,
    then not all zeros of ``P`` lie in the open unit ball.

    ``holds`` is the implication; a failed hypothesis is a neutral outcome.
    """
    if P.algebra is not QUATERNION:
        raise DomainError("Ankeny converse scenario is for quaternionic polynomials")
    if not delta > 1.0:
        raise DomainError("delta must exceed 1")
    n = _degree_at_least_one(P)
    radii = np.asarray(default_r_samples(delta) if R_samples is None else R_samples, dtype=float)
    reasons = []
    norm = sup_norm_sphere(P, 1.0, tol).value
    p1 = P.eval_real(1.0)
    if (p1 - 1.0).modulus() > NORMALIZATION_TOL or abs(norm - 1.0) > NORMALIZATION_TOL:
        reasons.append("normalization P(1) = ||P|| = 1 not satisfied")

    growth = []
    worst = (-math.inf, 0.0, 0.0, 1.0)
    failures = []
    for R in radii:
        g = growth_max(P, float(R))
        b = (1.0 + R**n) / 2.0
        growth.append({"R": float(R), "max": g, "bound": b})
        if _ratio(g, b) > worst[0]:
            worst = (_ratio(g, b), g, b, float(R))
        if not _within(g, b):
            failures.append(float(R))
    if failures:
        reasons.append(f"growth hypothesis fails at {len(failures)} sampled radii")
    hypotheses = not reasons

    try:
        zs = zero_set(P)
    except (ClassificationAmbiguous, RootFindingError) as exc:
        zs = None
        reasons.append(f"zero set unavailable: {exc}")
    moduli = zs.moduli() if zs is not None else []
    conclusion = any(m >= 1.0 - BOUNDARY_TOL for m in moduli)
    all_inside = zs is not None and all(m < 1.0 - BOUNDARY_TOL for m in moduli)

    Ps = symmetrization(P).coeffs[:, 0]
    dPs = np.polynomial.polynomial.polyder(Ps)
    ps1 = float(np.polynomial.polynomial.polyval(1.0, Ps))
    dps1 = float(np.polynomial.polynomial.polyval(1.0, dPs))
    details = {
        "conclusion": conclusion,
        "all_zeros_inside": all_inside,
        "hypothesis_failures": failures,
        "growth": growth,
        "Ps_at_1": ps1,
        "dPs_at_1": dps1,
        "dPs_exceeds_n": dps1 > n,
        "zero_set": zs.to_json() if zs is not None else None,
    }
    if all_inside:
        roots = []
        for r in roots_real_poly(Ps):
            roots += [r.value] * r.multiplicity
            if not r.is_real:
                roots += [r.value.conjugate()] * r.multiplicity
        lax = lax_ratio_check(roots, 0.0)
        details["lax_ratio_on_Ps"] = {"lhs": lax.lhs, "rhs": lax.rhs, "holds": lax.holds}
    if hypotheses:
        details["Ps_growth"] = [
            {"R": float(R), "max": sup_norm_sphere(symmetrization(P), float(R), tol).value, "bound": (1.0 + R ** (2 * n)) / 2.0}
            for R in radii
        ]
    decided = zs is not None
    return VerificationReport(
        "ankeny-converse", worst[1], worst[2], (not hypotheses) or conclusion, False,
        witnesses={"worst_R": worst[3]},
        preconditions_met=hypotheses and decided, reasons=reasons, degree=n, details=details,
    )


# -- generators and campaigns -----------------------------------------------------

CONSTRAINTS = ("none", "monomial", "common-slice", "zeros-outside", "zeros-inside", "real-and-spherical")
LAWS = ("uniform", "gaussian")


def _split_seed(seed: int, trial: int) -> int:
    """Per-trial 64-bit seed: SeedSequence(seed) spawned at index ``trial``."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(trial,))
    lo, hi = ss.generate_state(2, dtype=np.uint32)
    return int(hi) << 32 | int(lo)


@dataclass(frozen=True)
class PolynomialGenerator:
    seed: int = 0
    degree_range: tuple = (1, 12)
    law: str = "uniform"
    constraint: str = "none"
    algebra: Algebra = QUATERNION
    root_radius: tuple | None = None

    def __post_init__(self):
        if self.law not in LAWS:
            raise DomainError(f"unknown coefficient law {self.law!r}")
        if self.constraint not in CONSTRAINTS:
            raise DomainError(f"unknown constraint {self.constraint!r}")
        lo, hi = self.degree_range
        if not 0 <= lo <= hi:
            raise DomainError("bad degree range")
        if self.algebra is not QUATERNION and self.constraint not in ("none", "monomial"):
            raise DomainError(f"constraint {self.constraint!r} needs quaternion coefficients")

    def config(self) -> dict:
        return {
            "seed": self.seed,
            "degree_range": list(self.degree_range),
            "law": self.law,
            "constraint": self.constraint,
            "algebra": self.algebra.tag,
            "root_radius": list(self.root_radius) if self.root_radius else None,
        }

    def trial_seed(self, trial: int) -> int:
        return _split_seed(self.seed, trial)

    def rng(self, trial: int) -> np.random.Generator:
        return np.random.default_rng(self.trial_seed(trial))

    def _draw(self, rng, size):
        if self.law == "gaussian":
            return rng.normal(size=size)
        return rng.uniform(-1.0, 1.0, size=size)

    def _degree(self, rng) -> int:
        lo, hi = self.degree_range
        return int(rng.integers(lo, hi + 1))

    def _leading(self, rng):
        while True:
            a = self._draw(rng, self.algebra.dim)
            if np.linalg.norm(a) > 1e-3:
                return a

    def polynomial(self, rng: np.random.Generator) -> SlicePolynomial:
        n = self._degree(rng)
        alg = self.algebra
        if self.constraint == "none":
            c = self._draw(rng, (n + 1, alg.dim))
            c[n] = self._leading(rng)
            return SlicePolynomial(alg, c)
        if self.constraint == "monomial":
            return SlicePolynomial.monomial(n, alg.element(self._leading(rng)))
        unit = ImaginaryUnit.random(alg, rng)
        if self.constraint == "common-slice":
            u = self._draw(rng, (n + 1, 2))
            u[n] = self._leading(rng)[:2]
            return ComplexSlicePolynomial(unit, tuple(u[:, 0] + 1j * u[:, 1])).to_slice_polynomial()
        if self.constraint in ("zeros-outside", "zeros-inside"):
            lo, hi = self.root_radius or ((1.0, 3.0) if self.constraint == "zeros-outside" else (0.0, 0.9))
            r = rng.uniform(lo, hi, n)
            phi = rng.uniform(0.0, 2 * math.pi, n)
            a = np.polynomial.polynomial.polyfromroots(r * np.exp(1j * phi))
            lead = self._leading(rng)[:2]
            a = a * complex(lead[0], lead[1])
            return ComplexSlicePolynomial(unit, tuple(a)).to_slice_polynomial()
        # real-and-spherical: real linear and sphere factors, then a quaternion scale
        lo, hi = self.root_radius or (1.0, 3.0)
        real = np.array([1.0])
        k = 0
        while k < n:
            rad = rng.uniform(lo, hi)
            if n - k >= 2 and rng.uniform() < 0.5:
                ang = rng.uniform(0.1, math.pi - 0.1)
                x, y = rad * math.cos(ang), rad * math.sin(ang)
                real = np.polynomial.polynomial.polymul(real, [x * x + y * y, -2 * x, 1.0])
                k += 2
            else:
                real = np.polynomial.polynomial.polymul(real, [-rad * rng.choice([-1.0, 1.0]), 1.0])
                k += 1
        return SlicePolynomial.real(real, alg).right_mul(alg.element(self._leading(rng)))

    def zero_sample(self, rng: np.random.Generator, margin: float = 1e-3):
        """Zeros uniform in the disk of radius ``1 - margin`` and an angle."""
        n = max(self._degree(rng), 1)
        r = (1.0 - margin) * np.sqrt(rng.uniform(0.0, 1.0, n))
        z = r * np.exp(1j * rng.uniform(0.0, 2 * math.pi, n))
        return z, float(rng.uniform(0.0, 2 * math.pi))


def _run_trial(gen: PolynomialGenerator, check: str, trial: int, options: dict):
    rng = gen.rng(trial)
    if check == "lax-ratio":
        zeros, theta = gen.zero_sample(rng)
        return lax_ratio_check(zeros, theta), {"zeros": [[z.real, z.imag] for z in zeros], "theta": theta}
    P = gen.polynomial(rng)
    subject = polynomial_to_json(P)
    if check == "bernstein":
        return bernstein_check(P), subject
    if check == "bernstein-min":
        return bernstein_min_check(P), subject
    if check == "bernstein-l2":
        return bernstein_l2_check(P), subject
    if check == "erdos-lax":
        return erdos_lax_subclass_check(P), subject
    if check == "erdos-lax-zeros":
        return erdos_lax_zero_structure_check(P), subject
    if check == "ankeny-growth":
        R = options.get("R") or float(rng.choice([1.5, 2.0, 4.0]))
        return ankeny_growth_check(P, R), subject
    if check == "ankeny-converse":
        P = normalize_at_one(P)
        return ankeny_converse_scenario(P, options.get("delta", 2.0)), polynomial_to_json(P)
    raise DomainError(f"unknown check {check!r}")


@dataclass
class CampaignResult:
    check: str
    config: dict
    config_hash: str
    reports: list
    subjects: list
    summary: dict

    def csv_rows(self) -> list[list[str]]:
        rows = [["check", "degree", "ratio", "holds", "equality_case", "preconditions_met", "seed"]]
        for rep in self.reports:
            rows.append([
                self.check,
                "" if rep.degree is None else str(rep.degree),
                repr(float(rep.ratio)),
                str(rep.holds).lower(),
                str(rep.equality_case).lower(),
                str(rep.preconditions_met).lower(),
                str(rep.seed),
            ])
        return rows


def config_hash(config: dict) -> str:
    return hashlib.sha256(json.dumps(config, sort_keys=True).encode()).hexdigest()[:16]


def fuzz_campaign(gen: PolynomialGenerator, check: str, trials: int, threads: int = 1, options: dict | None = None) -> CampaignResult:
    """Run ``trials`` independent seeded trials of one check; deterministic in (seed, config)."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    if check not in CHECKS:
        raise DomainError(f"unknown check {check!r}")
    options = dict(options or {})
    config = {"check": check, "trials": trials, "generator": gen.config(), "options": options}
    chash = config_hash(config)

    def one(trial: int):
        try:
            rep, subject = _run_trial(gen, check, trial, options)
        except (DomainError, ArithmeticError) as exc:
            rep = VerificationReport(check, math.nan, math.nan, False, preconditions_met=False,
                                     reasons=[f"error: {exc}"], details={"error": str(exc)})
            subject = None
        rep.seed = gen.trial_seed(trial)
        return rep, subject

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(trials)))
    else:
        results = [one(t) for t in range(trials)]
    reports = [r for r, _ in results]
    subjects = [s for _, s in results]
    return CampaignResult(check, config, chash, reports, subjects, _summarize(reports, subjects))


def _summarize(reports, subjects) -> dict:
    ratios = [(float(r.ratio), i) for i, r in enumerate(reports) if math.isfinite(r.ratio)]
    summary = {
        "trials": len(reports),
        "holds": sum(r.holds for r in reports),
        "violations": sum(r.violation for r in reports),
        "errors": sum("error" in r.details for r in reports),
        "equality_cases": sum(r.equality_case for r in reports),
        "precondition_failures": sum(not r.preconditions_met for r in reports),
        "ratio_min": None,
        "ratio_max": None,
        "ratio_mean": None,
        "extremal": None,
    }
    if ratios:
        vals = [v for v, _ in ratios]
        summary["ratio_min"] = min(vals)
        summary["ratio_max"] = max(vals)
        summary["ratio_mean"] = math.fsum(vals) / len(vals)
        top, idx = max(ratios)
        summary["extremal"] = {"trial": idx, "ratio": top, "seed": reports[idx].seed, "subject": subjects[idx]}
    return summary


def generator_from_config(cfg: dict) -> PolynomialGenerator:
    return PolynomialGenerator(
        seed=int(cfg.get("seed", 0)),
        degree_range=tuple(cfg.get("degree_range", (1, 12))),
        law=cfg.get("law", "uniform"),
        constraint=cfg.get("constraint", "none"),
        algebra=algebra_from_tag(cfg.get("algebra", "quaternion")),
        root_radius=tuple(cfg["root_radius"]) if cfg.get("root_radius") else None,
    )

