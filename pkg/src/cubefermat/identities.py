"""Coefficient-level checks of the modular identities behind the criterion.

Every check compares two truncated q-expansions to an explicit depth and
records how that depth relates to the Sturm bound of the space involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .arith import QuadChar
from .modform import (
    HALF_108_CHI3,
    HALF_108_TRIVIAL,
    WEIGHT2_27,
    WEIGHT2_54,
    equal_upto,
    hecke_tp2_half,
    hecke_tp_weight2,
    shimura_lift,
    sturm_bound,
)
from .qseries import PrecisionError, QSeries, build_F, twist, v_operator
from .theta import FORMS, theta_series

HECKE_PRIMES = (5, 7, 11, 13)
LIFT_DEPTH = 40
KERNEL_DEPTH = 30


@dataclass(frozen=True)
class IdentityResult:
    name: str
    status: str  # "pass", "fail" or "skip"
    depth: int
    sturm: int | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def line(self) -> str:
        sturm = "" if self.sturm is None else f", Sturm bound {self.sturm}"
        extra = f"  [{self.detail}]" if self.detail else ""
        return f"{self.status.upper():4s}  {self.name}  (to q^{self.depth}{sturm}){extra}"


@dataclass
class Expansions:
    depth: int
    a: QSeries  # theta_Q1 - theta_Q2
    b: QSeries  # theta_Q3 - theta_Q4
    F: QSeries

    @classmethod
    def compute(cls, depth: int) -> "Expansions":
        th = {k: theta_series(Q, depth) for k, Q in FORMS.items()}
        return cls(depth, th["Q1"] - th["Q2"], th["Q3"] - th["Q4"], build_F(depth))

    def lift_target(self, sign: int, depth: int) -> QSeries:
        """``2F + sign * 4 F|V(2)`` to ``q^depth``."""
        F = self.F.truncate(depth)
        return 2 * F + sign * 4 * v_operator(F, 2)


def _compare(name, lhs: Callable[[], QSeries], rhs: Callable[[QSeries], QSeries], cap=None, sturm=None):
    try:
        left = lhs()
    except PrecisionError as exc:
        return IdentityResult(name, "skip", 0, sturm, str(exc))
    depth = left.trunc if cap is None else min(cap, left.trunc)
    right = rhs(left)
    ok = equal_upto(left, right, depth)
    detail = "" if ok else f"first mismatch at q^{_first_mismatch(left, right, depth)}"
    return IdentityResult(name, "pass" if ok else "fail", depth, sturm, detail)


def _first_mismatch(f: QSeries, g: QSeries, depth: int) -> int:
    return next(n for n in range(depth + 1) if f[n] != g[n])


def eigenform_checks(E: Expansions, primes=HECKE_PRIMES) -> list[IdentityResult]:
    out = []
    lam = E.F
    for label, f, ctx in (("theta_Q1-theta_Q2", E.a, HALF_108_TRIVIAL), ("theta_Q3-theta_Q4", E.b, HALF_108_CHI3)):
        sb = sturm_bound(ctx)
        for p in primes:
            out.append(
                _compare(
                    f"{label} | T_{p * p} = lambda({p}) * ({label})",
                    lambda f=f, ctx=ctx, p=p: hecke_tp2_half(f, ctx, p),
                    lambda left, f=f, p=p: lam[p] * f.truncate(left.trunc),
                    sturm=sb,
                )
            )
    for p in (2, 5, 7, 11, 13):
        out.append(
            _compare(
                f"F | T_{p} = lambda({p}) * F",
                lambda p=p: hecke_tp_weight2(E.F, WEIGHT2_27, p),
                lambda left, p=p: lam[p] * E.F.truncate(left.trunc),
                sturm=sturm_bound(WEIGHT2_27),
            )
        )
    return out


def lift_checks(E: Expansions) -> list[IdentityResult]:
    out = []
    for label, f, ctx, sign in (
        ("theta_Q1-theta_Q2", E.a, HALF_108_TRIVIAL, +1),
        ("theta_Q3-theta_Q4", E.b, HALF_108_CHI3, -1),
    ):
        target = f"2F {'+' if sign > 0 else '-'} 4F|V(2)"
        out.append(
            _compare(
                f"S_1({label}) = {target}",
                lambda f=f, ctx=ctx: shimura_lift(f, 1, ctx),
                lambda left, sign=sign: E.lift_target(sign, left.trunc),
                cap=LIFT_DEPTH,
                sturm=sturm_bound(WEIGHT2_54),
            )
        )
        for t in (2, 3):
            out.append(
                _compare(
                    f"S_{t}({label}) = 0",
                    lambda f=f, ctx=ctx, t=t: shimura_lift(f, t, ctx),
                    lambda left: QSeries.zero(left.trunc),
                    cap=KERNEL_DEPTH,
                    sturm=sturm_bound(WEIGHT2_54),
                )
            )
    return out


def _commute_compare(name, left_fn, right_fn):
    # both sides shrink differently; compare on the common range
    try:
        left, right = left_fn(), right_fn()
    except PrecisionError as exc:
        return IdentityResult(name, "skip", 0, None, str(exc))
    depth = min(left.trunc, right.trunc)
    ok = equal_upto(left, right, depth)
    return IdentityResult(name, "pass" if ok else "fail", depth)


def commutation_checks(E: Expansions, primes=HECKE_PRIMES, ts=(1, 2, 3)) -> list[IdentityResult]:
    out = []
    for label, f, ctx in (("theta_Q1-theta_Q2", E.a, HALF_108_TRIVIAL), ("theta_Q3-theta_Q4", E.b, HALF_108_CHI3)):
        for p in primes:
            for t in ts:
                out.append(
                    _commute_compare(
                        f"S_{t}(({label}) | T_{p * p}) = S_{t}({label}) | T_{p}",
                        lambda f=f, ctx=ctx, p=p, t=t: shimura_lift(hecke_tp2_half(f, ctx, p), t, ctx),
                        lambda f=f, ctx=ctx, p=p, t=t: hecke_tp_weight2(shimura_lift(f, t, ctx), WEIGHT2_54, p),
                    )
                )
    return out


def twist_and_vanishing_checks(E: Expansions) -> list[IdentityResult]:
    psi = QuadChar(-3)
    out = [
        _compare("(theta_Q3-theta_Q4) twisted by psi_3 = theta_Q3-theta_Q4", lambda: twist(E.b, psi), lambda left: E.b),
        _compare("F twisted by chi_-3 = F", lambda: twist(E.F, psi), lambda left: E.F),
    ]
    N = E.depth
    bad_a = [n for n in range(2, N + 1, 3) if E.a[n]]
    bad_b = [n for n in range(2, N + 1, 3) if E.b[n]]
    for name, bad in (("a(n) = 0 for n = 2 mod 3", bad_a), ("b(n) = 0 for n = 2 mod 3", bad_b)):
        out.append(IdentityResult(name, "fail" if bad else "pass", N, None, f"n = {bad[0]}" if bad else ""))
    return out


def run_suite(depth: int = 1000) -> list[IdentityResult]:
    E = Expansions.compute(depth)
    results = eigenform_checks(E)
    results += lift_checks(E)
    results += commutation_checks(E)
    results += twist_and_vanishing_checks(E)
    return results
