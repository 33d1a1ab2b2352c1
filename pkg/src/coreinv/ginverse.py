"""Construction and verification of generalized inverses over exact *-fields.

Six inverse kinds are supported: group, {1,3e}, {1,4f}, weighted Moore-Penrose,
weighted core (e-core) and weighted dual core (f-dual core). Every constructor
solves the defining membership equations for an explicit witness, re-verifies
the full defining-equation set of its kind on the result, and returns an
InverseCertificate carrying both. Non-existence is a typed negative result
(NotInvertible) naming the membership that failed, never an exception.

Equation labels follow the standard numbering for weighted inverses:

    (1)  axa = a          (2)  xax = x         (5)  ax = xa
    (3e) (eax)* = eax     (4f) (fxa)* = fxa
    (6)  xa^2 = a         (7)  ax^2 = x
    (8)  a^2x = a         (9)  x^2a = x
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from enum import Enum

from .matrix import Mat, Weight, mat_from_json, mat_to_json, solve_left, solve_right

MAX_POWER = 8


class GInverseKind(str, Enum):
    GROUP = "group"
    ONE_THREE_E = "13e"
    ONE_FOUR_F = "14f"
    WEIGHTED_MP = "wmp"
    E_CORE = "ecore"
    F_DUAL_CORE = "fdual"


@dataclass(frozen=True)
class InverseCertificate:
    """A verified inverse plus the membership witnesses that produced it."""

    kind: GInverseKind
    value: Mat
    witnesses: dict = dataclass_field(default_factory=dict)
    n: int | None = None


@dataclass(frozen=True)
class NotInvertible:
    """A negative result: which kind failed, on which requirement, and why."""

    kind: str
    failed: str
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class VerifyReport:
    """Per-equation outcome of checking a candidate against a kind's equations."""

    kind: GInverseKind
    results: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.results)

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(label for label, ok in self.results if not ok)

    def __bool__(self):
        return self.ok


EQUATIONS: dict[GInverseKind, tuple[str, ...]] = {
    GInverseKind.GROUP: ("(1)", "(2)", "(5)"),
    GInverseKind.ONE_THREE_E: ("(1)", "(3e)"),
    GInverseKind.ONE_FOUR_F: ("(1)", "(4f)"),
    GInverseKind.WEIGHTED_MP: ("(1)", "(2)", "(3e)", "(4f)"),
    GInverseKind.E_CORE: ("(1)", "(2)", "(3e)", "(6)", "(7)"),
    GInverseKind.F_DUAL_CORE: ("(1)", "(2)", "(4f)", "(8)", "(9)"),
}

_NEEDS_E = {GInverseKind.ONE_THREE_E, GInverseKind.WEIGHTED_MP, GInverseKind.E_CORE}
_NEEDS_F = {GInverseKind.ONE_FOUR_F, GInverseKind.WEIGHTED_MP, GInverseKind.F_DUAL_CORE}


def _evaluate(label: str, a: Mat, x: Mat, e: Weight | None, f: Weight | None) -> bool:
    if label == "(1)":
        return a * x * a == a
    if label == "(2)":
        return x * a * x == x
    if label == "(3e)":
        return (e.value * a * x).is_hermitian()
    if label == "(4f)":
        return (f.value * x * a).is_hermitian()
    if label == "(5)":
        return a * x == x * a
    if label == "(6)":
        return x * a * a == a
    if label == "(7)":
        return a * x * x == x
    if label == "(8)":
        return a * a * x == a
    if label == "(9)":
        return x * x * a == x
    raise ValueError(f"unknown equation label {label!r}")


def verify(
    kind: GInverseKind,
    a: Mat,
    x: Mat,
    e: Weight | None = None,
    f: Weight | None = None,
) -> VerifyReport:
    """Evaluate every defining equation of `kind` for the candidate x exactly."""
    kind = GInverseKind(kind)
    if kind in _NEEDS_E and e is None:
        raise ValueError(f"kind {kind.value} requires the weight e")
    if kind in _NEEDS_F and f is None:
        raise ValueError(f"kind {kind.value} requires the weight f")
    a._compat(x)
    results = tuple(
        (label, _evaluate(label, a, x, e, f)) for label in EQUATIONS[kind]
    )
    return VerifyReport(kind, results)


def _certified(kind, a, value, witnesses, e=None, f=None, n=None) -> InverseCertificate:
    report = verify(kind, a, value, e=e, f=f)
    if not report.ok:
        raise RuntimeError(
            f"internal error: constructed {kind.value} inverse fails {report.failed}"
        )
    return InverseCertificate(kind, value, witnesses, n)


def group_inverse(a: Mat) -> InverseCertificate | NotInvertible:
    """The group inverse, from witnesses of a = a^2 x and a = y a^2."""
    a2 = a * a
    right = solve_right(a2, a)
    if not right.consistent:
        return NotInvertible(GInverseKind.GROUP.value, "a^2R", "a not in a^2 R")
    left = solve_left(a2, a)
    if not left.consistent:
        return NotInvertible(GInverseKind.GROUP.value, "Ra^2", "a not in R a^2")
    x, y = right.solution, left.solution
    value = y * a * x
    return _certified(GInverseKind.GROUP, a, value, {"x": x, "y": y})


def inv_13e(a: Mat, e: Weight) -> InverseCertificate | NotInvertible:
    """A {1,3e}-inverse x* e obtained from a witness of a = x (a* e a)."""
    gram = a.star() * e.value * a
    w = solve_left(gram, a)
    if not w.consistent:
        return NotInvertible(GInverseKind.ONE_THREE_E.value, "Ra*ea", "a not in R a* e a")
    x = w.solution
    value = x.star() * e.value
    return _certified(GInverseKind.ONE_THREE_E, a, value, {"x": x}, e=e)


def inv_14f(a: Mat, f: Weight) -> InverseCertificate | NotInvertible:
    """A {1,4f}-inverse f^{-1} y* obtained from a witness of a = (a f^{-1} a*) y."""
    gram = a * f.inv * a.star()
    w = solve_right(gram, a)
    if not w.consistent:
        return NotInvertible(
            GInverseKind.ONE_FOUR_F.value, "af^-1a*R", "a not in a f^-1 a* R"
        )
    y = w.solution
    value = f.inv * y.star()
    return _certified(GInverseKind.ONE_FOUR_F, a, value, {"y": y}, f=f)


def e_core(a: Mat, e: Weight) -> InverseCertificate | NotInvertible:
    """The weighted core inverse a^# a a^{(1,3e)}; exists iff both factors do."""
    g = group_inverse(a)
    if isinstance(g, NotInvertible):
        return NotInvertible(GInverseKind.E_CORE.value, "group", f"group prerequisite failed: {g.reason}")
    i13 = inv_13e(a, e)
    if isinstance(i13, NotInvertible):
        return NotInvertible(GInverseKind.E_CORE.value, "13e", f"{{1,3e}} prerequisite failed: {i13.reason}")
    value = g.value * a * i13.value
    witnesses = {"group_inverse": g.value, "inv_13e": i13.value}
    return _certified(GInverseKind.E_CORE, a, value, witnesses, e=e)


def f_dual_core(a: Mat, f: Weight) -> InverseCertificate | NotInvertible:
    """The weighted dual core inverse a^{(1,4f)} a a^#."""
    g = group_inverse(a)
    if isinstance(g, NotInvertible):
        return NotInvertible(
            GInverseKind.F_DUAL_CORE.value, "group", f"group prerequisite failed: {g.reason}"
        )
    i14 = inv_14f(a, f)
    if isinstance(i14, NotInvertible):
        return NotInvertible(
            GInverseKind.F_DUAL_CORE.value, "14f", f"{{1,4f}} prerequisite failed: {i14.reason}"
        )
    value = i14.value * a * g.value
    witnesses = {"group_inverse": g.value, "inv_14f": i14.value}
    return _certified(GInverseKind.F_DUAL_CORE, a, value, witnesses, f=f)


def _check_power(n: int):
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"n must be an int, got {n!r}")
    if n < 2 or n > MAX_POWER:
        raise ValueError(f"power representation requires 2 <= n <= {MAX_POWER}, got {n}")


def e_core_via_power(a: Mat, e: Weight, n: int) -> InverseCertificate | NotInvertible:
    """The weighted core inverse through its power representation a^{n-1} s* e.

    Requires both memberships a in R (a*)^n e a (yielding the witness s) and
    a in R a^n; either failing is a certified negative.
    """
    _check_power(n)
    gram = a.star().power(n) * e.value * a
    sw = solve_left(gram, a)
    if not sw.consistent:
        return NotInvertible(
            GInverseKind.E_CORE.value, "R(a*)^nea", f"a not in R (a*)^{n} e a"
        )
    rw = solve_left(a.power(n), a)
    if not rw.consistent:
        return NotInvertible(GInverseKind.E_CORE.value, "Ra^n", f"a not in R a^{n}")
    s = sw.solution
    value = a.power(n - 1) * s.star() * e.value
    return _certified(GInverseKind.E_CORE, a, value, {"s": s}, e=e, n=n)


def f_dual_core_via_power(a: Mat, f: Weight, n: int) -> InverseCertificate | NotInvertible:
    """The weighted dual core inverse through f^{-1} t* a^{n-1}."""
    _check_power(n)
    gram = a * f.inv * a.star().power(n)
    tw = solve_right(gram, a)
    if not tw.consistent:
        return NotInvertible(
            GInverseKind.F_DUAL_CORE.value, "af^-1(a*)^nR", f"a not in a f^-1 (a*)^{n} R"
        )
    rw = solve_right(a.power(n), a)
    if not rw.consistent:
        return NotInvertible(GInverseKind.F_DUAL_CORE.value, "a^nR", f"a not in a^{n} R")
    t = tw.solution
    value = f.inv * t.star() * a.power(n - 1)
    return _certified(GInverseKind.F_DUAL_CORE, a, value, {"t": t}, f=f, n=n)


def weighted_mp(a: Mat, e: Weight, f: Weight) -> InverseCertificate | NotInvertible:
    """The weighted Moore-Penrose inverse via the a^{(1,4f)} a a^{(1,3e)} candidate."""
    i13 = inv_13e(a, e)
    if isinstance(i13, NotInvertible):
        return NotInvertible(
            GInverseKind.WEIGHTED_MP.value, "13e", f"{{1,3e}} prerequisite failed: {i13.reason}"
        )
    i14 = inv_14f(a, f)
    if isinstance(i14, NotInvertible):
        return NotInvertible(
            GInverseKind.WEIGHTED_MP.value, "14f", f"{{1,4f}} prerequisite failed: {i14.reason}"
        )
    value = i14.value * a * i13.value
    report = verify(GInverseKind.WEIGHTED_MP, a, value, e=e, f=f)
    if not report.ok:
        return NotInvertible(
            GInverseKind.WEIGHTED_MP.value,
            "verification",
            f"candidate failed equations {report.failed}",
        )
    witnesses = {"inv_13e": i13.value, "inv_14f": i14.value}
    return InverseCertificate(GInverseKind.WEIGHTED_MP, value, witnesses)


def lemma_r_core_check(a: Mat, e: Weight, n: int) -> tuple[bool, bool]:
    """Two equivalent memberships, decided independently by exact solves.

    Returns (a in R a* e a and a in a^n R, a in R (a*)^n e a); the two booleans
    agree for every input, which the test suite asserts.
    """
    _check_power(n)
    first = (
        solve_left(a.star() * e.value * a, a).consistent
        and solve_right(a.power(n), a).consistent
    )
    second = solve_left(a.star().power(n) * e.value * a, a).consistent
    return first, second


def certificate_to_json(cert: InverseCertificate) -> dict:
    return {
        "kind": cert.kind.value,
        "value": mat_to_json(cert.value),
        "witnesses": {name: mat_to_json(m) for name, m in cert.witnesses.items()},
        "n": cert.n,
        "verified": True,
    }


def certificate_from_json(obj) -> InverseCertificate:
    if not isinstance(obj, dict):
        raise ValueError("certificate must be a JSON object")
    try:
        kind = GInverseKind(obj["kind"])
        value = mat_from_json(obj["value"])
        witnesses = {
            str(name): mat_from_json(m) for name, m in obj.get("witnesses", {}).items()
        }
    except KeyError as exc:
        raise ValueError(f"certificate missing field {exc}") from exc
    n = obj.get("n")
    if n is not None and (not isinstance(n, int) or isinstance(n, bool)):
        raise ValueError(f"certificate n must be an int or null, got {n!r}")
    return InverseCertificate(kind, value, witnesses, n)


def not_invertible_to_json(neg: NotInvertible) -> dict:
    return {
        "invertible": False,
        "kind": neg.kind,
        "failed": neg.failed,
        "reason": neg.reason,
    }
