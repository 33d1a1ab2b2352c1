"""Idempotent/unit characterizations of weighted core and dual core inverses.

A weighted core inverse exists exactly when a certain annihilating idempotent
turns a^n into a unit. This module goes both ways: `decompose_*` extracts the
idempotent/unit certificate from a computed inverse, and `*_from_*` replays a
certificate back into the inverse through closed formulas, validating every
certificate precondition first and failing loudly on violations. It also
carries the Gram-matrix formulas (exact analogues valid in any Dedekind-finite
ring, hence in every matrix ring here), weighted-EP detection, and an audit of
the uniqueness claims for the idempotent certificates.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass
from enum import Enum

from .ginverse import (
    GInverseKind,
    InverseCertificate,
    NotInvertible,
    e_core,
    f_dual_core,
    group_inverse,
    verify,
    weighted_mp,
)
from .matrix import (
    Mat,
    Weight,
    _rand_mat,
    left_annihilator_basis,
    mat_from_json,
    mat_to_json,
)

MAX_UNIT_POWER = 8


class Flavor(str, Enum):
    IDEM_P = "p"
    ELEM_S = "s"
    IDEM_Q = "q"
    ELEM_T = "t"


class Side(str, Enum):
    CORE = "core"
    DUAL = "dual"


class InvalidCertificateError(ValueError):
    """A decomposition certificate violates one of its stated preconditions."""


@dataclass(frozen=True)
class Decomposition:
    """An element/unit pair realizing one clause of the characterizations."""

    flavor: Flavor
    side: Side
    element: Mat
    unit: Mat
    n: int


@dataclass(frozen=True)
class EPReport:
    """Outcome of the weighted-EP test, with both inverses as evidence."""

    weighted_ep: bool
    e_core: InverseCertificate | NotInvertible
    f_dual_core: InverseCertificate | NotInvertible
    p: Mat | None

    def __bool__(self):
        return self.weighted_ep


def _check_n(n: int):
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"n must be an int, got {n!r}")
    if n < 1 or n > MAX_UNIT_POWER:
        raise ValueError(f"n must satisfy 1 <= n <= {MAX_UNIT_POWER}, got {n}")


def unit_for(a: Mat, element: Mat, n: int, flavor: Flavor, side: Side) -> Mat:
    """The unit candidate the flavor's clause pairs with the element."""
    ident = Mat.identity(a.field, a.n)
    an = a.power(n)
    if flavor in (Flavor.IDEM_P, Flavor.ELEM_S):
        return an + element
    if side is Side.CORE:
        return an * (ident - element) + element
    return (ident - element) * an + element


def _require(ok: bool, message: str):
    if not ok:
        raise InvalidCertificateError(message)


def _validate_element(
    a: Mat, w: Weight, element: Mat, n: int, flavor: Flavor, side: Side, unit: Mat | None
) -> Mat:
    """Check the clause's preconditions; returns the inverse of the unit."""
    _check_n(n)
    a._compat(element)
    name = flavor.value
    if flavor in (Flavor.IDEM_P, Flavor.IDEM_Q):
        _require(element.is_idempotent(), f"{name} must be idempotent")
    _require(
        (w.value * element).is_hermitian(),
        f"weighted element must be Hermitian: (w {name})* != w {name}",
    )
    if side is Side.CORE:
        _require((element * a).is_zero(), f"{name} a != 0")
    else:
        _require((a * element).is_zero(), f"a {name} != 0")
    expected = unit_for(a, element, n, flavor, side)
    if unit is not None:
        _require(unit == expected, "unit does not match its defining formula")
    unit_inv = expected.inverse()
    _require(unit_inv is not None, "unit is not invertible")
    return unit_inv


def _reconstructed(side: Side, a: Mat, w: Weight, value: Mat) -> Mat:
    kind = GInverseKind.E_CORE if side is Side.CORE else GInverseKind.F_DUAL_CORE
    report = (
        verify(kind, a, value, e=w) if side is Side.CORE else verify(kind, a, value, f=w)
    )
    if not report.ok:
        raise RuntimeError(
            f"internal error: reconstructed {kind.value} inverse fails {report.failed}"
        )
    return value


def decompose_idempotent(a: Mat, e: Weight, n: int = 1) -> Decomposition | NotInvertible:
    """The canonical idempotent p = 1 - a a^{e-core} with its unit a^n + p."""
    _check_n(n)
    cert = e_core(a, e)
    if isinstance(cert, NotInvertible):
        return cert
    ident = Mat.identity(a.field, a.n)
    p = ident - a * cert.value
    unit = a.power(n) + p
    _validate_element(a, e, p, n, Flavor.IDEM_P, Side.CORE, unit)
    return Decomposition(Flavor.IDEM_P, Side.CORE, p, unit, n)


def decompose_q(a: Mat, e: Weight, n: int = 1) -> Decomposition | NotInvertible:
    """The same idempotent paired with the unit a^n (1 - q) + q."""
    _check_n(n)
    cert = e_core(a, e)
    if isinstance(cert, NotInvertible):
        return cert
    ident = Mat.identity(a.field, a.n)
    q = ident - a * cert.value
    unit = a.power(n) * (ident - q) + q
    _validate_element(a, e, q, n, Flavor.IDEM_Q, Side.CORE, unit)
    return Decomposition(Flavor.IDEM_Q, Side.CORE, q, unit, n)


def dual_decompose(
    a: Mat, f: Weight, n: int = 1, flavor: Flavor = Flavor.IDEM_P
) -> Decomposition | NotInvertible:
    """Dual-side idempotent p = 1 - a_{f-dual} a with the flavor's unit."""
    _check_n(n)
    if flavor not in (Flavor.IDEM_P, Flavor.IDEM_Q):
        raise ValueError("dual_decompose produces idempotent flavors only")
    cert = f_dual_core(a, f)
    if isinstance(cert, NotInvertible):
        return cert
    ident = Mat.identity(a.field, a.n)
    p = ident - cert.value * a
    unit = unit_for(a, p, n, flavor, Side.DUAL)
    _validate_element(a, f, p, n, flavor, Side.DUAL, unit)
    return Decomposition(flavor, Side.DUAL, p, unit, n)


def core_from_pu(a: Mat, e: Weight, d: Decomposition) -> Mat:
    """Rebuild the weighted core inverse from an idempotent/unit certificate."""
    if d.flavor is not Flavor.IDEM_P or d.side is not Side.CORE:
        raise InvalidCertificateError("expected a core-side idempotent-p certificate")
    u_inv = _validate_element(a, e, d.element, d.n, d.flavor, d.side, d.unit)
    ident = Mat.identity(a.field, a.n)
    if d.n == 1:
        value = u_inv * (ident - d.element)
    else:
        value = a.power(d.n - 1) * u_inv
    return _reconstructed(Side.CORE, a, e, value)


def core_from_s(a: Mat, e: Weight, s: Mat, n: int = 1) -> Mat:
    """Rebuild the weighted core inverse from an element witness (not necessarily idempotent)."""
    v_inv = _validate_element(a, e, s, n, Flavor.ELEM_S, Side.CORE, None)
    if n == 1:
        value = v_inv * a * v_inv
    else:
        value = a.power(n - 1) * v_inv
    return _reconstructed(Side.CORE, a, e, value)


def core_from_qw(a: Mat, e: Weight, d: Decomposition) -> Mat:
    if d.flavor is not Flavor.IDEM_Q or d.side is not Side.CORE:
        raise InvalidCertificateError("expected a core-side idempotent-q certificate")
    w_inv = _validate_element(a, e, d.element, d.n, d.flavor, d.side, d.unit)
    ident = Mat.identity(a.field, a.n)
    if d.n == 1:
        value = (ident - d.element) * w_inv
    else:
        value = a.power(d.n - 1) * (ident - d.element) * w_inv
    return _reconstructed(Side.CORE, a, e, value)


def core_from_t(a: Mat, e: Weight, t: Mat, n: int = 1) -> Mat:
    z_inv = _validate_element(a, e, t, n, Flavor.ELEM_T, Side.CORE, None)
    ident = Mat.identity(a.field, a.n)
    if n == 1:
        value = z_inv * a * (ident - t) * z_inv
    else:
        value = a.power(n - 1) * (ident - t) * z_inv
    return _reconstructed(Side.CORE, a, e, value)


def dual_from_pu(a: Mat, f: Weight, d: Decomposition) -> Mat:
    if d.flavor is not Flavor.IDEM_P or d.side is not Side.DUAL:
        raise InvalidCertificateError("expected a dual-side idempotent-p certificate")
    u_inv = _validate_element(a, f, d.element, d.n, d.flavor, d.side, d.unit)
    ident = Mat.identity(a.field, a.n)
    if d.n == 1:
        value = (ident - d.element) * u_inv
    else:
        value = u_inv * a.power(d.n - 1)
    return _reconstructed(Side.DUAL, a, f, value)


def dual_from_s(a: Mat, f: Weight, s: Mat, n: int = 1) -> Mat:
    v_inv = _validate_element(a, f, s, n, Flavor.ELEM_S, Side.DUAL, None)
    if n == 1:
        value = v_inv * a * v_inv
    else:
        value = v_inv * a.power(n - 1)
    return _reconstructed(Side.DUAL, a, f, value)


def dual_from_qw(a: Mat, f: Weight, d: Decomposition) -> Mat:
    if d.flavor is not Flavor.IDEM_Q or d.side is not Side.DUAL:
        raise InvalidCertificateError("expected a dual-side idempotent-q certificate")
    w_inv = _validate_element(a, f, d.element, d.n, d.flavor, d.side, d.unit)
    ident = Mat.identity(a.field, a.n)
    if d.n == 1:
        value = w_inv * (ident - d.element)
    else:
        value = (ident - d.element) * a.power(d.n - 1) * w_inv
    return _reconstructed(Side.DUAL, a, f, value)


def dual_from_t(a: Mat, f: Weight, t: Mat, n: int = 1) -> Mat:
    # n >= 2 uses z^{-1} (1 - t) a^{n-1}: the unit must sit on the left for
    # general (non-idempotent) t, as the star-mirror of the core-side formula;
    # the opposite ordering only holds for the canonical idempotent.
    z_inv = _validate_element(a, f, t, n, Flavor.ELEM_T, Side.DUAL, None)
    ident = Mat.identity(a.field, a.n)
    if n == 1:
        value = z_inv * (ident - t) * a * z_inv
    else:
        value = z_inv * (ident - t) * a.power(n - 1)
    return _reconstructed(Side.DUAL, a, f, value)


def gram_formula(a: Mat, e: Weight) -> Mat | NotInvertible:
    """The weighted core inverse as (a* e a + e p)^{-1} a* e.

    Valid because matrix rings are Dedekind-finite; the Gram matrix is
    guaranteed invertible whenever the core inverse exists.
    """
    cert = e_core(a, e)
    if isinstance(cert, NotInvertible):
        return cert
    ident = Mat.identity(a.field, a.n)
    p = ident - a * cert.value
    gram = a.star() * e.value * a + e.value * p
    gram_inv = gram.inverse()
    if gram_inv is None:
        raise RuntimeError("internal error: Gram matrix must be invertible here")
    value = gram_inv * a.star() * e.value
    if value != cert.value:
        raise RuntimeError("internal error: Gram formula disagrees with direct construction")
    return value


def dual_gram_formula(a: Mat, f: Weight) -> Mat | NotInvertible:
    """The weighted dual core inverse as f^{-1} a* (a f^{-1} a* + q f^{-1})^{-1}."""
    cert = f_dual_core(a, f)
    if isinstance(cert, NotInvertible):
        return cert
    ident = Mat.identity(a.field, a.n)
    q = ident - cert.value * a
    gram = a * f.inv * a.star() + q * f.inv
    gram_inv = gram.inverse()
    if gram_inv is None:
        raise RuntimeError("internal error: dual Gram matrix must be invertible here")
    value = f.inv * a.star() * gram_inv
    if value != cert.value:
        raise RuntimeError("internal error: dual Gram formula disagrees with direct construction")
    return value


def gram_converse_check(a: Mat, e: Weight, p: Mat) -> bool:
    """Whether a* e a + e p is invertible for a valid annihilating idempotent p.

    A positive answer certifies core invertibility (Dedekind-finiteness of the
    matrix ring), and the recovered inverse is checked against the direct one.
    """
    _require(p.is_idempotent(), "p must be idempotent")
    _require((e.value * p).is_hermitian(), "(e p)* != e p")
    _require((p * a).is_zero(), "p a != 0")
    gram = a.star() * e.value * a + e.value * p
    gram_inv = gram.inverse()
    if gram_inv is None:
        return False
    recovered = gram_inv * a.star() * e.value
    cert = e_core(a, e)
    if isinstance(cert, NotInvertible) or cert.value != recovered:
        raise RuntimeError(
            "internal error: invertible Gram matrix must certify the core inverse"
        )
    return True


def is_weighted_ep(a: Mat, e: Weight, f: Weight) -> EPReport:
    """Weighted-EP test: both weighted core inverses exist and coincide."""
    ec = e_core(a, e)
    fc = f_dual_core(a, f)
    ok = (
        not isinstance(ec, NotInvertible)
        and not isinstance(fc, NotInvertible)
        and ec.value == fc.value
    )
    p = None
    if ok:
        g = group_inverse(a)
        if isinstance(g, NotInvertible):
            raise RuntimeError("internal error: EP element must be group invertible")
        ident = Mat.identity(a.field, a.n)
        p = ident - g.value * a
        if p != ident - a * g.value:
            raise RuntimeError("internal error: group inverse must commute with a")
    return EPReport(ok, ec, fc, p)


def ep_decompose(a: Mat, e: Weight, f: Weight, n: int = 1) -> Decomposition | NotInvertible:
    """The idempotent certificate p = 1 - a^# a of a weighted-EP element.

    The returned core-side certificate's element additionally satisfies the
    dual-side conditions: (f p)* = f p and a p = 0.
    """
    _check_n(n)
    report = is_weighted_ep(a, e, f)
    if not report.weighted_ep:
        return NotInvertible("ep", "ep", "a is not weighted-EP for these weights")
    p = report.p
    unit = a.power(n) + p
    for w, tag in ((e, "e"), (f, "f")):
        if not (w.value * p).is_hermitian():
            raise RuntimeError(f"internal error: ({tag} p)* != {tag} p for an EP element")
    if not (a * p).is_zero() or not (p * a).is_zero():
        raise RuntimeError("internal error: EP idempotent must annihilate a on both sides")
    if unit.inverse() is None:
        raise RuntimeError("internal error: a^n + p must be invertible for an EP element")
    return Decomposition(Flavor.IDEM_P, Side.CORE, p, unit, n)


def ep_from_s(a: Mat, e: Weight, f: Weight, s: Mat, n: int = 1) -> Mat:
    """Certify weighted-EP from a two-sided element witness; returns the common inverse.

    Requires (e s)* = e s, (f s)* = f s, a s = s a = 0 and a^n + s invertible.
    The core and dual reconstructions then coincide because a commutes with
    the unit, and the equality is checked exactly.
    """
    _check_n(n)
    _require((e.value * s).is_hermitian(), "(e s)* != e s")
    _require((f.value * s).is_hermitian(), "(f s)* != f s")
    _require((s * a).is_zero(), "s a != 0")
    _require((a * s).is_zero(), "a s != 0")
    core_value = core_from_s(a, e, s, n)
    dual_value = dual_from_s(a, f, s, n)
    if core_value != dual_value:
        raise RuntimeError("internal error: two-sided witness must give one inverse")
    return core_value


def uniqueness_audit(a: Mat, e: Weight, n: int, flavor: Flavor) -> bool:
    """Audit the uniqueness of the idempotent certificate.

    On prime-field backends this enumerates every idempotent satisfying the
    clause and demands exactly one. On exact rational backends it verifies the
    annihilator identity behind the uniqueness argument: left annihilators of
    a^n and of 1 - p coincide.
    """
    _check_n(n)
    if flavor not in (Flavor.IDEM_P, Flavor.IDEM_Q):
        raise ValueError("uniqueness_audit applies to idempotent flavors only")
    if a.field.tag == "Fp":
        from .oracle import brute_idempotent_certificates

        return len(brute_idempotent_certificates(a, e, n, flavor)) == 1
    d = decompose_idempotent(a, e, n) if flavor is Flavor.IDEM_P else decompose_q(a, e, n)
    if isinstance(d, NotInvertible):
        raise ValueError("uniqueness_audit requires a weighted-core-invertible matrix")
    ident = Mat.identity(a.field, a.n)
    an = a.power(n)
    complement = ident - d.element
    zero_row = (a.field.zero(),) * a.n
    for vec in left_annihilator_basis(an):
        image = tuple(
            sum((vec[k] * complement.rows[k][j] for k in range(a.n)), a.field.zero())
            for j in range(a.n)
        )
        if image != zero_row:
            return False
    for vec in left_annihilator_basis(complement):
        image = tuple(
            sum((vec[k] * an.rows[k][j] for k in range(a.n)), a.field.zero())
            for j in range(a.n)
        )
        if image != zero_row:
            return False
    return True


def random_annihilator_witness(
    a: Mat,
    w: Weight,
    n: int,
    seed: int,
    side: Side = Side.CORE,
    flavor: Flavor = Flavor.ELEM_S,
    max_tries: int = 32,
) -> Mat:
    """A random element witness for the element-flavored clauses.

    Core side: (w s)* = w s and s a = 0; dual side: (w s)* = w s and a s = 0.
    Sampled as a weight-symmetrized compression h -> p h p into the range of
    the canonical annihilating idempotent, retried until the flavor's unit is
    invertible. Typically not idempotent.
    """
    _check_n(n)
    if flavor not in (Flavor.ELEM_S, Flavor.ELEM_T):
        raise ValueError("witness generation applies to element flavors only")
    if side is Side.CORE:
        cert = e_core(a, w)
    else:
        cert = f_dual_core(a, w)
    if isinstance(cert, NotInvertible):
        raise ValueError("witness generation requires an invertible core instance")
    ident = Mat.identity(a.field, a.n)
    p = ident - a * cert.value if side is Side.CORE else ident - cert.value * a
    rng = _random.Random(seed)
    for _ in range(max_tries):
        h = _rand_mat(rng, a.n, a.field)
        m = w.value * p * h * p
        s = w.inv * (m + m.star())
        unit = unit_for(a, s, n, flavor, side)
        if unit.is_invertible():
            return s
    raise RuntimeError(f"witness generation failed after {max_tries} attempts")


def decomposition_to_json(d: Decomposition) -> dict:
    return {
        "flavor": d.flavor.value,
        "side": d.side.value,
        "n": d.n,
        "element": mat_to_json(d.element),
        "unit": mat_to_json(d.unit),
    }


def decomposition_from_json(obj) -> Decomposition:
    if not isinstance(obj, dict):
        raise ValueError("decomposition must be a JSON object")
    try:
        flavor = Flavor(obj["flavor"])
        side = Side(obj["side"])
        n = obj["n"]
        element = mat_from_json(obj["element"])
        unit = mat_from_json(obj["unit"])
    except KeyError as exc:
        raise ValueError(f"decomposition missing field {exc}") from exc
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"decomposition n must be an int, got {n!r}")
    return Decomposition(flavor, side, element, unit, n)
