"""Exact scalar backends with involution: rationals, Gaussian rationals, prime fields.

Each backend is a field equipped with a conjugation map: the identity on the
rationals and on prime fields, complex conjugation on Gaussian rationals.
Elements canonicalize on construction, so equal values have identical
representations and every equality test downstream is structural.
Floats are rejected everywhere; there is no approximate mode.
"""

from __future__ import annotations

from fractions import Fraction

SUPPORTED_PRIMES = (2, 3, 5)


class BackendMismatchError(TypeError):
    """Operands belong to different scalar backends."""


def _reject_float(value):
    if isinstance(value, float):
        raise TypeError(
            "floats are not exact scalars; use int, Fraction or 'n/d' strings"
        )
    return value


class GaussianRational:
    """A Gaussian rational re + im*i; conjugation negates the imaginary part."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(_reject_float(re))
        self.im = Fraction(_reject_float(im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(self.re / norm, -self.im / norm)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        # agree with Fraction/int hashing on the real axis
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if self.im == 1:
            im = "i"
        elif self.im == -1:
            im = "-i"
        else:
            im = f"{self.im}i"
        if not self.re:
            return im
        sign = "+" if self.im > 0 else ""
        return f"{self.re}{sign}{im}"


class PrimeFieldElement:
    """A residue modulo a small prime; conjugation is the identity map."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        if p not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported prime modulus {p}; supported: {SUPPORTED_PRIMES}")
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"prime-field value must be an int, got {type(value).__name__}")
        self.value = value % p
        self.p = p

    def conjugate(self) -> "PrimeFieldElement":
        return self

    def inverse(self) -> "PrimeFieldElement":
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in F{self.p}")
        return PrimeFieldElement(pow(self.value, self.p - 2, self.p), self.p)

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise BackendMismatchError(f"mixed moduli: F{self.p} vs F{other.p}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return PrimeFieldElement(other, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"PrimeFieldElement({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class ScalarField:
    """A scalar backend: element constructors, conjugation, codecs, sampling."""

    tag: str

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, k: int):
        raise NotImplementedError

    def coerce(self, value):
        """Convert value into this backend, rejecting other backends and floats."""
        raise NotImplementedError

    def conj(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def parse(self, obj):
        """Decode a JSON-level entry into a scalar."""
        raise NotImplementedError

    def encode(self, x):
        """Encode a scalar as its canonical JSON-level entry."""
        raise NotImplementedError

    def random(self, rng):
        raise NotImplementedError

    def __repr__(self):
        return self.tag


class RationalField(ScalarField):
    """Arbitrary-precision rationals, canonical by construction."""

    tag = "Q"

    def from_int(self, k):
        return Fraction(k)

    def coerce(self, value):
        _reject_float(value)
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise BackendMismatchError(f"cannot interpret {value!r} as a rational")

    def conj(self, x):
        return self.coerce(x)

    def inv(self, x):
        return Fraction(1) / self.coerce(x)

    def parse(self, obj):
        if isinstance(obj, str) or (isinstance(obj, int) and not isinstance(obj, bool)):
            return self.coerce(obj)
        raise ValueError(f"invalid rational encoding: {obj!r}")

    def encode(self, x):
        return str(x)

    def random(self, rng):
        return Fraction(rng.randint(-3, 3), rng.randint(1, 3))

    def __eq__(self, other):
        return type(other) is RationalField

    def __hash__(self):
        return hash(RationalField)


class GaussianRationalField(ScalarField):
    """Gaussian rationals a + b*i with complex conjugation as involution."""

    tag = "Qi"

    def from_int(self, k):
        return GaussianRational(k)

    def coerce(self, value):
        _reject_float(value)
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        if isinstance(value, str):
            return GaussianRational(Fraction(value))
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return GaussianRational(QQ.coerce(value[0]), QQ.coerce(value[1]))
        raise BackendMismatchError(f"cannot interpret {value!r} as a Gaussian rational")

    def conj(self, x):
        return self.coerce(x).conjugate()

    def inv(self, x):
        return self.coerce(x).inverse()

    def parse(self, obj):
        if isinstance(obj, (list, tuple)):
            if len(obj) != 2:
                raise ValueError(f"Gaussian rational entry must be [re, im]: {obj!r}")
            return GaussianRational(QQ.parse(obj[0]), QQ.parse(obj[1]))
        if isinstance(obj, str) or (isinstance(obj, int) and not isinstance(obj, bool)):
            return GaussianRational(QQ.parse(obj))
        raise ValueError(f"invalid Gaussian rational encoding: {obj!r}")

    def encode(self, x):
        return [str(x.re), str(x.im)]

    def random(self, rng):
        return GaussianRational(
            Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
            Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
        )

    def __eq__(self, other):
        return type(other) is GaussianRationalField

    def __hash__(self):
        return hash(GaussianRationalField)


class PrimeField(ScalarField):
    """The prime field F_p for p in {2, 3, 5}; conjugation is the identity."""

    tag = "Fp"

    def __init__(self, p: int):
        if p not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported prime modulus {p}; supported: {SUPPORTED_PRIMES}")
        self.p = p

    def from_int(self, k):
        return PrimeFieldElement(k, self.p)

    def coerce(self, value):
        _reject_float(value)
        if isinstance(value, PrimeFieldElement):
            if value.p != self.p:
                raise BackendMismatchError(f"mixed moduli: F{self.p} vs F{value.p}")
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return PrimeFieldElement(value, self.p)
        if isinstance(value, str):
            return PrimeFieldElement(int(value), self.p)
        raise BackendMismatchError(f"cannot interpret {value!r} as an element of F{self.p}")

    def conj(self, x):
        return self.coerce(x)

    def inv(self, x):
        return self.coerce(x).inverse()

    def parse(self, obj):
        if isinstance(obj, str) or (isinstance(obj, int) and not isinstance(obj, bool)):
            return self.coerce(obj)
        raise ValueError(f"invalid F{self.p} encoding: {obj!r}")

    def encode(self, x):
        return str(x.value)

    def random(self, rng):
        return PrimeFieldElement(rng.randrange(self.p), self.p)

    def elements(self):
        for v in range(self.p):
            yield PrimeFieldElement(v, self.p)

    def __eq__(self, other):
        return type(other) is PrimeField and other.p == self.p

    def __hash__(self):
        return hash((PrimeField, self.p))

    def __repr__(self):
        return f"F{self.p}"


QQ = RationalField()
QI = GaussianRationalField()

_PRIME_FIELDS: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """The shared PrimeField instance for modulus p."""
    try:
        return _PRIME_FIELDS[p]
    except KeyError:
        _PRIME_FIELDS[p] = field = PrimeField(p)
        return field


def backend_of(x) -> ScalarField:
    """The backend a scalar belongs to; plain ints are ambiguous and rejected."""
    if isinstance(x, Fraction):
        return QQ
    if isinstance(x, GaussianRational):
        return QI
    if isinstance(x, PrimeFieldElement):
        return GF(x.p)
    if isinstance(x, int):
        raise TypeError("plain ints are backend-ambiguous; coerce through a field first")
    raise TypeError(f"not a scalar: {x!r}")


def _same_backend(x, y) -> ScalarField:
    bx, by = backend_of(x), backend_of(y)
    if bx != by:
        raise BackendMismatchError(f"mixed scalar backends: {bx} vs {by}")
    return bx


def scalar_add(x, y):
    _same_backend(x, y)
    return x + y


def scalar_mul(x, y):
    _same_backend(x, y)
    return x * y


def scalar_neg(x):
    backend_of(x)
    return -x


def scalar_inv(x):
    return backend_of(x).inv(x)


def scalar_conj(x):
    return backend_of(x).conj(x)
