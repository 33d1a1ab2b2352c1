"""Dense square matrices over an exact scalar backend.

The ring involution is conjugate-transpose: plain transpose on prime fields
(identity conjugation) and Hermitian transpose on Gaussian rationals. Linear
solves run reduced row echelon form with a fixed pivoting rule (columns left
to right, first nonzero row) and zero all free variables, so every witness is
deterministic and certificates replay byte-for-byte.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass

from .scalar import (
    GF,
    QI,
    QQ,
    BackendMismatchError,
    ScalarField,
)


class DimensionMismatchError(ValueError):
    """Operands have incompatible dimensions."""


class Mat:
    """An n-by-n matrix over a single scalar backend. Immutable, exact equality."""

    __slots__ = ("field", "n", "rows")

    def __init__(self, field: ScalarField, rows):
        data = [list(r) for r in rows]
        n = len(data)
        if n == 0 or any(len(r) != n for r in data):
            raise DimensionMismatchError("matrix must be square and non-empty")
        self.field = field
        self.n = n
        self.rows = tuple(tuple(field.coerce(v) for v in r) for r in data)

    @classmethod
    def _wrap(cls, field, rows):
        # internal fast path: rows already canonical tuples of field scalars
        m = object.__new__(cls)
        m.field = field
        m.n = len(rows)
        m.rows = rows
        return m

    @classmethod
    def identity(cls, field: ScalarField, n: int) -> "Mat":
        one, zero = field.one(), field.zero()
        return cls._wrap(
            field, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        )

    @classmethod
    def zeros(cls, field: ScalarField, n: int) -> "Mat":
        zero = field.zero()
        return cls._wrap(field, tuple((zero,) * n for _ in range(n)))

    def _compat(self, other: "Mat"):
        if self.field != other.field:
            raise BackendMismatchError(f"mixed matrix backends: {self.field} vs {other.field}")
        if self.n != other.n:
            raise DimensionMismatchError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._compat(other)
        return Mat._wrap(
            self.field,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def __sub__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._compat(other)
        return Mat._wrap(
            self.field,
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def __neg__(self):
        return Mat._wrap(self.field, tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._compat(other)
        n = self.n
        cols = tuple(zip(*other.rows))
        out = []
        for arow in self.rows:
            row = []
            for col in cols:
                acc = arow[0] * col[0]
                for k in range(1, n):
                    acc = acc + arow[k] * col[k]
                row.append(acc)
            out.append(tuple(row))
        return Mat._wrap(self.field, tuple(out))

    def scale(self, s) -> "Mat":
        s = self.field.coerce(s)
        return Mat._wrap(self.field, tuple(tuple(s * a for a in r) for r in self.rows))

    def transpose(self) -> "Mat":
        return Mat._wrap(self.field, tuple(zip(*self.rows)))

    def star(self) -> "Mat":
        """Conjugate-transpose, the ring involution."""
        conj = self.field.conj
        return Mat._wrap(self.field, tuple(tuple(conj(v) for v in col) for col in zip(*self.rows)))

    def power(self, k: int) -> "Mat":
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"matrix power requires an integer k >= 0, got {k!r}")
        acc = Mat.identity(self.field, self.n)
        for _ in range(k):
            acc = acc * self
        return acc

    __pow__ = power

    def inverse(self) -> "Mat | None":
        """The two-sided inverse, or None when singular (a result, not an error)."""
        w = solve_right(self, Mat.identity(self.field, self.n))
        return w.solution if w.consistent else None

    def is_invertible(self) -> bool:
        return self.inverse() is not None

    def is_idempotent(self) -> bool:
        return self * self == self

    def is_hermitian(self) -> bool:
        return self.star() == self

    def is_zero(self) -> bool:
        return not any(any(v for v in r) for r in self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        body = [[str(v) for v in r] for r in self.rows]
        return f"Mat({self.field!r}, {body})"


@dataclass(frozen=True)
class SolveWitness:
    """Outcome of a linear matrix solve; solution is None when inconsistent."""

    solution: Mat | None
    consistent: bool


def _rref(aug: list[list], lead: int, field: ScalarField) -> list[tuple[int, int]]:
    """In-place RREF on the first `lead` columns of `aug`; returns (row, col) pivots.

    Pivot rule: scan columns left to right, take the first row with a nonzero
    entry at or below the current row. Rows are fully reduced above and below.
    """
    nrows = len(aug)
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(lead):
        pivot_row = None
        for i in range(r, nrows):
            if aug[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        inv = field.inv(aug[r][c])
        aug[r] = [inv * v for v in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    return pivots


def solve_right(a: Mat, b: Mat) -> SolveWitness:
    """Solve a @ x = b exactly. Free variables of the witness are zeroed."""
    a._compat(b)
    n = a.n
    field = a.field
    aug = [list(a.rows[i]) + list(b.rows[i]) for i in range(n)]
    pivots = _rref(aug, n, field)
    for r in range(len(pivots), n):
        if any(aug[r][n + j] for j in range(n)):
            return SolveWitness(None, False)
    zero = field.zero()
    x = [[zero] * n for _ in range(n)]
    for r, c in pivots:
        x[c] = aug[r][n:]
    sol = Mat._wrap(field, tuple(tuple(row) for row in x))
    return SolveWitness(sol, True)


def solve_left(a: Mat, b: Mat) -> SolveWitness:
    """Solve x @ a = b exactly, mirrored through plain transposition."""
    w = solve_right(a.transpose(), b.transpose())
    if not w.consistent:
        return w
    return SolveWitness(w.solution.transpose(), True)


def left_annihilator_basis(m: Mat) -> tuple[tuple, ...]:
    """A canonical basis of row vectors v with v @ m = 0."""
    field = m.field
    n = m.n
    aug = [list(r) for r in m.transpose().rows]
    pivots = _rref(aug, n, field)
    pivot_cols = {c for _, c in pivots}
    zero, one = field.zero(), field.one()
    basis = []
    for fc in range(n):
        if fc in pivot_cols:
            continue
        vec = [zero] * n
        vec[fc] = one
        for r, c in pivots:
            vec[c] = -aug[r][fc]
        basis.append(tuple(vec))
    return tuple(basis)


class Weight:
    """An invertible Hermitian matrix that twists the symmetry conditions."""

    __slots__ = ("value", "inv")

    def __init__(self, value: Mat):
        if not value.is_hermitian():
            raise ValueError("weight must be Hermitian")
        inv = value.inverse()
        if inv is None:
            raise ValueError("weight must be invertible")
        self.value = value
        self.inv = inv

    @classmethod
    def identity(cls, field: ScalarField, n: int) -> "Weight":
        return cls(Mat.identity(field, n))

    def __eq__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"Weight({self.value!r})"


def is_hermitian_wrt(w: Weight, m: Mat) -> bool:
    """True iff w @ m equals its own conjugate-transpose."""
    w.value._compat(m)
    return (w.value * m).is_hermitian()


def _rand_mat(rng, dim: int, field: ScalarField) -> Mat:
    return Mat._wrap(
        field, tuple(tuple(field.random(rng) for _ in range(dim)) for _ in range(dim))
    )


def _rand_invertible(rng, dim: int, field: ScalarField) -> Mat:
    while True:
        m = _rand_mat(rng, dim, field)
        if m.is_invertible():
            return m


def _block_embed(field: ScalarField, dim: int, blocks: list[Mat]) -> Mat:
    """Block-diagonal embedding of the given blocks, zero-padded to dim."""
    zero = field.zero()
    out = [[zero] * dim for _ in range(dim)]
    offset = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                out[offset + i][offset + j] = b.rows[i][j]
        offset += b.n
    return Mat._wrap(field, tuple(tuple(r) for r in out))


def random_mat(dim: int, field: ScalarField, seed: int) -> Mat:
    """A seeded random matrix with small entries."""
    if dim < 1:
        raise DimensionMismatchError("dim must be >= 1")
    return _rand_mat(_random.Random(seed), dim, field)


def random_weight(dim: int, field: ScalarField, seed: int, definite: bool = False) -> Weight:
    """A seeded random weight g* d g with g invertible and d diagonal over {1, -1}.

    definite=True forces d = 1, giving a positive-definite weight; otherwise the
    signs are random, which over Gaussian rationals deliberately produces
    indefinite weights whose negative paths matter.
    """
    if dim < 1:
        raise DimensionMismatchError("dim must be >= 1")
    rng = _random.Random(seed)
    g = _rand_invertible(rng, dim, field)
    signs = [1 if definite else rng.choice((1, -1)) for _ in range(dim)]
    zero = field.zero()
    d = Mat._wrap(
        field,
        tuple(
            tuple(field.from_int(signs[i]) if i == j else zero for j in range(dim))
            for i in range(dim)
        ),
    )
    return Weight(g.star() * d * g)


def random_group_invertible(dim: int, field: ScalarField, seed: int, rank: int | None = None) -> Mat:
    """A seeded random group-invertible matrix u (c ⊕ 0) u^{-1} with c invertible."""
    if dim < 1:
        raise DimensionMismatchError("dim must be >= 1")
    rng = _random.Random(seed)
    if rank is None:
        rank = rng.randint(0, dim)
    if not 0 <= rank <= dim:
        raise ValueError(f"rank must lie in [0, {dim}], got {rank}")
    blocks = [] if rank == 0 else [_rand_invertible(rng, rank, field)]
    core = _block_embed(field, dim, blocks)
    u = _rand_invertible(rng, dim, field)
    return u * core * u.inverse()


def random_non_group_invertible(dim: int, field: ScalarField, seed: int) -> Mat:
    """A seeded random matrix that is certainly not group invertible.

    Built as u (c ⊕ N) u^{-1} with N a nonzero nilpotent shift block, so the
    rank drops from the first to the second power.
    """
    if dim < 2:
        raise DimensionMismatchError("dim must be >= 2 for a nonzero nilpotent part")
    rng = _random.Random(seed)
    k = rng.randint(2, dim)
    zero, one = field.zero(), field.one()
    shift = Mat._wrap(
        field,
        tuple(tuple(one if j == i + 1 else zero for j in range(k)) for i in range(k)),
    )
    blocks = [] if dim == k else [_rand_invertible(rng, dim - k, field)]
    core = _block_embed(field, dim, blocks + [shift])
    u = _rand_invertible(rng, dim, field)
    return u * core * u.inverse()


_BACKENDS = {"Q": lambda obj: QQ, "Qi": lambda obj: QI}


def _field_from_json(obj: dict) -> ScalarField:
    backend = obj.get("backend")
    if backend == "Q":
        return QQ
    if backend == "Qi":
        return QI
    if backend == "Fp":
        p = obj.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise ValueError("Fp matrix object requires an integer 'p'")
        return GF(p)
    raise ValueError(f"unknown backend tag: {backend!r}")


def mat_from_json(obj) -> Mat:
    """Decode {"backend", "p"?, "dim", "entries"} into a Mat."""
    if not isinstance(obj, dict):
        raise ValueError("matrix object must be a JSON object")
    field = _field_from_json(obj)
    dim = obj.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ValueError(f"invalid dim: {dim!r}")
    entries = obj.get("entries")
    if not isinstance(entries, list) or len(entries) != dim:
        raise ValueError("entries must be a dim x dim array")
    rows = []
    for row in entries:
        if not isinstance(row, list) or len(row) != dim:
            raise ValueError("entries must be a dim x dim array")
        rows.append([field.parse(v) for v in row])
    return Mat(field, rows)


def mat_to_json(m: Mat) -> dict:
    obj = {
        "backend": m.field.tag,
        "dim": m.n,
        "entries": [[m.field.encode(v) for v in row] for row in m.rows],
    }
    if m.field.tag == "Fp":
        obj["p"] = m.field.p
    return obj


def weight_from_json(obj) -> Weight:
    """Decode and validate a weight; rejects non-Hermitian or singular input."""
    return Weight(mat_from_json(obj))


def weight_to_json(w: Weight) -> dict:
    return mat_to_json(w.value)
