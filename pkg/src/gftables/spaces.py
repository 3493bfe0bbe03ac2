"""The four example orbit spaces and their classification invariants.

Each space is a finite vector space over GF(q) together with a linear group
action; what the rest of the package needs from the action is only the orbit
invariant (weight, rank, even rank, or rank with a quadratic sign), the label
set, canonical representatives, and closed-form orbit sizes where they exist.

Elements are flat tuples of field elements, one per free coordinate:

    vec  : the n vector entries
    mat  : all n*m entries, row major
    alt  : strict upper triangle, row major (lower triangle is forced)
    sym  : upper triangle including the diagonal, row major

Enumeration is base-q counting on the free coordinates (coordinate 0 is the
fastest digit), so streams, representatives, and exports are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cyclotomic import POLY_Q, PolyQ
from .gfq import FieldElem, FieldSpec, sgn
from .qseries import binomial, gauss_binom_poly


class BudgetError(ValueError):
    """An enumeration would exceed the configured element budget."""


@dataclass(frozen=True)
class OrbitLabel:
    """Orbit parameter: a weight or rank r, optionally with a sign.

    Sign +1 sorts before -1 inside one rank, which fixes row and column
    order of every exported table.
    """

    r: int
    sign: int | None = None

    def __str__(self) -> str:
        if self.sign is None:
            return str(self.r)
        return f"{self.r}{'+' if self.sign > 0 else '-'}"

    def __lt__(self, other: "OrbitLabel") -> bool:
        def key(lbl: OrbitLabel):
            return (lbl.r, 0 if lbl.sign in (None, 1) else 1)

        return key(self) < key(other)

    @classmethod
    def parse(cls, text: str) -> "OrbitLabel":
        if text.endswith("+"):
            return cls(int(text[:-1]), 1)
        if text.endswith("-"):
            return cls(int(text[:-1]), -1)
        return cls(int(text))


Elem = tuple[FieldElem, ...]
Matrix = list[list[FieldElem]]


def matrix_rank(rows: Matrix) -> int:
    """Row rank over GF(q) by Gaussian elimination."""
    if not rows:
        return 0
    work = [list(r) for r in rows]
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if not work[i][col].is_zero()), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [x * inv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and not work[i][col].is_zero():
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def symmetric_sign(rows: Matrix, field: FieldSpec) -> tuple[int, int]:
    """(rank, sign) of a symmetric matrix by congruence diagonalization.

    Symmetric row/column operations preserve the congruence class. When a
    pivot diagonal entry is zero but some off-diagonal entry a_ij is not,
    adding row/column j into i creates the diagonal entry 2*a_ij, nonzero
    because the characteristic is odd. The sign is the quadratic character
    of the product of the nonzero diagonal entries; the zero matrix gets
    +1 by the sgn(0) = +1 convention.
    """
    n = len(rows)
    m = [list(r) for r in rows]
    rank = 0
    disc = field.one()
    for k in range(n):
        pivot = next((j for j in range(k, n) if not m[j][j].is_zero()), None)
        if pivot is None:
            off = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if not m[i][j].is_zero()),
                None,
            )
            if off is None:
                break  # trailing block is zero
            i, j = off
            for c in range(n):
                m[i][c] = m[i][c] + m[j][c]
            for r in range(n):
                m[r][i] = m[r][i] + m[r][j]
            pivot = i
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            for r in range(n):
                m[r][k], m[r][pivot] = m[r][pivot], m[r][k]
        d = m[k][k]
        inv = d.inverse()
        for i in range(k + 1, n):
            f = m[i][k] * inv
            if f.is_zero():
                continue
            for c in range(n):
                m[i][c] = m[i][c] - f * m[k][c]
        for j in range(k + 1, n):
            f = m[k][j] * inv
            if f.is_zero():
                continue
            for r in range(n):
                m[r][j] = m[r][j] - f * m[r][k]
        disc = disc * d
        rank += 1
    return rank, sgn(disc)


def _mat_mul(a: Matrix, b: Matrix, zero: FieldElem) -> Matrix:
    out = [[zero for _ in range(len(b[0]))] for _ in range(len(a))]
    for i in range(len(a)):
        for k in range(len(b)):
            aik = a[i][k]
            if aik.is_zero():
                continue
            for j in range(len(b[0])):
                out[i][j] = out[i][j] + aik * b[k][j]
    return out


def _transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def _random_invertible(field: FieldSpec, n: int, rng: random.Random) -> Matrix:
    while True:
        m = [[field.element_at(rng.randrange(field.q)) for _ in range(n)] for _ in range(n)]
        if matrix_rank(m) == n:
            return m


class Space:
    """Base class: a vector space over GF(q) with an orbit classification."""

    family: str

    def __init__(self, field: FieldSpec):
        self.field = field

    def _key(self):
        return (self.family, self.field, getattr(self, "n", None), getattr(self, "m", None))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Space):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    # subclasses fill these in
    coords: tuple  # free coordinate positions
    pair_weights: tuple[int, ...]  # <a|b> = sum w_k a_k b_k

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def size(self) -> int:
        return self.field.q**self.dim

    def zero(self) -> Elem:
        return (self.field.zero(),) * self.dim

    def add(self, a: Elem, b: Elem) -> Elem:
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a: Elem) -> Elem:
        return tuple(-x for x in a)

    def pair(self, a: Elem, b: Elem) -> FieldElem:
        """The bilinear form trace(a^T b), restricted to this space."""
        if len(a) != self.dim or len(b) != self.dim:
            raise ValueError("shape mismatch")
        acc = self.field.zero()
        for w, x, y in zip(self.pair_weights, a, b):
            t = x * y
            if w == 2:
                t = t + t
            acc = acc + t
        return acc

    def element_at(self, index: int) -> Elem:
        out = []
        for _ in range(self.dim):
            out.append(self.field.element_at(index % self.field.q))
            index //= self.field.q
        return tuple(out)

    def elements(self, budget: int | None = None):
        if budget is not None and self.size > budget:
            raise BudgetError(f"|A| = {self.size} exceeds the budget {budget}")
        for i in range(self.size):
            yield self.element_at(i)

    # -- orbit interface -------------------------------------------------

    def labels(self) -> tuple[OrbitLabel, ...]:
        raise NotImplementedError

    def classify(self, elem: Elem) -> OrbitLabel:
        raise NotImplementedError

    def representative(self, label: OrbitLabel) -> Elem:
        raise NotImplementedError

    def orbit_size_poly(self, label: OrbitLabel) -> PolyQ:
        raise ValueError(
            "no closed form for symmetric orbit sizes; "
            "use brute counts or the sign-block first row"
        )

    def random_mate(self, elem: Elem, rng: random.Random) -> Elem:
        """A random element of the same orbit (the group action applied)."""
        raise NotImplementedError

    def as_matrix(self, elem: Elem) -> Matrix:
        raise NotImplementedError

    def _check_label(self, label: OrbitLabel) -> None:
        if label not in self.labels():
            raise ValueError(f"label {label} is not legal for {self.describe()}")

    def describe(self) -> str:
        raise NotImplementedError

    def to_obj(self) -> dict:
        raise NotImplementedError


class VecWreath(Space):
    """GF(q)^n under coordinate scaling and permutation; orbits by weight."""

    family = "vec"

    def __init__(self, n: int, field: FieldSpec):
        super().__init__(field)
        self.n = n
        self.coords = tuple(range(n))
        self.pair_weights = (1,) * n

    def labels(self):
        return tuple(OrbitLabel(r) for r in range(self.n + 1))

    def classify(self, elem):
        return OrbitLabel(sum(1 for x in elem if not x.is_zero()))

    def representative(self, label):
        self._check_label(label)
        one, zero = self.field.one(), self.field.zero()
        return tuple(one if i < label.r else zero for i in range(self.n))

    def orbit_size_poly(self, label):
        self._check_label(label)
        return (POLY_Q - 1) ** label.r * binomial(self.n, label.r)

    def random_mate(self, elem, rng):
        perm = list(range(self.n))
        rng.shuffle(perm)
        out = [None] * self.n
        for i in range(self.n):
            c = self.field.element_at(rng.randrange(1, self.field.q))
            out[i] = c * elem[perm[i]]
        return tuple(out)

    def as_matrix(self, elem):
        return [list(elem)]

    def describe(self):
        return f"vec(n={self.n}, q={self.field.q})"

    def to_obj(self):
        return {"family": "vec", "n": self.n, "q": self.field.q}


class _MatrixSpace(Space):
    """Shared plumbing for the matrix-shaped spaces."""

    nrows: int
    ncols: int

    def as_matrix(self, elem) -> Matrix:
        zero = self.field.zero()
        m = [[zero for _ in range(self.ncols)] for _ in range(self.nrows)]
        for x, pos in zip(elem, self.coords):
            i, j = pos
            m[i][j] = x
            if self.family == "alt" and i != j:
                m[j][i] = -x
            elif self.family in ("sym", "symscaled") and i != j:
                m[j][i] = x
        return m

    def from_matrix(self, m: Matrix) -> Elem:
        return tuple(m[i][j] for i, j in self.coords)


class MatRect(_MatrixSpace):
    """n x m matrices (n <= m) under GL_n x GL_m; orbits by rank."""

    family = "mat"

    def __init__(self, n: int, m: int, field: FieldSpec):
        if n > m:
            raise ValueError("rectangular spaces require n <= m")
        super().__init__(field)
        self.n, self.m = n, m
        self.nrows, self.ncols = n, m
        self.coords = tuple((i, j) for i in range(n) for j in range(m))
        self.pair_weights = (1,) * (n * m)

    def labels(self):
        return tuple(OrbitLabel(r) for r in range(self.n + 1))

    def classify(self, elem):
        return OrbitLabel(matrix_rank(self.as_matrix(elem)))

    def representative(self, label):
        self._check_label(label)
        one, zero = self.field.one(), self.field.zero()
        return tuple(one if (i == j and i < label.r) else zero for i, j in self.coords)

    def orbit_size_poly(self, label):
        self._check_label(label)
        r = label.r
        out = PolyQ.monomial((-1) ** r, r * (r - 1) // 2) * gauss_binom_poly(self.n, r)
        for i in range(r):
            out = out * (1 - PolyQ.monomial(1, self.m - i))
        return out

    def random_mate(self, elem, rng):
        g = _random_invertible(self.field, self.n, rng)
        h = _random_invertible(self.field, self.m, rng)
        a = self.as_matrix(elem)
        return self.from_matrix(_mat_mul(_mat_mul(g, a, self.field.zero()), _transpose(h), self.field.zero()))

    def describe(self):
        return f"mat(n={self.n}, m={self.m}, q={self.field.q})"

    def to_obj(self):
        return {"family": "mat", "n": self.n, "m": self.m, "q": self.field.q}


class AltMat(_MatrixSpace):
    """Alternating n x n matrices under congruence; orbits by (even) rank."""

    family = "alt"

    def __init__(self, n: int, field: FieldSpec):
        if field.q % 2 == 0:
            raise ValueError("alternating spaces require odd q")
        super().__init__(field)
        self.n = n
        self.nrows = self.ncols = n
        self.coords = tuple((i, j) for i in range(n) for j in range(i + 1, n))
        self.pair_weights = (2,) * len(self.coords)

    def labels(self):
        return tuple(OrbitLabel(r) for r in range(0, self.n + 1, 2))

    def classify(self, elem):
        r = matrix_rank(self.as_matrix(elem))
        if r % 2:
            raise AssertionError("alternating matrix with odd rank")
        return OrbitLabel(r)

    def representative(self, label):
        self._check_label(label)
        one, zero = self.field.one(), self.field.zero()
        blocks = {(2 * i, 2 * i + 1) for i in range(label.r // 2)}
        return tuple(one if pos in blocks else zero for pos in self.coords)

    def orbit_size_poly(self, label):
        self._check_label(label)
        x = label.r // 2
        num = PolyQ.monomial((-1) ** x, x * (x - 1))
        for i in range(2 * x):
            num = num * (1 - PolyQ.monomial(1, self.n - i))
        den = PolyQ.const(1)
        for i in range(1, x + 1):
            den = den * (1 - PolyQ.monomial(1, 2 * i))
        return num.exact_div(den)

    def random_mate(self, elem, rng):
        g = _random_invertible(self.field, self.n, rng)
        a = self.as_matrix(elem)
        return self.from_matrix(_mat_mul(_mat_mul(g, a, self.field.zero()), _transpose(g), self.field.zero()))

    def describe(self):
        return f"alt(n={self.n}, q={self.field.q})"

    def to_obj(self):
        return {"family": "alt", "n": self.n, "q": self.field.q}


class _SymBase(_MatrixSpace):
    def __init__(self, n: int, field: FieldSpec):
        if field.q % 2 == 0:
            raise ValueError("symmetric spaces require odd q")
        super().__init__(field)
        self.n = n
        self.nrows = self.ncols = n
        self.coords = tuple((i, j) for i in range(n) for j in range(i, n))
        self.pair_weights = tuple(1 if i == j else 2 for i, j in self.coords)

    def rank_and_sign(self, elem) -> tuple[int, int]:
        return symmetric_sign(self.as_matrix(elem), self.field)

    def _sign_representative(self, r: int, sign: int) -> Elem:
        one, zero = self.field.one(), self.field.zero()
        delta = self.field.delta()
        vals = {}
        for i in range(r):
            vals[(i, i)] = one
        if sign < 0:
            vals[(r - 1, r - 1)] = delta
        return tuple(vals.get(pos, zero) for pos in self.coords)

    def random_mate(self, elem, rng):
        g = _random_invertible(self.field, self.n, rng)
        a = self.as_matrix(elem)
        out = _mat_mul(_mat_mul(g, a, self.field.zero()), _transpose(g), self.field.zero())
        if self.family == "symscaled":
            c = self.field.element_at(rng.randrange(1, self.field.q))
            out = [[c * x for x in row] for row in out]
        return self.from_matrix(out)


class SymGL(_SymBase):
    """Symmetric n x n matrices under congruence; orbits by rank and sign."""

    family = "sym"

    def labels(self):
        out = [OrbitLabel(0)]
        for r in range(1, self.n + 1):
            out.append(OrbitLabel(r, 1))
            out.append(OrbitLabel(r, -1))
        return tuple(out)

    def classify(self, elem):
        r, s = self.rank_and_sign(elem)
        return OrbitLabel(0) if r == 0 else OrbitLabel(r, s)

    def representative(self, label):
        self._check_label(label)
        if label.r == 0:
            return self.zero()
        return self._sign_representative(label.r, label.sign)

    def describe(self):
        return f"sym(n={self.n}, q={self.field.q})"

    def to_obj(self):
        return {"family": "sym", "n": self.n, "q": self.field.q}


class SymScaled(_SymBase):
    """Symmetric matrices under scaling and congruence; odd-rank signs merge."""

    family = "symscaled"

    def labels(self):
        out = [OrbitLabel(0)]
        for r in range(1, self.n + 1):
            if r % 2:
                out.append(OrbitLabel(r))
            else:
                out.append(OrbitLabel(r, 1))
                out.append(OrbitLabel(r, -1))
        return tuple(out)

    def classify(self, elem):
        r, s = self.rank_and_sign(elem)
        if r == 0:
            return OrbitLabel(0)
        return OrbitLabel(r) if r % 2 else OrbitLabel(r, s)

    def representative(self, label):
        self._check_label(label)
        if label.r == 0:
            return self.zero()
        return self._sign_representative(label.r, label.sign if label.sign else 1)

    def describe(self):
        return f"symscaled(n={self.n}, q={self.field.q})"

    def to_obj(self):
        return {"family": "symscaled", "n": self.n, "q": self.field.q}


def make_space(family: str, field: FieldSpec, n: int, m: int | None = None) -> Space:
    if family == "vec":
        return VecWreath(n, field)
    if family == "mat":
        if m is None:
            raise ValueError("mat spaces need both n and m")
        return MatRect(n, m, field)
    if family == "alt":
        return AltMat(n, field)
    if family == "sym":
        return SymGL(n, field)
    if family == "symscaled":
        return SymScaled(n, field)
    raise ValueError(f"unknown family {family!r}")


def print_matrix(space: Space, elem: Elem) -> str:
    """Row-major integer text rendering of an element."""
    rows = space.as_matrix(elem)

    def show(x: FieldElem) -> str:
        if x.field.e == 1:
            return str(x.coeffs[0])
        return "(" + ",".join(str(c) for c in x.coeffs) + ")"

    return "\n".join(" ".join(show(x) for x in row) for row in rows)
