"""Two-term Pascal-type recursions and their Krawtchouk solutions.

A family of triangular tables f_N(y, x), 0 <= y, x <= N, is pinned down by a
backward recursion

    f_N(y+1, x) = a t^x f_{N-1}(y, x) - b t^(x-1) f_{N-1}(y, x-1)

together with a forward recursion

    f_N(y+1, x) - c f_N(y, x) = -d t^(2N-y-1) f_{N-1}(y, x-1),

all coefficients nonzero, with out-of-range entries read as zero. Setting
y = 0 in both gives the bottom-row recursion

    c O_N(x) = a t^x O_{N-1}(x) + (d t^(2N-1) - b t^(x-1)) O_{N-1}(x-1),

and the pair has a unique solution once sigma = f_0(0, 0) is fixed: binomial
columns when t = 1 and b = d, Krawtchouk times the bottom row when t = 1 and
b != d, and affine q-Krawtchouk times the bottom row when t != 1.

The canonical-matrix families are the special cases below; their tables are
built symbolically in Z[q] so that the q -> 1 limits come straight out of the
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .cyclotomic import POLY_Q, PolyQ
from .qseries import affine_q_krawtchouk, gauss_binom, krawtchouk, q_pochhammer

Table = dict[tuple[int, int], Fraction]


@dataclass(frozen=True)
class PascalParams:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    t: Fraction
    sigma: Fraction
    n_max: int

    def __post_init__(self):
        if 0 in (self.a, self.b, self.c, self.d, self.t):
            raise ValueError("recursion coefficients must be nonzero")

    @property
    def case(self) -> int:
        if self.t == 1:
            return 1 if self.b == self.d else 2
        return 3


def _tpow(t: Fraction, e: int) -> Fraction:
    return Fraction(t) ** e if e >= 0 else 1 / (Fraction(t) ** (-e))


def recursion_tables(p: PascalParams) -> list[Table]:
    """f_0 .. f_{n_max}: bottom rows from the y = 0 recursion, the rest from
    the backward recursion."""
    tables: list[Table] = [{(0, 0): Fraction(p.sigma)}]
    for n in range(1, p.n_max + 1):
        prev = tables[-1]
        cur: Table = {}
        for x in range(n + 1):
            v = p.a * _tpow(p.t, x) * prev.get((0, x), Fraction(0))
            if x >= 1:
                v += (p.d * _tpow(p.t, 2 * n - 1) - p.b * _tpow(p.t, x - 1)) * prev.get(
                    (0, x - 1), Fraction(0)
                )
            cur[(0, x)] = v / p.c
        for y in range(n):
            for x in range(n + 1):
                v = p.a * _tpow(p.t, x) * prev.get((y, x), Fraction(0))
                if x >= 1:
                    v -= p.b * _tpow(p.t, x - 1) * prev.get((y, x - 1), Fraction(0))
                cur[(y + 1, x)] = v
        tables.append(cur)
    return tables


def closed_tables(p: PascalParams) -> list[Table]:
    """The unique simultaneous solution, by parameter case."""
    out: list[Table] = []
    for n in range(p.n_max + 1):
        cur: Table = {}
        if p.case == 1:
            for y in range(n + 1):
                for x in range(n + 1):
                    if x > y:
                        cur[(y, x)] = Fraction(0)
                    else:
                        cur[(y, x)] = (
                            p.sigma
                            * _tpow(p.a, n - x)
                            * _tpow(-p.b, x)
                            / _tpow(p.c, n - y)
                            * comb(y, x)
                        )
        elif p.case == 2:
            kp = 1 - p.b / p.d
            for x in range(n + 1):
                o = p.sigma * _tpow(p.a, n - x) / _tpow(p.c, n) * _tpow(p.d - p.b, x) * comb(n, x)
                for y in range(n + 1):
                    cur[(y, x)] = _tpow(p.c, y) * o * krawtchouk(y, x, kp, n)
        else:
            aff_a = (p.b / p.d) * _tpow(p.t, -n)
            for x in range(n + 1):
                o = (
                    p.sigma
                    * _tpow(p.a, n - x)
                    * _tpow(-p.b, x)
                    / _tpow(p.c, n)
                    * _tpow(p.t, x * (x - 1) // 2)
                    * q_pochhammer((p.d / p.b) * _tpow(p.t, n), 1 / p.t, x)
                    * gauss_binom(n, x, p.t)
                )
                for y in range(n + 1):
                    cur[(y, x)] = _tpow(p.c, y) * o * affine_q_krawtchouk(y, x, aff_a, n, p.t)
        out.append(cur)
    return out


def forward_recursion_holds(p: PascalParams, tables: list[Table]) -> bool:
    for n in range(1, p.n_max + 1):
        for y in range(n):
            for x in range(n + 1):
                lhs = tables[n][(y + 1, x)] - p.c * tables[n][(y, x)]
                rhs = -p.d * _tpow(p.t, 2 * n - y - 1) * tables[n - 1].get((y, x - 1), Fraction(0))
                if lhs != rhs:
                    return False
    return True


def bottom_row_recursion_holds(p: PascalParams, tables: list[Table]) -> bool:
    for n in range(1, p.n_max + 1):
        for x in range(n + 1):
            lhs = p.c * tables[n][(0, x)]
            rhs = p.a * _tpow(p.t, x) * tables[n - 1].get((0, x), Fraction(0))
            if x >= 1:
                rhs += (p.d * _tpow(p.t, 2 * n - 1) - p.b * _tpow(p.t, x - 1)) * tables[
                    n - 1
                ].get((0, x - 1), Fraction(0))
            if lhs != rhs:
                return False
    return True


def forward_only_expansion(p: PascalParams, tables: list[Table]) -> bool:
    """Rebuild every entry from the bottom rows alone.

    Iterating the forward recursion downward gives

        f_N(y, x) = sum_i c^(y-i) (-d)^i t^(-C(i,2) + 2Ni - yi) [y i]_t
                    O_{N-i}(x - i),

    which must agree with the tables entry for entry.
    """
    for n in range(p.n_max + 1):
        for y in range(n + 1):
            for x in range(n + 1):
                acc = Fraction(0)
                for i in range(min(y, x) + 1):
                    exp = -(i * (i - 1) // 2) + 2 * n * i - y * i
                    acc += (
                        _tpow(p.c, y - i)
                        * _tpow(-p.d, i)
                        * _tpow(p.t, exp)
                        * gauss_binom(y, i, p.t)
                        * tables[n - i].get((0, x - i), Fraction(0))
                    )
                if acc != tables[n][(y, x)]:
                    return False
    return True


def bpr_fpr_solve(p: PascalParams) -> list[Table]:
    """Recursion-built tables, asserted equal to the closed solution."""
    rec = recursion_tables(p)
    clo = closed_tables(p)
    if rec != clo:
        raise AssertionError(f"recursion and closed solution disagree (case {p.case})")
    return rec


# ---------------------------------------------------------------------------
# the canonical-matrix families, symbolically in Z[q]


@dataclass(frozen=True)
class FamilyTable:
    """Canonical matrix of one family with entries in Z[q].

    row_values are the actual label values: weights or ranks, even ranks for
    the alternating family. entries[i][j] is the value at (row_values[i],
    row_values[j]).
    """

    family: str
    n: int
    m: int | None
    row_values: tuple[int, ...]
    entries: tuple[tuple[PolyQ, ...], ...]

    def at_q(self, q: int | Fraction) -> list[list[Fraction]]:
        return [[Fraction(e.eval_at(q)) for e in row] for row in self.entries]

    def at_q_int(self, q: int) -> list[list[int]]:
        return [[int(e.eval_at(q)) for e in row] for row in self.entries]


def _chain_step(prev: list[list[PolyQ]], size: int, bpr_hi: int, bpr_lo, o_hi: int, shift: int) -> list[list[PolyQ]]:
    """One recursion step shared by all three families.

    bottom row:  O(x) = q^(bpr_hi(x)) O'(x) + (q^o_hi - q^(bpr_lo(x))) O'(x-1)
    other rows:  f(y+1, x) = q^(bpr_hi(x)) f'(y, x) - q^(bpr_lo(x)) f'(y, x-1)

    where primes refer to the previous table and shift is 1 or 2 label steps.
    """
    zero = PolyQ()

    def prev_at(y: int, x: int) -> PolyQ:
        if 0 <= y < len(prev) and 0 <= x < len(prev):
            return prev[y][x]
        return zero

    cur = [[zero for _ in range(size)] for _ in range(size)]
    for x in range(size):
        v = PolyQ.monomial(1, bpr_hi * x) * prev_at(0, x)
        if x >= 1:
            v = v + (PolyQ.monomial(1, o_hi) - PolyQ.monomial(1, bpr_lo(x))) * prev_at(0, x - 1)
        cur[0][x] = v
    for y in range(size - 1):
        for x in range(size):
            v = PolyQ.monomial(1, bpr_hi * x) * prev_at(y, x)
            if x >= 1:
                v = v - PolyQ.monomial(1, bpr_lo(x)) * prev_at(y, x - 1)
            cur[y + 1][x] = v
    return cur


def family_table(family: str, n: int, m: int | None = None) -> FamilyTable:
    """Symbolic canonical matrix via the size recursions.

    Row 0 of each size comes from the bottom-row recursion, rows y >= 1 from
    the backward recursion; no division ever occurs, so the result being in
    Z[q] is by construction.
    """
    one = PolyQ.const(1)
    if family == "vec":
        grid = [[one]]
        for k in range(1, n + 1):
            grid = _chain_step(grid, k + 1, bpr_hi=0, bpr_lo=lambda x: 0, o_hi=1, shift=1)
        values = tuple(range(n + 1))
    elif family == "mat":
        if m is None or m < n:
            raise ValueError("rectangular tables need n <= m")
        grid = [[one]]
        for k in range(1, n + 1):
            grid = _chain_step(
                grid, k + 1, bpr_hi=1, bpr_lo=lambda x: x - 1, o_hi=(m - n) + 2 * k - 1, shift=1
            )
        values = tuple(range(n + 1))
    elif family == "alt":
        grid = [[one]]
        start = 2 if n % 2 == 0 else 3
        for size in range(start, n + 1, 2):
            k = size // 2
            o_hi = 4 * k - 3 if size % 2 == 0 else 4 * k - 1
            grid = _chain_step(grid, k + 1, bpr_hi=2, bpr_lo=lambda x: 2 * x - 2, o_hi=o_hi, shift=2)
        values = tuple(range(0, n + 1, 2))
    elif family in ("sym", "symscaled"):
        raise ValueError(
            "symmetric families have no integer-polynomial recursion; "
            "their entries involve the Gauss sum"
        )
    else:
        raise ValueError(f"unknown family {family!r}")
    return FamilyTable(family, n, m if family == "mat" else None, values, tuple(tuple(r) for r in grid))


def closed_form_phi(family: str, n: int, m: int | None, s: int, r: int, q: int | Fraction) -> Fraction:
    """Orbit size times the matching (q-)Krawtchouk value."""
    q = Fraction(q)
    if family == "vec":
        if not (0 <= s <= n and 0 <= r <= n):
            raise ValueError("out of range")
        return (q - 1) ** r * comb(n, r) * krawtchouk(s, r, (q - 1) / q, n)
    if family == "mat":
        if m is None or not (0 <= s <= n <= m and 0 <= r <= n):
            raise ValueError("out of range")
        size = (
            Fraction(-1) ** r
            * q ** comb(r, 2)
            * q_pochhammer(q**m, 1 / q, r)
            * gauss_binom(n, r, q)
        )
        return size * affine_q_krawtchouk(s, r, q**-m, n, q)
    if family == "alt":
        if s % 2 or r % 2:
            raise ValueError("alternating labels are even")
        if not (0 <= s <= n and 0 <= r <= n):
            raise ValueError("out of range")
        y, x = s // 2, r // 2
        size = Fraction(-1) ** x * q ** (x * (x - 1)) * q_pochhammer(q**n, 1 / q, 2 * x) / q_pochhammer(q**2, q**2, x)
        cap = n // 2
        param = q ** -(2 * cap - 1) if n % 2 == 0 else q ** -(2 * cap + 1)
        return size * affine_q_krawtchouk(y, x, param, cap, q**2)
    raise ValueError(f"no closed form for family {family!r}")


def closed_form_table(family: str, n: int, m: int | None, q: int | Fraction) -> list[list[Fraction]]:
    values = range(n + 1) if family != "alt" else range(0, n + 1, 2)
    return [[closed_form_phi(family, n, m, s, r, q) for r in values] for s in values]


# ---------------------------------------------------------------------------
# q -> 1 limits


def alternating_binomial_matrix(size: int) -> list[list[int]]:
    return [[(-1) ** r * comb(s, r) for r in range(size)] for s in range(size)]


def q1_limit(family: str, n: int, m: int | None = None) -> list[list[int]]:
    """The symbolic table at q = 1; callers assert the binomial pattern."""
    tab = family_table(family, n, m)
    return [[int(e.eval_at(1)) for e in row] for row in tab.entries]


def q1_pattern_holds(family: str, n: int, m: int | None = None) -> bool:
    got = q1_limit(family, n, m)
    return got == alternating_binomial_matrix(len(got))


def involution_squares_to_identity(size: int) -> bool:
    mm = alternating_binomial_matrix(size)
    for i in range(size):
        for j in range(size):
            acc = sum(mm[i][k] * mm[k][j] for k in range(size))
            if acc != (1 if i == j else 0):
                return False
    return True


# ---------------------------------------------------------------------------
# generating functions


def _t_mul(a: list[PolyQ], b: list[PolyQ]) -> list[PolyQ]:
    out = [PolyQ() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _t_pow(base: list[PolyQ], e: int) -> list[PolyQ]:
    out = [PolyQ.const(1)]
    for _ in range(e):
        out = _t_mul(out, base)
    return out


def genfun_vec_symbolic(n: int, s: int) -> bool:
    """Row generating function: sum_r f(s, r) t^r = (1-t)^s (1+(q-1)t)^(n-s),
    as an identity in Z[q][t]."""
    tab = family_table("vec", n)
    lhs = list(tab.entries[s])
    rhs = _t_mul(_t_pow([PolyQ.const(1), PolyQ.const(-1)], s), _t_pow([PolyQ.const(1), POLY_Q - 1], n - s))
    rhs += [PolyQ()] * (len(lhs) - len(rhs))
    return lhs == rhs[: len(lhs)] and all(e.is_zero() for e in rhs[len(lhs) :])


def genfun_mat_concrete(n: int, m: int, q: int, s: int) -> bool:
    """Row generating function of the rectangular family at a concrete q."""
    qf = Fraction(q)
    lhs = [closed_form_phi("mat", n, m, s, r, qf) for r in range(n + 1)]
    prefix = [Fraction(1)]
    for i in range(s):
        # (t; q)_s as a polynomial in t
        prefix = _frac_t_mul(prefix, [Fraction(1), -(qf**i)])
    tail = [
        Fraction(-1) ** u
        * qf ** (comb(u, 2) + s * u)
        * q_pochhammer(qf ** (m - s), 1 / qf, u)
        * gauss_binom(n - s, u, qf)
        for u in range(n - s + 1)
    ]
    rhs = _frac_t_mul(prefix, tail)
    rhs += [Fraction(0)] * (len(lhs) - len(rhs))
    return lhs == rhs[: len(lhs)] and all(c == 0 for c in rhs[len(lhs) :])


def _frac_t_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def genfun_krawtchouk(N: int, p: Fraction) -> bool:
    """sum_y C(N,y) K_y(x) T^y = (1 - (1-p)/p T)^x (1+T)^(N-x) for each x."""
    for x in range(N + 1):
        lhs = [comb(N, y) * krawtchouk(y, x, p, N) for y in range(N + 1)]
        rhs = [Fraction(1)]
        for _ in range(x):
            rhs = _frac_t_mul(rhs, [Fraction(1), -(1 - p) / p])
        for _ in range(N - x):
            rhs = _frac_t_mul(rhs, [Fraction(1), Fraction(1)])
        if lhs != rhs:
            return False
    return True


def genfun_affine_krawtchouk(N: int, a: Fraction, q: Fraction) -> bool:
    """sum_y (a;q)_y [N y] K_y(x) T^y = (aT;q)_x sum_u (q^x a;q)_u [N-x u] T^u."""
    for x in range(N + 1):
        lhs = [
            q_pochhammer(a, q, y) * gauss_binom(N, y, q) * affine_q_krawtchouk(y, x, a, N, q)
            for y in range(N + 1)
        ]
        pref = [Fraction(1)]
        for i in range(x):
            pref = _frac_t_mul(pref, [Fraction(1), -a * q**i])
        tail = [q_pochhammer(q**x * a, q, u) * gauss_binom(N - x, u, q) for u in range(N - x + 1)]
        rhs = _frac_t_mul(pref, tail)
        rhs += [Fraction(0)] * (len(lhs) - len(rhs))
        if lhs != rhs[: len(lhs)] or any(c != 0 for c in rhs[len(lhs) :]):
            return False
    return True


def krawtchouk_orthogonality(N: int, p: Fraction) -> bool:
    for y in range(N + 1):
        for y2 in range(N + 1):
            acc = sum(
                p**x * (1 - p) ** (N - x) * comb(N, x) * krawtchouk(y, x, p, N) * krawtchouk(y2, x, p, N)
                for x in range(N + 1)
            )
            want = (1 - p) ** y / (comb(N, y) * p**y) if y == y2 else Fraction(0)
            if acc != want:
                return False
    return True


def affine_orthogonality(N: int, a: Fraction, q: Fraction) -> bool:
    for y in range(N + 1):
        for y2 in range(N + 1):
            acc = sum(
                a ** (N - x)
                * q_pochhammer(a, q, x)
                * gauss_binom(N, x, q)
                * affine_q_krawtchouk(y, x, a, N, q)
                * affine_q_krawtchouk(y2, x, a, N, q)
                for x in range(N + 1)
            )
            want = a**y / (q_pochhammer(a, q, y) * gauss_binom(N, y, q)) if y == y2 else Fraction(0)
            if acc != want:
                return False
    return True


# ---------------------------------------------------------------------------
# multi-orthogonality in closed form


def multi_orthogonality_closed(
    family: str, n: int, m: int | None, q: int, parts: tuple[int, ...], r: int
) -> tuple[Fraction, Fraction]:
    """Closed forms of both sides of the k-fold relation; requires sum <= r."""
    if sum(parts) > r:
        raise ValueError("the closed count needs sum of the parts <= r")
    qf = Fraction(q)
    values = range(n + 1)
    if family == "vec":
        weight = lambda s: (qf - 1) ** s * comb(n, s)
    elif family == "mat":
        weight = lambda s: Fraction(-1) ** s * qf ** comb(s, 2) * q_pochhammer(qf**m, 1 / qf, s) * gauss_binom(n, s, qf)
    else:
        raise ValueError("closed multi-orthogonality exists for vec and mat only")
    lhs = Fraction(0)
    for s in values:
        term = weight(s) * closed_form_phi(family, n, m, s, r, qf)
        for ri in parts:
            term *= closed_form_phi(family, n, m, s, ri, qf)
        lhs += term
    if sum(parts) < r:
        return lhs, Fraction(0)
    if family == "vec":
        count = Fraction(factorial(n), factorial(n - r))
        for ri in parts:
            count /= factorial(ri)
        rhs = count * (qf - 1) ** r * qf**n
    else:
        cross = sum(parts[i] * parts[j] for i in range(len(parts)) for j in range(i + 1, len(parts)))
        rhs = (
            Fraction(-1) ** r
            * qf ** (n * m + comb(r, 2) + cross)
            * q_pochhammer(qf**m, 1 / qf, r)
            * q_pochhammer(qf**n, 1 / qf, r)
        )
        for ri in parts:
            rhs /= q_pochhammer(qf, qf, ri)
    return lhs, rhs
