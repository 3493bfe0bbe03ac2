"""Group-invariant Fourier machinery on the orbit spaces.

The canonical matrix of a pair is

    Phi(mu, lambda) = sum over a in O(lambda) of conj(theta_b(a)),

with b any representative of O(mu) and theta_b(a) = theta(<b|a>). Because the
actions are adjoint-free, rows (character orbits) and columns (orbits) share
one label set; the code asserts the consequences it relies on (trivial row =
orbit sizes, all-ones zero column) instead of assuming them.

Brute force is the oracle of the whole package: everything downstream
(recursions, closed forms, sign-block identities) is checked against the
matrices produced here.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import bulk
from .cyclotomic import CycInt
from .gfq import CharSpec, default_char, trace
from .reporting import Report
from .spaces import BudgetError, Elem, OrbitLabel, Space

DEFAULT_BUDGET = 10**7
_BULK_THRESHOLD = 4096


# ---------------------------------------------------------------------------
# histogram layer


def _pair_coefvec(space: Space, char: CharSpec, rep: Elem) -> list:
    """Per-coordinate field coefficients of a |-> twist * <rep|a>."""
    c = char.twist
    out = []
    for w, x in zip(space.pair_weights, rep):
        v = c * x
        if w == 2:
            v = v + v
        out.append(v)
    return out


def _counts_pure(space: Space, char: CharSpec, reps: list[Elem], budget: int):
    p = space.field.p
    nlab = len(space.labels())
    index = {lbl: i for i, lbl in enumerate(space.labels())}
    coefs = [_pair_coefvec(space, char, rep) for rep in reps]
    hists = [[[0] * p for _ in range(nlab)] for _ in reps]
    sizes = [0] * nlab
    for a in space.elements(budget):
        li = index[space.classify(a)]
        sizes[li] += 1
        for r, coef in enumerate(coefs):
            acc = space.field.zero()
            for cv, av in zip(coef, a):
                acc = acc + cv * av
            hists[r][li][trace(acc)] += 1
    return hists, sizes


def _counts_bulk(space: Space, char: CharSpec, reps: list[Elem], budget: int):
    if space.size > budget:
        raise BudgetError(f"|A| = {space.size} exceeds the budget {budget}")
    coefvecs = [[v.coeffs[0] for v in _pair_coefvec(space, char, rep)] for rep in reps]
    hists, sizes = bulk.orbit_counts(space, coefvecs)
    return [h.tolist() for h in hists], sizes.tolist()


@lru_cache(maxsize=64)
def _orbit_counts_cached(space: Space, char: CharSpec, budget: int):
    reps = [space.representative(lbl) for lbl in space.labels()]
    if space.field.e == 1 and space.size >= _BULK_THRESHOLD:
        return _counts_bulk(space, char, reps, budget)
    return _counts_pure(space, char, reps, budget)


def _cyc_from_hist(p: int, hist: list[int], conj: bool) -> CycInt:
    vec = [0] * p
    for t, c in enumerate(hist):
        vec[(-t) % p if conj else t] += c
    return CycInt.reduce(p, vec)


# ---------------------------------------------------------------------------
# canonical matrices


@dataclass(frozen=True)
class CanonicalMatrix:
    space: Space
    char: CharSpec
    labels: tuple[OrbitLabel, ...]
    entries: tuple[tuple[CycInt, ...], ...]  # rows: character orbits, cols: orbits
    orbit_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = [e.as_int() for e in self.entries[0]]
        if tuple(sizes) != self.orbit_sizes:
            raise AssertionError("trivial-character row does not match orbit sizes")
        if any(self.entries[i][0] != 1 for i in range(len(self.labels))):
            raise AssertionError("zero-orbit column is not all ones")

    @property
    def nlabels(self) -> int:
        return len(self.labels)

    def index(self, label: OrbitLabel) -> int:
        return self.labels.index(label)

    def entry(self, mu: OrbitLabel, lam: OrbitLabel) -> CycInt:
        return self.entries[self.index(mu)][self.index(lam)]

    def size_of(self, label: OrbitLabel) -> int:
        return self.orbit_sizes[self.index(label)]

    def total_size(self) -> int:
        return self.space.size

    def integer_entries(self) -> list[list[int]]:
        """All entries as plain integers; fails on genuinely irrational values."""
        return [[e.as_int() for e in row] for row in self.entries]

    def check_symmetry(self) -> bool:
        """size-normalized symmetry: Phi(mu,lam)/|lam| == Phi(lam,mu)/|mu|."""
        n = self.nlabels
        for i in range(n):
            for j in range(n):
                lhs = self.entries[i][j] * self.orbit_sizes[i]
                rhs = self.entries[j][i] * self.orbit_sizes[j]
                if lhs != rhs:
                    return False
        return True

    def check_row_orthogonality(self) -> bool:
        """sum_mu |P(mu)| Phi(mu,a) conj(Phi(mu,b)) == delta_ab |O(a)| |A|."""
        n = self.nlabels
        total = self.total_size()
        for a in range(n):
            for b in range(n):
                acc = CycInt.zero(self.space.field.p)
                for mu in range(n):
                    acc = acc + self.entries[mu][a] * self.entries[mu][b].conjugate() * self.orbit_sizes[mu]
                want = self.orbit_sizes[a] * total if a == b else 0
                if acc != want:
                    return False
        return True


def brute_force_phi(space: Space, char: CharSpec | None = None, budget: int = DEFAULT_BUDGET) -> CanonicalMatrix:
    """The canonical matrix by direct character sums over every element."""
    char = char or default_char(space.field)
    hists, sizes = _orbit_counts_cached(space, char, budget)
    p = space.field.p
    entries = tuple(
        tuple(_cyc_from_hist(p, hist_row, conj=True) for hist_row in hist) for hist in hists
    )
    return CanonicalMatrix(space, char, space.labels(), entries, tuple(sizes))


def brute_phi_bar(space: Space, char: CharSpec | None = None, budget: int = DEFAULT_BUDGET):
    """Matrix of |A| times the inverse transform: sum over xi in P of xi(rep)."""
    char = char or default_char(space.field)
    hists, _sizes = _orbit_counts_cached(space, char, budget)
    p = space.field.p
    # row lambda, column mu: sum over b in O(mu) of theta(<b|rep(lambda)>)
    n = len(space.labels())
    return [[_cyc_from_hist(p, hists[lam][mu], conj=False) for mu in range(n)] for lam in range(n)]


def orbit_sizes_brute(space: Space, budget: int = DEFAULT_BUDGET) -> dict[OrbitLabel, int]:
    char = default_char(space.field)
    _hists, sizes = _orbit_counts_cached(space, char, budget)
    return dict(zip(space.labels(), sizes))


# ---------------------------------------------------------------------------
# transforms of invariant functions


@dataclass(frozen=True)
class InvariantFunction:
    """An invariant function, stored by its values on the ordered labels."""

    space: Space
    values: tuple[CycInt, ...]

    @classmethod
    def from_ints(cls, space: Space, values) -> InvariantFunction:
        p = space.field.p
        return cls(space, tuple(CycInt.integer(p, v) for v in values))

    @classmethod
    def indicator(cls, space: Space, label: OrbitLabel) -> InvariantFunction:
        p = space.field.p
        return cls(
            space,
            tuple(CycInt.integer(p, 1 if lbl == label else 0) for lbl in space.labels()),
        )


def forward_transform(phi: CanonicalMatrix, func: InvariantFunction) -> InvariantFunction:
    if func.space != phi.space:
        raise ValueError("function and matrix live on different spaces")
    vals = []
    for i in range(phi.nlabels):
        acc = CycInt.zero(phi.space.field.p)
        for j, v in enumerate(func.values):
            acc = acc + phi.entries[i][j] * v
        vals.append(acc)
    return InvariantFunction(phi.space, tuple(vals))


def inverse_transform(phi: CanonicalMatrix, func: InvariantFunction) -> InvariantFunction:
    """Exact inverse; intermediate rationals must cancel to integers."""
    if func.space != phi.space:
        raise ValueError("function and matrix live on different spaces")
    p = phi.space.field.p
    total = phi.total_size()
    vals = []
    for o in range(phi.nlabels):
        acc = [Fraction(0)] * (p - 1)
        for mu, v in enumerate(func.values):
            term = phi.entries[mu][o].conjugate() * v
            scale = Fraction(phi.orbit_sizes[mu], phi.orbit_sizes[o] * total)
            for k, c in enumerate(term.coeffs):
                acc[k] += c * scale
        if any(f.denominator != 1 for f in acc):
            raise AssertionError("inverse transform produced a non-integral value")
        vals.append(CycInt(p, [int(f) for f in acc]))
    return InvariantFunction(phi.space, tuple(vals))


@dataclass(frozen=True)
class HalfPowerFunction:
    """Values carrying a shared factor q^(half_exp/2), kept symbolic.

    The involution normalization 1/sqrt(|A|) = q^(-dim/2) may be irrational;
    two applications always land back on integer ground, so the radical never
    needs a numeric value.
    """

    space: Space
    values: tuple[Fraction, ...]
    half_exp: int

    def normalized(self) -> tuple[Fraction, ...]:
        if self.half_exp % 2:
            raise ValueError("an odd half power of q remains")
        scale = Fraction(self.space.field.q) ** (self.half_exp // 2)
        return tuple(v * scale for v in self.values)


def hat_involution(phi: CanonicalMatrix, func: InvariantFunction | HalfPowerFunction) -> HalfPowerFunction:
    """phi_hat(mu) = (1/sqrt|A|) sum_lambda Phi(mu,lambda) phi(lambda)."""
    try:
        entries = phi.integer_entries()
    except ValueError:
        raise ValueError("involution requires a real canonical matrix") from None
    if isinstance(func, HalfPowerFunction):
        vals, half = func.values, func.half_exp
    else:
        vals = tuple(Fraction(v.as_int()) for v in func.values)
        half = 0
    out = tuple(sum((Fraction(entries[i][j]) * vals[j] for j in range(phi.nlabels)), Fraction(0)) for i in range(phi.nlabels))
    return HalfPowerFunction(phi.space, out, half - phi.space.dim)


# ---------------------------------------------------------------------------
# zonal spherical values


@dataclass(frozen=True)
class RatCyc:
    """A cyclotomic integer divided by a positive integer, in lowest terms."""

    num: CycInt
    den: int

    @classmethod
    def make(cls, num: CycInt, den: int) -> RatCyc:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = den
        for c in num.coeffs:
            g = gcd(g, c)
        if g > 1:
            num = CycInt(num.p, [c // g for c in num.coeffs])
            den //= g
        return cls(num, den)


def zonal_table(phi: CanonicalMatrix) -> list[list[RatCyc]]:
    """omega_P(O) = conj(Phi(P,O)) / |O|."""
    return [
        [RatCyc.make(phi.entries[i][j].conjugate(), phi.orbit_sizes[j]) for j in range(phi.nlabels)]
        for i in range(phi.nlabels)
    ]


def zonal_table_direct(space: Space, char: CharSpec | None = None, budget: int = DEFAULT_BUDGET) -> list[list[RatCyc]]:
    """omega_P evaluated from its definition, (1/|P|) sum_{xi in P} xi."""
    char = char or default_char(space.field)
    bar = brute_phi_bar(space, char, budget)
    sizes = orbit_sizes_brute(space, budget)
    labels = space.labels()
    return [
        [RatCyc.make(bar[o][p_], sizes[labels[p_]]) for o in range(len(labels))]
        for p_ in range(len(labels))
    ]


# ---------------------------------------------------------------------------
# multi-orthogonality


def orbit_elements(space: Space, label: OrbitLabel, budget: int = DEFAULT_BUDGET) -> list[Elem]:
    return [a for a in space.elements(budget) if space.classify(a) == label]


def multi_orthogonality_check(
    phi: CanonicalMatrix,
    parts: tuple[OrbitLabel, ...],
    target: OrbitLabel,
    budget: int = DEFAULT_BUDGET,
) -> tuple[CycInt, int]:
    """Both sides of the k-fold orthogonality relation, independently.

    Left: sum_mu |P(mu)| Phi(mu,l_1) ... Phi(mu,l_k) conj(Phi(mu,l)).
    Right: the number of tuples (a_1, ..., a_k) in O(l_1) x ... x O(l_k)
    with a_1 + ... + a_k in O(l), counted by brute enumeration (to be
    multiplied by |A| by the caller).
    """
    if len(parts) < 1:
        raise ValueError("need at least one factor")
    space = phi.space
    lhs = CycInt.zero(space.field.p)
    for mu in range(phi.nlabels):
        term = CycInt.integer(space.field.p, phi.orbit_sizes[mu])
        for lbl in parts:
            term = term * phi.entry(phi.labels[mu], lbl)
        term = term * phi.entry(phi.labels[mu], target).conjugate()
        lhs = lhs + term
    lists = [orbit_elements(space, lbl, budget) for lbl in parts]
    work = 1
    for lst in lists:
        work *= len(lst)
    if work > budget:
        raise BudgetError(f"{work} tuples exceed the budget {budget}")
    count = 0
    for combo in itertools.product(*lists):
        total = combo[0]
        for a in combo[1:]:
            total = space.add(total, a)
        if space.classify(total) == target:
            count += 1
    return lhs, count


# ---------------------------------------------------------------------------
# commutative diagrams


@dataclass(frozen=True)
class Diagram:
    """A projection pi between two spaces plus an intersection character.

    pi drops the free coordinates of the upper space that are not listed in
    `embed`; embed[k] is the upper coordinate carrying lower coordinate k, so
    the adjoint of pi is zero-padding. The intersection character is theta_e.
    """

    upper: Space
    lower: Space
    embed: tuple[int, ...]
    e: Elem

    def project(self, a: Elem) -> Elem:
        return tuple(a[k] for k in self.embed)

    def lift(self, b: Elem) -> Elem:
        zero = self.upper.field.zero()
        out = [zero] * self.upper.dim
        for k, pos in enumerate(self.embed):
            out[pos] = b[k]
        return tuple(out)

    @property
    def fiber_positions(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.upper.dim) if k not in set(self.embed))

    def fiber(self, b: Elem):
        """Every upper element projecting to b, in enumeration order."""
        base = list(self.lift(b))
        field = self.upper.field
        positions = self.fiber_positions
        for idx in range(field.q ** len(positions)):
            a = base[:]
            rest = idx
            for pos in positions:
                a[pos] = field.element_at(rest % field.q)
                rest //= field.q
            yield tuple(a)

    def zeta_exponent(self, char: CharSpec, a: Elem) -> int:
        return char.exponent(self.upper.pair(self.e, a))

    def zeta_nontrivial_on_kernel(self, char: CharSpec) -> bool:
        return any(
            self.zeta_exponent(char, a) != 0 for a in self.fiber(self.lower.zero())
        )

    def label_map(self) -> dict[OrbitLabel, OrbitLabel]:
        """The induced map on orbit labels, from classify(lift(rep) + e)."""
        out = {}
        for lbl in self.lower.labels():
            lifted = self.upper.add(self.lift(self.lower.representative(lbl)), self.e)
            out[lbl] = self.upper.classify(lifted)
        return out

    def validate_label_map(self, seed: int = 0, mates: int = 50, exhaustive_below: int = 20000) -> bool:
        """The orbit-compatibility condition behind the diagram.

        classify(lift(b) + e) must be constant on lower orbits; checked on
        every lower element when the lower space is small, plus random orbit
        mates of each representative either way.
        """
        lm = self.label_map()
        if self.lower.size <= exhaustive_below:
            for b in self.lower.elements():
                lbl = self.lower.classify(b)
                up = self.upper.classify(self.upper.add(self.lift(b), self.e))
                if up != lm[lbl]:
                    return False
        rng = random.Random(seed)
        for lbl in self.lower.labels():
            rep = self.lower.representative(lbl)
            for _ in range(mates):
                b = self.lower.random_mate(rep, rng)
                if self.upper.classify(self.upper.add(self.lift(b), self.e)) != lm[lbl]:
                    return False
        return True


def standard_diagram(upper: Space, lower: Space) -> Diagram:
    """The coordinate-drop diagram between two sizes of one family.

    The intersection element e is the unit in the dropped corner: the last
    coordinate (vec), the (n,m) corner entry (mat), or the trailing 2x2
    block (alt and the scaled symmetric chain, which drop two rows).
    """
    if upper.family != lower.family or upper.field != lower.field:
        raise ValueError("diagram endpoints must share family and field")
    upper_index = {pos: k for k, pos in enumerate(upper.coords)}
    embed = tuple(upper_index[pos] for pos in lower.coords)
    one, zero = upper.field.one(), upper.field.zero()
    fam, n = upper.family, getattr(upper, "n")
    if fam == "vec":
        if lower.n != n - 1:
            raise ValueError("vec diagrams drop one coordinate")
        e_pos = n - 1
    elif fam == "mat":
        if (lower.n, lower.m) != (n - 1, upper.m - 1):
            raise ValueError("mat diagrams drop one row and one column")
        e_pos = upper_index[(n - 1, upper.m - 1)]
    elif fam == "alt":
        if lower.n != n - 2:
            raise ValueError("alt diagrams drop two rows and columns")
        e_pos = upper_index[(n - 2, n - 1)]
    elif fam == "sym":
        if lower.n != n - 1:
            raise ValueError("sym diagrams drop one row and column")
        e_pos = upper_index[(n - 1, n - 1)]
    elif fam == "symscaled":
        if lower.n != n - 2:
            raise ValueError("scaled symmetric diagrams drop two rows and columns")
        e_pos = upper_index[(n - 2, n - 1)]
    else:
        raise ValueError(f"unknown family {fam!r}")
    e = tuple(one if k == e_pos else zero for k in range(upper.dim))
    return Diagram(upper, lower, embed, e)


def pushforward_matrix(d: Diagram, char: CharSpec | None = None) -> list[list[CycInt]]:
    """E(omega, lambda): fiber sums of conj(zeta) against orbit indicators."""
    char = char or default_char(d.upper.field)
    p = d.upper.field.p
    upper_index = {lbl: i for i, lbl in enumerate(d.upper.labels())}
    out = []
    for w in d.lower.labels():
        vecs = [[0] * p for _ in upper_index]
        for a in d.fiber(d.lower.representative(w)):
            li = upper_index[d.upper.classify(a)]
            vecs[li][(-d.zeta_exponent(char, a)) % p] += 1
        out.append([CycInt.reduce(p, v) for v in vecs])
    return out


def diagram_check(
    d: Diagram,
    phi_upper: CanonicalMatrix,
    phi_lower: CanonicalMatrix,
    char: CharSpec | None = None,
) -> Report:
    """All identities the diagram implies between the two canonical matrices."""
    char = char or default_char(d.upper.field)
    rep = Report()
    where = f"{d.upper.describe()} -> {d.lower.describe()}"
    rep.add("diagram/orbit-compatibility", where, d.validate_label_map())
    E = pushforward_matrix(d, char)
    lm = d.label_map()
    up_labels, low_labels = phi_upper.labels, phi_lower.labels

    ok = True
    for wi, w in enumerate(low_labels):
        ui = up_labels.index(lm[w])
        for lj in range(len(up_labels)):
            acc = CycInt.zero(d.upper.field.p)
            for gi in range(len(low_labels)):
                acc = acc + E[gi][lj] * phi_lower.entries[wi][gi]
            if acc != phi_upper.entries[ui][lj]:
                ok = False
                rep.add("diagram/pushforward-factors", f"{where} at ({w},{up_labels[lj]})", False)
    rep.add("diagram/pushforward-factors", where, ok)

    ratio = d.upper.size // d.lower.size
    ok = True
    preimages = {mu: [w for w in low_labels if lm[w] == mu] for mu in up_labels}
    for gi, g in enumerate(low_labels):
        for mi, mu in enumerate(up_labels):
            acc = CycInt.zero(d.upper.field.p)
            for lj in range(len(up_labels)):
                acc = acc + E[gi][lj].conjugate() * phi_upper.entries[lj][mi]
            pre = preimages[mu]
            if len(pre) == 0:
                want = CycInt.zero(d.upper.field.p)
            elif len(pre) == 1:
                want = phi_lower.entry(g, pre[0]) * ratio
            else:
                rep.skip("diagram/inverse-factors", f"{where} at ({g},{mu})", "multiple preimages")
                continue
            if acc != want:
                ok = False
                rep.add("diagram/inverse-factors", f"{where} at ({g},{mu})", False)
    rep.add("diagram/inverse-factors", where, ok)

    if d.zeta_nontrivial_on_kernel(char):
        ok = all(
            sum(row, CycInt.zero(d.upper.field.p)) == 0 for row in (list(r) for r in E)
        )
        rep.add("diagram/kernel-row-sums", where, ok)
    return rep
