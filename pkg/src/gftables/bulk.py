"""Vectorized enumeration for prime fields.

Brute-force character sums only need, per element, its orbit label and the
value of a handful of F_p linear functionals (one per table row). Both are
computed here in numpy batches and folded into integer histograms indexed by
(label, functional value); the exact cyclotomic sums are then assembled from
the histograms. Everything is integer arithmetic, so the results are
bit-identical to the element-by-element path.

Only fields with e = 1 come through here; extension fields take the pure
Python path in transform.py (their spaces are all small).
"""

from __future__ import annotations

import numpy as np

from .spaces import AltMat, MatRect, Space, SymGL, SymScaled, VecWreath

CHUNK = 1 << 19


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int32)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    return inv


def _legendre_table(p: int) -> np.ndarray:
    # sgn on F_p with sgn(0) = +1
    tab = np.ones(p, dtype=np.int64)
    for x in range(1, p):
        tab[x] = 1 if pow(x, (p - 1) // 2, p) == 1 else -1
    return tab


def _digits(start: int, stop: int, dim: int, q: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)[:, None]
    pows = q ** np.arange(dim, dtype=np.int64)[None, :]
    return ((idx // pows) % q).astype(np.int32)


def batch_rank(mats: np.ndarray, p: int, inv: np.ndarray) -> np.ndarray:
    """Ranks of a (B, n, m) batch over F_p by masked Gaussian elimination.

    All matrices advance through the pivot columns in lockstep; matrices with
    no pivot candidate in a column get a zero elimination factor, which makes
    the update a no-op for them. This runs on whole arrays in place, no
    per-matrix fancy indexing on the cubic data.
    """
    M = mats
    B, nrows, ncols = M.shape
    rank = np.zeros(B, dtype=np.int64)
    row = np.zeros(B, dtype=np.int64)
    ridx = np.arange(nrows)
    barange = np.arange(B)
    for col in range(ncols):
        cand = (M[:, :, col] != 0) & (ridx[None, :] >= row[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        r0 = np.where(has, row, 0)
        r1 = np.where(has, cand.argmax(axis=1), 0)
        needswap = has & (r0 != r1)
        if needswap.any():
            bs = barange[needswap]
            s0, s1 = r0[needswap], r1[needswap]
            tmp = M[bs, s0, :].copy()
            M[bs, s0, :] = M[bs, s1, :]
            M[bs, s1, :] = tmp
        pivrow = M[barange, r0, :]  # gathered copy, (B, ncols)
        fscale = inv[pivrow[:, col]] * has  # zero where inactive
        f = (M[:, :, col] * fscale[:, None]) % p
        f[ridx[None, :] <= r0[:, None]] = 0
        M -= f[:, :, None] * pivrow[:, None, :]
        M %= p
        row += has
        rank += has
    return rank


def batch_sym_rank_sign(mats: np.ndarray, p: int, inv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(rank, discriminant) of symmetric batches under congruence.

    Mirrors spaces.symmetric_sign: diagonal pivot when available, otherwise
    the off-diagonal repair row/column addition (valid since p is odd). The
    discriminant is the product of the pivots mod p; its quadratic character
    is the orbit sign.
    """
    M = mats % p
    B, n, _ = M.shape
    rank = np.zeros(B, dtype=np.int64)
    disc = np.ones(B, dtype=np.int64)
    didx = np.arange(n)
    iu, ju = np.triu_indices(n, k=1)
    for k in range(n):
        dvals = M[:, didx, didx]
        cand = (dvals != 0) & (didx[None, :] >= k)
        hasdiag = cand.any(axis=1)
        pivot = np.argmax(cand, axis=1)
        need = ~hasdiag
        if need.any() and len(iu):
            sub = M[:, iu, ju]
            okpair = (sub != 0) & (iu[None, :] >= k)
            haspair = okpair.any(axis=1) & need
            if haspair.any():
                b = np.nonzero(haspair)[0]
                first = np.argmax(okpair[b], axis=1)
                i0, j0 = iu[first], ju[first]
                M[b, i0, :] = (M[b, i0, :] + M[b, j0, :]) % p
                M[b, :, i0] = (M[b, :, i0] + M[b, :, j0]) % p
                pivot[b] = i0
                hasdiag = hasdiag | haspair
        if not hasdiag.any():
            break
        b = np.nonzero(hasdiag)[0]
        r1 = pivot[b]
        tmp = M[b, k, :].copy()
        M[b, k, :] = M[b, r1, :]
        M[b, r1, :] = tmp
        tmp = M[b, :, k].copy()
        M[b, :, k] = M[b, :, r1]
        M[b, :, r1] = tmp
        d = M[b, k, k]
        disc[b] = disc[b] * d % p
        rank[b] += 1
        fin = inv[d]
        if k + 1 < n:
            f = (M[b, k + 1 :, k] * fin[:, None]) % p
            M[b, k + 1 :, :] = (M[b, k + 1 :, :] - f[:, :, None] * M[b, k, None, :]) % p
            g = (M[b, k, k + 1 :] * fin[:, None]) % p
            M[b, :, k + 1 :] = (M[b, :, k + 1 :] - g[:, None, :] * M[b, :, k, None]) % p
    return rank, disc


def _build_matrices(space: Space, digits: np.ndarray) -> np.ndarray:
    B = digits.shape[0]
    p = space.field.p
    if isinstance(space, MatRect):
        return digits.reshape(B, space.n, space.m).copy()
    n = space.n
    M = np.zeros((B, n, n), dtype=np.int32)
    for k, (i, j) in enumerate(space.coords):
        M[:, i, j] = digits[:, k]
        if i != j:
            M[:, j, i] = (-digits[:, k]) % p if isinstance(space, AltMat) else digits[:, k]
    return M


def _alt_labels_pfaffian(space: AltMat, digits: np.ndarray, p: int) -> np.ndarray:
    """Half-rank of skew matrices with n <= 5 from principal Pfaffians.

    The rank of a skew matrix is the size of its largest nonsingular
    principal submatrix, and the 4x4 principal minors are squares of
    Pfaffians a_ij a_kl - a_ik a_jl + a_il a_jk. With n <= 5 the rank is
    at most 4, so a few vector products replace Gaussian elimination.
    """
    import itertools

    n = space.n
    pos = {pair: k for k, pair in enumerate(space.coords)}
    nonzero = (digits != 0).any(axis=1)
    if n < 4:
        return nonzero.astype(np.int64)
    col = lambda i, j: digits[:, pos[(i, j)]].astype(np.int64)
    rank4 = np.zeros(len(digits), dtype=bool)
    for i, j, k, l in itertools.combinations(range(n), 4):
        pf = (col(i, j) * col(k, l) - col(i, k) * col(j, l) + col(i, l) * col(j, k)) % p
        rank4 |= pf != 0
    return np.where(rank4, 2, nonzero.astype(np.int64))


def _label_indices(space: Space, digits: np.ndarray, inv: np.ndarray, leg: np.ndarray) -> np.ndarray:
    p = space.field.p
    if isinstance(space, VecWreath):
        return (digits != 0).sum(axis=1)
    if isinstance(space, AltMat) and space.n <= 5:
        return _alt_labels_pfaffian(space, digits, p)
    if isinstance(space, (MatRect, AltMat)):
        ranks = batch_rank(_build_matrices(space, digits), p, inv)
        return ranks // 2 if isinstance(space, AltMat) else ranks
    if isinstance(space, (SymGL, SymScaled)):
        ranks, disc = batch_sym_rank_sign(_build_matrices(space, digits), p, inv)
        signs = leg[disc]
        lut = np.zeros((space.n + 1, 2), dtype=np.int64)
        index = {lbl: i for i, lbl in enumerate(space.labels())}
        for lbl, i in index.items():
            if lbl.r == 0:
                lut[0, :] = i
            elif lbl.sign is None:
                lut[lbl.r, :] = i
            else:
                lut[lbl.r, 0 if lbl.sign > 0 else 1] = i
        return lut[ranks, (signs < 0).astype(np.int64)]
    raise TypeError(f"no bulk classifier for {type(space).__name__}")


def orbit_counts(space: Space, coefvecs: list[list[int]]) -> tuple[list[np.ndarray], np.ndarray]:
    """Histogram pass over the whole space.

    coefvecs[r][k] is the F_p coefficient of free coordinate k in the r-th
    linear functional. Returns one (n_labels, p) count array per functional
    plus the orbit sizes.
    """
    if space.field.e != 1:
        raise ValueError("bulk path requires a prime field")
    p = space.field.p
    nlab = len(space.labels())
    inv = _inverse_table(p)
    leg = _legendre_table(p) if p > 2 else np.ones(2, dtype=np.int64)
    hists = [np.zeros(nlab * p, dtype=np.int64) for _ in coefvecs]
    sizes = np.zeros(nlab, dtype=np.int64)
    for start in range(0, space.size, CHUNK):
        stop = min(start + CHUNK, space.size)
        digits = _digits(start, stop, space.dim, p)
        lab = _label_indices(space, digits, inv, leg)
        sizes += np.bincount(lab, minlength=nlab)
        base = lab * p
        for r, coef in enumerate(coefvecs):
            t = np.zeros(stop - start, dtype=np.int64)
            for k, c in enumerate(coef):
                if c:
                    t += digits[:, k] * c
            hists[r] += np.bincount(base + t % p, minlength=nlab * p)
    return [h.reshape(nlab, p) for h in hists], sizes
