"""Operator-norm machinery for word-indexed block operators.

Covers the computable sides of the norm estimates that drive the spectral
gap argument: finite compressions of the left regular representation (lower
bounds), the operator-coefficient generalization of the Haagerup inequality
(upper bounds via block matrices indexed by word splits), the block
Hilbert-Schmidt relaxation, and exact exponential sums of interval lengths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .bergman import BergmanBasis, operator_norm
from .coarse import WordTable
from .schottky import BranchCutError, SchottkyData
from .words import Word, count_words, mirror_letter, reduced_product, words_of_length

BLOCK_BUDGET = int(2e8)  # matrix entries


class BlockBudgetError(MemoryError):
    """The requested block matrix would exceed the configured entry budget."""


# ---------------------------------------------------------------------------
# compressed regular representation


class CompressedRegularRep:
    """Left regular representation compressed to the word ball of radius R.

    Gives the partial permutation action of left multiplication on the ball;
    compression norms are always lower bounds for the full l2(Gamma) norms.
    """

    def __init__(self, n_gens: int, radius: int):
        if radius < 0:
            raise ValueError("radius must be >= 0")
        self.n_gens = n_gens
        self.radius = radius
        self.ball: list[tuple[int, ...]] = []
        for ell in range(radius + 1):
            self.ball.extend(w.letters for w in words_of_length(n_gens, ell))
        self.index = {tup: i for i, tup in enumerate(self.ball)}
        self._actions: dict[tuple[int, ...], tuple[np.ndarray, np.ndarray]] = {}

    @property
    def size(self) -> int:
        return len(self.ball)

    def action_indices(self, gamma: Word) -> tuple[np.ndarray, np.ndarray]:
        """(rows, cols) of the partial permutation u -> gamma u inside the ball."""
        if len(gamma) > 2 * self.radius:
            raise ValueError(
                f"|gamma| = {len(gamma)} exceeds 2R = {2 * self.radius}"
            )
        cached = self._actions.get(gamma.letters)
        if cached is not None:
            return cached
        rows, cols = [], []
        for j, u in enumerate(self.ball):
            image = reduced_product(gamma, Word(u, self.n_gens)).letters
            i = self.index.get(image)
            if i is not None:
                rows.append(i)
                cols.append(j)
        out = (np.asarray(rows, dtype=np.intp), np.asarray(cols, dtype=np.intp))
        self._actions[gamma.letters] = out
        return out

    def action_matrix(self, gamma: Word) -> sp.csr_matrix:
        rows, cols = self.action_indices(gamma)
        vals = np.ones(len(rows))
        return sp.csr_matrix((vals, (rows, cols)), shape=(self.size, self.size))


def _sparse_norm(mat: sp.spmatrix) -> float:
    """Largest singular value of a sparse matrix, deterministic start."""
    n = min(mat.shape)
    if n <= 300:
        return operator_norm(mat.toarray())
    v0 = np.full(mat.shape[1], 1.0 / np.sqrt(mat.shape[1]))
    vals = spla.svds(mat, k=1, v0=v0, return_singular_vectors=False, maxiter=5000)
    return float(vals[0])


def haagerup_compressed(
    alpha: dict[tuple[int, ...], complex],
    m: int,
    rep: CompressedRegularRep,
) -> tuple[float, float]:
    """(compressed norm, (m+1) ||alpha||_2) for coefficients on Gamma_m.

    The left side is || P_R sum_w alpha_w rho(w) P_R ||, a lower bound for
    the free-group convolution norm, so it can never exceed the right side.
    """
    if m > rep.radius:
        raise ValueError(f"need R >= m, got R = {rep.radius} < m = {m}")
    total = sp.csr_matrix((rep.size, rep.size), dtype=complex)
    norm2 = 0.0
    for tup, coeff in sorted(alpha.items()):
        if len(tup) != m:
            raise ValueError(f"coefficient word {tup} not in Gamma_{m}")
        rows, cols = rep.action_indices(Word(tup, rep.n_gens))
        total += sp.csr_matrix(
            (np.full(len(rows), coeff), (rows, cols)),
            shape=(rep.size, rep.size),
        )
        norm2 += abs(coeff) ** 2
    lhs = _sparse_norm(total)
    rhs = (m + 1) * float(np.sqrt(norm2))
    return lhs, rhs


# ---------------------------------------------------------------------------
# block Hilbert-Schmidt bound


def hs_bound(blocks) -> float:
    """(sum_i || sum_j T_ij T_ij* ||)^(1/2) for a 2-D grid of blocks.

    blocks[i][j] is a complex matrix or None; rows must be conformable.
    Bounds the operator norm of the flat block matrix from above.
    """
    total = 0.0
    for row in blocks:
        acc = None
        for blk in row:
            if blk is None:
                continue
            blk = np.asarray(blk)
            g = blk @ blk.conj().T
            acc = g if acc is None else acc + g
        if acc is not None:
            total += operator_norm(acc)
    return float(np.sqrt(total))


# ---------------------------------------------------------------------------
# word-sum coefficient blocks T_{w,s}


@dataclass
class CompactTws:
    """T_{w,s} = sum of the one-letter continuations of w^-1, stored block-wise.

    The summand blocks all read from disk slot mirror(E(w)) and write to the
    2N - 1 slots given by the continuation letters, so only those M x M
    blocks are kept.
    """

    word: tuple[int, ...]
    col_slot: int
    blocks: dict[int, np.ndarray]

    def dense(self, n_slots: int, degree: int) -> np.ndarray:
        m = degree
        out = np.zeros((n_slots * m, n_slots * m), dtype=complex)
        for b, blk in self.blocks.items():
            out[(b - 1) * m : b * m, (self.col_slot - 1) * m : self.col_slot * m] = blk
        return out

    def norm(self) -> float:
        """Operator norm; the blocks stack into one tall column."""
        stacked = np.vstack([self.blocks[b] for b in sorted(self.blocks)])
        return operator_norm(stacked)


def all_tws(basis: BergmanBasis, ell: int, s: complex) -> dict[tuple[int, ...], CompactTws]:
    """T_{w,s} for every w in Gamma_ell at a fixed parameter s.

    Every block M_{v,s} with v in Gamma_{ell+1} belongs to exactly one T
    (the one with w = backspace(v)^-1), so a single depth-first sweep over
    the (ell+1)-words assembles them all; partial chain-rule data is shared
    between words with a common suffix.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    data = basis.data
    n = data.n_gens
    out: dict[tuple[int, ...], CompactTws] = {}

    def emit(letters: tuple[int, ...], theta: np.ndarray, current: np.ndarray):
        v = Word(letters, n)
        weight = np.exp(s * theta)
        src = basis.eval_basis(v.start, current)
        block = basis.project_samples(v.end, weight[:, None] * src)
        g = letters[:-1]
        w = tuple(mirror_letter(a, n) for a in reversed(g))
        rec = out.get(w)
        if rec is None:
            out[w] = rec = CompactTws(word=w, col_slot=v.start, blocks={})
        rec.blocks[v.end] = block

    def grow(letters: tuple[int, ...], theta: np.ndarray, current: np.ndarray):
        depth = len(letters) - 1
        if depth == ell:
            emit(letters, theta, current)
            return
        banned = mirror_letter(letters[0], n)
        for b in data.letters:
            if b == banned:
                continue
            g = data.gen(b)
            deriv = g.derivative(current)
            if np.any((deriv.imag == 0.0) & (deriv.real <= 0.0)):
                raise BranchCutError(f"branch cut while extending {letters}")
            grow((b,) + letters, theta + np.log(deriv), g(current))

    for last in data.letters:
        z = basis.nodes[last]
        grow((last,), np.zeros_like(z), z)
    return out


def assemble_tws(basis: BergmanBasis, w: Word, s: complex) -> np.ndarray:
    """Dense full-space matrix of T_{w,s} (all slots, mostly zero blocks)."""
    from .bergman import assemble_mws

    if len(w) < 1:
        raise ValueError("T blocks need |w| >= 1")
    n = basis.data.n_gens
    winv = w.inverse()
    out = np.zeros((basis.dim, basis.dim), dtype=complex)
    m = basis.degree
    banned = mirror_letter(winv.end, n)
    for b in basis.data.letters:
        if b == banned:
            continue
        v = Word(winv.letters + (b,), n)
        blk = assemble_mws(basis, v, s)
        out[(b - 1) * m : b * m, (winv.start - 1) * m : winv.start * m] += blk
    return out


# ---------------------------------------------------------------------------
# split-indexed block matrices and the (ell + 1) max-over-splits bound


def buchholz_block(
    basis: BergmanBasis,
    ell: int,
    j: int,
    s: complex,
    budget: int = BLOCK_BUDGET,
    tws: dict[tuple[int, ...], CompactTws] | None = None,
) -> np.ndarray:
    """Flat matrix of the split-(j, ell-j) block operator.

    Rows are indexed by Gamma_{ell-j} x slots, columns by Gamma_j x slots;
    the (w_n, w_m) block is T_{w_m w_n, s} when the concatenation is reduced.
    """
    if not 0 <= j <= ell:
        raise ValueError("need 0 <= j <= ell")
    n = basis.data.n_gens
    n_rows = count_words(n, ell - j)
    n_cols = count_words(n, j)
    dim = basis.dim
    entries = n_rows * n_cols * dim * dim
    if entries > budget:
        raise BlockBudgetError(
            f"block matrix would hold {entries:.3g} entries "
            f"(budget {budget:.3g})"
        )
    if tws is None:
        tws = all_tws(basis, ell, s)
    row_index = {w.letters: i for i, w in enumerate(words_of_length(n, ell - j))}
    col_index = {w.letters: i for i, w in enumerate(words_of_length(n, j))}
    out = np.zeros((n_rows * dim, n_cols * dim), dtype=complex)
    for w_tup, t in sorted(tws.items()):
        wm, wn = w_tup[:j], w_tup[j:]
        r = row_index[wn] * dim
        c = col_index[wm] * dim
        out[r : r + dim, c : c + dim] = t.dense(2 * n, basis.degree)
    return out


class _TwsStack:
    """All T blocks of one word length stacked for vectorized application."""

    def __init__(self, basis: BergmanBasis, tws: dict[tuple[int, ...], CompactTws]):
        n_slots = 2 * basis.data.n_gens
        deg = basis.degree
        self.words = sorted(tws)
        self.deg = deg
        self.n_slots = n_slots
        nw = len(self.words)
        self.blocks = np.zeros((nw, n_slots, deg, deg), dtype=complex)
        self.col_slot = np.empty(nw, dtype=np.intp)
        for i, w in enumerate(self.words):
            t = tws[w]
            self.col_slot[i] = t.col_slot - 1
            for b, blk in t.blocks.items():
                self.blocks[i, b - 1] = blk
        self.blocks_conj = self.blocks.conj()


def _split_norm(
    basis: BergmanBasis,
    ell: int,
    j: int,
    stack: _TwsStack,
    tol: float = 1e-8,
    maxiter: int = 5000,
) -> float:
    """Operator norm of the split-(j, ell-j) block operator, matrix-free.

    Vectors live on Gamma_j x slots x degree; one T block acts per word of
    Gamma_ell, reading from the split's prefix and writing to its suffix.
    """
    n = basis.data.n_gens
    deg = stack.deg
    rows = {w.letters: i for i, w in enumerate(words_of_length(n, ell - j))}
    cols = {w.letters: i for i, w in enumerate(words_of_length(n, j))}
    src_idx = np.asarray([cols[w[:j]] for w in stack.words], dtype=np.intp)
    dst_idx = np.asarray([rows[w[j:]] for w in stack.words], dtype=np.intp)
    n_rows, n_cols = len(rows), len(cols)

    def fwd(x: np.ndarray) -> np.ndarray:
        src = x[src_idx, stack.col_slot]  # (W, deg)
        y = np.einsum("wbij,wj->wbi", stack.blocks, src)
        out = np.zeros((n_rows, stack.n_slots, deg), dtype=complex)
        np.add.at(out, dst_idx, y)
        return out

    def adj(y: np.ndarray) -> np.ndarray:
        sub = y[dst_idx]  # (W, slots, deg)
        acc = np.einsum("wbij,wbi->wj", stack.blocks_conj, sub)
        out = np.zeros((n_cols, stack.n_slots, deg), dtype=complex)
        np.add.at(out, (src_idx, stack.col_slot), acc)
        return out

    size = n_cols * stack.n_slots * deg
    v = np.full((n_cols, stack.n_slots, deg), 1.0 / np.sqrt(size), dtype=complex)
    v += np.linspace(0.0, 1.0, size).reshape(v.shape) / (3.0 * np.sqrt(size))
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(maxiter):
        u = fwd(v)
        w = adj(u)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        new_sigma = float(np.linalg.norm(u))
        v = w / nw
        if abs(new_sigma - sigma) <= tol * max(new_sigma, 1e-300):
            return new_sigma
        sigma = new_sigma
    return sigma


@dataclass(frozen=True)
class BuchholzBound:
    """(ell+1) * max over splits of the block-operator norm, or HS fallback."""

    ell: int
    s: complex
    value: float
    per_split: tuple[float, ...]
    hs_fallback: bool


def buchholz_bound(
    basis: BergmanBasis,
    ell: int,
    s: complex,
    budget: int = BLOCK_BUDGET,
) -> BuchholzBound:
    """Upper bound (ell+1) max_j ||R(j, ell-j)|| on the limit-operator norm.

    The split norms are computed matrix-free from the T blocks.  When even
    the T-block store would exceed the budget the bound degrades to the
    Hilbert-Schmidt relaxation (sum of squared block norms), flagged in the
    result.
    """
    n = basis.data.n_gens
    t_entries = count_words(n, ell) * (2 * n - 1) * basis.degree**2
    if t_entries > budget:
        sq = _streaming_frobenius_sq(basis, ell, s)
        return BuchholzBound(
            ell=ell, s=s, value=(ell + 1) * float(np.sqrt(sq)),
            per_split=(), hs_fallback=True,
        )
    stack = _TwsStack(basis, all_tws(basis, ell, s))
    per = tuple(_split_norm(basis, ell, j, stack) for j in range(ell + 1))
    return BuchholzBound(
        ell=ell, s=s, value=(ell + 1) * max(per), per_split=per, hs_fallback=False
    )


def _streaming_frobenius_sq(basis: BergmanBasis, ell: int, s: complex) -> float:
    """sum over Gamma_{ell+1} of ||M block||_F^2 without storing the blocks.

    Dominates sum_w ||T_{w,s}||_op^2 (the Hilbert-Schmidt relaxation of every
    split norm), since the summands of one T have orthogonal images.
    """
    data = basis.data
    n = data.n_gens
    total = 0.0

    def grow(letters, theta, current):
        nonlocal total
        depth = len(letters) - 1
        if depth == ell:
            v = Word(letters, n)
            weight = np.exp(s * theta)
            src = basis.eval_basis(v.start, current)
            block = basis.project_samples(v.end, weight[:, None] * src)
            total += float(np.sum(np.abs(block) ** 2))
            return
        banned = mirror_letter(letters[0], n)
        for b in data.letters:
            if b == banned:
                continue
            g = data.gen(b)
            grow((b,) + letters, theta + np.log(g.derivative(current)), g(current))

    for last in data.letters:
        z = basis.nodes[last]
        grow((last,), np.zeros_like(z), z)
    return total


# ---------------------------------------------------------------------------
# exponential sums and the compressed limit-operator norm


def exp_sum(
    data: SchottkyData, k: int, eps: float, delta: float, table: WordTable | None = None
) -> float:
    """Exact finite sum of Upsilon_w^(delta + eps) over Gamma_k."""
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must be in (0, 1)")
    if k < 1:
        raise ValueError("k must be >= 1")
    if table is None or table.max_len < k:
        table = WordTable(data, k)
    power = delta + eps
    return float(
        sum(u**power for t, u in sorted(table.upsilons.items()) if len(t) == k)
    )


def compressed_limit_norm(
    basis: BergmanBasis,
    ell: int,
    s: complex,
    rep: CompressedRegularRep,
    tol: float = 1e-6,
    maxiter: int = 600,
) -> float:
    """Norm of sum_w T_{w,s} (x) rho_Gamma(w) compressed to the radius-R ball.

    A lower bound for the limit-operator norm, used to sandwich the
    Buchholz upper bound.  Power iteration on the matrix-free compression.
    """
    tws = all_tws(basis, ell, s)
    deg = basis.degree
    nb = rep.size
    dim = basis.dim
    actions = {}
    for w_tup, t in sorted(tws.items()):
        rows, cols = rep.action_indices(Word(w_tup, rep.n_gens))
        actions[w_tup] = (rows, cols, t)

    def fwd(x: np.ndarray) -> np.ndarray:
        out = np.zeros((dim, nb), dtype=complex)
        for rows, cols, t in actions.values():
            y = np.zeros((dim, len(cols)), dtype=complex)
            src = x[(t.col_slot - 1) * deg : t.col_slot * deg, cols]
            for b, blk in t.blocks.items():
                y[(b - 1) * deg : b * deg] = blk @ src
            out[:, rows] += y
        return out

    def adj(y: np.ndarray) -> np.ndarray:
        out = np.zeros((dim, nb), dtype=complex)
        for rows, cols, t in actions.values():
            acc = np.zeros((deg, len(rows)), dtype=complex)
            sub = y[:, rows]
            for b, blk in t.blocks.items():
                acc += blk.conj().T @ sub[(b - 1) * deg : b * deg]
            out[(t.col_slot - 1) * deg : t.col_slot * deg, cols] += acc
        return out

    v = np.full((dim, nb), 1.0 / np.sqrt(dim * nb), dtype=complex)
    v += np.linspace(0.0, 1.0, dim * nb).reshape(dim, nb) / (3.0 * np.sqrt(dim * nb))
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(maxiter):
        u = fwd(v)
        w = adj(u)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        new_sigma = float(np.linalg.norm(u))
        v = w / nw
        if abs(new_sigma - sigma) <= tol * max(new_sigma, 1e-300):
            return new_sigma
        sigma = new_sigma
    return sigma
