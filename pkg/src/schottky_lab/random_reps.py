"""Uniformly random homomorphisms to symmetric groups and the induced
unitary representations on l2([n]) and its mean-zero subspace.

A homomorphism is determined by the images of the N basis generators, so a
uniform sample is N independent uniform permutations.  Randomness comes from
numpy's PCG64 generator seeded through SeedSequence (rng.permutation is an
unbiased Fisher-Yates shuffle); per-trial seeds are derived by hashing
(master_seed, trial_index) through SeedSequence, which keeps Monte-Carlo
runs reproducible under any scheduling order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bergman import BergmanBasis, assemble_transfer, operator_norm
from .words import Word


def trial_seed(master_seed: int, trial_index: int) -> int:
    """Deterministic 64-bit per-trial seed from (master seed, trial index)."""
    ss = np.random.SeedSequence([int(master_seed), int(trial_index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class PermutationRep:
    """Sampled homomorphism: one permutation of [n] per basis generator.

    perms[j][i] is the 0-based image of point i under the j-th basis
    generator; mirror letters act by the inverse permutations.
    """

    n: int
    perms: tuple[tuple[int, ...], ...]
    seed: int | None = None

    def __post_init__(self):
        for p in self.perms:
            if sorted(p) != list(range(self.n)):
                raise ValueError(f"not a permutation of [{self.n}]: {p}")

    @property
    def n_gens(self) -> int:
        return len(self.perms)

    def perm_of_letter(self, a: int) -> np.ndarray:
        """Permutation array of letter a in 1..2N (mirrors act inversely)."""
        n_gens = self.n_gens
        if 1 <= a <= n_gens:
            return np.asarray(self.perms[a - 1], dtype=np.intp)
        fwd = np.asarray(self.perms[a - n_gens - 1], dtype=np.intp)
        inv = np.empty_like(fwd)
        inv[fwd] = np.arange(self.n, dtype=np.intp)
        return inv

    def perm_of_word(self, w: Word) -> np.ndarray:
        """phi(w) as a permutation array, phi(w1 w2) = phi(w1) o phi(w2)."""
        sigma = np.arange(self.n, dtype=np.intp)
        for a in reversed(w.letters):
            sigma = self.perm_of_letter(a)[sigma]
        return sigma

    def fixed_points(self, a: int) -> int:
        sigma = self.perm_of_letter(a)
        return int(np.sum(sigma == np.arange(self.n)))


def sample_hom(n: int, n_gens: int, seed: int) -> PermutationRep:
    """Uniform random homomorphism of the rank-n_gens free group into S_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    perms = tuple(tuple(int(v) for v in rng.permutation(n)) for _ in range(n_gens))
    return PermutationRep(n=n, perms=perms, seed=int(seed))


def identity_hom(n: int, n_gens: int) -> PermutationRep:
    """The trivial cover: every generator acts as the identity."""
    ident = tuple(range(n))
    return PermutationRep(n=n, perms=(ident,) * n_gens, seed=None)


def perm_matrix(sigma: np.ndarray) -> np.ndarray:
    n = len(sigma)
    p = np.zeros((n, n), dtype=complex)
    p[sigma, np.arange(n)] = 1.0
    return p


def perm_rep_matrices(rep: PermutationRep) -> np.ndarray:
    """Full permutation representation: shape (2N, n, n)."""
    two_n = 2 * rep.n_gens
    out = np.empty((two_n, rep.n, rep.n), dtype=complex)
    for a in range(1, two_n + 1):
        out[a - 1] = perm_matrix(rep.perm_of_letter(a))
    return out


def mean_zero_basis(n: int) -> np.ndarray:
    """Orthonormal staircase basis of the mean-zero subspace, shape (n, n-1).

    Column k-1 is (1, ..., 1, -k, 0, ..., 0) / sqrt(k (k+1)) with k ones.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    b = np.zeros((n, n - 1))
    for k in range(1, n):
        b[:k, k - 1] = 1.0
        b[k, k - 1] = -float(k)
        b[:, k - 1] /= np.sqrt(k * (k + 1.0))
    return b


def rep0_matrix(rep: PermutationRep, a: int) -> np.ndarray:
    """Matrix of the mean-zero part of letter a in the staircase basis."""
    if rep.n < 2:
        raise ValueError("mean-zero part is 0-dimensional for n < 2")
    b = mean_zero_basis(rep.n)
    sigma = rep.perm_of_letter(a)
    return (b.T[:, sigma] @ b).astype(complex)


def rep0_matrices(rep: PermutationRep) -> np.ndarray:
    """Mean-zero representation matrices for all letters: (2N, n-1, n-1)."""
    if rep.n < 2:
        raise ValueError("mean-zero part is 0-dimensional for n < 2")
    b = mean_zero_basis(rep.n)
    two_n = 2 * rep.n_gens
    out = np.empty((two_n, rep.n - 1, rep.n - 1), dtype=complex)
    for a in range(1, two_n + 1):
        sigma = rep.perm_of_letter(a)
        # B^T P_sigma B with P_sigma acting by row permutation
        out[a - 1] = b.T[:, sigma] @ b
    return out


def twisted_power_norm(
    rep: PermutationRep,
    s: complex,
    ell: int,
    basis: BergmanBasis,
    mode: str = "direct",
) -> float:
    """Operator norm of the ell-th power twisted by the mean-zero part."""
    if rep.n < 2:
        return 0.0
    rho0 = rep0_matrices(rep)
    return operator_norm(assemble_transfer(basis, s, rho0, ell, mode))
