"""Finite-dimensional transfer operators on Bergman spaces of the Schottky
disks.

Each disk D_a carries the orthonormal monomial basis

    e_{a,k}(z) = sqrt((k+1)/pi) (z - c_a)^k / r_a^(k+1),   k = 0..M-1,

and analytic functions are projected onto it by trapezoidal contour
quadrature on the circle of radius r_a/2 (the integrands are analytic on the
full disk, so the quadrature converges geometrically).  Transfer operators
are assembled word by word: the block of a word w maps the basis of
D_{S(w)} to the basis of D_{E(w)} through the weighted composition
exp(s * theta(w, .)) f(backspace(w) .), and a unitary representation twists
each block by rho(backspace(w)^-1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .schottky import BranchCutError, SchottkyData
from .words import Word, mirror_letter

UNITARY_TOL = 1e-10

ASSEMBLY_MODES = ("direct", "matrix-power", "kronecker")


class BergmanBasis:
    """Per-disk truncated orthonormal basis with cached quadrature data."""

    def __init__(self, data: SchottkyData, degree: int = 16, quad_nodes: int | None = None):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.data = data
        self.degree = degree
        self.quad_nodes = quad_nodes if quad_nodes is not None else max(64, 4 * degree)
        q = self.quad_nodes
        roots = np.exp(2j * np.pi * np.arange(q) / q)
        self.nodes: dict[int, np.ndarray] = {}
        self.proj: dict[int, np.ndarray] = {}
        js = np.arange(degree)
        for a in data.letters:
            disk = data.disk(a)
            rho = 0.5 * disk.radius
            self.nodes[a] = disk.center + rho * roots
            # row j recovers sqrt(pi/(j+1)) r^(j+1) * (j-th Taylor coefficient)
            dft = roots[None, :] ** (-js[:, None])
            scale = (
                np.sqrt(np.pi / (js + 1.0))
                * disk.radius ** (js + 1.0)
                / (q * rho**js)
            )
            self.proj[a] = scale[:, None] * dft

    @property
    def n_slots(self) -> int:
        return 2 * self.data.n_gens

    @property
    def dim(self) -> int:
        """Total dimension of the truncated space over all disks."""
        return self.n_slots * self.degree

    def eval_basis(self, a: int, z: np.ndarray) -> np.ndarray:
        """Matrix e_{a,k}(z_i) of shape z.shape + (degree,)."""
        disk = self.data.disk(a)
        ks = np.arange(self.degree)
        w = (np.asarray(z, dtype=complex)[..., None] - disk.center) / disk.radius
        return np.sqrt((ks + 1.0) / np.pi) / disk.radius * w**ks

    def project_samples(self, a: int, samples: np.ndarray) -> np.ndarray:
        """Basis coefficients from samples on the quadrature contour of D_a.

        samples has shape (Q,) or (Q, m); returns (degree,) or (degree, m).
        """
        return self.proj[a] @ samples

    def slot_slice(self, a: int) -> slice:
        return slice((a - 1) * self.degree, a * self.degree)


def taylor_project(g, a: int, basis: BergmanBasis) -> np.ndarray:
    """Coefficients <g, e_{a,j}> of an analytic function on D_a."""
    samples = np.asarray(g(basis.nodes[a]), dtype=complex)
    if not np.all(np.isfinite(samples)):
        raise ValueError(f"function not finite on the quadrature contour of disk {a}")
    return basis.project_samples(a, samples)


def bergman_kernel(disk, z1, z2) -> np.ndarray:
    """Reproducing kernel of H(D) for a disk: r^2 / (pi [r^2 - (z1-c)(conj(z2-c))]^2)."""
    r2 = disk.radius**2
    num = r2 - (np.asarray(z1) - disk.center) * np.conj(np.asarray(z2) - disk.center)
    return r2 / (np.pi * num**2)


def _walk_word(data: SchottkyData, w: Word, z: np.ndarray):
    """Accumulate theta(w, z) and backspace(w) z over the letters of w."""
    theta = np.zeros_like(z)
    current = z
    for j in range(len(w) - 2, -1, -1):
        g = data.gen(w.letters[j])
        deriv = g.derivative(current)
        if not np.all(np.isfinite(deriv)) or np.any(
            (deriv.imag == 0.0) & (deriv.real <= 0.0)
        ):
            raise BranchCutError(
                f"derivative factor {j + 1} of word {w.letters} on the branch cut"
            )
        theta = theta + np.log(deriv)
        current = g(current)
    return theta, current


@dataclass
class WordKernel:
    """s-independent assembly data of one word's transfer block."""

    word: Word
    theta: np.ndarray  # (Q,) chain-rule log sums on the contour of D_E(w)
    src: np.ndarray  # (Q, M) source-basis values at backspace(w)(contour)

    def block(self, basis: BergmanBasis, s: complex) -> np.ndarray:
        weight = np.exp(s * self.theta)
        return basis.project_samples(self.word.end, weight[:, None] * self.src)


def word_kernel(basis: BergmanBasis, w: Word) -> WordKernel:
    if len(w) < 2:
        raise ValueError("transfer blocks need |w| >= 2")
    z = basis.nodes[w.end]
    theta, images = _walk_word(basis.data, w, z)
    return WordKernel(word=w, theta=theta, src=basis.eval_basis(w.start, images))


def assemble_mws(basis: BergmanBasis, w: Word, s: complex) -> np.ndarray:
    """M x M block of the word-w weighted composition operator."""
    return word_kernel(basis, w).block(basis, s)


def _check_representation(data: SchottkyData, rho: np.ndarray) -> int:
    rho = np.asarray(rho)
    if rho.ndim != 3 or rho.shape[0] != 2 * data.n_gens or rho.shape[1] != rho.shape[2]:
        raise ValueError(
            f"representation must have shape (2N, d, d), got {rho.shape}"
        )
    d = rho.shape[1]
    eye = np.eye(d)
    for a in data.letters:
        u = rho[a - 1]
        if np.max(np.abs(u.conj().T @ u - eye)) > UNITARY_TOL:
            raise ValueError(f"rho({a}) is not unitary within {UNITARY_TOL}")
        v = rho[mirror_letter(a, data.n_gens) - 1]
        if np.max(np.abs(v @ u - eye)) > UNITARY_TOL:
            raise ValueError(f"rho({mirror_letter(a, data.n_gens)}) != rho({a})^-1")
    return d


def trivial_rep(data: SchottkyData, dim: int = 1) -> np.ndarray:
    return np.broadcast_to(
        np.eye(dim, dtype=complex), (2 * data.n_gens, dim, dim)
    ).copy()


@dataclass
class TransferMatrix:
    """Assembled finite section of a twisted transfer-operator power."""

    s: complex
    ell: int
    rep_dim: int
    entries: np.ndarray
    basis: BergmanBasis
    assembly_mode: str

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


class TransferKernel:
    """Reusable s-independent kernels for all words of length ell+1.

    Word walks share suffixes, so the kernels are built by a depth-first
    sweep that prepends letters and reuses the partial chain-rule data.
    Intended for small ell where many s-values are needed (scans, dimension
    solves); memory grows like |Gamma_{ell+1}| * Q * M.
    """

    def __init__(self, basis: BergmanBasis, ell: int):
        if ell < 1:
            raise ValueError("ell must be >= 1")
        self.basis = basis
        self.ell = ell
        self.kernels: list[WordKernel] = []
        data = basis.data
        n = data.n_gens

        def grow(letters: tuple[int, ...], theta: np.ndarray, current: np.ndarray):
            depth = len(letters) - 1  # number of prepended letters so far
            if depth == ell:
                w = Word(letters, n)
                self.kernels.append(
                    WordKernel(
                        word=w,
                        theta=theta,
                        src=basis.eval_basis(letters[0], current),
                    )
                )
                return
            banned = mirror_letter(letters[0], n)
            for b in data.letters:
                if b == banned:
                    continue
                g = data.gen(b)
                deriv = g.derivative(current)
                if np.any((deriv.imag == 0.0) & (deriv.real <= 0.0)):
                    raise BranchCutError(
                        f"derivative of gen {b} on the branch cut while "
                        f"extending {letters}"
                    )
                grow((b,) + letters, theta + np.log(deriv), g(current))

        for last in data.letters:
            z = basis.nodes[last]
            grow((last,), np.zeros_like(z), z)
        self.kernels.sort(key=lambda k: k.word.letters)

    def assemble(self, s: complex, rho: np.ndarray, check: bool = True) -> TransferMatrix:
        basis = self.basis
        data = basis.data
        rho = np.asarray(rho, dtype=complex)
        d = _check_representation(data, rho) if check else rho.shape[1]
        m = basis.degree
        size = basis.dim * d
        out = np.zeros((size, size), dtype=complex)
        rho_inv_letter = {
            a: rho[mirror_letter(a, data.n_gens) - 1] for a in data.letters
        }
        for kern in self.kernels:
            w = kern.word
            block = kern.block(basis, s)
            rw = np.eye(d, dtype=complex)
            for a in w.letters[:-1]:
                rw = rho_inv_letter[a] @ rw
            rows = slice((w.end - 1) * m * d, w.end * m * d)
            cols = slice((w.start - 1) * m * d, w.start * m * d)
            out[rows, cols] += np.kron(block, rw)
        return TransferMatrix(
            s=s, ell=self.ell, rep_dim=d, entries=out, basis=basis,
            assembly_mode="direct",
        )

    def letter_blocks(self, s: complex) -> dict[tuple[int, int], np.ndarray]:
        """For ell = 1: the (end, start) -> M x M untwisted blocks."""
        if self.ell != 1:
            raise ValueError("letter_blocks is only defined for ell = 1")
        return {
            (k.word.end, k.word.start): k.block(self.basis, s) for k in self.kernels
        }


def _rho_of_inverse(data, rho: np.ndarray, letters: tuple[int, ...]) -> np.ndarray:
    """rho((a_1 ... a_k)^-1) = rho(mirror(a_k)) ... rho(mirror(a_1))."""
    d = rho.shape[1]
    out = np.eye(d, dtype=complex)
    for a in reversed(letters):
        out = out @ rho[mirror_letter(a, data.n_gens) - 1]
    return out


def assemble_transfer(
    basis: BergmanBasis,
    s: complex,
    rho: np.ndarray,
    ell: int,
    mode: str = "direct",
) -> TransferMatrix:
    """Matrix of the ell-th transfer-operator power, twisted by rho.

    direct       sums word blocks over Gamma_{ell+1};
    matrix-power assembles ell = 1 and raises it to the ell-th power;
    kronecker    batches the direct sum by the group element backspace(w).

    The three modes agree up to the truncation leak of repeated projection
    (power mode) and summation-order roundoff (kronecker).
    """
    if mode not in ASSEMBLY_MODES:
        raise ValueError(f"mode must be one of {ASSEMBLY_MODES}")
    rho = np.asarray(rho, dtype=complex)
    d = _check_representation(basis.data, rho)
    if mode == "matrix-power":
        base = TransferKernel(basis, 1).assemble(s, rho, check=False)
        entries = np.linalg.matrix_power(base.entries, ell)
        return TransferMatrix(
            s=s, ell=ell, rep_dim=d, entries=entries, basis=basis,
            assembly_mode=mode,
        )
    kernel = TransferKernel(basis, ell)
    if mode == "direct":
        out = kernel.assemble(s, rho, check=False)
        return out
    # kronecker: one rho factor per distinct backspace word
    data = basis.data
    m = basis.degree
    groups: dict[tuple[int, ...], list[WordKernel]] = {}
    for k in kernel.kernels:
        groups.setdefault(k.word.letters[:-1], []).append(k)
    size = basis.dim * d
    out = np.zeros((size, size), dtype=complex)
    hmat = np.zeros((basis.dim, basis.dim), dtype=complex)
    for g_letters in sorted(groups):
        hmat[:] = 0.0
        for k in groups[g_letters]:
            w = k.word
            hmat[basis.slot_slice(w.end), basis.slot_slice(w.start)] += k.block(
                basis, s
            )
        rw = _rho_of_inverse(data, rho, g_letters)
        out += np.kron(hmat, rw)
    return TransferMatrix(
        s=s, ell=ell, rep_dim=d, entries=out, basis=basis, assembly_mode=mode
    )


def fredholm_det(t: TransferMatrix | np.ndarray) -> complex:
    """det(I - T) by pivoted LU."""
    a = t.entries if isinstance(t, TransferMatrix) else np.asarray(t)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    eye = np.eye(a.shape[0], dtype=complex)
    return complex(np.linalg.det(eye - a))


def fredholm_logdet(t: TransferMatrix | np.ndarray) -> tuple[complex, float]:
    """(phase, log|det|) of det(I - T); robust for large dimensions."""
    a = t.entries if isinstance(t, TransferMatrix) else np.asarray(t)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    eye = np.eye(a.shape[0], dtype=complex)
    sign, logabs = np.linalg.slogdet(eye - a)
    return complex(sign), float(logabs)


def auto_degree(
    data: SchottkyData,
    s: complex = 0.8,
    ell: int = 1,
    start: int = 16,
    tol: float = 1e-7,
    step: int = 2,
    cap: int = 40,
) -> int:
    """Smallest degree (from `start`, in steps) whose determinant is Cauchy.

    Raises the truncation until det(I - L_s) at M and M+4 agree within tol.
    On F1 the ell = 1 determinant needs M around 20 (values converge like
    0.55^M); longer powers plateau much earlier.
    """
    rho = trivial_rep(data)
    m = start
    basis = BergmanBasis(data, degree=m)
    det_m = fredholm_det(assemble_transfer(basis, s, rho, ell, "direct"))
    while m <= cap:
        probe = BergmanBasis(data, degree=m + 4)
        det_p = fredholm_det(assemble_transfer(probe, s, rho, ell, "direct"))
        if abs(det_m - det_p) < tol:
            return m
        m += step
        basis = BergmanBasis(data, degree=m)
        det_m = fredholm_det(assemble_transfer(basis, s, rho, ell, "direct"))
    raise RuntimeError(f"no Cauchy plateau below degree {cap} (tol {tol})")


def operator_norm(t) -> float:
    """Largest singular value (full decomposition)."""
    a = t.entries if isinstance(t, TransferMatrix) else np.asarray(t)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[0])


def operator_norm_power(t, tol: float = 1e-12, maxiter: int = 20000) -> float:
    """Largest singular value by power iteration on T* T.

    Deterministic start vector; used as the independent cross-check of
    operator_norm and as the implicit-norm workhorse elsewhere.
    """
    a = t.entries if isinstance(t, TransferMatrix) else np.asarray(t)
    if a.size == 0:
        return 0.0
    n = a.shape[1]
    v = np.full(n, 1.0 / np.sqrt(n), dtype=complex)
    v += np.exp(2j * np.pi * np.arange(n) / max(n, 2)) / (3.0 * np.sqrt(n))
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(maxiter):
        u = a @ v
        w = a.conj().T @ u
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        new_sigma = float(np.linalg.norm(u))  # = sqrt(v* A*A v) for unit v
        v = w / nw
        if abs(new_sigma - sigma) <= tol * max(new_sigma, 1e-300):
            return new_sigma
        sigma = new_sigma
    raise RuntimeError(
        f"power iteration did not converge in {maxiter} iterations "
        f"(last sigma {sigma})"
    )


def dump_matrix(t: TransferMatrix | np.ndarray, path) -> None:
    """Raw dump: row-major complex128 (little-endian re/im float64 pairs)."""
    a = t.entries if isinstance(t, TransferMatrix) else np.asarray(t)
    np.ascontiguousarray(a, dtype="<c16").tofile(path)
