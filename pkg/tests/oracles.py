"""Independent reference computations used to cross-check the library.

Nothing here imports the elimination code under test: PSD status is decided
from the characteristic polynomial of the real embedding (integer
Faddeev-LeVerrier), and refutations come from a brute-force vector net.
"""
from fractions import Fraction
from math import lcm

import numpy as np

PD, PSD, INDEFINITE = "PositiveDefinite", "PositiveSemidefinite", "Indefinite"


def real_embedding(re, im):
    """[[A, -B], [B, A]] for H = A + iB; same spectrum, each eigenvalue doubled."""
    n = len(re)
    out = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = out[n + i][n + j] = re[i][j]
            out[i][n + j] = -im[i][j]
            out[n + i][j] = im[i][j]
    return out


def charpoly(m):
    """Integer coefficients c_0..c_n of det(tI - M) = sum c_k t^(n-k)."""
    n = len(m)
    a = np.array(m, dtype=object)
    coeffs = [1]
    mk = np.zeros((n, n), dtype=object)
    ident = np.identity(n, dtype=object)
    for k in range(1, n + 1):
        mk = a.dot(mk) + coeffs[-1] * ident
        tr = sum(a.dot(mk)[i][i] for i in range(n))
        c, r = divmod(-tr, k)
        assert r == 0
        coeffs.append(c)
    return coeffs


def charpoly_status(re, im):
    """Exact status of an integer Hermitian matrix from sign patterns.

    All eigenvalues are real; they are >= 0 iff (-1)^k c_k >= 0 for every k
    (Descartes on the real-rooted polynomial), and > 0 iff also c_n != 0.
    """
    n = len(re)
    if n == 0:
        return PD
    c = charpoly(real_embedding(re, im))
    if all((-1) ** k * ck >= 0 for k, ck in enumerate(c)):
        return PD if c[-1] != 0 else PSD
    return INDEFINITE


def vector_net(n, size=10_000, seed=0):
    """Deterministic complex test vectors: small integer grid plus random ones."""
    rng = np.random.default_rng(seed)
    grid = np.array(np.meshgrid(*[np.arange(-2, 3)] * n)).reshape(n, -1).T
    grid = grid[np.any(grid != 0, axis=1)].astype(complex)
    extra = max(0, size - len(grid))
    rand = rng.integers(-4, 5, size=(extra, n)) + 1j * rng.integers(-4, 5, size=(extra, n))
    return np.vstack([grid, rand])


def net_finds_negative(re, im, net=None):
    """True iff some net vector gives v^H G v < 0 (exact for these integer inputs)."""
    g = np.array(re, dtype=float) + 1j * np.array(im, dtype=float)
    net = vector_net(len(re)) if net is None else net
    vals = np.einsum("ki,ij,kj->k", net.conj(), g, net).real
    return bool((vals < -0.5).any())


def to_int_matrix(g):
    """Scale a Gaussian-rational matrix (given as nested (re, im) Fractions) to Z[i]."""
    den = 1
    for row in g:
        for re, im in row:
            den = lcm(den, Fraction(re).denominator, Fraction(im).denominator)
    re = [[int(Fraction(x) * den) for x, _ in row] for row in g]
    im = [[int(Fraction(y) * den) for _, y in row] for row in g]
    return re, im


def charpoly_batch(mats):
    """Faddeev-LeVerrier on a stack of integer matrices.

    Uses int64 when an a-priori bound on every intermediate entry
    (n 2^n (n max|a|)^(n+1)) fits, exact Python integers otherwise.
    """
    a = np.asarray(mats, dtype=object)
    m, n, _ = a.shape
    top = max((abs(int(x)) for x in a.flat), default=0)
    dtype = np.int64 if n * 2 ** n * (n * top) ** (n + 1) < 2 ** 62 else object
    a = a.astype(dtype)
    ident = np.broadcast_to(np.identity(n, dtype=dtype), (m, n, n))
    mk = np.zeros_like(a)
    coeffs = [np.ones(m, dtype=np.int64)]
    for k in range(1, n + 1):
        mk = a @ mk + coeffs[-1][:, None, None] * ident
        tr = np.trace(a @ mk, axis1=1, axis2=2)
        c = (-tr) // k
        assert not (c * k + tr).any()
        coeffs.append(c)
    return np.stack(coeffs, axis=1)


def charpoly_status_batch(re, im=None):
    """Vectorized :func:`charpoly_status` for a stack of Hermitian matrices."""
    re = np.asarray(re, dtype=object)
    if im is None or not np.any(im):
        big = re
    else:
        im = np.asarray(im, dtype=object)
        big = np.block([[re, -im], [im, re]])
    c = charpoly_batch(big)
    signs = np.array([(-1) ** k for k in range(c.shape[1])], dtype=c.dtype)
    psd = np.all(c * signs >= 0, axis=1)
    out = np.full(len(c), INDEFINITE, dtype=object)
    out[psd] = PSD
    out[psd & (c[:, -1] != 0)] = PD
    return out


def net_min_batch(re, im, net, chunk=128):
    """min over the net of v^H G v for each matrix of a stack.

    One real GEMM per chunk.  Net vectors and matrix entries are small
    integers, so every value is an integer far below 2^24 and float32 is exact.
    """
    re = np.asarray(re, dtype=np.float32)
    im = np.asarray(im, dtype=np.float32)
    m, n, _ = re.shape
    outer = np.einsum("ki,kj->kij", net.conj(), net).reshape(len(net), n * n)
    # Re(sum conj(v_i) v_j (A + iB)_ij) = sum Re(o_ij) A_ij - Im(o_ij) B_ij
    feats = np.hstack([outer.real, -outer.imag]).astype(np.float32)
    flat = np.concatenate([re.reshape(m, n * n), im.reshape(m, n * n)], axis=1)
    out = [(feats @ flat[s:s + chunk].T).min(axis=0) for s in range(0, m, chunk)]
    return np.concatenate(out) if out else np.zeros(0, dtype=np.float32)
