"""Pure-Python fraction-free elimination kernels over Z and Z[i].

Reference implementation of the compiled ``_core`` module; both expose the
same three functions and are selected in :mod:`staralg.kernels`.

Matrices are lists of rows of Python ints.  Gaussian-integer matrices are
passed as a pair ``(re, im)`` of such lists.
"""

BACKEND = "python"


def _zdiv(a, b, c, d):
    """Exact quotient (a + bi) / (c + di) in Z[i]."""
    n = c * c + d * d
    x, rx = divmod(a * c + b * d, n)
    y, ry = divmod(b * c - a * d, n)
    if rx or ry:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return x, y


def ff_rref_real(rows, ncols):
    """Fraction-free Gauss-Jordan over Z.

    Returns ``(rows, pivots, d)``: the nonzero rows of an echelon form whose
    pivot columns equal ``d`` times the identity, so ``rows / d`` is the
    reduced row echelon form.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    prev = 1
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and not m[p][col]:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
        prow = m[r]
        piv = prow[col]
        for i in range(nrows):
            if i == r:
                continue
            row = m[i]
            f = row[col]
            if f:
                for j in range(ncols):
                    x = piv * row[j] - f * prow[j]
                    if x:
                        q, rem = divmod(x, prev)
                        if rem:
                            raise ArithmeticError("inexact division in fraction-free elimination")
                        row[j] = q
                    else:
                        row[j] = 0
            elif prev != 1 or piv != 1:
                for j in range(ncols):
                    x = row[j]
                    if x:
                        q, rem = divmod(piv * x, prev)
                        if rem:
                            raise ArithmeticError("inexact division in fraction-free elimination")
                        row[j] = q
        prev = piv
        pivots.append(col)
        r += 1
    if prev < 0:
        m = [[-x for x in row] for row in m]
        prev = -prev
    return m[:r], pivots, prev


def ff_rref_complex(re, im, ncols):
    """Fraction-free Gauss-Jordan over Z[i].

    Returns ``(re, im, pivots, d_re, d_im)`` with the same contract as
    :func:`ff_rref_real`, the common pivot being ``d_re + d_im*i``.
    """
    mr = [list(r) for r in re]
    mi = [list(r) for r in im]
    nrows = len(mr)
    pivots = []
    pr, pi = 1, 0
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and not (mr[p][col] or mi[p][col]):
            p += 1
        if p == nrows:
            continue
        if p != r:
            mr[p], mr[r] = mr[r], mr[p]
            mi[p], mi[r] = mi[r], mi[p]
        prr, pri = mr[r], mi[r]
        a, b = prr[col], pri[col]
        for i in range(nrows):
            if i == r:
                continue
            rr, ri = mr[i], mi[i]
            fr, fi = rr[col], ri[col]
            for j in range(ncols):
                xr, xi = rr[j], ri[j]
                # piv * x - f * prow[j]
                yr, yi = prr[j], pri[j]
                zr = a * xr - b * xi - (fr * yr - fi * yi)
                zi = a * xi + b * xr - (fr * yi + fi * yr)
                if zr or zi:
                    if pi:
                        zr, zi = _zdiv(zr, zi, pr, pi)
                    elif pr != 1:
                        zr, r1 = divmod(zr, pr)
                        zi, r2 = divmod(zi, pr)
                        if r1 or r2:
                            raise ArithmeticError("inexact division in fraction-free elimination")
                rr[j], ri[j] = zr, zi
        pr, pi = a, b
        pivots.append(col)
        r += 1
    return mr[:r], mi[:r], pivots, pr, pi


PD, PSD, INDEFINITE = 0, 1, 2


def ff_hermitian(re, im):
    """Symmetric fraction-free elimination of a Hermitian matrix over Z[i].

    Returns ``(status, witness, radical)`` where status is ``PD``, ``PSD``
    or ``INDEFINITE``; ``witness`` is ``(re, im)`` of a vector v with
    v^H G v < 0 (Indefinite only) and ``radical`` lists ``(re, im)``
    vectors spanning the kernel of G (semidefinite only).
    """
    n = len(re)
    gr = [list(r) for r in re]
    gi = [list(r) for r in im]
    wr = [[1 if i == k else 0 for i in range(n)] for k in range(n)]
    wi = [[0] * n for _ in range(n)]
    active = list(range(n))
    radical = []
    prev = 1
    while active:
        k = active[0]
        gkk = gr[k][k]
        if gkk < 0:
            return INDEFINITE, (wr[k], wi[k]), []
        if gkk == 0:
            j = None
            for c in active[1:]:
                if gr[k][c] or gi[k][c]:
                    j = c
                    break
            if j is None:
                radical.append((wr[k], wi[k]))
                active.pop(0)
                continue
            # v = -(|g_jj| + 1) g_kj w_k + |g_kj|^2 w_j has negative value
            ar, ai = gr[k][j], gi[k][j]
            s = abs(gr[j][j]) + 1
            u = ar * ar + ai * ai
            tr, ti = -s * ar, -s * ai
            vr = [tr * x - ti * y + u * z for x, y, z in zip(wr[k], wi[k], wr[j])]
            vi = [tr * y + ti * x + u * z for x, y, z in zip(wr[k], wi[k], wi[j])]
            return INDEFINITE, (vr, vi), []
        rest = active[1:]
        rowr, rowi = gr[k], gi[k]
        for j in rest:
            # w_j <- g_kk w_j - g_kj w_k
            cr, ci = rowr[j], rowi[j]
            wjr, wji, wkr, wki = wr[j], wi[j], wr[k], wi[k]
            for t in range(n):
                x, y = wkr[t], wki[t]
                wjr[t] = gkk * wjr[t] - (cr * x - ci * y)
                wji[t] = gkk * wji[t] - (cr * y + ci * x)
        for j in rest:
            gjr, gji = gr[j], gi[j]
            ajr, aji = gjr[k], gji[k]
            for l in rest:
                bkr, bki = rowr[l], rowi[l]
                zr = gkk * gjr[l] - (ajr * bkr - aji * bki)
                zi = gkk * gji[l] - (ajr * bki + aji * bkr)
                if prev != 1:
                    zr, r1 = divmod(zr, prev)
                    zi, r2 = divmod(zi, prev)
                    if r1 or r2:
                        raise ArithmeticError("inexact division in fraction-free elimination")
                gjr[l], gji[l] = zr, zi
        prev = gkk
        active.pop(0)
    return (PSD if radical else PD), None, radical
