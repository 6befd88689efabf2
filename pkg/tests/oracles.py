"""Independent reference implementations used to pin expected values.

Everything here deliberately avoids the production code paths: the Bessel
oracle is the defining power series, capacities come from Jacobi
eigenvalues of the Gram matrix, the exhaustive oracle is a plain nested
loop over itertools.product, and the relaxation oracles are enumeration
and grid search. Tests compare the package against these, never the other
way round.
"""

import itertools
import math

import numpy as np


def j0_series(x, terms=60):
    """J0 by its power series sum_m (-1)^m (x/2)^(2m) / (m!)^2.

    Converges to full double precision on [0, 16] well before 60 terms
    (the m-th term ratio is -(x/2)^2 / m^2).
    """
    x = np.asarray(x, dtype=float)
    acc = np.ones_like(x)
    term = np.ones_like(x)
    q = -((x / 2.0) ** 2)
    for m in range(1, terms + 1):
        term = term * q / (m * m)
        acc = acc + term
    return acc if acc.ndim else float(acc)


def j0_first_zero(lo=2.0, hi=3.0, tol=1e-12):
    """First positive zero of J0, located by bisection on the series."""
    flo = j0_series(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = j0_series(mid)
        if abs(fmid) < tol or hi - lo < tol:
            return mid
        if (flo > 0) == (fmid > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def jacobi_eigenvalues(sym, sweeps=100, tol=1e-14):
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(sym, dtype=float)
    n = a.shape[0]
    for _ in range(sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off < tol * max(1.0, np.abs(np.diag(a)).max()):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                theta = 0.5 * math.atan2(2.0 * a[p, q], a[q, q] - a[p, p])
                c, s = math.cos(theta), math.sin(theta)
                rot = np.eye(n)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
    return np.sort(np.diag(a))


def eig_capacity(h, rho):
    """Capacity as sum log2(1 + rho * lambda) over Gram eigenvalues.

    Hermitian complex Gram G embeds as the real symmetric [[Re, -Im],
    [Im, Re]], whose spectrum is that of G doubled, so the capacity is
    half the embedded sum. Uses Jacobi rotations, not a factorization.
    """
    h = np.asarray(h, dtype=complex)
    gram = h @ h.conj().T
    emb = np.block([[gram.real, -gram.imag], [gram.imag, gram.real]])
    lams = jacobi_eigenvalues(emb)
    return 0.5 * float(np.sum(np.log2(1.0 + rho * np.maximum(lams, 0.0))))


def loop_exhaustive(channel, rho, capacity_fn):
    """Plain quadruple-nested-loop enumeration, first maximizer wins.

    Structurally different from the production mixed-radix batch search;
    `capacity_fn(rx_ports, tx_ports)` evaluates one selection.
    """
    c = channel.config
    best = None
    for rx in itertools.product(range(1, c.n_r + 1), repeat=c.m_r):
        for tx in itertools.product(range(1, c.n_t + 1), repeat=c.m_t):
            val = capacity_fn(rx, tx)
            if best is None or val > best[0]:
                best = (val, rx, tx)
    return best


def binary_selections(config):
    """All feasible (rx_ports, tx_ports) tuples, 1-based."""
    rx_space = itertools.product(range(1, config.n_r + 1), repeat=config.m_r)
    for rx in rx_space:
        for tx in itertools.product(range(1, config.n_t + 1), repeat=config.m_t):
            yield rx, tx


def frobenius_u(channel, rx, tx):
    """U at a binary point via the effective submatrix Frobenius norm,
    independent of the min-based production formula."""
    c = channel.config
    rows = [i * c.n_r + p - 1 for i, p in enumerate(rx)]
    cols = [j * c.n_t + p - 1 for j, p in enumerate(tx)]
    sub = channel.entries[np.ix_(rows, cols)]
    return float(np.sum(np.abs(sub) ** 2))


def binary_u_max(channel):
    """Largest U over all feasible binary selections, by enumeration."""
    return max(frobenius_u(channel, rx, tx) for rx, tx in binary_selections(channel.config))


def grid_u_max_2x2(gains, steps=2001):
    """Relaxation optimum for M_R = M_T = 1, N = 2 by dense grid search.

    x = (a, 1-a), y = (b, 1-b); evaluates U on a steps x steps grid.
    """
    gains = np.asarray(gains, dtype=float)
    grid = np.linspace(0.0, 1.0, steps)
    a = grid[:, None]
    b = grid[None, :]
    u = (gains[0, 0] * np.minimum(a, b)
         + gains[0, 1] * np.minimum(a, 1.0 - b)
         + gains[1, 0] * np.minimum(1.0 - a, b)
         + gains[1, 1] * np.minimum(1.0 - a, 1.0 - b))
    return float(u.max())


def q_matrix_from_selection(channel, rx, tx):
    """Padded selection matrix built entrywise from its definition
    Q[r, c] = x_r * g[r, c] * y_c."""
    c = channel.config
    x = np.zeros(c.m_r * c.n_r)
    y = np.zeros(c.m_t * c.n_t)
    for i, p in enumerate(rx):
        x[i * c.n_r + p - 1] = 1.0
    for j, p in enumerate(tx):
        y[j * c.n_t + p - 1] = 1.0
    q = np.empty_like(channel.entries)
    for r in range(q.shape[0]):
        for col in range(q.shape[1]):
            q[r, col] = x[r] * channel.entries[r, col] * y[col]
    return q
