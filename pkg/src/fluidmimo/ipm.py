"""Primal-dual interior-point solver for the epigraph selection LP.

Solves, to high accuracy, the linear program

    maximize   sum_e cost_e * t_e
    subject to sum_{ports of antenna} x = 1   (per receive antenna)
               sum_{ports of antenna} y = 1   (per transmit antenna)
               t_e <= x[row_e],  t_e <= y[col_e],  x, y, t >= 0

using Mehrotra's predictor-corrector path-following method on the
standard-form equivalent (slacks s_e = x[row_e] - t_e, w_e = y[col_e] - t_e):

    min c^T v   s.t.  A v = b,  v >= 0,     v = (x, y, t, s, w).

References: S. Mehrotra, "On the implementation of a primal-dual interior
point method", SIAM J. Optim. 2(4), 1992; Nocedal & Wright, "Numerical
Optimization", ch. 14; Y. Zhang's LIPSOL report for the starting point.

Each Newton step solves the symmetric quasi-definite system

    [ -Theta  A^T ] [dv  ]   [ f ]
    [    A     0  ] [dlam] = [ g ],     Theta = diag(z / v),

never formed explicitly: every t_e appears in exactly two coupling rows
and touches exactly one x and one y port, so the variables t, s, w and the
coupling duals eliminate edge-by-edge with scalar pivots. What remains is
a condensed SPD matrix H on the (n_x + n_y) port weights, assembled as a
diagonal plus one positive-definite 2x2 contribution per edge (no
cancellation), followed by a Schur complement onto the M_R + M_T simplex
duals. One iteration costs O(edges) assembly plus two small dense Cholesky
factorizations, regardless of the five-variables-per-edge standard form.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

_CERTIFY_GAP = 1e-7    # weakest accuracy a returned solution may have
_CERTIFY_FEAS = 1e-8


class IpmFailure(RuntimeError):
    """Solver did not certify the required accuracy; carries the stats."""

    def __init__(self, message, stats):
        super().__init__(f"{message} "
                         f"(iterations={stats.iterations}, gap={stats.duality_gap:.3e}, "
                         f"primal={stats.primal_residual:.3e}, dual={stats.dual_residual:.3e})")
        self.stats = stats


@dataclass(frozen=True)
class SolverStats:
    iterations: int
    duality_gap: float          # relative duality gap at termination
    primal_residual: float      # relative primal feasibility residual
    dual_residual: float        # relative dual feasibility residual
    complementarity: float      # max_i v_i z_i over all variable pairs


@dataclass(frozen=True)
class LpSolution:
    """Primal/dual optimum of the epigraph LP, in the maximize convention.

    rx_duals/tx_duals price the per-antenna simplex equalities: they are
    the marginal increase of the optimal objective per unit of budget, and
    they sum to the objective by strong duality.
    """

    x: np.ndarray
    y: np.ndarray
    t: np.ndarray
    objective: float
    rx_duals: np.ndarray
    tx_duals: np.ndarray
    coupling_duals_x: np.ndarray   # prices of t_e <= x[row_e]
    coupling_duals_y: np.ndarray   # prices of t_e <= y[col_e]
    reduced_costs: np.ndarray      # dual slacks z for (x, y, t, s, w)
    stats: SolverStats


def _cho_factor_bumped(mat):
    """Cholesky with escalating diagonal regularization.

    The condensed matrices are SPD in exact arithmetic but their
    conditioning degrades as the barrier scaling gets extreme; a tiny
    diagonal bump keeps the factorization alive. Step quality is judged on
    true residuals afterwards, never on the factorization itself.
    """
    scale = max(1.0, float(np.max(np.abs(np.diagonal(mat)))))
    bump = 1e-14
    idx = np.arange(mat.shape[0])
    while True:
        try:
            return cho_factor(mat)
        except np.linalg.LinAlgError:
            if bump > 1e-4:
                raise
            mat = mat.copy()
            mat[idx, idx] += bump * scale
            bump *= 100.0


class _KktSolver:
    """One factorization of the quasi-definite KKT system for a fixed Theta."""

    def __init__(self, st, theta):
        self.st = st
        nx, ny, nt = st.n_x, st.n_y, st.n_edges
        self.th_x, self.th_y = theta[:nx], theta[nx:nx + ny]
        self.th_t = theta[nx + ny:nx + ny + nt]
        self.th_s = theta[nx + ny + nt:nx + ny + 2 * nt]
        self.th_w = theta[nx + ny + 2 * nt:]
        self.sigma = self.th_t + self.th_s + self.th_w

        # condensed SPD port matrix: diagonal Theta plus, per edge, the PD
        # 2x2 contribution [[ts(tt+tw), -ts*tw], [-ts*tw, tw(tt+ts)]]/sigma
        h = np.zeros((nx + ny, nx + ny))
        dx = self.th_x + np.bincount(
            st.t_rows, weights=self.th_s * (self.th_t + self.th_w) / self.sigma, minlength=nx)
        dy = self.th_y + np.bincount(
            st.t_cols, weights=self.th_w * (self.th_t + self.th_s) / self.sigma, minlength=ny)
        h[np.arange(nx), np.arange(nx)] = dx
        h[nx + np.arange(ny), nx + np.arange(ny)] = dy
        cross = np.zeros((nx, ny))
        np.add.at(cross, (st.t_rows, st.t_cols), -self.th_s * self.th_w / self.sigma)
        h[:nx, nx:] = cross
        h[nx:, :nx] = cross.T
        self.cho_h = _cho_factor_bumped(h)

        # Schur complement on the simplex duals: E H^{-1} E^T, E = antenna sums
        et = np.zeros((nx + ny, st.m_r + st.m_t))
        et[np.arange(nx), st.ant_x] = 1.0
        et[nx + np.arange(ny), st.m_r + st.ant_y] = 1.0
        self.et = et
        self.h_inv_et = cho_solve(self.cho_h, et)
        self.cho_g = _cho_factor_bumped(et.T @ self.h_inv_et)

    def solve(self, f, g):
        """Solve [[-Theta, A^T], [A, 0]] (dv, dlam) = (f, g)."""
        st = self.st
        nx, ny, nt = st.n_x, st.n_y, st.n_edges
        fx, fy = f[:nx], f[nx:nx + ny]
        ft = f[nx + ny:nx + ny + nt]
        fs = f[nx + ny + nt:nx + ny + 2 * nt]
        fw = f[nx + ny + 2 * nt:]
        g_simplex = g[:st.m_r + st.m_t]
        g1 = g[st.m_r + st.m_t:st.m_r + st.m_t + nt]
        g2 = g[st.m_r + st.m_t + nt:]

        # eliminate s, w (coupling-row pivots), then t (its own diagonal)
        ht = ft - fs - fw - self.th_s * g1 - self.th_w * g2
        r1 = np.concatenate([
            fx + np.bincount(st.t_rows, weights=fs + self.th_s * g1 + self.th_s * ht / self.sigma,
                             minlength=nx),
            fy + np.bincount(st.t_cols, weights=fw + self.th_w * g2 + self.th_w * ht / self.sigma,
                             minlength=ny),
        ])

        # simplex duals from the small Schur system, then port weights
        rhs_l = g_simplex + self.et.T @ cho_solve(self.cho_h, r1)
        lam = cho_solve(self.cho_g, rhs_l)
        u = cho_solve(self.cho_h, self.et @ lam - r1)
        ux, uy = u[:nx], u[nx:]

        # back-substitute the eliminated variables and coupling duals
        tt = (self.th_s * ux[st.t_rows] + self.th_w * uy[st.t_cols] - ht) / self.sigma
        ss = g1 - tt + ux[st.t_rows]
        ww = g2 - tt + uy[st.t_cols]
        p = fs + self.th_s * ss
        q = fw + self.th_w * ww
        dv = np.concatenate([ux, uy, tt, ss, ww])
        dlam = np.concatenate([lam, p, q])
        return dv, dlam


def _max_step(val, step):
    """Largest alpha in (0, 1] keeping val + alpha*step >= 0."""
    neg = step < 0
    if not np.any(neg):
        return 1.0
    return min(1.0, float(np.min(-val[neg] / step[neg])))


def solve_epigraph_lp(lp, tol_gap=1e-9, tol_feas=1e-10, max_iter=100):
    """Solve the epigraph LP for `lp` (an LpProblem) to high accuracy.

    Targets a relative duality gap of `tol_gap` and feasibility residuals
    of `tol_feas`; raises IpmFailure if it cannot at least certify a 1e-7
    gap and 1e-8 residuals within `max_iter` iterations.
    """
    st = lp
    nx, ny, nt = st.n_x, st.n_y, st.n_edges
    n = nx + ny + 3 * nt

    c = np.concatenate([np.zeros(nx + ny), -st.t_costs, np.zeros(2 * nt)])
    b = np.concatenate([np.ones(st.m_r + st.m_t), np.zeros(2 * nt)])

    def a_mul(v):
        vx, vy = v[:nx], v[nx:nx + ny]
        vt = v[nx + ny:nx + ny + nt]
        vs = v[nx + ny + nt:nx + ny + 2 * nt]
        vw = v[nx + ny + 2 * nt:]
        return np.concatenate([
            np.bincount(st.ant_x, weights=vx, minlength=st.m_r),
            np.bincount(st.ant_y, weights=vy, minlength=st.m_t),
            vt + vs - vx[st.t_rows],
            vt + vw - vy[st.t_cols],
        ])

    def at_mul(lam):
        lr, lt = lam[:st.m_r], lam[st.m_r:st.m_r + st.m_t]
        p = lam[st.m_r + st.m_t:st.m_r + st.m_t + nt]
        q = lam[st.m_r + st.m_t + nt:]
        gx = lr[st.ant_x] - np.bincount(st.t_rows, weights=p, minlength=nx)
        gy = lt[st.ant_y] - np.bincount(st.t_cols, weights=q, minlength=ny)
        return np.concatenate([gx, gy, p + q, p, q])

    norm_b = 1.0 + float(np.linalg.norm(b))
    norm_c = 1.0 + float(np.linalg.norm(c))

    # Mehrotra starting point: least-norm primal / least-squares dual,
    # shifted into the strictly positive orthant.
    eye = _KktSolver(st, np.ones(n))
    v, _ = eye.solve(np.zeros(n), b)
    z, lam_neg = eye.solve(-c, np.zeros(len(b)))
    lam = -lam_neg
    dv = max(-1.5 * float(v.min(initial=0.0)), 0.0)
    dz = max(-1.5 * float(z.min(initial=0.0)), 0.0)
    v = v + dv
    z = z + dz
    dot = float(v @ z)
    if z.sum() > 0:
        v = v + 0.5 * dot / float(z.sum())
    if v.sum() > 0:
        z = z + 0.5 * dot / float(v.sum())
    # degenerate objectives (all costs zero) leave z at exactly 0; any
    # strictly positive start is valid, so floor both iterates
    if float(v.min()) <= 0:
        v = np.maximum(v, 1.0)
    if float(z.min()) <= 0:
        z = np.maximum(z, 1.0)

    def metrics(v, lam, z):
        rb = a_mul(v) - b
        rc = at_mul(lam) + z - c
        pobj = float(c @ v)
        dobj = float(b @ lam)
        gap = abs(pobj - dobj) / (1.0 + abs(pobj))
        return rb, rc, gap, float(np.linalg.norm(rb)) / norm_b, float(np.linalg.norm(rc)) / norm_c

    iterations = 0
    for iterations in range(1, max_iter + 1):
        rb, rc, gap, rp_rel, rd_rel = metrics(v, lam, z)
        if gap <= tol_gap and rp_rel <= tol_feas and rd_rel <= tol_feas:
            iterations -= 1
            break

        mu = float(v @ z) / n
        try:
            solver = _KktSolver(st, z / v)
        except np.linalg.LinAlgError:
            break  # scaling too extreme to factor; fall through to certification

        # predictor (affine scaling) direction; dz comes from the linearized
        # dual equation so dual infeasibility contracts exactly by (1 - ad)
        # even when the KKT solve carries rounding error
        dv_step, dlam = solver.solve(-rc + z, -rb)
        dz_step = -rc - at_mul(dlam)
        ap = _max_step(v, dv_step)
        ad = _max_step(z, dz_step)
        mu_aff = float((v + ap * dv_step) @ (z + ad * dz_step)) / n
        sigma = min(1.0, max((mu_aff / mu) ** 3, 1e-12)) if mu > 0 else 0.0

        # corrector: recenter and cancel the second-order term
        r_mu = v * z + dv_step * dz_step - sigma * mu
        dv_step, dlam = solver.solve(-rc + r_mu / v, -rb)
        dz_step = -rc - at_mul(dlam)
        eta = 0.9995
        ap = min(1.0, eta * _max_step(v, dv_step))
        ad = min(1.0, eta * _max_step(z, dz_step))
        if ap < 1e-12 and ad < 1e-12:
            break  # stalled
        v = v + ap * dv_step
        lam = lam + ad * dlam
        z = z + ad * dz_step

    rb, rc, gap, rp_rel, rd_rel = metrics(v, lam, z)
    stats = SolverStats(
        iterations=iterations,
        duality_gap=gap,
        primal_residual=rp_rel,
        dual_residual=rd_rel,
        complementarity=float(np.max(v * z)) if n else 0.0,
    )
    if not (gap <= max(tol_gap, _CERTIFY_GAP)
            and rp_rel <= max(tol_feas, _CERTIFY_FEAS)
            and rd_rel <= max(tol_feas, _CERTIFY_FEAS)):
        raise IpmFailure("interior-point solver failed to converge", stats)

    return LpSolution(
        x=v[:nx].copy(),
        y=v[nx:nx + ny].copy(),
        t=v[nx + ny:nx + ny + nt].copy(),
        objective=float(st.t_costs @ v[nx + ny:nx + ny + nt]),
        rx_duals=-lam[:st.m_r],
        tx_duals=-lam[st.m_r:st.m_r + st.m_t],
        coupling_duals_x=-lam[st.m_r + st.m_t:st.m_r + st.m_t + nt],
        coupling_duals_y=-lam[st.m_r + st.m_t + nt:],
        reduced_costs=z.copy(),
        stats=stats,
    )
