"""Simultaneous polynomial root finding (Aberth-Ehrlich iteration).

Works on a whole batch of polynomials of the same degree at once; rows that
have converged drop out of the active set.  Coefficients are ascending.
"""

from __future__ import annotations

import numpy as np


_EPS = np.finfo(float).eps


class ConvergenceError(ArithmeticError):
    """Root iteration did not settle within the iteration cap."""


def _horner(coeffs_desc, z):
    # coeffs_desc: (N, d+1) descending; z: (N, d)
    p = np.broadcast_to(coeffs_desc[:, :1], z.shape).astype(complex)
    dp = np.zeros_like(p)
    for k in range(1, coeffs_desc.shape[1]):
        dp = dp * z + p
        p = p * z + coeffs_desc[:, k:k + 1]
    return p, dp


def _initial_guess(monic_desc):
    # monic_desc[:, 0] == 1; radius from the Fujiwara-type bound
    n, width = monic_desc.shape
    d = width - 1
    k = np.arange(1, d + 1)
    with np.errstate(divide="ignore"):
        radius = np.max(np.abs(monic_desc[:, 1:]) ** (1.0 / k), axis=1)
    radius = np.where(radius > 0, radius, 1.0)
    center = -monic_desc[:, 1] / d
    angles = 2 * np.pi * np.arange(d) / d + 0.4
    return center[:, None] + radius[:, None] * np.exp(1j * angles)[None, :]


def pair_conjugates(z: np.ndarray) -> np.ndarray:
    """Symmetrise a root set of a real polynomial under conjugation."""
    z = np.asarray(z, dtype=complex).copy()
    d = z.size
    free = set(range(d))
    dist = np.abs(z[:, None] - np.conj(z)[None, :])
    order = np.dstack(np.unravel_index(np.argsort(dist, axis=None), dist.shape))[0]
    for i, j in order:
        if i in free and j in free:
            if i == j:
                z[i] = z[i].real
                free.discard(i)
            else:
                m = 0.5 * (z[i] + np.conj(z[j]))
                z[i], z[j] = m, np.conj(m)
                free.discard(i)
                free.discard(j)
        if not free:
            break
    return z


def _pair_rows(z):
    """Vectorised conjugate pairing; rows where the nearest-conjugate map is
    not an involution fall back to the greedy pairing."""
    d = z.shape[1]
    dist = np.abs(z[:, :, None] - np.conj(z)[:, None, :])
    partner = np.argmin(dist, axis=2)
    back = np.take_along_axis(partner, partner, axis=1)
    ok = np.all(back == np.arange(d)[None, :], axis=1)
    out = z.copy()
    zo = z[ok]
    out[ok] = 0.5 * (zo + np.conj(np.take_along_axis(zo, partner[ok], axis=1)))
    for i in np.nonzero(~ok)[0]:
        out[i] = pair_conjugates(z[i])
    return out


def _residual_bad(desc, z, tol):
    p, _ = _horner(desc, z)
    scale, _ = _horner(np.abs(desc), np.abs(z))
    return np.abs(p) > tol * np.abs(scale.real) + 1e-300


def all_roots_batch(coeffs, tol=1e-12, maxiter=200, conjugate_pairs=None, z0=None):
    """All complex roots of each row of ``coeffs`` (ascending, equal degree).

    ``z0`` optionally supplies starting points (N, d); otherwise the roots
    start on a circle.  Returns an (N, d) complex array.  Each root satisfies
    |p(z)| <= tol * sum_k |a_k| |z|^k, a relative backward-error bound that
    stays meaningful for the near-double roots met at critical angles.
    """
    a = np.atleast_2d(np.asarray(coeffs))
    if a.shape[1] < 2:
        raise ValueError("need effective degree >= 1")
    if np.any(a[:, -1] == 0):
        raise ValueError("leading coefficient vanishes; trim first")
    if conjugate_pairs is None:
        conjugate_pairs = not np.iscomplexobj(a)
    desc = a[:, ::-1].astype(complex)
    desc = desc / desc[:, :1]
    nrows, d = desc.shape[0], desc.shape[1] - 1
    if d == 1:
        z = -desc[:, 1:2]
    else:
        z = _initial_guess(desc) if z0 is None else np.array(z0, dtype=complex)
        active = np.arange(nrows)
        eye = np.eye(d, dtype=bool)
        for _ in range(maxiter):
            if active.size == 0:
                break
            za = z[active]
            p, dp = _horner(desc[active], za)
            diff = za[:, :, None] - za[:, None, :]
            diff[:, eye] = 1.0
            with np.errstate(divide="ignore", invalid="ignore"):
                inv = 1.0 / diff
                inv[:, eye] = 0.0
                s = inv.sum(axis=2)
                ratio = p / dp
                w = ratio / (1.0 - ratio * s)
            w = np.where(np.isfinite(w), w, 0.0)
            scale, _ = _horner(np.abs(desc[active]), np.abs(za))
            # a root is settled once its residual is at rounding level or the
            # correction no longer moves it
            settled = np.abs(p) <= 8 * d * _EPS * scale.real
            settled |= np.abs(w) <= 4 * _EPS * np.abs(za)
            za = za - np.where(settled, 0.0, w)
            z[active] = za
            active = active[~np.all(settled, axis=1)]
    bad = _residual_bad(desc, z, tol)
    if np.any(bad) and z0 is not None:
        # warm starts taken from a neighbouring row can put two points almost
        # on top of each other near a collision; those rows restart cold
        rows = np.unique(np.nonzero(bad)[0])
        z[rows] = all_roots_batch(a[rows], tol, maxiter, conjugate_pairs=False)
        bad = _residual_bad(desc, z, tol)
    if np.any(bad):
        rows = np.unique(np.nonzero(bad)[0])
        raise ConvergenceError(
            f"Aberth iteration left {bad.sum()} roots above residual tolerance "
            f"(rows {rows[:5].tolist()})")
    if conjugate_pairs:
        z = _pair_rows(z)
    return z


def roots_along_path(coeffs, stride=16, tol=1e-12):
    """Roots for rows sampled along a parameter path.

    Every ``stride``-th row is solved from scratch; the rows in between start
    from the roots of the nearest solved row, which cuts the iteration count
    sharply when neighbouring rows are close.
    """
    a = np.atleast_2d(np.asarray(coeffs, dtype=float))
    n = a.shape[0]
    coarse_idx = np.unique(np.r_[np.arange(0, n, stride), n - 1])
    coarse = all_roots_batch(a[coarse_idx], tol=tol, conjugate_pairs=False)
    nearest = np.searchsorted(coarse_idx, np.arange(n))
    nearest = np.clip(nearest, 0, coarse_idx.size - 1)
    left = np.clip(nearest - 1, 0, coarse_idx.size - 1)
    pick = np.where(np.abs(coarse_idx[left] - np.arange(n)) < np.abs(coarse_idx[nearest] - np.arange(n)),
                    left, nearest)
    z0 = coarse[pick]
    return all_roots_batch(a, tol=tol, z0=z0)


def all_roots(coeffs, tol=1e-12, maxiter=200):
    """All complex roots of one polynomial given by ascending coefficients.

    Trailing zero coefficients are trimmed first.  Real coefficients give a
    root list closed under conjugation.
    """
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    if len(c) < 2:
        raise ValueError("need effective degree >= 1")
    return all_roots_batch(np.asarray([c]), tol=tol, maxiter=maxiter)[0]
