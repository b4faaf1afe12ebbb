"""Jitted inner loops shared by the optimizers and the exhaustive oracle."""

import math

from numba import njit


@njit(cache=True)
def flip_delta_raw(spins, obs, width, height, i, bias, beta, eta):
    """Energy change from flipping pixel i of ``spins`` against observation ``obs``.

    Closed form: -2 * x_i * (bias - beta * sum(4-neighbors of i) - eta * y_i).
    Border pixels simply have fewer neighbors.
    """
    row = i // width
    col = i - row * width
    s = 0.0
    if row > 0:
        s += spins[i - width]
    if row < height - 1:
        s += spins[i + width]
    if col > 0:
        s += spins[i - 1]
    if col < width - 1:
        s += spins[i + 1]
    return -2.0 * spins[i] * (bias - beta * s - eta * obs[i])


@njit(cache=True)
def metropolis_raw(delta, t):
    """Acceptance probability for a candidate flip with energy change ``delta``.

    1 for downhill moves; exp(-delta/t) otherwise. At t == 0 the continuous
    limit applies: ties are accepted, uphill moves never are.
    """
    if delta < 0.0:
        return 1.0
    if t > 0.0:
        return math.exp(-delta / t)
    return 1.0 if delta == 0.0 else 0.0


@njit(cache=True)
def icm_sweep(spins, obs, width, height, bias, beta, eta, current_energy):
    """One greedy pass in row-major order; keeps only strictly downhill flips.

    Mutates ``spins`` in place and returns (energy after sweep, flips kept).
    """
    flips = 0
    for i in range(spins.size):
        d = flip_delta_raw(spins, obs, width, height, i, bias, beta, eta)
        if d < 0.0:
            spins[i] = -spins[i]
            current_energy += d
            flips += 1
    return current_energy, flips


@njit(cache=True)
def sa_sweep(spins, obs, width, height, bias, beta, eta, t, q,
             current_energy, best_energy, best_spins, track_best):
    """One annealing pass at temperature ``t`` with per-pixel uniforms ``q``.

    A candidate flip at pixel i is kept iff its acceptance probability is
    strictly greater than q[i]; q is consumed for every visit so the random
    stream advances one draw per pixel regardless of the outcome. Mutates
    ``spins`` (and, when track_best is set, ``best_spins``) in place.
    """
    flips = 0
    for i in range(spins.size):
        d = flip_delta_raw(spins, obs, width, height, i, bias, beta, eta)
        if metropolis_raw(d, t) > q[i]:
            spins[i] = -spins[i]
            current_energy += d
            flips += 1
            if current_energy < best_energy:
                best_energy = current_energy
                if track_best:
                    best_spins[:] = spins
    return current_energy, flips, best_energy


@njit(cache=True)
def gray_scan(spins, obs, width, height, bias, beta, eta,
              initial_energy, tol, codes):
    """Visit all 2^n spin assignments in Gray-code order, one flip per step.

    ``spins`` must correspond to code 0 (all +1) on entry and is mutated
    throughout. Candidate minimizer codes (within ``tol`` of the running
    best) are written into ``codes``; stale entries are possible and the
    caller re-evaluates candidates exactly. Returns (best energy seen,
    number of candidate codes).
    """
    best = initial_energy
    e = initial_energy
    codes[0] = 0
    count = 1
    total = 1 << spins.size
    for k in range(1, total):
        # gray(k) differs from gray(k-1) in bit tz(k)
        b = 0
        kk = k
        while kk & 1 == 0:
            kk >>= 1
            b += 1
        e += flip_delta_raw(spins, obs, width, height, b, bias, beta, eta)
        spins[b] = -spins[b]
        if e < best - tol:
            best = e
            codes[0] = k ^ (k >> 1)
            count = 1
        elif e <= best + tol:
            codes[count] = k ^ (k >> 1)
            count += 1
    return best, count
