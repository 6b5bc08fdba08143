"""Airline fleet assignment relaxation on a cyclic time-space network.

One network copy per fleet over ``horizon_days`` day nodes.  Flights are
generated as out-and-back pairs (plus one stay-at-base flight when the count
is odd) departing on days ``0 .. horizon_days-2`` and arriving the next day,
so every aircraft is on the ground or in maintenance on the final night and
the per-fleet size cap is a clean cut through the ground/maintenance arcs.

Variables: flight-assignment arcs x[f,l] in [0,1], ground-holding arcs
g[f,p,t] >= 0 (cyclic in t), maintenance-visit arcs w[f,m,t] >= 0.
Constraints: each flight covered exactly once; flow balance per (fleet,
airport, day); a fleet-count cap per fleet; and a rolling two-day
maintenance-resource row per (fleet, day) requiring maintenance flow to
cover a fixed fraction of duty flow.  Assignment costs grow with the
mismatch between fleet seat count and flight demand.

RNG blocks: 0 = flight network, 1 = reference assignment, 2 = cost data.
"""

from __future__ import annotations

import numpy as np

from lpasympt.generators._support import INF, LpBuilder, block_rng
from lpasympt.lp_core import LpProblem

TAG = "fleet"
SCHEMA = (
    ("n_fleets", 1),
    ("n_airports", 2),
    ("n_flights", 1),
    ("n_maint_stations", 1),
    ("horizon_days", 2),
)
# realism ceilings in the spirit of "no airline has more than 2000 aircraft"
REALISM_MAX = {
    "n_fleets": 30,
    "n_airports": 500,
    "n_flights": 60_000,
    "n_maint_stations": 60,
    "horizon_days": 30,
}

_DUTY_FRACTION = 0.1  # maintenance flow required per unit of duty flow


def size_estimate(knobs: dict) -> tuple[int, int, int]:
    F, P, L = knobs["n_fleets"], knobs["n_airports"], knobs["n_flights"]
    M, D = knobs["n_maint_stations"], knobs["horizon_days"]
    n = F * (L + P * D + M * D)
    m = L + F * (P * D + 1 + D)
    nnz = F * (5 * L + 2 * P * D + 4 * M * D + P + M)
    return m, n, nnz


def generate(knobs: dict, seed: int) -> tuple[LpProblem, np.ndarray]:
    F, P, L = knobs["n_fleets"], knobs["n_airports"], knobs["n_flights"]
    M, D = knobs["n_maint_stations"], knobs["horizon_days"]
    net = block_rng(seed, 0)
    ref = block_rng(seed, 1)
    cost = block_rng(seed, 2)

    # flight network: out-and-back pairs, one self-pair if L is odd
    npairs = L // 2
    po = net.integers(0, P, size=npairs)
    pa = (po + net.integers(1, P, size=npairs)) % P
    orig = np.empty(L, dtype=np.int64)
    dest = np.empty(L, dtype=np.int64)
    orig[0 : 2 * npairs : 2], dest[0 : 2 * npairs : 2] = po, pa
    orig[1 : 2 * npairs : 2], dest[1 : 2 * npairs : 2] = pa, po
    if L % 2:
        orig[L - 1] = dest[L - 1] = net.integers(0, P)
    day = np.arange(L, dtype=np.int64) % (D - 1)
    site = np.arange(M, dtype=np.int64) % P

    seats = cost.uniform(100.0, 320.0, size=F)
    demand = cost.uniform(80.0, 340.0, size=L)
    ground_cost = cost.uniform(0.01, 0.05, size=(F, P, D))
    maint_cost = cost.uniform(0.5, 1.5, size=(F, M, D))
    assign_cost = 0.01 * np.abs(seats[:, None] - demand[None, :])

    b = LpBuilder()
    xs = b.add_cols(F * L, assign_cost.ravel(), 0.0, 1.0)
    gs = b.add_cols(F * P * D, ground_cost.ravel(), 0.0, INF)
    ws = b.add_cols(F * M * D, maint_cost.ravel(), 0.0, INF)

    def xcol(f, l):
        return xs + f * L + l

    def gcol(f, p, t):
        return gs + (f * P + p) * D + t

    def wcol(f, m, t):
        return ws + (f * M + m) * D + t

    cover = b.add_rows(L, 1.0, 1.0)
    bal = b.add_rows(F * P * D, 0.0, 0.0)

    def balrow(f, p, t):
        return bal + (f * P + p) * D + t

    fgrid = np.repeat(np.arange(F), L)
    lgrid = np.tile(np.arange(L), F)
    b.put(cover + lgrid, xcol(fgrid, lgrid), 1.0)
    # flights: leave (orig, day), arrive (dest, day+1); no wrap by construction
    b.put(balrow(fgrid, orig[lgrid], day[lgrid]), xcol(fgrid, lgrid), -1.0)
    b.put(balrow(fgrid, dest[lgrid], day[lgrid] + 1), xcol(fgrid, lgrid), 1.0)

    fg = np.repeat(np.arange(F), P * D)
    pg = np.tile(np.repeat(np.arange(P), D), F)
    tg = np.tile(np.arange(D), F * P)
    b.put(balrow(fg, pg, tg), gcol(fg, pg, tg), -1.0)
    b.put(balrow(fg, pg, (tg + 1) % D), gcol(fg, pg, tg), 1.0)

    fm = np.repeat(np.arange(F), M * D)
    mm = np.tile(np.repeat(np.arange(M), D), F)
    tm = np.tile(np.arange(D), F * M)
    b.put(balrow(fm, site[mm], tm), wcol(fm, mm, tm), -1.0)
    b.put(balrow(fm, site[mm], (tm + 1) % D), wcol(fm, mm, tm), 1.0)

    # reference: each pair flown by one fleet, maintenance proportional to
    # duty, ground arcs closing every (fleet, airport) cycle
    pair_fleet = ref.integers(0, F, size=npairs)
    assign = np.empty(L, dtype=np.int64)
    assign[0 : 2 * npairs : 2] = pair_fleet
    assign[1 : 2 * npairs : 2] = pair_fleet
    if L % 2:
        assign[L - 1] = ref.integers(0, F)
    x_ref = np.zeros((F, L))
    x_ref[assign, np.arange(L)] = 1.0

    duty = np.zeros((F, D))
    np.add.at(duty, (assign, day), 1.0)
    w_ref = 1.05 * _DUTY_FRACTION * duty[:, None, :] / M  # (F, M, D)
    w_ref = np.broadcast_to(w_ref, (F, M, D)).copy()

    delta = np.zeros((F, P, D))
    np.add.at(delta, (assign, dest, day + 1), 1.0)
    np.add.at(delta, (assign, orig, day), -1.0)
    np.add.at(delta, (np.repeat(np.arange(F), M * D), site[mm], (tm + 1) % D), w_ref.ravel())
    np.add.at(delta, (np.repeat(np.arange(F), M * D), site[mm], tm), -w_ref.ravel())
    h = np.cumsum(delta, axis=2)
    g_ref = h - np.minimum(h.min(axis=2, keepdims=True), 0.0)

    # fleet caps over the final-night cut (ground + maintenance only)
    cut = g_ref[:, :, D - 1].sum(axis=1) + w_ref[:, :, D - 1].sum(axis=1)
    cap = b.add_rows(F, -INF, 1.2 * cut + 1.0)
    fc = np.repeat(np.arange(F), P)
    b.put(cap + fc, gcol(fc, np.tile(np.arange(P), F), D - 1), 1.0)
    fcm = np.repeat(np.arange(F), M)
    b.put(cap + fcm, wcol(fcm, np.tile(np.arange(M), F), D - 1), 1.0)

    # rolling-window maintenance coverage per (fleet, day)
    mr = b.add_rows(F * D, 0.0, INF)

    def mrow(f, t):
        return mr + f * D + t

    for tau_shift in (0, 1):  # window {t, t-1}: w[.,tau] appears at t=tau and t=tau+1
        b.put(mrow(fm, (tm + tau_shift) % D), wcol(fm, mm, tm), 1.0)
        b.put(
            mrow(fgrid, (day[lgrid] + tau_shift) % D),
            xcol(fgrid, lgrid),
            -_DUTY_FRACTION,
        )

    p = b.build()
    x_full = np.concatenate([x_ref.ravel(), g_ref.ravel(), w_ref.ravel()])
    return p, x_full
