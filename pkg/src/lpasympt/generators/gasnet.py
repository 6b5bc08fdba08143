"""Gas transmission network relaxation on a time-expanded ring.

Supply, demand and transit nodes are arranged on a randomly permuted ring of
directed pipes.  Per period each pipe carries an intake and a delivery flow
coupled through linepack storage; nonlinear pressure physics is replaced by
``n_pwl_segments`` concave cuts ``flow <= alpha_s * (potential difference +
compressor boost) + beta_s`` on squared-pressure "potential" variables.
Compressors sit on pipes round-robin and are the only cost in the objective.

Feasibility: node injections are sampled, ring flows are the cyclic prefix
of the injections, demands/supplies are read back off the reference flows,
and potentials are assigned by walking the ring with a 5% boost margin.

RNG blocks: 0 = ring permutation, 1 = injections and seasonal factors,
2 = pressure-cut coefficients and linepack, 3 = costs.
"""

from __future__ import annotations

import numpy as np

from lpasympt.generators._support import INF, LpBuilder, block_rng
from lpasympt.lp_core import LpProblem

TAG = "gasnet"
SCHEMA = (
    ("n_supply", 1),
    ("n_demand", 1),
    ("n_transit", 0),
    ("n_compressors", 1),
    ("n_periods", 1),
    ("n_pwl_segments", 1),
)
REALISM_MAX = {
    "n_supply": 200,
    "n_demand": 2000,
    "n_transit": 5000,
    "n_compressors": 300,
    "n_periods": 48,
    "n_pwl_segments": 10,
}


def _dims(knobs):
    S, Dm, T = knobs["n_supply"], knobs["n_demand"], knobs["n_transit"]
    C, K, G = knobs["n_compressors"], knobs["n_periods"], knobs["n_pwl_segments"]
    return S, Dm, T, C, K, G, S + Dm + T


def size_estimate(knobs: dict) -> tuple[int, int, int]:
    S, Dm, T, C, K, G, N = _dims(knobs)
    n = K * (4 * N + C + S)
    m = 2 * N * K + N * K * G
    nnz = K * (2 * N + S) + N * (4 * K - 1) + K * G * (3 * N + C)
    return m, n, nnz


def generate(knobs: dict, seed: int) -> tuple[LpProblem, np.ndarray]:
    S, Dm, T, C, K, G, N = _dims(knobs)
    topo = block_rng(seed, 0)
    inj_rng = block_rng(seed, 1)
    phys = block_rng(seed, 2)
    cost = block_rng(seed, 3)

    ring = topo.permutation(N)  # pipe e: ring[e] -> ring[(e+1) % N]
    tail = ring
    head = np.roll(ring, -1)
    comp_pipe = np.arange(C, dtype=np.int64) % N

    # reference injections (supply-positive), per-period seasonal scaling
    base_dem = inj_rng.uniform(5.0, 20.0, size=Dm)
    shares = inj_rng.uniform(0.5, 1.5, size=S)
    shares /= shares.sum()
    season = inj_rng.uniform(0.8, 1.2, size=K)
    inj = np.zeros((N, K))
    inj[S : S + Dm, :] = -base_dem[:, None] * season[None, :]
    total_dem = base_dem.sum() * season
    inj[:S, :] = shares[:, None] * total_dem[None, :]

    # ring flows: cyclic prefix of injections in ring order, shifted >= 0
    inj_ring = inj[ring, :]
    pref = np.cumsum(inj_ring, axis=0)
    flow = pref - np.minimum(pref.min(axis=0, keepdims=True), 0.0)  # (N pipes, K)

    # demands/supplies read back from the reference flows (per-node closure)
    flow_in = np.empty((N, K))
    flow_in[ring] = np.roll(flow, 1, axis=0)  # pipe into ring[k] is pipe k-1
    flow_out = np.empty((N, K))
    flow_out[ring] = flow
    net_recv = flow_in - flow_out  # what each node nets out of the ring
    dem_rhs = np.zeros((N, K))
    dem_rhs[S : S + Dm, :] = net_recv[S : S + Dm, :]
    sup_ref = flow_out[:S, :] - flow_in[:S, :]  # >= 0 by construction

    # pressure cuts: alpha decreasing, beta increasing in the segment index
    alpha0 = phys.uniform(0.8, 1.6, size=N)
    beta_step = phys.uniform(0.2, 0.6, size=N)
    seg = np.arange(G)
    alpha = alpha0[:, None] / (1.0 + seg)[None, :]  # (pipe, segment)
    beta = beta_step[:, None] * seg[None, :]

    # required effective potential drop per pipe/period, with 5% margin
    req = ((flow[:, None, :] - beta[:, :, None]) / alpha[:, :, None]).max(axis=1)
    req = 1.05 * np.maximum(req, 0.0) + 0.01

    lift_per_comp = req.sum(axis=0) / C  # (K,)
    boost_ref = np.broadcast_to(lift_per_comp, (C, K)).copy()
    lift = np.zeros((N, K))
    np.add.at(lift, comp_pipe, boost_ref)

    # walk the ring: potential[head] = potential[tail] + lift - req
    steps = lift - req  # per pipe, in pipe order = ring order
    pot_ring = np.vstack([np.zeros((1, K)), np.cumsum(steps[:-1], axis=0)])
    pot = np.empty((N, K))
    pot[ring] = pot_ring
    pot -= pot.min(axis=0, keepdims=True)

    lp_init = phys.uniform(1.0, 5.0, size=N)

    boost_cost = cost.uniform(2.0, 6.0, size=C)[:, None] * cost.uniform(0.9, 1.1, size=(C, K))

    b = LpBuilder()
    fin = b.add_cols(N * K, 0.0, 0.0, (1.2 * flow + 1.0).ravel())
    fout = b.add_cols(N * K, 0.0, 0.0, (1.2 * flow + 1.0).ravel())
    potv = b.add_cols(N * K, 0.0, 0.0, (1.2 * pot + 1.0).ravel())
    bst = b.add_cols(C * K, boost_cost.ravel(), 0.0, (1.2 * boost_ref + 0.01).ravel())
    lpk = b.add_cols(N * K, 0.0, 0.0, np.repeat(1.2 * lp_init + 1.0, K))
    sup = b.add_cols(S * K, 0.0, 0.0, (1.2 * sup_ref + 1.0).ravel())

    eK = np.repeat(np.arange(N), K)
    tK = np.tile(np.arange(K), N)

    # node balance: delivered flow of the in-pipe minus intake of the
    # out-pipe plus supply equals demand
    bal = b.add_rows(N * K, dem_rhs.ravel(), dem_rhs.ravel())
    in_pipe = np.empty(N, dtype=np.int64)
    in_pipe[head] = np.arange(N)
    out_pipe = np.empty(N, dtype=np.int64)
    out_pipe[tail] = np.arange(N)
    b.put(bal + eK * K + tK, fout + in_pipe[eK] * K + tK, 1.0)
    b.put(bal + eK * K + tK, fin + out_pipe[eK] * K + tK, -1.0)
    sK = np.repeat(np.arange(S), K)
    tSK = np.tile(np.arange(K), S)
    b.put(bal + sK * K + tSK, sup + sK * K + tSK, 1.0)

    # linepack dynamics: lp[t] - lp[t-1] - fin[t] + fout[t] = 0 (t=0 rhs = fill)
    pack_rhs = np.zeros((N, K))
    pack_rhs[:, 0] = lp_init
    pack = b.add_rows(N * K, pack_rhs.ravel(), pack_rhs.ravel())
    rowsNK = pack + eK * K + tK
    b.put(rowsNK, lpk + eK * K + tK, 1.0)
    b.put(rowsNK, fin + eK * K + tK, -1.0)
    b.put(rowsNK, fout + eK * K + tK, 1.0)
    later = tK > 0
    b.put(rowsNK[later], (lpk + eK * K + tK - 1)[later], -1.0)

    # pressure cuts per (pipe, period, segment)
    cuts = b.add_rows(N * K * G, -INF, np.broadcast_to(beta[:, None, :], (N, K, G)).ravel())
    eksg_e = np.repeat(np.arange(N), K * G)
    eksg_t = np.tile(np.repeat(np.arange(K), G), N)
    eksg_s = np.tile(np.arange(G), N * K)
    crow = cuts + (eksg_e * K + eksg_t) * G + eksg_s
    a_es = alpha[eksg_e, eksg_s]
    b.put(crow, fout + eksg_e * K + eksg_t, 1.0)
    b.put(crow, potv + tail[eksg_e] * K + eksg_t, -a_es)
    b.put(crow, potv + head[eksg_e] * K + eksg_t, a_es)
    # compressor terms: boost on pipe comp_pipe[c] in every period/segment
    cKG = np.repeat(np.arange(C), K * G)
    ck_t = np.tile(np.repeat(np.arange(K), G), C)
    ck_s = np.tile(np.arange(G), C * K)
    crow_c = cuts + (comp_pipe[cKG] * K + ck_t) * G + ck_s
    b.put(crow_c, bst + cKG * K + ck_t, -alpha[comp_pipe[cKG], ck_s])

    p = b.build()
    x_ref = np.concatenate(
        [
            flow.ravel(),
            flow.ravel(),
            pot.ravel(),
            boost_ref.ravel(),
            np.repeat(lp_init, K),
            sup_ref.ravel(),
        ]
    )
    return p, x_ref
