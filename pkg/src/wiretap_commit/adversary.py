"""Attack strategies and security estimators.

Four measurements back the protocol's guarantees at desk scale:

* soundness      — honest-rejection rate against the Hoeffding
                   reference 2 exp(-2 n alpha1^2);
* binding        — a cheating Alice enumerates reveal claims that pass
                   the hash challenge and wins when two of them with
                   distinct commit strings land in Bob's distance band;
                   exhaustive candidate enumeration doubles as the
                   oracle for the union-bound ceiling |A|^2 2^-l;
* concealment    — exact statistical distance and mutual information
                   between the commit bit and a view (Bob's, Eve's, or
                   their union), by full enumeration at tiny n, with a
                   leftover-hash reference bound from the exact
                   conditional min-entropy;
* concealment MC — a sampled lower bound on the same distance via the
                   advantage of a MAP distinguisher trained on an
                   independent sample, for sizes beyond enumeration.

Exhaustive routines index words by their big-endian integer encoding
and refuse n > 20.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bits import BitVector
from .channel import make_channel
from .errors import DomainError, ScaleError
from .hashing import HashSpec, hash_all_inputs, hash_evaluate, lhl_bound
from .parallel import map_trials
from .protocol import ProtocolParams, SessionState, commit_phase
from .rng import make_rng, trial_seeds

ENUM_LIMIT = 20          # exhaustive search over {0,1}^n
EXACT_MARGINAL_LIMIT = 8  # exact concealment, single-party views
EXACT_JOINT_LIMIT = 6     # exact concealment, joint (V_B, V_E) view

_Z95 = 1.959963984540054


def wilson_interval(successes: int, trials: int, z: float = _Z95):
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    phat = successes / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return lo, hi


@dataclass(frozen=True)
class SecurityReport:
    """One measured security metric plus its analytic reference."""

    metric: str
    estimate: float
    ci_lo: Optional[float] = None
    ci_hi: Optional[float] = None
    exact: bool = False
    trials: int = 0
    reference_bound: Optional[float] = None
    seed: Optional[int] = None
    n: Optional[int] = None
    p: Optional[float] = None
    q: Optional[float] = None
    coupling: Optional[str] = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.exact and self.trials:
            raise DomainError("exact reports carry no trial count")

    def to_record(self) -> dict:
        """Flat record for CSV/JSON emission (details excluded)."""
        return {
            "metric": self.metric,
            "estimate": self.estimate,
            "ci_lo": self.ci_lo,
            "ci_hi": self.ci_hi,
            "reference_bound": self.reference_bound,
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "coupling": self.coupling,
            "seed": self.seed,
        }


def _report_context(params: ProtocolParams) -> dict:
    return {
        "n": params.n,
        "p": params.pq.p,
        "q": params.pq.q,
        "coupling": params.coupling,
    }


# ---------------------------------------------------------------------------
# soundness


def _soundness_worker(payload, seeds) -> np.ndarray:
    """Per-trial honest-rejection indicators.

    For an honest reveal the hash and pad conditions hold identically,
    so a trial rejects exactly when the Bob-side flip count leaves the
    distance band.  The flip count is read off the same channel
    sub-stream a full honest_run would consume, so indicators match
    full protocol runs trial for trial.
    """
    n, p, alpha1 = payload
    lo, hi = n * (p - alpha1), n * (p + alpha1)
    out = np.empty(len(seeds), dtype=np.uint8)
    for i, s in enumerate(seeds):
        session_rng = make_rng(s)
        _alice, _bob, channel_rng = session_rng.spawn(3)
        u = channel_rng.random((n, 2))
        d = int((u[:, 0] < p).sum())
        out[i] = 0 if lo <= d <= hi else 1
    return out


def estimate_soundness(params: ProtocolParams, channel, trials: int,
                       seed: int, threads: int = 1) -> SecurityReport:
    """Empirical honest-rejection rate with Wilson 95% interval.

    Reference bound: the two-sided Hoeffding tail 2 exp(-2 n alpha1^2)
    on the flip count leaving the band.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    payload = (params.n, params.pq.p, params.alpha1)
    rejects = map_trials(_soundness_worker, payload, trial_seeds(seed, trials), threads)
    k = int(rejects.sum())
    lo, hi = wilson_interval(k, trials)
    return SecurityReport(
        metric="soundness_rejection_rate",
        estimate=k / trials,
        ci_lo=lo, ci_hi=hi,
        trials=trials,
        reference_bound=min(1.0, 2.0 * math.exp(-2.0 * params.n * params.alpha1 ** 2)),
        seed=seed,
        details={"rejections": k},
        **_report_context(params),
    )


# ---------------------------------------------------------------------------
# confusable sets and binding


@dataclass(frozen=True)
class ConfusableSet:
    """Candidates passing the distance band and the hash challenge.

    Members are big-endian integer encodings of the candidate words.
    eta_hat is log2(max(|A|, 1)) / n, the measured exponent of the
    set size.
    """

    n: int
    members: np.ndarray
    eta_hat: float

    @property
    def size(self) -> int:
        return int(self.members.size)

    def as_bitvectors(self):
        return [BitVector.from_int(int(m), self.n) for m in self.members]


def _check_enum_scale(n: int):
    if n > ENUM_LIMIT:
        raise ScaleError(f"exhaustive enumeration limited to n <= {ENUM_LIMIT}, got {n}")


def _band_mask(n: int, p: float, alpha1: float, y_int: int) -> np.ndarray:
    d = np.bitwise_count(np.arange(1 << n, dtype=np.uint32) ^ np.uint32(y_int))
    return (d >= n * (p - alpha1)) & (d <= n * (p + alpha1))


def enumerate_confusables(session: SessionState, params: ProtocolParams) -> ConfusableSet:
    """Exhaustive confusable set for the session's realized y."""
    _check_enum_scale(params.n)
    t = session.transcript
    hashes = hash_all_inputs(t.challenge)
    target = np.uint32(t.challenge_value.to_int())
    mask = _band_mask(params.n, params.pq.p, params.alpha1,
                      session.bob_view.y.to_int()) & (hashes == target)
    members = np.nonzero(mask)[0].astype(np.uint32)
    eta_hat = math.log2(max(members.size, 1)) / params.n
    return ConfusableSet(n=params.n, members=members, eta_hat=eta_hat)


def _binding_worker(payload, seeds) -> np.ndarray:
    """Per-trial (success, |A|) for fresh y draws against a fixed commit.

    Bob's word is redrawn from the noise law conditioned on what the
    attacker knows: nothing beyond x when alone, Eve's flips as well
    when colluding.  The same uniforms drive both modes, so couplings
    with independent noise produce identical draws in either mode.
    """
    (n, p, q, r, alpha1, x_int, ne_bits, hashes, target, ext_all, thresh_mode) = payload
    lo, hi = n * (p - alpha1), n * (p + alpha1)
    if thresh_mode == "alone":
        thresh = np.full(n, p)
    else:
        cond1 = r / q              # P(N_B=1 | N_E=1)
        cond0 = (p - r) / (1.0 - q)  # P(N_B=1 | N_E=0)
        thresh = np.where(ne_bits == 1, cond1, cond0)
    hash_match = hashes == target
    weights = (1 << np.arange(n - 1, -1, -1)).astype(np.uint64)
    all_words = np.arange(1 << n, dtype=np.uint32)
    out = np.empty((len(seeds), 2), dtype=np.int64)
    for i, s in enumerate(seeds):
        rng = make_rng(s)
        nb = (rng.random(n) < thresh).astype(np.uint64)
        y_int = np.uint32(x_int) ^ np.uint32((nb * weights).sum())
        d = np.bitwise_count(all_words ^ y_int)
        members = np.nonzero(hash_match & (d >= lo) & (d <= hi))[0]
        distinct = np.unique(ext_all[members]).size
        out[i, 0] = 1 if distinct >= 2 else 0
        out[i, 1] = members.size
    return out


def binding_attack(session: SessionState, params: ProtocolParams,
                   mode: str = "alone", trials: int = 1000, seed: int = 0,
                   threads: int = 1) -> SecurityReport:
    """Success rate of the hash-collision binding attack on one commit.

    Alice (with Eve's z when mode="with_eve") fixes her commit-phase
    view and tries to reveal two claims with distinct commit strings.
    Success in a trial: the confusable set of the drawn y holds two
    candidates whose extractor outputs differ, i.e. both claims pass
    all three reveal conditions.  Reference bound: the union-bound
    exponent 2^(-n(beta1 - 2 eta_hat)) with eta_hat measured from the
    mean confusable-set size.
    """
    if mode not in ("alone", "with_eve"):
        raise DomainError(f"mode must be 'alone' or 'with_eve', got {mode!r}")
    if trials < 1:
        raise DomainError("trials must be >= 1")
    _check_enum_scale(params.n)
    t = session.transcript
    x = session.alice_view.x
    channel = make_channel(params.pq.p, params.pq.q, params.coupling,
                           r=params.coupling_r)
    ne_bits = session.eve_view.z.bits ^ x.bits
    payload = (
        params.n, params.pq.p, params.pq.q, channel.r, params.alpha1,
        x.to_int(), ne_bits,
        hash_all_inputs(t.challenge), np.uint32(t.challenge_value.to_int()),
        hash_all_inputs(t.extractor), mode,
    )
    stats = map_trials(_binding_worker, payload, trial_seeds(seed, trials), threads)
    successes = int(stats[:, 0].sum())
    sizes = stats[:, 1].astype(float)
    ceilings = np.minimum(1.0, sizes ** 2 * 2.0 ** (-params.challenge_bits))
    eta_hat = math.log2(max(float(sizes.mean()), 1.0)) / params.n
    beta_prime = params.beta1 - 2.0 * eta_hat
    lo, hi = wilson_interval(successes, trials)
    return SecurityReport(
        metric=f"binding_success_{mode}",
        estimate=successes / trials,
        ci_lo=lo, ci_hi=hi,
        trials=trials,
        reference_bound=min(1.0, 2.0 ** (-params.n * beta_prime)),
        seed=seed,
        details={
            "mean_confusables": float(sizes.mean()),
            "max_confusables": int(sizes.max()),
            "eta_hat": eta_hat,
            "beta_prime": beta_prime,
            "beta1_exceeds_2eta": params.beta1 > 2.0 * eta_hat,
            "mean_ceiling": float(ceilings.mean()),
            "success_indicators": stats[:, 0].astype(np.uint8),
            "confusable_sizes": stats[:, 1].copy(),
        },
        **_report_context(params),
    )


# ---------------------------------------------------------------------------
# concealment and secrecy, exact


VIEWS = ("bob", "eve", "joint")


def _bsc_kernel(n: int, flip: float) -> np.ndarray:
    """W[x, y] = flip^d (1-flip)^(n-d) over all word pairs."""
    words = np.arange(1 << n, dtype=np.uint32)
    d = np.bitwise_count(words[:, None] ^ words[None, :]).astype(np.float64)
    return flip ** d * (1.0 - flip) ** (n - d)


def _pair_kernel(n: int, noise_pmf) -> np.ndarray:
    """W[x, (y,z)] for one block under the joint per-symbol noise pmf."""
    p00, p01, p10, p11 = noise_pmf
    words = np.arange(1 << n, dtype=np.uint32)
    nb = words[:, None, None] ^ words[None, :, None]   # x ^ y
    ne = words[:, None, None] ^ words[None, None, :]   # x ^ z
    c11 = np.bitwise_count(nb & ne).astype(np.int64)
    cb = np.bitwise_count(nb).astype(np.int64)
    ce = np.bitwise_count(ne).astype(np.int64)
    c10 = cb - c11
    c01 = ce - c11
    c00 = n - c11 - c10 - c01
    shape = (1 << n, 1 << n, 1 << n)
    log_prob = np.zeros(shape, dtype=np.float64)
    impossible = np.zeros(shape, dtype=bool)
    for count, pi in ((c00, p00), (c01, p01), (c10, p10), (c11, p11)):
        if pi > 0.0:
            log_prob += count * math.log(pi)
        else:
            impossible |= count > 0
    out = np.where(impossible, 0.0, np.exp(log_prob))
    return out.reshape(1 << n, 1 << (2 * n))


def _exact_scale_check(params: ProtocolParams, views):
    if params.commit_bits != 1:
        raise ScaleError("exact concealment requires commit_bits == 1")
    limit = EXACT_JOINT_LIMIT if "joint" in views else EXACT_MARGINAL_LIMIT
    if params.n > limit:
        raise ScaleError(
            f"exact concealment over views {views} limited to n <= {limit}, "
            f"got n = {params.n}"
        )
    if params.n + params.challenge_bits > 14:
        raise ScaleError("challenge seed space too large: need n + l_g <= 14")


def _mi_term(m0: np.ndarray, m1: np.ndarray) -> float:
    """Sum of M0 lg(M0/mu) + M1 lg(M1/mu) with mu the average."""
    mu = 0.5 * (m0 + m1)
    total = 0.0
    for m in (m0, m1):
        pos = m > 0.0
        total += float((m[pos] * np.log2(m[pos] / mu[pos])).sum())
    return total


def concealment_exact(params: ProtocolParams, channel, views=VIEWS,
                      uniform_pad: bool = False) -> dict:
    """Exact leakage of the commit bit into each requested view.

    Enumerates every word, noise pattern and hash seed, and reports per
    view the statistical distance between the conditional view
    distributions under c=0 and c=1 and the mutual information between
    the commit bit and the view.  The reference bound on the distance
    is twice the leftover-hash bound at the exact conditional
    min-entropy of x given the view without the pad.

    With uniform_pad=True the pad is one-time-padded with a fresh
    uniform bit instead of the extractor output; every view then
    carries exactly zero information about c.
    """
    views = tuple(views)
    for v in views:
        if v not in VIEWS:
            raise DomainError(f"unknown view {v!r}; expected subset of {VIEWS}")
    _exact_scale_check(params, views)
    n, lg = params.n, params.challenge_bits
    big_n = 1 << n
    g_seeds = 1 << (n + lg - 1)
    e_seeds = 1 << n  # commit_bits == 1

    def all_seed_hashes(l: int) -> np.ndarray:
        count = 1 << (n + l - 1)
        table = np.empty((count, big_n), dtype=np.uint32)
        for s in range(count):
            spec = HashSpec(n, l, BitVector.from_int(s, n + l - 1))
            table[s] = hash_all_inputs(spec)
        return table

    g_hash = all_seed_hashes(lg)
    e_bit = all_seed_hashes(1).astype(np.float64)
    sign = np.zeros_like(e_bit) if uniform_pad else 1.0 - 2.0 * e_bit

    kernels = {}
    if "bob" in views:
        kernels["bob"] = _bsc_kernel(n, params.pq.p)
    if "eve" in views:
        kernels["eve"] = _bsc_kernel(n, params.pq.q)
    if "joint" in views:
        kernels["joint"] = _pair_kernel(n, channel.noise_pair_pmf())

    x_weight = 1.0 / big_n
    seed_weight = 1.0 / (g_seeds * e_seeds)
    sd_acc = {v: 0.0 for v in views}
    mi_acc = {v: 0.0 for v in views}
    max_posterior = {v: 0.0 for v in views}

    for gs in range(g_seeds):
        values = g_hash[gs]
        for gamma in range(1 << lg):
            idx = np.nonzero(values == gamma)[0]
            if idx.size == 0:
                continue
            sub_sign = sign[:, idx] * x_weight
            for v in views:
                k_sub = kernels[v][idx]
                s_vec = k_sub.sum(axis=0) * x_weight
                d_mat = sub_sign @ k_sub
                sd_acc[v] += float(np.abs(d_mat).sum())
                m0 = 0.5 * (s_vec[None, :] + d_mat)
                m1 = 0.5 * (s_vec[None, :] - d_mat)
                np.clip(m0, 0.0, None, out=m0)
                np.clip(m1, 0.0, None, out=m1)
                mi_acc[v] += _mi_term(m0, m1)
                # worst-case posterior of x given the pad-free view
                colsum = k_sub.sum(axis=0)
                colmax = k_sub.max(axis=0)
                pos = colsum > 0.0
                if pos.any():
                    ratio = float((colmax[pos] / colsum[pos]).max())
                    max_posterior[v] = max(max_posterior[v], ratio)

    reports = {}
    context = _report_context(params)
    for v in views:
        k_hat = -math.log2(max_posterior[v]) if max_posterior[v] > 0 else math.inf
        ref = min(1.0, 2.0 * lhl_bound(k_hat, 1))
        sd = seed_weight * sd_acc[v]
        mi = seed_weight * mi_acc[v]
        detail = {"k_hat": k_hat, "uniform_pad": uniform_pad}
        reports[f"sd_{v}"] = SecurityReport(
            metric=f"concealment_sd_{v}", estimate=sd, exact=True,
            reference_bound=ref, details=detail, **context,
        )
        reports[f"mi_{v}"] = SecurityReport(
            metric=f"concealment_mi_{v}", estimate=mi, exact=True,
            reference_bound=None, details=detail, **context,
        )
    return reports


# ---------------------------------------------------------------------------
# concealment, Monte Carlo


def _map_guess(n, hashes, target, anchors, weights, hide_challenge):
    """Most plausible x: hash-consistent, closest to the anchors.

    anchors is a list of (word_int, per_bit_weight); the candidate
    minimizing the weighted sum of Hamming distances wins, ties to the
    lowest encoding.
    """
    words = np.arange(1 << n, dtype=np.uint32)
    cost = np.zeros(1 << n, dtype=np.float64)
    for anchor, w in zip(anchors, weights):
        cost += w * np.bitwise_count(words ^ np.uint32(anchor))
    if not hide_challenge:
        cost[hashes != target] = np.inf
    return int(np.argmin(cost))


def _concealment_mc_worker(payload, seeds) -> np.ndarray:
    params, channel, view, uniform_pad, hide_challenge = payload
    n = params.n
    wp = math.log2((1.0 - params.pq.p) / params.pq.p)
    wq = math.log2((1.0 - params.pq.q) / params.pq.q)
    out = np.empty((len(seeds), 2), dtype=np.uint8)
    for i, s in enumerate(seeds):
        rng = make_rng(s)
        c = BitVector.random(rng, 1)
        session = commit_phase(params, c, channel, rng)
        t = session.transcript
        pad_bit = t.pad[0]
        if uniform_pad:
            pad_bit = c[0] ^ int(rng.integers(0, 2))
        if view == "bob":
            anchor_list = [session.bob_view.y.to_int()]
            w_list = [wp]
        elif view == "eve":
            anchor_list = [session.eve_view.z.to_int()]
            w_list = [wq]
        else:
            anchor_list = [session.bob_view.y.to_int(), session.eve_view.z.to_int()]
            w_list = [wp, wq]
        hashes = None
        target = None
        if not hide_challenge:
            hashes = hash_all_inputs(t.challenge)
            target = np.uint32(t.challenge_value.to_int())
        x_hat = _map_guess(n, hashes, target, anchor_list, w_list, hide_challenge)
        ext_bit = hash_evaluate(
            t.extractor, BitVector.from_int(x_hat, n)
        )[0]
        out[i, 0] = c[0]
        out[i, 1] = pad_bit ^ ext_bit
    return out


def _entropy_miller_madow(counts: np.ndarray, total: int) -> float:
    """Plug-in entropy plus the Miller-Madow bias correction, in bits."""
    pos = counts[counts > 0]
    h = float(-(pos / total * np.log2(pos / total)).sum())
    return h + (pos.size - 1) / (2.0 * total * math.log(2.0))


def concealment_monte_carlo(params: ProtocolParams, channel, trials: int,
                            seed: int, view: str = "bob",
                            uniform_pad: bool = False,
                            hide_challenge: bool = False,
                            threads: int = 1) -> SecurityReport:
    """Sampled lower bound on concealment leakage for one view.

    The distinguisher guesses the extractor input as the hash-consistent
    word closest to the view's channel output(s), undoes the pad, and
    decides the commit bit by the majority rule learned on a training
    sample of the same size; the reported advantage on the held-out
    sample lower-bounds the exact statistical distance.

    Details carry a plug-in mutual-information estimate over (commit
    bit, distinguisher statistic) with the Miller-Madow correction.
    """
    if view not in VIEWS:
        raise DomainError(f"unknown view {view!r}; expected one of {VIEWS}")
    if params.commit_bits != 1:
        raise ScaleError("the distinguisher is defined for commit_bits == 1")
    if trials < 1:
        raise DomainError("trials must be >= 1")
    if params.n > ENUM_LIMIT and not hide_challenge:
        raise ScaleError(
            f"hash-aware guessing needs n <= {ENUM_LIMIT}; "
            "pass hide_challenge=True beyond that"
        )
    payload = (params, channel, view, uniform_pad, hide_challenge)
    samples = map_trials(_concealment_mc_worker, payload,
                         trial_seeds(seed, 2 * trials), threads)
    train, test = samples[:trials], samples[trials:]

    counts = np.zeros((2, 2), dtype=np.int64)  # [c, s]
    for c_bit, s_bit in train:
        counts[c_bit, s_bit] += 1
    rule = np.argmax(counts, axis=0)  # decision per statistic value

    correct = int((rule[test[:, 1]] == test[:, 0]).sum())
    acc_lo, acc_hi = wilson_interval(correct, trials)
    advantage = 2.0 * correct / trials - 1.0

    joint = np.zeros((2, 2), dtype=np.int64)
    for c_bit, s_bit in test:
        joint[c_bit, s_bit] += 1
    mi_mm = (
        _entropy_miller_madow(joint.sum(axis=1), trials)
        + _entropy_miller_madow(joint.sum(axis=0), trials)
        - _entropy_miller_madow(joint.reshape(-1), trials)
    )

    return SecurityReport(
        metric=f"concealment_mc_advantage_{view}",
        estimate=advantage,
        ci_lo=2.0 * acc_lo - 1.0,
        ci_hi=2.0 * acc_hi - 1.0,
        trials=trials,
        reference_bound=None,
        seed=seed,
        details={
            "accuracy": correct / trials,
            "mi_plugin_miller_madow": mi_mm,
            "uniform_pad": uniform_pad,
            "hide_challenge": hide_challenge,
            "train_counts": counts,
        },
        **_report_context(params),
    )
