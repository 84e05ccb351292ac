"""Security estimators against independent oracles: brute-force view
enumeration for exact concealment, binomial references for confusable
sets, and paired-seed comparisons for the binding attack."""

import dataclasses
import itertools
import math

import numpy as np
import pytest

from wiretap_commit.adversary import (
    _soundness_worker,
    binding_attack,
    concealment_exact,
    concealment_monte_carlo,
    enumerate_confusables,
    estimate_soundness,
    wilson_interval,
)
from wiretap_commit.bits import BitVector
from wiretap_commit.channel import make_channel
from wiretap_commit.errors import DomainError, ScaleError
from wiretap_commit.hashing import HashSpec, hash_evaluate
from wiretap_commit.measures import CrossoverPair
from wiretap_commit.protocol import (
    RevealClaim,
    bob_test,
    commit_phase,
    derive_params,
    explicit_params,
    honest_run,
)
from wiretap_commit.rng import make_rng, trial_seeds


def small_session(n=16, p=0.25, alpha1=0.125, lg=8, mc=4, seed=7,
                  coupling="independent", r=None, q=None):
    q = p if q is None else q
    params = explicit_params(n, CrossoverPair(p, q), "one", alpha1=alpha1,
                             challenge_bits=lg, commit_bits=mc,
                             coupling=coupling, coupling_r=r)
    channel = make_channel(p, q, coupling, r=r)
    rng = make_rng(np.random.SeedSequence([seed, 0xC0117]))
    c = BitVector.random(rng, mc)
    return params, channel, commit_phase(params, c, channel, rng)


class TestWilson:
    def test_extremes(self):
        lo, hi = wilson_interval(0, 100)
        assert lo == pytest.approx(0.0, abs=1e-12) and 0.0 < hi < 0.05
        lo, hi = wilson_interval(100, 100)
        assert 0.95 < lo < 1.0 and hi == pytest.approx(1.0, abs=1e-12)

    def test_covers_point_estimate(self):
        lo, hi = wilson_interval(37, 200)
        assert lo < 37 / 200 < hi


class TestSoundness:
    def test_matches_full_honest_runs(self):
        # the fast path must reproduce full protocol runs trial for trial;
        # SeedSequence children are stateful under spawn, so each pass
        # gets its own freshly derived (identical) children
        params = derive_params(300, CrossoverPair(0.1, 0.15), "one",
                               alpha1=0.035, beta1=0.05, beta2=0.1)
        channel = make_channel(0.1, 0.15)
        fast = _soundness_worker((params.n, params.pq.p, params.alpha1),
                                 trial_seeds(99, 60))
        slow = np.array([0 if honest_run(params, channel, make_rng(s))[0] else 1
                         for s in trial_seeds(99, 60)], dtype=np.uint8)
        assert np.array_equal(fast, slow)

    def test_wide_band_never_rejects(self):
        params = derive_params(500, CrossoverPair(0.1, 0.1), "one",
                               alpha1=0.45, beta1=0.05, beta2=0.1)
        channel = make_channel(0.1, 0.1)
        report = estimate_soundness(params, channel, trials=400, seed=1)
        assert report.estimate == 0.0

    def test_empty_band_always_rejects(self):
        params = explicit_params(1, CrossoverPair(0.1, 0.1), "one",
                                 alpha1=0.05, challenge_bits=1, commit_bits=1)
        channel = make_channel(0.1, 0.1)
        report = estimate_soundness(params, channel, trials=50, seed=2)
        assert report.estimate == 1.0

    def test_reference_is_hoeffding(self):
        params = derive_params(2000, CrossoverPair(0.1, 0.1), "one",
                               alpha1=0.04, beta1=0.05, beta2=0.1)
        channel = make_channel(0.1, 0.1)
        report = estimate_soundness(params, channel, trials=10, seed=3)
        assert report.reference_bound == pytest.approx(
            2 * math.exp(-2 * 2000 * 0.04 ** 2), abs=1e-15)

    def test_reproducible(self):
        params = derive_params(200, CrossoverPair(0.2, 0.2), "one",
                               alpha1=0.05, beta1=0.05, beta2=0.1)
        channel = make_channel(0.2, 0.2)
        r1 = estimate_soundness(params, channel, trials=200, seed=5)
        r2 = estimate_soundness(params, channel, trials=200, seed=5)
        assert r1 == r2

    def test_threads_do_not_change_results(self):
        params = derive_params(200, CrossoverPair(0.2, 0.2), "one",
                               alpha1=0.05, beta1=0.05, beta2=0.1)
        channel = make_channel(0.2, 0.2)
        r1 = estimate_soundness(params, channel, trials=120, seed=6, threads=1)
        r2 = estimate_soundness(params, channel, trials=120, seed=6, threads=3)
        assert r1.estimate == r2.estimate and r1.ci_lo == r2.ci_lo


class TestConfusables:
    def test_self_membership_when_in_band(self):
        params, channel, session = small_session(seed=11)
        x_int = session.alice_view.x.to_int()
        cs = enumerate_confusables(session, params)
        d = session.alice_view.x.hamming_distance(session.bob_view.y)
        in_band = params.n * (params.pq.p - params.alpha1) <= d <= \
            params.n * (params.pq.p + params.alpha1)
        assert (x_int in cs.members.tolist()) == in_band

    def test_members_pass_first_two_reveal_conditions(self):
        params, channel, session = small_session(seed=12)
        cs = enumerate_confusables(session, params)
        t = session.transcript
        for xv in cs.as_bitvectors()[:30]:
            claim = RevealClaim(t.pad ^ hash_evaluate(t.extractor, xv), xv)
            assert bob_test(session.bob_view, t, claim, params).accepted

    def test_full_band_halving(self):
        # band covering every distance, one challenge bit: about half of
        # the remaining words hash-match; binomial 3-sigma window
        params, channel, session = small_session(
            n=8, p=0.25, alpha1=1.0, lg=1, mc=1, seed=13)
        cs = enumerate_confusables(session, params)
        mean, sigma = 1 + 255 / 2, math.sqrt(255 * 0.25)
        assert abs(cs.size - mean) <= 3 * sigma
        assert cs.eta_hat == pytest.approx(math.log2(cs.size) / 8)

    def test_empty_band(self):
        params, channel, session = small_session(
            n=8, p=0.1, alpha1=0.01, lg=1, mc=1, seed=14)
        cs = enumerate_confusables(session, params)
        assert cs.size == 0 and cs.eta_hat == 0.0

    def test_scale_error(self):
        params, channel, session = small_session(n=21, p=0.25, lg=4, mc=2, seed=15)
        with pytest.raises(ScaleError):
            enumerate_confusables(session, params)


class TestBindingAttack:
    def test_injective_hash_defeats_attack(self):
        # identity challenge (l_g = n) leaves no colliding pair
        params, channel, session = small_session(n=12, p=0.25, alpha1=0.3,
                                                 lg=12, mc=3, seed=21)
        n = params.n
        ident = HashSpec(n, n, BitVector([1 if i == n - 1 else 0
                                          for i in range(2 * n - 1)]))
        t = dataclasses.replace(
            session.transcript, challenge=ident,
            challenge_value=hash_evaluate(ident, session.alice_view.x))
        session = dataclasses.replace(
            session,
            alice_view=dataclasses.replace(session.alice_view, transcript=t),
            bob_view=dataclasses.replace(session.bob_view, transcript=t),
            eve_view=dataclasses.replace(session.eve_view, transcript=t))
        report = binding_attack(session, params, trials=200, seed=21)
        assert report.estimate == 0.0

    def test_longer_challenge_never_helps_alice(self):
        # same master seed: the longer challenge seed extends the
        # shorter one, so the confusable set can only shrink
        results = {}
        for lg in (3, 4):
            params, channel, session = small_session(
                n=12, p=0.25, alpha1=0.25, lg=lg, mc=3, seed=22)
            rep = binding_attack(session, params, trials=300, seed=22)
            results[lg] = rep.details["success_indicators"]
        assert np.all(results[4] <= results[3])

    def test_collusion_irrelevant_on_independent_coupling(self):
        params, channel, session = small_session(seed=23)
        alone = binding_attack(session, params, mode="alone", trials=300, seed=23)
        with_eve = binding_attack(session, params, mode="with_eve", trials=300, seed=23)
        assert np.array_equal(alone.details["success_indicators"],
                              with_eve.details["success_indicators"])
        # overlapping Wilson intervals follow from equality
        assert alone.ci_lo <= with_eve.ci_hi and with_eve.ci_lo <= alone.ci_hi

    def test_success_requires_two_distinct_commit_values(self):
        # one-member confusable sets can never produce two claims
        params, channel, session = small_session(n=10, p=0.1, alpha1=0.02,
                                                 lg=10, mc=2, seed=24)
        report = binding_attack(session, params, trials=100, seed=24)
        sizes = report.details["confusable_sizes"]
        wins = report.details["success_indicators"]
        assert np.all(wins[sizes < 2] == 0)

    def test_reference_bound_fields(self):
        params, channel, session = small_session(seed=25)
        report = binding_attack(session, params, trials=100, seed=25)
        eta = report.details["eta_hat"]
        assert report.details["beta_prime"] == pytest.approx(params.beta1 - 2 * eta)
        assert report.reference_bound == pytest.approx(
            min(1.0, 2.0 ** (-params.n * (params.beta1 - 2 * eta))))
        assert report.details["beta1_exceeds_2eta"] == (params.beta1 > 2 * eta)

    def test_mode_validation(self):
        params, channel, session = small_session(seed=26)
        with pytest.raises(DomainError):
            binding_attack(session, params, mode="sideways", trials=10, seed=0)

    def test_reproducible_and_pool_invariant(self):
        params, channel, session = small_session(n=12, p=0.25, alpha1=0.25,
                                                 lg=4, mc=2, seed=28)
        r1 = binding_attack(session, params, trials=60, seed=28, threads=1)
        r2 = binding_attack(session, params, trials=60, seed=28, threads=2)
        assert r1.estimate == r2.estimate
        assert np.array_equal(r1.details["success_indicators"],
                              r2.details["success_indicators"])

    def test_scale_error(self):
        params, channel, session = small_session(n=21, p=0.25, lg=4, mc=2, seed=27)
        with pytest.raises(ScaleError):
            binding_attack(session, params, trials=10, seed=0)


# --------------------------------------------------------------------------
# exact concealment against a dictionary-based brute force


def brute_force_view_distributions(n, lg, p, q, r):
    """Full enumeration of (c, x, noise, seeds) into view distributions.

    Independent of the production code: its own Toeplitz convention,
    its own probability bookkeeping.
    """
    pi = {
        (0, 0): 1 - p - q + r, (0, 1): q - r, (1, 0): p - r, (1, 1): r,
    }

    def words(k):
        return list(itertools.product((0, 1), repeat=k))

    def toeplitz(seed, x, l):
        return tuple(
            int(np.bitwise_xor.reduce([seed[i + len(x) - 1 - j] & x[j]
                                       for j in range(len(x))]))
            for i in range(l)
        )

    g_seeds, e_seeds = words(n + lg - 1), words(n)
    dist = {v: {0: {}, 1: {}} for v in ("bob", "eve", "joint")}
    for c in (0, 1):
        for x in words(n):
            for nb in words(n):
                for ne in words(n):
                    pn = 1.0
                    for i in range(n):
                        pn *= pi[(nb[i], ne[i])]
                    if pn == 0.0:
                        continue
                    y = tuple(a ^ b for a, b in zip(x, nb))
                    z = tuple(a ^ b for a, b in zip(x, ne))
                    for gs in g_seeds:
                        gbar = toeplitz(gs, x, lg)
                        for es in e_seeds:
                            ext = toeplitz(es, x, 1)[0]
                            pad = c ^ ext
                            w = pn / (2 ** n * len(g_seeds) * len(e_seeds))
                            for key, view in (
                                ((y, gs, gbar, es, pad), "bob"),
                                ((z, gs, gbar, es, pad), "eve"),
                                ((y, z, gs, gbar, es, pad), "joint"),
                            ):
                                bucket = dist[view][c]
                                bucket[key] = bucket.get(key, 0.0) + w
    return dist


def dict_sd(d0, d1):
    keys = set(d0) | set(d1)
    return 0.5 * sum(abs(d0.get(k, 0.0) - d1.get(k, 0.0)) for k in keys)


def dict_mi(d0, d1):
    total = 0.0
    for k in set(d0) | set(d1):
        a, b = d0.get(k, 0.0), d1.get(k, 0.0)
        mid = 0.5 * (a + b)
        for v in (a, b):
            if v > 0.0:
                total += 0.5 * v * math.log2(v / mid)
    return total


class TestConcealmentExact:
    @pytest.mark.parametrize("coupling,r", [
        ("independent", None),
        ("custom", 0.1),
    ])
    def test_against_brute_force(self, coupling, r):
        n, lg, p, q = 2, 1, 0.2, 0.3
        params = explicit_params(n, CrossoverPair(p, q), "one", alpha1=0.3,
                                 challenge_bits=lg, commit_bits=1,
                                 coupling=coupling, coupling_r=r)
        channel = make_channel(p, q, coupling, r=r)
        oracle = brute_force_view_distributions(n, lg, p, q, channel.r)
        reports = concealment_exact(params, channel)
        for v in ("bob", "eve", "joint"):
            sd = dict_sd(oracle[v][0], oracle[v][1])
            mi = dict_mi(oracle[v][0], oracle[v][1])
            assert reports[f"sd_{v}"].estimate == pytest.approx(sd, abs=1e-12)
            assert reports[f"mi_{v}"].estimate == pytest.approx(mi, abs=1e-12)

    def test_uniform_pad_leaks_nothing(self):
        params = explicit_params(4, CrossoverPair(0.25, 0.25), "two", alpha1=0.2,
                                 challenge_bits=1, commit_bits=1)
        channel = make_channel(0.25, 0.25)
        reports = concealment_exact(params, channel, uniform_pad=True)
        for v in ("bob", "eve", "joint"):
            assert reports[f"sd_{v}"].estimate == pytest.approx(0.0, abs=1e-12)
            assert reports[f"mi_{v}"].estimate == pytest.approx(0.0, abs=1e-12)

    def test_sd_within_lhl_reference(self):
        params = explicit_params(5, CrossoverPair(0.2, 0.3), "one", alpha1=0.2,
                                 challenge_bits=1, commit_bits=1)
        channel = make_channel(0.2, 0.3)
        reports = concealment_exact(params, channel)
        for v in ("bob", "eve", "joint"):
            rep = reports[f"sd_{v}"]
            assert rep.estimate <= rep.reference_bound + 1e-12

    def test_chain_rule_eve_vs_joint(self):
        params = explicit_params(4, CrossoverPair(0.2, 0.25), "one", alpha1=0.2,
                                 challenge_bits=1, commit_bits=1)
        channel = make_channel(0.2, 0.25)
        reports = concealment_exact(params, channel)
        assert reports["mi_eve"].estimate <= reports["mi_joint"].estimate + 1e-12

    def test_block_length_strictly_tightens_bob_sd(self):
        # fixed rates beta1 = 0.25, one pad bit: n = 4 vs n = 8
        values = {}
        for n in (4, 8):
            params = explicit_params(n, CrossoverPair(0.25, 0.25), "one",
                                     alpha1=0.2, challenge_bits=n // 4,
                                     commit_bits=1)
            channel = make_channel(0.25, 0.25)
            reports = concealment_exact(params, channel, views=("bob",))
            values[n] = reports["sd_bob"].estimate
        assert values[8] < values[4]

    def test_scale_guards(self):
        channel = make_channel(0.25, 0.25)
        big = explicit_params(7, CrossoverPair(0.25, 0.25), "one", alpha1=0.2,
                              challenge_bits=1, commit_bits=1)
        with pytest.raises(ScaleError):
            concealment_exact(big, channel)  # joint view capped at n = 6
        wide = explicit_params(6, CrossoverPair(0.25, 0.25), "one", alpha1=0.2,
                               challenge_bits=2, commit_bits=2)
        with pytest.raises(ScaleError):
            concealment_exact(wide, channel)  # needs one pad bit

    def test_exact_reports_are_flagged(self):
        params = explicit_params(4, CrossoverPair(0.25, 0.25), "one", alpha1=0.2,
                                 challenge_bits=1, commit_bits=1)
        reports = concealment_exact(params, make_channel(0.25, 0.25), views=("eve",))
        assert reports["sd_eve"].exact and reports["sd_eve"].trials == 0


class TestConcealmentMonteCarlo:
    def setup_method(self):
        self.params = explicit_params(6, CrossoverPair(0.25, 0.25), "two",
                                      alpha1=0.2, challenge_bits=1, commit_bits=1)
        self.channel = make_channel(0.25, 0.25)

    def test_uniform_pad_advantage_is_noise(self):
        rep = concealment_monte_carlo(self.params, self.channel, trials=2000,
                                      seed=31, view="bob", uniform_pad=True)
        assert abs(rep.estimate) <= 3.0 / math.sqrt(2000)

    @pytest.mark.parametrize("view", ["bob", "joint"])
    def test_advantage_lower_bounds_exact_sd(self, view):
        exact = concealment_exact(self.params, self.channel)[f"sd_{view}"].estimate
        rep = concealment_monte_carlo(self.params, self.channel, trials=2000,
                                      seed=32, view=view)
        assert rep.ci_lo <= exact

    def test_correlated_coupling_comparison(self):
        # maximally correlated noise folds Eve's word onto Bob's; the
        # joint-view advantage stays within noise of the independent one
        coupled_params = explicit_params(6, CrossoverPair(0.25, 0.25), "one",
                                         alpha1=0.2, challenge_bits=1,
                                         commit_bits=1, coupling="custom",
                                         coupling_r=0.25)
        coupled_channel = make_channel(0.25, 0.25, "custom", r=0.25)
        adv_coupled = concealment_monte_carlo(coupled_params, coupled_channel,
                                              trials=2000, seed=33, view="joint")
        adv_indep = concealment_monte_carlo(self.params, self.channel,
                                            trials=2000, seed=33, view="joint")
        sigma = 1.0 / math.sqrt(2000)
        assert adv_coupled.estimate >= adv_indep.estimate - 3 * sigma

    def test_mi_estimate_present(self):
        rep = concealment_monte_carlo(self.params, self.channel, trials=500,
                                      seed=34, view="eve")
        assert "mi_plugin_miller_madow" in rep.details

    def test_reproducible(self):
        r1 = concealment_monte_carlo(self.params, self.channel, trials=300,
                                     seed=35, view="bob")
        r2 = concealment_monte_carlo(self.params, self.channel, trials=300,
                                     seed=35, view="bob")
        assert r1.estimate == r2.estimate and r1.to_record() == r2.to_record()

    def test_scale_guard_requires_hidden_challenge(self):
        big = explicit_params(22, CrossoverPair(0.25, 0.25), "one", alpha1=0.2,
                              challenge_bits=2, commit_bits=1)
        with pytest.raises(ScaleError):
            concealment_monte_carlo(big, make_channel(0.25, 0.25), trials=10,
                                    seed=0, view="bob")
