"""Commit/reveal protocol over a BS-BC wiretap channel.

Commit phase (four steps): Alice sends a uniform word x over the noisy
channel; Bob answers with a random challenge hash G; Alice returns
g_bar = G(x); Alice then draws an extractor Ext and publishes the pad
Q = c XOR Ext(x).  All of (G, g_bar, Ext, Q) travel over the public
authenticated link and form the transcript M.

Reveal phase: Alice announces a claim (c_tilde, x_tilde); Bob accepts
iff (i) x_tilde lies in his Hamming-distance band around y, (ii)
G(x_tilde) = g_bar, and (iii) c_tilde = Q XOR Ext(x_tilde).

The same wire protocol serves both privacy modes; only the rate
formula changes (one-private capacity vs two-private capacity, each
minus the slack beta2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bits import BitVector
from .channel import WiretapChannel, transmit
from .errors import CouplingError, DimensionError, RateError
from .hashing import HashSpec, hash_evaluate, sample_hash
from .measures import CrossoverPair, capacity_one_private, capacity_two_private

PRIVACY_MODES = ("one", "two")


@dataclass(frozen=True)
class ProtocolParams:
    """All protocol tunables plus the derived lengths.

    Instances from derive_params satisfy the achievability constraints
    (positive rate, beta2 > beta1 > 0).  The explicit constructor below
    bypasses the rate formula for adversarial or edge-case studies and
    marks the instance accordingly.
    """

    n: int
    pq: CrossoverPair
    privacy: str
    alpha1: float
    beta1: float
    beta2: Optional[float]
    rate: float
    commit_bits: int
    challenge_bits: int
    coupling: str = "independent"
    coupling_r: Optional[float] = None
    achievable: bool = True

    def __post_init__(self):
        if self.privacy not in PRIVACY_MODES:
            raise RateError(f"privacy must be one of {PRIVACY_MODES}, got {self.privacy!r}")
        if self.n < 1:
            raise RateError(f"n must be >= 1, got {self.n}")
        if self.commit_bits < 1:
            raise RateError(f"commit_bits must be >= 1, got {self.commit_bits}")
        if self.challenge_bits < 1:
            raise RateError(f"challenge_bits must be >= 1, got {self.challenge_bits}")
        if self.alpha1 <= 0:
            raise RateError(f"alpha1 must be > 0, got {self.alpha1}")
        if self.privacy == "two" and self.coupling != "independent":
            raise CouplingError(
                "two-privacy mode is analyzed only for independent coupling"
            )

    def to_config(self) -> dict:
        cfg = {
            "n": self.n,
            "p": self.pq.p,
            "q": self.pq.q,
            "privacy": self.privacy,
            "alpha1": self.alpha1,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "rate": self.rate,
            "commit_bits": self.commit_bits,
            "challenge_bits": self.challenge_bits,
            "coupling": self.coupling,
            "achievable": self.achievable,
        }
        if self.coupling_r is not None:
            cfg["r"] = self.coupling_r
        return cfg


def derive_params(n: int, pq: CrossoverPair, privacy: str, alpha1: float,
                  beta1: float, beta2: float,
                  coupling: str = "independent",
                  coupling_r: Optional[float] = None) -> ProtocolParams:
    """Rate and lengths from the achievability formulas.

    R = C - beta2 with C the capacity for the privacy mode; commit
    string length floor(n R); challenge length floor(n beta1).  Fails
    if the rate or either length underflows, or beta2 <= beta1.
    """
    if privacy not in PRIVACY_MODES:
        raise RateError(f"privacy must be one of {PRIVACY_MODES}, got {privacy!r}")
    if beta1 <= 0 or beta2 <= 0:
        raise RateError("beta1 and beta2 must be positive")
    if beta2 <= beta1:
        raise RateError(f"need beta2 > beta1, got beta1={beta1}, beta2={beta2}")
    if privacy == "two" and coupling != "independent":
        raise CouplingError("two-privacy mode requires independent coupling")
    cap = capacity_one_private(pq) if privacy == "one" else capacity_two_private(pq)
    rate = cap - beta2
    if rate <= 0:
        raise RateError(f"rate {rate} <= 0 (capacity {cap}, beta2 {beta2})")
    commit_bits = math.floor(n * rate)
    challenge_bits = math.floor(n * beta1)
    if commit_bits < 1:
        raise RateError(f"floor(n*R) = {commit_bits} < 1 at n={n}, R={rate}")
    if challenge_bits < 1:
        raise RateError(f"floor(n*beta1) = {challenge_bits} < 1 at n={n}, beta1={beta1}")
    return ProtocolParams(
        n=n, pq=pq, privacy=privacy, alpha1=alpha1, beta1=beta1, beta2=beta2,
        rate=rate, commit_bits=commit_bits, challenge_bits=challenge_bits,
        coupling=coupling, coupling_r=coupling_r, achievable=True,
    )


def explicit_params(n: int, pq: CrossoverPair, privacy: str, alpha1: float,
                    challenge_bits: int, commit_bits: int,
                    coupling: str = "independent",
                    coupling_r: Optional[float] = None) -> ProtocolParams:
    """Params with lengths set directly, outside the achievability regime.

    Used for attack studies and edge cases (hash length sweeps, n=1
    bands) where no beta2 > beta1 produces the wanted lengths.  Only
    structural invariants are enforced; `achievable` is False.
    """
    return ProtocolParams(
        n=n, pq=pq, privacy=privacy, alpha1=alpha1,
        beta1=challenge_bits / n, beta2=None,
        rate=commit_bits / n, commit_bits=commit_bits,
        challenge_bits=challenge_bits,
        coupling=coupling, coupling_r=coupling_r, achievable=False,
    )


@dataclass(frozen=True)
class Transcript:
    """Everything sent over the public link during the commit phase."""

    challenge: HashSpec        # G, chosen by Bob
    challenge_value: BitVector  # g_bar = G(x)
    extractor: HashSpec        # Ext, chosen by Alice
    pad: BitVector             # Q = c XOR Ext(x)


@dataclass(frozen=True)
class AliceView:
    c: BitVector
    x: BitVector
    transcript: Transcript


@dataclass(frozen=True)
class BobView:
    y: BitVector
    transcript: Transcript


@dataclass(frozen=True)
class EveView:
    z: BitVector
    transcript: Transcript


@dataclass(frozen=True)
class SessionState:
    """The three party views after the commit phase; M is shared."""

    alice_view: AliceView
    bob_view: BobView
    eve_view: EveView

    @property
    def transcript(self) -> Transcript:
        return self.alice_view.transcript


@dataclass(frozen=True)
class RevealClaim:
    c_tilde: BitVector
    x_tilde: BitVector


@dataclass(frozen=True)
class TestResult:
    """Outcome of Bob's reveal test; failed_condition in {1,2,3} on reject."""

    accepted: bool
    failed_condition: Optional[int] = None


def commit_phase(params: ProtocolParams, c: BitVector,
                 channel: WiretapChannel, rng: np.random.Generator) -> SessionState:
    """Run the four commit steps and return all three views.

    Party randomness comes from three child streams of rng: Alice's
    (x and the extractor seed), Bob's (the challenge seed), and the
    channel noise.  The private streams never enter the transcript.
    """
    if len(c) != params.commit_bits:
        raise DimensionError(
            f"commit string length {len(c)} != commit_bits {params.commit_bits}"
        )
    if not math.isclose(channel.p, params.pq.p) or not math.isclose(channel.q, params.pq.q):
        raise CouplingError("channel crossover probabilities do not match params")
    alice_rng, bob_rng, channel_rng = rng.spawn(3)

    x = BitVector.random(alice_rng, params.n)              # C1
    y, z = transmit(channel, x, channel_rng)
    challenge = sample_hash(bob_rng, params.n, params.challenge_bits)  # C2
    g_bar = hash_evaluate(challenge, x)                    # C3
    extractor = sample_hash(alice_rng, params.n, params.commit_bits)   # C4
    pad = c ^ hash_evaluate(extractor, x)

    transcript = Transcript(challenge=challenge, challenge_value=g_bar,
                            extractor=extractor, pad=pad)
    return SessionState(
        alice_view=AliceView(c=c, x=x, transcript=transcript),
        bob_view=BobView(y=y, transcript=transcript),
        eve_view=EveView(z=z, transcript=transcript),
    )


def list_membership(x: BitVector, y: BitVector, params: ProtocolParams) -> bool:
    """Reveal condition (i): n(p - alpha1) <= d_H(x, y) <= n(p + alpha1).

    The band endpoints stay real; the integer distance is compared
    against them directly, with no rounding.
    """
    if len(x) != len(y):
        raise DimensionError(f"length mismatch {len(x)} vs {len(y)}")
    d = x.hamming_distance(y)
    n, p, a = params.n, params.pq.p, params.alpha1
    return n * (p - a) <= d <= n * (p + a)


def bob_test(bob_view: BobView, transcript: Transcript,
             claim: RevealClaim, params: ProtocolParams) -> TestResult:
    """Bob's reveal test; rejects with the first failed condition.

    The protocol parameters are public configuration, agreed before the
    run, hence the explicit argument rather than a view field.
    """
    if len(claim.x_tilde) != len(bob_view.y):
        raise DimensionError("claimed x length does not match the block length")
    if len(claim.c_tilde) != len(transcript.pad):
        raise DimensionError("claimed commit string length does not match the pad")
    if not list_membership(claim.x_tilde, bob_view.y, params):
        return TestResult(accepted=False, failed_condition=1)
    if hash_evaluate(transcript.challenge, claim.x_tilde) != transcript.challenge_value:
        return TestResult(accepted=False, failed_condition=2)
    if claim.c_tilde != transcript.pad ^ hash_evaluate(transcript.extractor, claim.x_tilde):
        return TestResult(accepted=False, failed_condition=3)
    return TestResult(accepted=True)


def honest_run(params: ProtocolParams, channel: WiretapChannel,
               rng: np.random.Generator):
    """Full honest commit + reveal; returns (accepted, session).

    An honest reveal claim is (c, x), so conditions (ii) and (iii) hold
    identically and the run is rejected exactly when the channel pushed
    d_H(x, y) out of the distance band.
    """
    c = BitVector.random(rng, params.commit_bits)
    session = commit_phase(params, c, channel, rng)
    claim = RevealClaim(c_tilde=session.alice_view.c, x_tilde=session.alice_view.x)
    result = bob_test(session.bob_view, session.transcript, claim, params)
    return result.accepted, session


def params_from_config(cfg: dict) -> ProtocolParams:
    """Inverse of ProtocolParams.to_config."""
    pq = CrossoverPair(cfg["p"], cfg["q"])
    common = dict(
        n=int(cfg["n"]), pq=pq, privacy=cfg["privacy"], alpha1=cfg["alpha1"],
        coupling=cfg.get("coupling", "independent"), coupling_r=cfg.get("r"),
    )
    if cfg.get("achievable", True):
        return derive_params(beta1=cfg["beta1"], beta2=cfg["beta2"], **common)
    return explicit_params(challenge_bits=int(cfg["challenge_bits"]),
                           commit_bits=int(cfg["commit_bits"]), **common)


def session_to_config(session: SessionState, params: ProtocolParams,
                      include_y: bool = True, include_z: bool = True,
                      include_secrets: bool = True) -> dict:
    """JSON-ready transcript document.

    Hex fields encode bit vectors MSB-first, zero-padded to a byte
    boundary.  y/z are the parties' channel outputs; x/c are Alice's
    secrets, included so a stored honest session can be replayed
    through bob_test.
    """
    t = session.transcript
    doc = {
        "params": params.to_config(),
        "G": t.challenge.to_config(),
        "g_bar": t.challenge_value.to_hex(),
        "Ext": t.extractor.to_config(),
        "Q": t.pad.to_hex(),
    }
    if include_y:
        doc["y"] = session.bob_view.y.to_hex()
    if include_z:
        doc["z"] = session.eve_view.z.to_hex()
    if include_secrets:
        doc["x"] = session.alice_view.x.to_hex()
        doc["c"] = session.alice_view.c.to_hex()
    return doc


def session_from_config(doc: dict):
    """Rebuild (params, transcript, bob_view?, claim?) from a document.

    Returns a dict with whatever the document contained; replay needs
    at least y plus the stored secrets x and c.
    """
    params = params_from_config(doc["params"])
    challenge = HashSpec.from_config(doc["G"])
    extractor = HashSpec.from_config(doc["Ext"])
    transcript = Transcript(
        challenge=challenge,
        challenge_value=BitVector.from_hex(doc["g_bar"], challenge.output_bits),
        extractor=extractor,
        pad=BitVector.from_hex(doc["Q"], extractor.output_bits),
    )
    out = {"params": params, "transcript": transcript}
    if "y" in doc:
        out["bob_view"] = BobView(y=BitVector.from_hex(doc["y"], params.n),
                                  transcript=transcript)
    if "z" in doc:
        out["eve_view"] = EveView(z=BitVector.from_hex(doc["z"], params.n),
                                  transcript=transcript)
    if "x" in doc and "c" in doc:
        out["claim"] = RevealClaim(
            c_tilde=BitVector.from_hex(doc["c"], params.commit_bits),
            x_tilde=BitVector.from_hex(doc["x"], params.n),
        )
    return out
