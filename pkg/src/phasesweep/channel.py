"""Synthetic channel realizations, the golden two-element instance and instance I/O."""
from __future__ import annotations

import io
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError, ParseError
from .sweep import ChannelInstance

U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class ChannelModelConfig:
    """i.i.d. circularly-symmetric complex Gaussian coefficients.

    ``direct_scale`` and ``reflect_scale`` are per-component standard
    deviations of ``h0`` and of each ``h[n]``. ``reflect_scale=None`` selects
    ``1/sqrt(2N)``, which makes the total expected reflected power equal to 1.
    """

    n_elements: int
    direct_scale: float = 1.0
    reflect_scale: float | None = None
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.n_elements, bool) or int(self.n_elements) != self.n_elements or self.n_elements < 1:
            raise InvalidArgumentError(f"n_elements must be a positive integer, got {self.n_elements!r}")
        if self.reflect_scale is None:
            object.__setattr__(self, "reflect_scale", 1.0 / math.sqrt(2 * self.n_elements))
        for name in ("direct_scale", "reflect_scale"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InvalidArgumentError(f"{name} must be positive and finite, got {v!r}")
        if not 0 <= int(self.seed) <= U64_MAX:
            raise InvalidArgumentError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")


def generate(config: ChannelModelConfig) -> ChannelInstance:
    """Draw one channel realization; the seed fully determines the output."""
    rng = np.random.default_rng(int(config.seed))
    z = rng.standard_normal(2 + 2 * config.n_elements)
    h0 = config.direct_scale * complex(z[0], z[1])
    h = config.reflect_scale * (z[2::2] + 1j * z[3::2])
    return ChannelInstance(h0, h)


def realization_seed(master_seed: int, n_elements: int, r: int) -> int:
    """Seed of realization ``r`` for an ``N``-element channel.

    Mixed with :class:`numpy.random.SeedSequence`, so any single realization
    can be regenerated in isolation.
    """
    ss = np.random.SeedSequence([int(master_seed), int(n_elements), int(r)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


# --- golden vector ---------------------------------------------------------

# Coefficients of the reference two-element example. The printed Im(h2)
# carries a wrong exponent (-11): it contradicts the printed |h2| = 2.6634e-10,
# the printed phase 4.6664 and every printed g0 sum. -10 restores all of them.
_H0 = (-2.8267e-7, 2.7376e-7)
_H1 = (1.0958e-10, -1.0501e-11)
_H2_PRINTED = (-1.2238e-11, -2.6605e-11)
_H2 = (-1.2238e-11, -2.6605e-10)


@dataclass(frozen=True)
class GoldenVector:
    instance: ChannelInstance
    printed_instance: ChannelInstance
    coefficients: dict
    composites: dict
    gap_table: dict
    cosine_table: dict
    mu_phase: float
    optimum: tuple


def golden_table1() -> GoldenVector:
    """The two-element, K=2 instance and every value printed for it.

    ``coefficients`` maps name -> (re, im, abs, phase) as printed;
    ``composites`` maps index vectors -> (re, im, abs, phase);
    ``gap_table`` maps (element, index) -> (unwrapped, wrapped) residuals;
    ``cosine_table`` maps (element, index) -> cosine. Elements are 0-based.
    """
    return GoldenVector(
        instance=ChannelInstance.from_pairs(_H0, [_H1, _H2]),
        printed_instance=ChannelInstance.from_pairs(_H0, [_H1, _H2_PRINTED]),
        coefficients={
            "h0": (-2.8267e-7, 2.7376e-7, 3.9350e-7, 2.3722),
            "h1": (1.0958e-10, -1.0501e-11, 1.1008e-10, 6.1876),
            "h2": (-1.2238e-11, -2.6605e-11, 2.6634e-10, 4.6664),
        },
        composites={
            (0, 0): (-2.8257e-7, 2.7348e-7, 3.9324e-7, 2.3725),
            (0, 1): (-2.8255e-7, 2.7401e-7, 3.9359e-7, 2.3715),
            (1, 0): (-2.8279e-7, 2.7350e-7, 3.9341e-7, 2.3729),
            (1, 1): (-2.8277e-7, 2.7403e-7, 3.9377e-7, 2.3719),
        },
        gap_table={
            (0, 0): (3.8158, 3.8158),
            (0, 1): (6.9574, 0.67417),
            (1, 0): (2.2945, 2.2945),
            (1, 1): (5.4361, 5.4361),
        },
        cosine_table={
            (0, 0): -0.7812,
            (0, 1): 0.7812,
            (1, 0): -0.6672,
            (1, 1): 0.6672,
        },
        mu_phase=2.3719,
        optimum=(1, 1),
    )


# --- instance documents ----------------------------------------------------

def _pair(value, where):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ParseError(f"{where}: expected a [re, im] pair, got {value!r}")
    out = []
    for part, label in zip(value, ("re", "im")):
        if isinstance(part, bool) or not isinstance(part, (int, float)):
            raise ParseError(f"{where}.{label}: expected a number, got {part!r}")
        if not math.isfinite(part):
            raise ParseError(f"{where}.{label}: value must be finite, got {part!r}")
        out.append(float(part))
    return complex(*out)


def parse_document(doc) -> tuple[ChannelInstance, int | None]:
    """Decode an already-loaded JSON object into ``(instance, K_hint)``."""
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    for key in ("h0", "h"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    h0 = _pair(doc["h0"], "h0")
    if not isinstance(doc["h"], list):
        raise ParseError("h: expected an array of [re, im] pairs")
    if len(doc["h"]) < 1:
        raise ParseError("h: N must be ≥ 1")
    h = [_pair(p, f"h[{i}]") for i, p in enumerate(doc["h"])]
    k_hint = doc.get("K")
    if k_hint is not None and (isinstance(k_hint, bool) or not isinstance(k_hint, int) or k_hint < 2):
        raise ParseError(f"K: expected an integer >= 2, got {k_hint!r}")
    return ChannelInstance(h0, h), k_hint


def load_document(source) -> tuple[ChannelInstance, int | None]:
    """Read an instance document from a path or text stream."""
    if isinstance(source, (str, os.PathLike)):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc.strerror or exc}") from exc
    else:
        text = source.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    return parse_document(doc)


def read_instance(source) -> ChannelInstance:
    return load_document(source)[0]


def instance_document(instance: ChannelInstance, K: int | None = None) -> dict:
    doc = {
        "h0": [instance.h0.real, instance.h0.imag],
        "h": [[z.real, z.imag] for z in instance.h.tolist()],
    }
    if K is not None:
        doc["K"] = int(K)
    return doc


def write_instance(instance: ChannelInstance, target, K: int | None = None) -> None:
    """Write an instance document; floats use shortest round-trip decimals."""
    text = json.dumps(instance_document(instance, K))
    if isinstance(target, (str, os.PathLike)):
        Path(target).write_text(text + "\n", encoding="utf-8")
    else:
        target.write(text + "\n")


def dumps_instance(instance: ChannelInstance, K: int | None = None) -> str:
    buf = io.StringIO()
    write_instance(instance, buf, K)
    return buf.getvalue()
