"""Cell-by-cell recomputation of the reference two-element sample calculation."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import golden_table1
from .oracle import solve_brute_force
from .phasecore import PhaseAlphabet, phase, quantize_cosine, quantize_gap, wrap_2pi
from .sweep import composite, solve_sweep

PASS, FAIL, TYPO = "PASS", "FAIL", "TYPO"

REL_TOL = 1e-4
ABS_TOL = 1e-3


@dataclass(frozen=True)
class Check:
    label: str
    computed: float
    printed: float
    tol: float
    relative: bool = False
    corrected: float | None = None
    note: str = ""

    def _close(self, expected):
        err = abs(self.computed - expected)
        if self.relative:
            err /= abs(expected)
        return err <= self.tol

    @property
    def status(self) -> str:
        if self._close(self.printed):
            return PASS
        if self.corrected is not None and self._close(self.corrected):
            return TYPO
        return FAIL

    def line(self) -> str:
        kind = "rel" if self.relative else "abs"
        text = (f"{self.status:4}  {self.label:<34} computed={self.computed: .6g}  "
                f"printed={self.printed: .6g}  tol={self.tol:g} {kind}")
        if self.status == TYPO:
            text += f"  [known misprint: {self.note}]"
        return text


def golden_checks(use_printed_h2: bool = False) -> list[Check]:
    """Recompute every printed cell from the golden coefficients.

    By default the corrected ``Im(h2)`` is used and the two known misprints
    are reported with status ``TYPO``. With ``use_printed_h2`` the printed
    coefficient is used verbatim, which breaks the ``|h2|``, phase and
    composite rows.
    """
    gv = golden_table1()
    inst = gv.printed_instance if use_printed_h2 else gv.instance
    A = PhaseAlphabet(2)
    checks = []

    coeffs = {"h0": inst.h0, "h1": inst.h[0], "h2": inst.h[1]}
    for name, z in coeffs.items():
        re, im, mag, ph = gv.coefficients[name]
        checks.append(Check(f"Re({name})", z.real, re, REL_TOL, True))
        if name == "h2":
            checks.append(Check(f"Im({name})", z.imag, im, REL_TOL, True, corrected=-2.6605e-10,
                                note="exponent -11 should be -10"))
        else:
            checks.append(Check(f"Im({name})", z.imag, im, REL_TOL, True))
        checks.append(Check(f"|{name}|", abs(z), mag, REL_TOL, True))
        checks.append(Check(f"phase({name})", phase(z), ph, ABS_TOL))

    for idx, (re, im, mag, ph) in gv.composites.items():
        g = composite(inst, idx, A)
        tag = f"g0({idx[0]},{idx[1]})"
        checks.append(Check(f"Re {tag}", g.real, re, REL_TOL, True))
        checks.append(Check(f"Im {tag}", g.imag, im, REL_TOL, True))
        checks.append(Check(f"|{tag}|", abs(g), mag, REL_TOL, True))
        checks.append(Check(f"phase {tag}", phase(g), ph, ABS_TOL))

    sweep = solve_sweep(inst, A)
    brute = solve_brute_force(inst, A)
    mu = sweep.mu_phase
    checks.append(Check("phase(mu) of optimum", mu, gv.mu_phase, ABS_TOL))
    checks.append(Check("optimum matches (pi, pi) [sweep]", float(sweep.indices == gv.optimum), 1.0, 0.0))
    checks.append(Check("optimum matches (pi, pi) [oracle]", float(brute.indices == gv.optimum), 1.0, 0.0))

    alpha = inst.alpha
    for (n, k), (raw, wrapped) in gv.gap_table.items():
        x = k * math.pi + alpha[n] - mu
        checks.append(Check(f"theta{n + 1}={k}pi: theta+alpha-mu", x, raw, ABS_TOL))
        checks.append(Check(f"theta{n + 1}={k}pi: mod 2pi", wrap_2pi(x), wrapped, ABS_TOL))
    for (n, k), c in gv.cosine_table.items():
        x = k * math.pi + alpha[n] - mu
        fixed = None
        note = ""
        if n == 1:
            # the printed residual 2.2945 itself gives cos = -0.6622
            fixed = math.copysign(abs(math.cos(gv.gap_table[1, 0][0])), c)
            note = "0.6672 should read 0.6622 (= |cos 2.2945|)"
        checks.append(Check(f"theta{n + 1}={k}pi: cos", math.cos(x), c, ABS_TOL,
                            corrected=fixed, note=note))

    checks.append(Check("gap rule picks theta1 = pi", quantize_gap(alpha[0], mu, A), 1, 0.0))
    checks.append(Check("gap rule picks theta2 = 0", quantize_gap(alpha[1], mu, A), 0, 0.0))
    checks.append(Check("cosine rule picks theta1 = pi", quantize_cosine(alpha[0], mu, A), 1, 0.0))
    checks.append(Check("cosine rule picks theta2 = pi", quantize_cosine(alpha[1], mu, A), 1, 0.0))
    return checks
