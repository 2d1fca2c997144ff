"""Spectral flow through the positive real axis.

A single unitary eigenvalue looping counterclockwise crosses the ray once
(counted +1 on arrival at 1 from below); the flow is additive under
catenation, independent of the sampling, negates under co-orientation
reversal, and survives restriction to invariant subspaces when the
on-axis multiplicity excess is constant.
"""

import numpy as np

from symflow import (
    Frame,
    PositiveRealAxis,
    SampledFamily,
    check_admissible,
    sf_embedding_check,
    spectral_flow,
)

ell = PositiveRealAxis()
samples = list(np.linspace(0.0, 1.0, 17))
loop = SampledFamily(samples, lambda s: np.array([[np.exp(2j * np.pi * s)]]))

flow = spectral_flow(loop, ell)
print("SF of the counterclockwise loop:", flow.total)
print("segments used after refinement:", len(flow.segments))
for seg in flow.segments:
    if seg.contribution:
        print(f"  crossing inside [{seg.s_lo:.4f}, {seg.s_hi:.4f}]: "
              f"rank P_(N-) {seg.rank_lo} -> {seg.rank_hi} "
              f"(contribution {seg.contribution:+d})")

print("\nreversed co-orientation:", spectral_flow(loop, ell.reversed()).total)

left = SampledFamily(list(np.linspace(0.0, 0.5, 9)), loop.evaluator)
right = SampledFamily(list(np.linspace(0.5, 1.0, 9)), loop.evaluator)
print("additivity:", spectral_flow(left, ell).total, "+",
      spectral_flow(right, ell).total, "=",
      spectral_flow(loop, ell).total)

print("\n== admissibility ==")
rep = check_admissible(np.eye(2), ell)
print("identity matrix: admissible =", rep.admissible, " nu =", rep.nu,
      " witness =", [w.describe() for w in rep.witness])

print("\n== embedding invariance ==")
fam = SampledFamily(samples, lambda s: np.diag([np.exp(2j * np.pi * s), 1.0]))
x = Frame(np.eye(2, dtype=complex)[:, [0]])
rep = sf_embedding_check(fam, x, ell)
print(f"ambient SF = {rep.sf_ambient}, restricted SF = {rep.sf_restricted}, "
      f"constant excess m = {rep.m}")
