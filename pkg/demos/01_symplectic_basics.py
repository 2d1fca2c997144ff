"""Symplectic spaces, splittings, and subspace classification.

Builds the canonical complex plane C^2, inspects its splitting, classifies
a few subspaces, and shows how an ill-scaled form is renormalized so that
the induced operator squares to -I.
"""

import numpy as np

from symflow import (
    annihilator,
    classify,
    compute_splitting,
    gap,
    make_space_from_j,
    normalize_strong,
)

print("== the canonical C^2 ==")
space = make_space_from_j(np.eye(2), np.diag([1j, -1j]))
split = compute_splitting(space)
print("dim:", space.dim, " cond(J):", space.cond_j)
print("X+ basis:", split.plus_h.ravel())
print("X- basis:", split.minus_h.ravel())

print("\n== classification ==")
for label, cols in [
    ("span(e1 + e2)", np.array([[1.0], [1.0]])),
    ("span(e1)", np.array([[1.0], [0.0]])),
    ("the zero subspace", np.zeros((2, 0))),
    ("all of C^2", np.eye(2)),
]:
    frame = space.frame(cols)
    print(f"{label:20s} -> {classify(space, frame)}")

lam = space.frame(np.array([[1.0], [1.0]]))
ann = annihilator(space, lam)
print("\nannihilator of span(e1+e2) equals itself:",
      f"gap = {gap(lam, ann).gap:.2e}")

print("\n== renormalizing an ill-scaled form ==")
weak = make_space_from_j(np.eye(2), np.diag([2j, -0.5j]))
print("before: J =", np.round(np.diag(weak.j), 6), " cond(J):", weak.cond_j)
strong = normalize_strong(weak)
print("after:  J =", np.round(np.diag(strong.j), 6),
      " J^2 + I =", np.abs(strong.j @ strong.j + np.eye(2)).max())
print("the form itself is untouched:",
      np.abs(strong.omega - weak.omega).max())
