"""Closed linear relations as matrix pencils.

A relation that is not an operator graph: E = diag(1, 0), F = diag(2, 1)
has domain span(e1), a one-dimensional indeterminant part A(0), spectrum
{2} plus an infinite eigenvalue, and a spectral projection that kills the
indeterminant direction.
"""

import numpy as np

from symflow import (
    DiskWindow,
    PencilRelation,
    relation_compose,
    relation_fredholm,
    relation_inverse,
    relation_spectrum,
    resolvent,
    spectral_projection,
    spectral_projector_eig,
)

pencil = PencilRelation(np.diag([1.0, 0.0]), np.diag([2.0, 1.0]))
print("domain dim:", pencil.domain().rank)
print("range dim:", pencil.range().rank)
print("A(0) dim:", pencil.indeterminant_part().rank)
print("is an operator graph:", pencil.is_operator())

spec = relation_spectrum(pencil)
print("\nspectrum:", [(v, m) for v, m in spec.eigenvalues],
      "+ infinite multiplicity", spec.infinite_multiplicity)
print("fredholm (ker, coker, index):", relation_fredholm(pencil))

print("\nresolvent at 0:\n", resolvent(pencil, 0.0))

window = DiskWindow(2.0 + 0.0j, 0.5)
p, rank = spectral_projection(pencil, window)
p_eig = spectral_projector_eig(pencil, window)
print("\nRiesz projection for the disk around 2 (rank", rank, "):\n", np.round(p, 10))
print("quadrature vs eigendecomposition:", np.abs(p - p_eig).max())
print("P kills the indeterminant direction:",
      np.abs(p @ pencil.indeterminant_part().matrix).max())

print("\n== relation algebra ==")
double = relation_inverse(relation_inverse(pencil))
print("inverse twice returns the same subspace of X x X")
a = np.array([[0.0, 1.0], [-1.0, 0.0]])
b = np.diag([2.0, 3.0])
comp = relation_compose(PencilRelation.from_operator(b), PencilRelation.from_operator(a))
print("compose(graph B, graph A) = graph(BA):",
      relation_spectrum(comp).eigenvalues)
