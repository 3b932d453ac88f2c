#!/usr/bin/env python3
"""Reproduce the headline numbers of the worked examples in one run.

Usage: python scripts/run_paper_examples.py
"""

from fractions import Fraction as F

from nfkit import (
    PolySeries,
    PolyVectorField,
    centralizer_exact,
    check_free_module,
    check_onediv,
    classify_dim3,
    hilbert_basis,
    invariant_generators,
    linear_commutant,
    reduce_vectorfield,
    reduced_multiplier_obstruction,
    resonance_set,
    solve_multiplier,
)
from nfkit.fields import series_times_field
from nfkit.spectrum import build_spectrum


def banner(text):
    print()
    print(text)
    print("-" * len(text))


def diag_field(*values):
    n = len(values)
    return PolyVectorField(
        n,
        {
            (i, tuple(1 if t == i else 0 for t in range(n))): values[i]
            for i in range(n)
            if values[i]
        },
    )


def main():
    banner("diag(12, 6, 3): resonances and the centralizer case table")
    s = build_spectrum(3, 1, [[12], [6], [3]])
    rs = resonance_set(s)
    print(f"resonances: r = {rs.total}, degree bound {rs.degree_bound}")
    print(f"linear commutant dimension d = {linear_commutant(s).dimension}")

    def eg3(a1, a2, a3, a4):
        terms = {(0, (1, 0, 0)): 12, (1, (0, 1, 0)): 6, (2, (0, 0, 1)): 3}
        for key, val in [
            ((0, (0, 2, 0)), a1),
            ((0, (0, 1, 2)), a2),
            ((0, (0, 0, 4)), a3),
            ((1, (0, 0, 2)), a4),
        ]:
            if val:
                terms[key] = val
        return PolyVectorField(3, terms)

    for alphas in [(1, 1, 1, 1), (0, 2, 3, 1), (1, 1, 1, 0), (1, 2, 1, 0),
                   (0, 1, 5, 0), (0, 0, 1, 0), (0, 0, 0, 0)]:
        dim = centralizer_exact(s, eg3(*alphas)).dimension
        print(f"  alpha = {alphas}: dim = {dim}")

    banner("diag(12, 12, 6, 6, 6, 3): counting only")
    s6 = build_spectrum(6, 1, [[12], [12], [6], [6], [6], [3]])
    rs6 = resonance_set(s6)
    print(f"r = {rs6.total}, d = {linear_commutant(s6).dimension} (dimensions lie in [14, 37])")

    banner("Jordan blocks (3,3,3,2,2,1)")
    sj = build_spectrum(6, 1, [[3], [3], [3], [2], [2], [1]],
                        [(0, 1, 1), (1, 2, 1), (3, 4, 1)])
    print(f"d = {linear_commutant(sj).dimension} (generic dim 6, trivial nonlinearity dim 10)")

    banner("Multiplier ladder for the 3d quadratic family")
    si = build_spectrum(3, 1, [[1], [-1], [0]])
    a1, a2, a4 = F(1, 2), F(1, 3), F(1, 5)
    f = PolyVectorField(3, {
        (0, (1, 0, 0)): 1, (1, (0, 1, 0)): -1,
        (0, (1, 0, 1)): a1, (1, (0, 1, 1)): a2,
        (2, (0, 0, 2)): 1, (2, (1, 1, 0)): a4,
    })
    ladder = solve_multiplier(si, f, 2, 6, 6)
    for e in ladder.entries:
        if e.status == "solved":
            print(f"  r = {e.r}: solved; phi = {sorted(e.multiplier.terms.items())}")
        else:
            print(f"  r = {e.r}: inconsistent at degree {e.failed_degree}")
    print(f"  exact cofactor ratio 2*a4/(2-a1-a2) = {2 * a4 / (2 - a1 - a2)}")

    banner("diag(3, 2, -6): the distinguished three-dimensional setting")
    sd = build_spectrum(3, 1, [[3], [2], [-6]])
    print(f"classifier on (3, 2, 6): {classify_dim3(3, 2, 6)}")
    print(f"hilbert basis: {hilbert_basis(sd).generators}")
    print(f"free module: {check_free_module(sd).free}, "
          f"coordinate-product cofactor module: {check_onediv(sd).holds}")
    inv = invariant_generators(sd)
    fd = diag_field(3, 2, -6)
    Q = [PolyVectorField.monomial(3, i, tuple(1 if t == i else 0 for t in range(3)))
         for i in range(3)]
    fd = fd + series_times_field(PolySeries.monomial(3, inv.generators[0], F(1)), Q[0])
    fd = fd + series_times_field(PolySeries.monomial(3, inv.generators[1], F(2)), Q[1])
    fd = fd + series_times_field(PolySeries.monomial(3, inv.generators[0], F(1, 3)), Q[2])
    red = reduce_vectorfield(sd, inv, fd)
    print(f"reduced quadratic coefficients: {[[str(x) for x in row] for row in red.nu]}")
    obs = reduced_multiplier_obstruction(red)
    print(f"reduced multiplier obstruction: {obs.status}, candidate = {obs.alpha}")


if __name__ == "__main__":
    main()
