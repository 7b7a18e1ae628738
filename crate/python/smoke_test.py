"""Smoke test for the pyquantvol extension.

Build and install first:
    pip install --no-build-isolation ./crates/py
"""

from fractions import Fraction

import pyquantvol as qv


def main():
    p2 = qv.Polytope.projective_space(2)
    assert p2.dim == 2
    assert p2.is_reflexive() and p2.is_smooth() and p2.is_projective_space()
    assert p2.normalized_volume() == 9
    for m in range(6):
        assert p2.count_lattice_points(m) == qv.h0_pn(2, m) == qv.hrr_dim2(9, m)
    assert p2.count_interior_points(2) == p2.count_lattice_points(1)
    assert p2.ehrhart_coefficients() == [1, Fraction(9, 2), Fraction(9, 2)]
    assert p2.dual().dual() == p2
    assert all(d == 1 and sep for _, d, sep in p2.vertex_deltas(3))

    square = qv.Polytope([[1, 1], [1, -1], [-1, 1], [-1, -1]])
    assert square.count_lattice_points(1) == 9
    assert square.delta(2, 0) == 1

    dual = p2.dual()
    assert dual.smooth_vertices() == []
    try:
        dual.delta(1, 0)
    except ValueError as e:
        assert "smooth" in str(e)
    else:
        raise AssertionError("singular vertex accepted")

    assert qv.fujita_check(9, 2) == "Equality"
    assert qv.fujita_check(8, 2) == "StrictlyBelow"
    assert qv.hrr_dim3(64, 1) == 35
    assert qv.hrr_dim4(625, 250, 2) == 1001
    assert qv.compute_m0(1, 1) == 3
    assert qv.compute_m0(2, Fraction(9, 2)) == 19
    assert qv.lct_snc([Fraction(1, 2), Fraction(2, 3)]) == Fraction(3, 2)
    assert qv.lct_snc([0, 0]) is None
    assert qv.jet_dim(2, 3) == 6
    assert qv.h0_pn(4, 30) == 22_533_126
    print("pyquantvol smoke test passed")


if __name__ == "__main__":
    main()
