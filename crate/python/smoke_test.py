"""Smoke test for the boostclock_py extension module.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

import math

import boostclock_py as bc


def close(a, b, tol):
    assert abs(a - b) < tol, f"{a} != {b} (tol {tol})"


def main():
    params = bc.PhysicalParams(1.0, 1.0)
    point = bc.MomentumPoint(1.0, math.pi / 2, 0.0)
    close(bc.boosted_energy(params, point, 1.0), math.sqrt(2) * math.cosh(1) + math.sinh(1), 1e-12)

    u = bc.wigner_matrix(params, bc.MomentumPoint(2.0, 0.7, 1.3), 3.0)
    assert u.unitarity_defect() < 1e-12
    close(abs(u.determinant()), 1.0, 1e-12)
    assert len(u.to_list()) == 2

    close(bc.fidelity(1.0, 0.0), 1.0, 1e-12)
    coarse = bc.QuadratureSpec(32, 48, 48)
    f = bc.fidelity(1.0, 2.0, coarse)
    assert 0.9 < f < 1.0
    mc, err = bc.fidelity_oracle(1.0, 2.0, n_samples=200_000, seed=7)
    assert abs(mc - f) < 4 * err, (mc, f, err)

    n_z, norm = bc.bloch_z(1.0, 2.0, coarse)
    close(norm, 1.0, 1e-6)
    assert -1.0 <= n_z <= 1.0

    m = bc.measures_from_fidelity(0.5, n_z=n_z)
    close(m["mutual_info"], 2 * m["entropy"], 1e-15)
    close(m["quadratic"], 0.75, 1e-15)
    close(m["log_negativity"], math.log2(2 * math.sqrt(0.1875) + 1), 1e-12)
    close(m["renyi_inf"], -math.log2(0.75), 1e-12)
    close(bc.renyi_entropy(0.5, 1.0), m["entropy"], 1e-15)

    try:
        bc.fidelity(-1.0, 1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("negative w/m accepted")

    result = bc.run_sweep(xi_max=2, xi_steps=3, w_over_m="0.1,1", measures="fidelity,entropy", grid="16,24,24")
    assert len(result) == 2 * 3 * 2
    fid = result.series("fidelity", 1.0)
    assert [x for x, _ in fid] == [0.0, 1.0, 2.0]
    assert all(a >= b for (_, a), (_, b) in zip(fid, fid[1:]))
    assert result.to_csv().startswith("xi,w_over_m,measure")
    assert result.to_svg("entropy").count("<polyline") == 2

    print("smoke test passed")


if __name__ == "__main__":
    main()
