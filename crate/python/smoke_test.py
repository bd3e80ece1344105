"""Smoke test for the gwcache Python extension.

Build and install first:
    pip install maturin
    maturin develop --release -m crates/py/Cargo.toml
then run: python python/smoke_test.py
"""

import math

import gwcache


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    j = gwcache.JointPmf.dsbs(0.2)
    h = j.joint_entropy()
    assert close(h, 1.7219280948873623, 1e-12), h
    assert j.shape == (2, 2)
    s = j.measures()
    assert close(s["mutual_info"], 0.27807190511263765, 1e-12)

    assert close(gwcache.binary_entropy(0.5), 1.0, 0.0)
    p = gwcache.binary_entropy_inv(gwcache.binary_entropy(0.11))
    assert close(p, 0.11, 1e-12)

    p1 = gwcache.dsbs_p1(0.2)
    wyner = gwcache.AuxChannel.wyner_dsbs(0.2, p1)
    r0, r1, r2 = gwcache.gw_corner(j, wyner)
    assert close(r0 + r1 + r2, h, 1e-9)
    assert gwcache.markov_defect(j, wyner) < 1e-12
    assert close(r0, gwcache.dsbs_r0_boundary(r1, 0.2), 1e-9)

    value, active = gwcache.r_lb(j, 1.0)
    assert close(value, 0.3609640474436812, 1e-12) and active == 2
    assert close(gwcache.r_lb_gw_u(j, wyner, 0.5)[0], 0.9679222964113382, 1e-9)
    assert gwcache.r_ach(1.0, 0.5, 0.25) == (1.5, 2)
    ub = gwcache.r_ub_gw_dsbs(0.2, 0.25)
    assert close(ub["value"], gwcache.r_lb(j, 0.25)[0], 1e-6)

    cert = gwcache.gap_certificate(j, restarts=8)
    assert close(cert["coincidence"]["m1"], 0.5 * gwcache.binary_entropy(p1), 1e-6)
    assert close(cert["gap"], 0.10695824896765700, 1e-6)

    indep = gwcache.JointPmf([[0.25, 0.25], [0.25, 0.25]])
    assert close(gwcache.m1(indep, restarts=4)["m1"], 0.5, 1e-6)
    try:
        gwcache.JointPmf([[0.5, 0.6], [0.0, 0.0]])
    except ValueError:
        pass
    else:
        raise AssertionError("invalid pmf accepted")

    run = gwcache.simulate([0.0, 0.5, 1.5, 3.0], n=20_000, seed=1)
    assert run["all_decoded"]
    assert run["max_deviation"] <= 2 / 20_000 + 1e-12
    dsbs = gwcache.simulate([0.8], n=100_000, seed=1, p0=0.2)
    assert dsbs["all_decoded"] and dsbs["max_deviation"] <= 0.01
    assert gwcache.exhaustive_verify(3)["counterexample"] is None

    assert not math.isnan(gwcache.baseline_tc(j, 0.5))
    print("gwcache smoke test passed")


if __name__ == "__main__":
    main()
