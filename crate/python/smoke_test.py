"""Smoke test for the pychaninfo extension module.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import json
import math

import pychaninfo as ci


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def h2(p):
    return -p * math.log(p) - (1 - p) * math.log(1 - p)


def main():
    half = ci.DensityOperator.maximally_mixed(2)
    deph = ci.KrausChannel.dephasing(0.25)
    close(ci.mutual_information(deph, half), 2 * math.log(2) - h2(0.25), 1e-9)
    close(ci.coherent_information(deph, half), 0.130812, 1e-6)
    close(ci.coherent_information(ci.KrausChannel.erasure(0.25), half), 0.346574, 1e-6)
    close(ci.reversibility_gap(deph, half), h2(0.25), 1e-9)

    # A channel built from explicit Kraus matrices agrees with the named one.
    s, t = math.sqrt(0.75), math.sqrt(0.25)
    manual = ci.KrausChannel([[[s, 0], [0, s]], [[t, 0], [0, -t]]])
    close(ci.mutual_information(manual, half), ci.mutual_information(deph, half), 1e-12)

    phi = ci.KrausChannel.random(3, 2, 3, 7)
    rho = ci.DensityOperator.random(3, 2, 8)
    report = ci.info_report(phi, rho)
    close(report["theorem1_residual"], 0.0, 1e-9)
    close(report["mutual"] + report["mutual_complement"], 2 * rho.entropy(), 1e-9)
    out = phi.apply(rho)
    close(sum(out.eigenvalues()), 1.0, 1e-12)

    best = ci.maximize_mutual_info(ci.KrausChannel.identity(2))
    close(best["value"], 2 * math.log(2), 1e-6)
    assert best["duality_gap"] <= 1e-6 and best["certified"]
    try:
        ci.maximize_mutual_info_constrained(ci.KrausChannel.identity(2), [[0, 0], [0, 1]], -1.0)
        raise AssertionError("expected InfeasibleError")
    except ci.InfeasibleError:
        pass
    try:
        ci.KrausChannel([[[0.5, 0], [0, 0.5]]])
        raise AssertionError("expected ValueError")
    except ValueError as e:
        assert "trace preserving" in str(e)

    ok, csv = ci.run_suite("theorem1", seed=1, count=20)
    assert ok and csv.startswith("suite,check,")
    ok, csv = ci.run_sweep("theorem1-proof", json.dumps({"seed": 3}))
    assert ok and csv.startswith("n,quantity,value,target,deviation")
    assert ci.relative_entropy([[1, 0], [0, 0]], [[0, 0], [0, 1]]) == math.inf
    print("pychaninfo smoke test passed")


if __name__ == "__main__":
    main()
