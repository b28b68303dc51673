"""Smoke test for the spinorize extension module.

Build and install first:
    maturin build --release -m crates/py/Cargo.toml -o dist && pip install dist/spinorize-*.whl
"""

import math

import spinorize as sp


def main():
    params = sp.ModelParams(j1=0.5, j2=5, g=0.3)
    assert params.dim == 22

    two_spin = sp.build_h_two_spin(params)
    bosonic = sp.build_h_bosonic(params)
    worst = max(abs(a - b) for ra, rb in zip(two_spin, bosonic) for a, b in zip(ra, rb))
    assert worst <= 1e-12, worst

    levels = sp.blockwise_spectrum(params, "rotating")
    assert abs(levels[0] + 0.5) < 1e-10
    assert abs(levels[1] - (0.5 - 0.3)) < 1e-10

    value, energy, degenerate = sp.ground_expectation_number(sp.ModelParams(j1=1, j2=2), "rotating")
    assert value == 0.0 and energy == -1.0 and not degenerate

    energies, mean_n = sp.spectrum_scan(sp.ModelParams(j1=2, j2=2), "gprime", [0.0, 0.5, 1.0], "counter")
    assert len(energies) == 3 and mean_n[0] == 0.0

    rot = sp.ReducedHamiltonian("rotating", 1.0)
    top = max((fp for fp in rot.fixed_points() if not fp[4]), key=lambda fp: fp[2])
    assert abs(top[2] - 4 * math.sqrt(6) / 9) < 1e-8

    ctr = sp.ReducedHamiltonian("counter", 1.0)
    assert ctr.separatrix_energy() == -1.0
    assert abs(sp.critical_coupling_scan() - sp.COUNTER_CRITICAL_LAMBDA) < 1e-3

    orbit, hit = ctr.integrate_orbit(0.0, 0.65, 1e-3, 2000)
    assert not hit and len(orbit) == 2001

    lines = ctr.trace_contours([-0.5], 64, 64)
    assert lines and all(level == -0.5 for level, _, _ in lines)

    try:
        sp.ModelParams(j1=0.3, j2=1)
    except ValueError:
        pass
    else:
        raise AssertionError("j1 = 0.3 should be rejected")

    print(f"spinorize {sp.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
