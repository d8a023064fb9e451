import dataclasses
import math

import numpy as np
import pytest

from cnotsteer.optimize import (
    CalibrationResult,
    SINGLE_STEP_BOUNDS,
    calibrate_single_step,
    calibrate_two_step,
    results_to_csv,
    sweep,
)
from cnotsteer.sequences import DetuningOutOfRangeError
from cnotsteer.simplex import NMOptions, nelder_mead

from reference_data import TABLE1_SINGLE, TABLE1_T2, TABLE2


def test_nm_quadratic():
    res = nelder_mead(lambda x: (x[0] - 1.0) ** 2, [0.0], NMOptions(bounds=[(-10.0, 10.0)]))
    assert res.converged
    assert abs(res.x[0] - 1.0) < 1e-6


def test_nm_boundary_minimum():
    res = nelder_mead(lambda x: x[0], [2.5], NMOptions(bounds=[(2.0, 3.0)]))
    assert abs(res.x[0] - 2.0) < 1e-6


def test_nm_rosenbrock():
    def rosen(x):
        return (1.0 - x[0]) ** 2 + 100.0 * (x[1] - x[0] ** 2) ** 2

    res = nelder_mead(rosen, [-1.0, 1.0], NMOptions(bounds=[(-5.0, 5.0)] * 2))
    assert np.max(np.abs(res.x - 1.0)) < 1e-4


def test_nm_monotone_best_so_far():
    seen = []

    def f(x):
        seen.append(float((x[0] - 0.3) ** 2 + (x[1] + 0.4) ** 2))
        return seen[-1]

    nelder_mead(f, [2.0, 2.0], NMOptions(bounds=[(-4.0, 4.0)] * 2, max_iterations=200))
    best = np.minimum.accumulate(seen)
    assert all(b2 <= b1 for b1, b2 in zip(best, best[1:]))


def test_nm_iteration_cap_clears_converged_flag():
    res = nelder_mead(
        lambda x: (x[0] - 1.0) ** 2,
        [-9.0],
        NMOptions(bounds=[(-10.0, 10.0)], max_iterations=3),
    )
    assert not res.converged
    assert res.iterations == 3


def test_nm_options_validation():
    with pytest.raises(ValueError):
        NMOptions(bounds=[])
    with pytest.raises(ValueError):
        NMOptions(bounds=[(1.0, 0.0)])
    with pytest.raises(ValueError):
        nelder_mead(lambda x: x[0], [5.0], NMOptions(bounds=[(0.0, 1.0)]))


def test_calibration_is_deterministic():
    a = calibrate_single_step(0.7)
    b = calibrate_single_step(0.7)
    assert dataclasses.asdict(a) == dataclasses.asdict(b)


def test_calibrate_single_step_resonant():
    cal = calibrate_single_step(0.0)
    assert abs(cal.t_units - 1.0) < 5e-3
    assert abs(cal.omega1_over_g - math.sqrt(15.0)) < 5e-3
    assert cal.distance < 1e-10
    assert cal.converged
    from cnotsteer.equivclass import cnot_distance

    assert abs(cal.distance - cnot_distance(cal.invariants)) < 1e-12


def test_calibrate_single_step_at_bound():
    cal = calibrate_single_step(1.0)
    t_ref, om_ref = TABLE1_SINGLE[1.0]
    assert abs(cal.t_units - t_ref) < 5e-3
    assert abs(cal.omega1_over_g - om_ref) < 5e-3
    assert cal.distance < 1e-10


def test_calibrate_single_step_beyond_bound():
    cal = calibrate_single_step(1.5)
    t_ref, om_ref, g1_ref, g2_ref = TABLE2[1.5]
    assert abs(cal.t_units - t_ref) < 5e-3
    assert abs(cal.omega1_over_g - om_ref) < 5e-3
    assert cal.invariants is not None
    assert abs(cal.invariants.g1.real - g1_ref) < 2e-3
    assert abs(cal.invariants.g2 - g2_ref) < 2e-3
    assert cal.distance > 1e-4


def test_calibration_symmetric_in_detuning_sign():
    plus = calibrate_single_step(0.8)
    minus = calibrate_single_step(-0.8)
    assert abs(plus.distance - minus.distance) < 1e-9
    assert plus.invariants is not None and minus.invariants is not None
    assert abs(plus.invariants.g1 - minus.invariants.g1) < 1e-9
    assert abs(plus.invariants.g2 - minus.invariants.g2) < 1e-9


def test_crossover_bounds():
    for delta in (0.0, 0.5, 1.0):
        assert calibrate_single_step(delta).distance < 1e-10
    for delta in (1.2, 1.5, 2.0):
        assert calibrate_single_step(delta).distance > 1e-4


def test_calibrate_two_step_values():
    cal = calibrate_two_step(0.5)
    assert abs(cal.t_units - TABLE1_T2[0.5]) < 1e-4
    assert cal.distance < 1e-10
    cal = calibrate_two_step(1.9)
    assert abs(cal.t_units - TABLE1_T2[1.9]) < 1e-4
    assert cal.omega1_over_g == 0.0


def test_calibrate_two_step_out_of_range():
    with pytest.raises(DetuningOutOfRangeError):
        calibrate_two_step(2.1)


def test_sweep_collects_errors_and_preserves_order():
    results = sweep([1.9, 2.0, 2.1, 0.3], mode="two-step")
    assert [r.delta_over_g for r in results] == [1.9, 2.0, 2.1, 0.3]
    assert results[2].error is not None
    assert not results[2].converged
    assert math.isnan(results[2].t_units)
    assert all(r.error is None for i, r in enumerate(results) if i != 2)


def test_sweep_single_step_matches_reference_rows():
    results = sweep([0.0, 0.5, 1.0], mode="one-step")
    for r in results:
        t_ref, om_ref = TABLE1_SINGLE[r.delta_over_g]
        assert abs(r.t_units - t_ref) < 5e-3
        assert abs(r.omega1_over_g - om_ref) < 5e-3
        assert r.distance < 1e-10


def test_sweep_rejects_unknown_mode():
    with pytest.raises(ValueError):
        sweep([0.1], mode="three-step")


def test_results_csv_format():
    rows = sweep([0.5, 2.1], mode="two-step")
    text = results_to_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "delta_over_g,T,omega1_over_g,G1_re,G1_im,G2,d2,fidelity,converged"
    good = lines[1].split(",")
    assert good[0] == "0.500000"
    assert good[7] == ""  # no fidelity on plain calibration rows
    assert good[8] == "true"
    bad = lines[2].split(",")
    assert bad[1] == "" and bad[8] == "false"


def test_single_step_bounds_exposed():
    (om_lo, om_hi), (t_lo, t_hi) = SINGLE_STEP_BOUNDS
    assert om_lo < math.sqrt(15.0) < om_hi
    assert t_lo < 1.0 < t_hi
