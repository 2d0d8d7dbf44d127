"""Smoke tests of the python bindings."""

import math
import os
import tempfile

import fraclap


def test_gamma_and_grid():
    assert fraclap.gamma_char(0.0, 0.5, 1) == 0.0
    assert abs(fraclap.gamma_char(1.0, 0.5, 1) - 1.0) < 1e-14
    # gamma(N + a) = 1 for every s.
    for s in (0.25, 0.5, 0.75):
        assert abs(fraclap.gamma_char(2.0 - 2.0 * s, s, 1) - 1.0) < 1e-13

    g = fraclap.build_grid(-1.0, 1.0, 1.0, 9, 9, 1.0, 0.0)
    assert g.nx == 9 and g.ny == 9
    assert g.y_nodes[0] == 0.0
    assert all(abs(w - 1.0) < 1e-14 for w in g.face_weights_y)


def test_constant_solve_exact():
    pp = fraclap.ProblemParams.make(s=0.5, k=1, p=1.0, q=1.0, beta=0.0)
    g = fraclap.build_grid(-1.0, 1.0, 1.0, 17, 9, 1.0, pp.a)
    b = fraclap.BoundaryData.constant(pp, g, 3.0)
    cfg = fraclap.SolverConfig()
    cfg.tolerance = 1e-12
    field, report = fraclap.solve_system(pp, g, b, fraclap.Field.zeros(pp, g), cfg)
    assert report.converged
    comp = field.component(0)
    assert abs(comp - 3.0).max() < 1e-10


def test_manufactured_conormal():
    s = 0.75
    pp = fraclap.ProblemParams.make(s=s, k=1, p=1.0, q=1.0, beta=0.0)
    g = fraclap.build_grid(-1.0, 1.0, 1.0, 9, 17,
                           fraclap.default_grading_exponent(pp.a), pp.a)
    f = fraclap.Field.zeros(pp, g)
    for j, y in enumerate(g.y_nodes):
        for i in range(g.nx):
            f.set_value(0, i, j, y ** (2.0 * s))
    con = fraclap.conormal_trace(f, 0)
    assert max(abs(c + 2.0 * s) for c in con) < 1e-11


def test_field_roundtrip():
    pp = fraclap.ProblemParams.make(s=0.375, k=2, p=1.0, q=2.0, beta=5.0)
    g = fraclap.build_grid(-1.0, 1.0, 1.0, 7, 5,
                           fraclap.default_grading_exponent(pp.a), pp.a)
    f = fraclap.Field.constant(pp, g, math.sqrt(2.0))
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "f.txt")
        fraclap.save_field(f, path)
        f2 = fraclap.load_field(path)
    assert f2.params.k == 2
    assert (f.component(1) == f2.component(1)).all()


def test_small_sweep_and_diagnostics():
    pp = fraclap.ProblemParams.make(s=0.5, k=2, p=1.0, q=1.0, beta=0.0)
    g = fraclap.build_grid(-1.0, 1.0, 1.0, 33, 9, 1.0, pp.a)
    b = fraclap.BoundaryData.mirror_crossing(pp, g, 1.0)
    cfg = fraclap.SolverConfig()
    cfg.tolerance = 1e-7
    ladder = fraclap.BetaLadder(beta0=1.0, ratio=100.0, steps=3)
    field, record = fraclap.continue_beta(pp, g, b, ladder, cfg)
    tp = [m[1] for m in record.trace_product]
    assert tp[-1] < tp[0]
    assert fraclap.reflection_residual(field) < 1e-5
    hat = fraclap.hat_field(field)
    assert len(hat.values) == 2


def test_exponents():
    mu = fraclap.optimize_mu(0.5, 256)
    assert abs(mu.value - 1.0) < 0.02
    nu = fraclap.optimize_nu(0.5, 256)
    assert abs(nu.value - 0.5) < 0.02
    assert nu.value <= mu.value + 1e-12
