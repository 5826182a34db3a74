import json
import math

import numpy as np
import pytest

import labelgeom as lg


@pytest.fixture(scope="module")
def fig8():
    d = lg.census_diagram("fig8")
    s = lg.System(d)
    sols = lg.solve(s, restarts=16)
    return d, s, sols, lg.select_geometric(s, sols)


def test_parse_and_properties():
    d = lg.parse_pd("X 1 6 2 7\nX 3 8 4 9\nX 5 10 6 1\nX 7 2 8 3\nX 9 4 10 5\n")
    assert d.crossing_count == 5
    assert d.edge_count == 10
    assert d.face_count == 7
    assert d.component_count == 1
    assert sum(d.face_sizes()) == 2 * d.edge_count
    assert lg.parse_pd(d.to_pd()).crossings == d.crossings


def test_bad_pd_raises():
    with pytest.raises(lg.LabelgeomError):
        lg.parse_pd("X 1 2 3\n")


def test_unknown_census():
    with pytest.raises(lg.LabelgeomError, match="UnknownCensusName"):
        lg.census_diagram("nope")
    assert "fig8" in lg.census_names()


def test_figure_eight_labels(fig8):
    _, s, sols, g = fig8
    assert len(sols) == 2
    assert g.tags["geometric"]
    assert g.max_residual < 1e-12
    w = np.array(g.crossing_labels)
    omega = complex(-0.5, math.sqrt(3) / 2)
    # two crossings carry omega, the other two its conjugate
    assert sorted(np.round(w, 12).tolist(), key=lambda z: z.imag) == pytest.approx(
        [omega.conjugate()] * 2 + [omega] * 2, abs=1e-12
    )
    assert np.abs(s.residual(g.x)).max() < 1e-12


def test_jacobian_matches_differences(fig8):
    _, s, _, g = fig8
    J = s.jacobian(g.x)
    assert J.shape == (s.residual_count, s.unknown_count)
    h = 1e-6
    e = np.zeros(s.unknown_count, dtype=complex)
    e[0] = h
    fd = (s.residual(g.x + e) - s.residual(g.x - e)) / (2 * h)
    assert np.allclose(J[:, 0], fd, atol=1e-7)


def test_holonomy_is_a_representation(fig8):
    _, s, _, g = fig8
    h = lg.holonomy(s, g.x)
    assert h["max_relator_deviation"] < 1e-10
    for m in h["generators"]:
        m = np.asarray(m)
        assert abs(np.linalg.det(m) - 1) < 1e-10
        assert abs(np.trace(m) - 2) < 1e-10
    assert lg.expanded_meridian(s, g) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("variant", lg.encircled_variants())
def test_punctured_sphere_quarter(variant):
    label, parallel = lg.punctured_sphere_label(variant)
    assert label == pytest.approx(0.25 if parallel else -0.25, abs=1e-9)


def test_report_and_certificate():
    d = lg.census_diagram("borromean")
    r = lg.report(d, restarts=16, census="borromean")
    assert r["schema_version"] == 1
    assert r["census"]["passed"]
    text = lg.report_text(d, restarts=16)
    cert = lg.verify_certificate(d, text)
    assert cert["max_residual"] < 1e-12
    assert cert["tags_checked"]


def test_certificate_rejects_garbage():
    d = lg.census_diagram("fig8")
    with pytest.raises(lg.LabelgeomError, match="SchemaError"):
        lg.verify_certificate(d, "{}")
    with pytest.raises(lg.LabelgeomError, match="SchemaError"):
        lg.verify_certificate(d, "not json")
    r = lg.report(d, restarts=16)
    sol = r["solutions"][r["geometric"]]
    sol["edge_labels"][0][0] += 1e-3
    with pytest.raises(lg.LabelgeomError, match="ToleranceExceeded"):
        lg.verify_certificate(d, json.dumps(sol))
