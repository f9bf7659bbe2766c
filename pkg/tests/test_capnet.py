import json
import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from conftest import REF_GGG_ABOVE, REF_GGG_BELOW, REF_GGG_BELOW_AS_LABELLED, REF_GFG
from qcq import capnet
from qcq.capnet import (
    CapacitanceNetwork,
    Element,
    ElementTopology,
    build_maxwell,
    build_transform,
    closed_form_ggg,
    extract_energies,
    flip_element_sign,
    flip_node_sign,
    ggg_network,
    load_network,
)
from qcq.constants import DEFAULT, E2_OVER_H, PhysConstants
from qcq.errors import DegenerateError, DomainError, InvalidNetworkError, NumericalFailureError

# exact SI values (2019 redefinition)
E_CHARGE = 1.602176634e-19
PLANCK = 6.62607015e-34

caps = st.floats(min_value=20.0, max_value=200.0)
mutuals = st.floats(min_value=0.5, max_value=20.0)
small = st.floats(min_value=0.0, max_value=5.0)


def single_grounded(c: float) -> CapacitanceNetwork:
    return CapacitanceNetwork(ElementTopology((Element("a", "G"),)), {"a": c})


# -- constants ----------------------------------------------------------------


def test_e2_over_h_from_si_values():
    # e^2/h in siemens, times 1e-9 (GHz) / 1e-15 (fF)
    assert E2_OVER_H == pytest.approx(E_CHARGE**2 / PLANCK * 1e6, rel=1e-15)
    assert E2_OVER_H == pytest.approx(38.7405, abs=5e-5)


def test_inductance_matches_flux_quantum_definition():
    ej = 25.3953
    phi0 = PLANCK / (2 * E_CHARGE)
    L_si = (phi0 / (2 * math.pi)) ** 2 / (ej * 1e9 * PLANCK)
    assert DEFAULT.inductance_nH(ej) == pytest.approx(L_si * 1e9, rel=1e-12)
    assert DEFAULT.josephson_energy(DEFAULT.inductance_nH(ej)) == pytest.approx(ej, rel=1e-14)


def test_constants_reject_nonpositive():
    with pytest.raises(ValueError):
        PhysConstants(0.0)


# -- topology and network -----------------------------------------------------


def test_from_config_assigns_roles_and_nodes():
    topo = ElementTopology.from_config("G-F-G")
    assert topo.nodes == ("q1", "c.1", "c.2", "q2")
    assert topo.qubits == ("q1", "q2")
    assert topo.coupler == "c"
    assert topo.config == "G-F-G"


def test_three_untagged_elements_default_to_qcq_roles():
    topo = ElementTopology((Element("a", "G"), Element("b", "F"), Element("d", "G")))
    assert topo.qubits == ("a", "d")
    assert topo.coupler == "b"


@pytest.mark.parametrize(
    "build",
    [
        lambda: ElementTopology((Element("a", "G"), Element("a", "G"))),
        lambda: Element("x", "Q"),
        lambda: Element("x.y", "G"),
        lambda: CapacitanceNetwork(ElementTopology.from_config("GGG"), {"zz": 1.0}),
        lambda: CapacitanceNetwork(ElementTopology.from_config("GGG"), {"q1": -1.0}),
        lambda: CapacitanceNetwork(ElementTopology.from_config("GGG"), {}, {("q1", "q1"): 1.0}),
        lambda: CapacitanceNetwork(ElementTopology.from_config("GGG"), {}, {}, {"q1": 2}),
        lambda: CapacitanceNetwork(ElementTopology.from_config("GGG"), {}, {("q1", "c"): 1.0, ("c", "q1"): 2.0}),
    ],
)
def test_invalid_networks_rejected(build):
    with pytest.raises(InvalidNetworkError):
        build()


def test_isolated_node_rejected():
    net = CapacitanceNetwork(ElementTopology.from_config("GGG"), {"q1": 50.0, "c": 50.0}, {("q1", "c"): 2.0})
    with pytest.raises(InvalidNetworkError, match="zero total capacitance"):
        build_maxwell(net)


def test_qcq_roles_required_for_A():
    net = CapacitanceNetwork(ElementTopology((Element("a", "G", "qubit"),)), {"a": 10.0})
    e = extract_energies(net)
    with pytest.raises(InvalidNetworkError):
        e.A


def test_ill_conditioned_network_is_numerical_failure():
    net = CapacitanceNetwork(
        ElementTopology.from_config("GGG"), {"q1": 1e-12, "c": 1e-12, "q2": 1.0}, {("q1", "c"): 1e3}
    )
    with pytest.raises(NumericalFailureError):
        extract_energies(net)


def test_json_round_trip(tmp_path, ref_gfg):
    path = tmp_path / "net.json"
    path.write_text(json.dumps(ref_gfg.with_signs({"q1": -1}).to_dict()))
    back = load_network(path)
    assert back == ref_gfg.with_signs({"q1": -1})


def test_load_network_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"elements": [\n  {"id": "a", "type": "G"},\n}')
    with pytest.raises(InvalidNetworkError, match="line 3"):
        load_network(path)


def test_load_network_missing_field():
    with pytest.raises(InvalidNetworkError, match="missing or invalid"):
        load_network({"self_caps_fF": {}})


def test_load_network_accepts_design_report(tmp_path, ref_ggg_below):
    path = tmp_path / "report.json"
    path.write_text(json.dumps({"schema_version": 1, "network": ref_ggg_below.to_dict()}))
    assert load_network(path) == ref_ggg_below


# -- Maxwell and transform matrices -------------------------------------------


def test_maxwell_ggg_values():
    m = build_maxwell(ggg_network(*REF_GGG_BELOW)).matrix
    expected = np.array([[84.728, -6.0, -0.128], [-6.0, 68.6, -6.0], [-0.128, -6.0, 84.728]])
    np.testing.assert_allclose(m, expected, rtol=0, atol=1e-12)


def test_maxwell_zero_mutuals_is_diagonal():
    net = CapacitanceNetwork(ElementTopology.from_config("GFG"), {"q1": 1.0, "c.1": 2.0, "c.2": 3.0, "q2": 4.0})
    np.testing.assert_array_equal(build_maxwell(net).matrix, np.diag([1.0, 2.0, 3.0, 4.0]))


def test_maxwell_sign_flip_negates_row():
    net = ggg_network(*REF_GGG_BELOW)
    m = build_maxwell(net).matrix
    mf = build_maxwell(flip_node_sign(net, "q1")).matrix
    np.testing.assert_array_equal(np.diag(mf), np.diag(m))
    np.testing.assert_array_equal(mf[0, 1:], -m[0, 1:])
    np.testing.assert_array_equal(mf[1:, 1:], m[1:, 1:])


@given(caps, caps, mutuals, small)
def test_maxwell_structure(c0q, c0c, cqc, cqq):
    m = build_maxwell(ggg_network(c0q, c0c, cqc, cqq)).matrix
    assert np.array_equal(m, m.T)
    off = m - np.diag(np.diag(m))
    assert np.all(off <= 0)
    np.testing.assert_allclose(np.diag(m), [c0q, c0c, c0q] + np.abs(off).sum(axis=1), rtol=1e-14)
    np.linalg.cholesky(m)


def test_transform_ggg_is_identity():
    np.testing.assert_array_equal(build_transform(ElementTopology.from_config("GGG")).matrix, np.eye(3))


def test_transform_gfg():
    t = build_transform(ElementTopology.from_config("GFG"))
    expected = np.array([[1, 0, 0, 0], [0, 0.5, 0.5, 0], [0, 0.5, -0.5, 0], [0, 0, 0, 1]])
    np.testing.assert_array_equal(t.matrix, expected)
    assert t.labels == ("Delta(q1)", "Sigma(c)", "Delta(c)", "Delta(q2)")


def test_transform_fgf_block_diagonal():
    t = build_transform(ElementTopology.from_config("FGF"))
    block = np.array([[0.5, 0.5], [0.5, -0.5]])
    np.testing.assert_array_equal(t.matrix[:2, :2], block)
    np.testing.assert_array_equal(t.matrix[2, 2], 1.0)
    np.testing.assert_array_equal(t.matrix[3:, 3:], block)
    assert np.count_nonzero(t.matrix) == 9
    assert abs(np.linalg.det(t.matrix)) > 0


# -- energies -----------------------------------------------------------------


def test_single_grounded_element_charging_energy():
    e = extract_energies(single_grounded(19.37025))
    assert e.charging["a"] == pytest.approx(1.0, abs=5e-5)
    assert e.charging["a"] == pytest.approx(E_CHARGE**2 / (2 * PLANCK * 19.37025e-15) / 1e9, rel=1e-12)


@given(caps, caps, mutuals)
def test_two_grounded_elements_analytic(c1, c2, cm):
    # 2x2 inverse by hand
    topo = ElementTopology((Element("a", "G"), Element("b", "G")))
    e = extract_energies(CapacitanceNetwork(topo, {"a": c1, "b": c2}, {("a", "b"): cm}))
    det = (c1 + cm) * (c2 + cm) - cm**2
    assert e.charging["a"] == pytest.approx(E2_OVER_H * (c2 + cm) / det / 2, rel=1e-12)
    assert e.charging["b"] == pytest.approx(E2_OVER_H * (c1 + cm) / det / 2, rel=1e-12)
    assert e.E("a", "b") == pytest.approx(E2_OVER_H * cm / det, rel=1e-12)
    assert e.E("b", "a") == e.E("a", "b")


@given(caps, caps, mutuals)
def test_floating_element_series_parallel(c1, c2, c12):
    # common mode is free, so the junction sees C12 in parallel with C1, C2 in series
    topo = ElementTopology((Element("f", "F"),))
    e = extract_energies(CapacitanceNetwork(topo, {"f.1": c1, "f.2": c2}, {("f.1", "f.2"): c12}))
    c_eff = c12 + c1 * c2 / (c1 + c2)
    assert e.charging["f"] == pytest.approx(E2_OVER_H / (2 * c_eff), rel=1e-12)


def test_ref_ggg_below_energies():
    e = extract_energies(ggg_network(*REF_GGG_BELOW))
    assert e.E_Cq == pytest.approx(0.2301, abs=1e-4)
    assert e.A == pytest.approx(1.240, abs=1e-3)
    assert e.B == pytest.approx(640, abs=1.0)
    assert e.is_symmetric()


def test_reference_as_labelled_misses_targets():
    # the printed column order gives A and E_Cq far from the stated 1.24 and 230 MHz
    e = extract_energies(ggg_network(*REF_GGG_BELOW_AS_LABELLED))
    assert abs(e.A - 1.24) > 0.05
    assert abs(e.E_Cq - 0.230) > 0.05


def test_ref_ggg_above_energies():
    A, _, _ = closed_form_ggg(*REF_GGG_ABOVE)
    assert A == pytest.approx(1.840, abs=1e-3)


def test_reference_gfg_energies(ref_gfg):
    e = extract_energies(ref_gfg)
    assert e.E_Cq == pytest.approx(0.236, abs=1e-3)
    assert e.is_symmetric()
    assert 1.30 <= e.A <= 1.40
    assert 1100 <= abs(e.B) <= 1350


def test_reference_gfg_sign_of_B_follows_gauge(ref_gfg):
    assert extract_energies(ref_gfg).B > 0
    assert extract_energies(flip_element_sign(ref_gfg, "q1")).B < 0


def test_ggg_closed_form_matches_matrix_path():
    net = ggg_network(*REF_GGG_BELOW)
    e = extract_energies(net)
    A, B, ecq = closed_form_ggg(*REF_GGG_BELOW)
    assert B == pytest.approx(639.8, abs=0.2)
    assert ecq == pytest.approx(0.230, abs=5e-4)
    assert (e.A, e.B, e.E_Cq) == pytest.approx((A, B, ecq), rel=1e-12)


@given(caps, caps, mutuals, small)
def test_closed_form_property(c0q, c0c, cqc, cqq):
    e = extract_energies(ggg_network(c0q, c0c, cqc, cqq))
    A, B, ecq = closed_form_ggg(c0q, c0c, cqc, cqq)
    assert e.A == pytest.approx(A, rel=1e-10)
    assert e.B == pytest.approx(B, rel=1e-10)
    assert e.E_Cq == pytest.approx(ecq, rel=1e-10)


def test_closed_form_rejects_zero_qc():
    with pytest.raises(DomainError):
        closed_form_ggg(80, 60, 0, 0.1)


@given(caps, caps, mutuals)
def test_ggg_without_direct_mutual_has_unit_A(c0q, c0c, cqc):
    assert extract_energies(ggg_network(c0q, c0c, cqc, 0.0)).A == pytest.approx(1.0, abs=1e-12)


def test_no_qubit_coupler_coupling_is_degenerate():
    e = extract_energies(ggg_network(80, 60, 0, 0.1))
    with pytest.raises(DegenerateError):
        e.A
    with pytest.raises(DegenerateError):
        e.B
    assert "A" not in e.to_dict()


fgf_caps = st.fixed_dictionaries(
    {
        k: st.floats(min_value=50, max_value=100) if k.startswith("C0") else st.floats(min_value=1, max_value=10)
        for k in capnet.FGF_CAPS
    }
)


@given(fgf_caps)
def test_fgf_longrange_A_is_one(c):
    e = extract_energies(capnet.fgf_network(c))
    # a mirror-symmetric floating qubit does not couple at all; A is then undefined
    assume(abs(e.E1c * e.E2c) > 1e-6 * e.E_Cq**2)
    assert capnet.check_fgf_longrange_A(c) == pytest.approx(1.0, abs=1e-9)


def test_fgf_mirror_symmetric_qubits_decouple():
    c = dict.fromkeys(capnet.FGF_CAPS, 5.0)
    c.update(C01=70, C02=70, C03=70, C04=70, C0c=60)
    e = extract_energies(capnet.fgf_network(c))
    assert e.E1c == e.E2c == 0.0
    with pytest.raises(DegenerateError):
        capnet.check_fgf_longrange_A(c)


def test_fgf_plate_imbalance_gives_unit_A():
    c = dict.fromkeys(capnet.FGF_CAPS, 5.0)
    c.update(C01=70, C02=80, C03=70, C04=80, C0c=60, C1c=3, C4c=7)
    assert capnet.check_fgf_longrange_A(c) == pytest.approx(1.0, abs=1e-12)


def test_fgf_qubit_mutual_breaks_unit_A():
    c = dict.fromkeys(capnet.FGF_CAPS, 5.0)
    c.update(C01=70, C02=80, C03=70, C04=80, C0c=60)
    e = extract_energies(capnet.fgf_network(c, {("q1.2", "q2.1"): 0.5}))
    assert abs(e.A - 1.0) > 1e-3


# -- gauge and scaling --------------------------------------------------------


def test_flip_twice_is_identity(ref_gfg):
    assert flip_node_sign(flip_node_sign(ref_gfg, "c.1"), "c.1") == ref_gfg


def test_single_plate_flip_is_not_a_gauge(ref_gfg):
    # reversing one plate of a floating element changes which mode carries the junction
    e = extract_energies(ref_gfg)
    f = extract_energies(flip_node_sign(ref_gfg, "c.2"))
    assert abs(f.E_Cc - e.E_Cc) > 1e-3


@given(st.lists(st.sampled_from([1, -1]), min_size=3, max_size=3), caps, caps, mutuals, small)
def test_ggg_every_node_assignment_is_a_gauge(signs, c0q, c0c, cqc, cqq):
    net = ggg_network(c0q, c0c, cqc, cqq)
    e = extract_energies(net)
    g = extract_energies(net.with_signs(dict(zip(net.topology.nodes, signs))))
    assert [g.charging[k] for k in e.charging] == pytest.approx(list(e.charging.values()), rel=1e-12)
    assert [abs(g.coupling[k]) for k in e.coupling] == pytest.approx([abs(v) for v in e.coupling.values()], rel=1e-12)


def test_flip_unknown_node():
    with pytest.raises(InvalidNetworkError):
        flip_node_sign(ggg_network(*REF_GGG_BELOW), "nope")


def test_flip_qubit_negates_its_couplings():
    net = ggg_network(*REF_GGG_BELOW)
    e = extract_energies(net)
    f = extract_energies(flip_node_sign(net, "q1"))
    assert f.E12 == pytest.approx(-e.E12, rel=1e-14)
    assert f.E1c == pytest.approx(-e.E1c, rel=1e-14)
    assert f.E2c == pytest.approx(e.E2c, rel=1e-14)
    assert f.A == pytest.approx(e.A, rel=1e-14)
    # B carries E1c * E2c only, so a single qubit flip reverses it
    assert f.B == pytest.approx(-e.B, rel=1e-14)


@given(st.lists(st.sampled_from([1, -1]), min_size=3, max_size=3), caps, caps, mutuals, mutuals, small)
def test_sign_gauge_preserves_magnitudes(signs, c0q, c01, c12, c1q, c2q):
    net = capnet.gfg_network(c0q, c01, 1.5 * c01, c12, c1q, c2q)
    # a floating element is flipped as a whole: both plates together
    gauged = net
    for el, s in zip(("q1", "c", "q2"), signs):
        if s < 0:
            gauged = flip_element_sign(gauged, el)
    e, g = extract_energies(net), extract_energies(gauged)
    for el in e.charging:
        assert g.charging[el] == pytest.approx(e.charging[el], rel=1e-12)
    for key, v in e.coupling.items():
        assert abs(g.coupling[key]) == pytest.approx(abs(v), rel=1e-12)
    assert g.A == pytest.approx(e.A, rel=1e-12)
    assert abs(g.B) == pytest.approx(abs(e.B), rel=1e-12)


@given(caps, caps, mutuals, small, st.floats(min_value=0.1, max_value=10.0))
def test_scaling_homogeneity(c0q, c0c, cqc, cqq, lam):
    net = ggg_network(c0q, c0c, cqc, cqq)
    e, s = extract_energies(net), extract_energies(net.scaled(lam))
    for el in e.charging:
        assert s.charging[el] == pytest.approx(e.charging[el] / lam, rel=1e-12)
    for key in e.coupling:
        assert s.coupling[key] == pytest.approx(e.coupling[key] / lam, rel=1e-12)
    assert s.A == pytest.approx(e.A, rel=1e-12)
    assert s.B == pytest.approx(e.B, rel=1e-12)


def test_energies_scale_linearly_with_constant():
    net = ggg_network(*REF_GGG_BELOW)
    e1 = extract_energies(net)
    e2 = extract_energies(net, PhysConstants(2 * E2_OVER_H))
    assert e2.E_Cc == pytest.approx(2 * e1.E_Cc, rel=1e-14)
    assert e2.A == pytest.approx(e1.A, rel=1e-14)


def test_asymmetric_network_detected():
    net = CapacitanceNetwork(
        ElementTopology.from_config("GGG"),
        {"q1": 70, "c": 60, "q2": 90},
        {("q1", "c"): 6, ("q2", "c"): 6, ("q1", "q2"): 0.2},
    )
    e = extract_energies(net)
    assert not e.is_symmetric()
    with pytest.raises(DomainError):
        e.require_symmetric()
    # generic A, B still defined
    assert math.isfinite(e.A) and math.isfinite(e.B)
