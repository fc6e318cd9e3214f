import json

import numpy as np
import pytest

from zolldisks.dataflows.spec_files import load_spec, parse_spec, save_spec, standard_spec
from zolldisks.errors import SpecFileError
from zolldisks.geometry.projective import P1Point, chordal, conj_c, fibonacci_sphere
from zolldisks.surface.field import FieldTerm, SphereField
from zolldisks.surface.spec import (
    Direction,
    SurfaceSpec,
    embed_N,
    phi_apply,
    phi_sphere,
    psi_sphere,
    surface_frames,
)
from zolldisks.surface.docility import totally_real_det


def test_tangent_field_is_tangent():
    field = SphereField.from_pairs([((1, 0, 2), (0.3, -0.1, 0.2)), ((0, 0, 0), (1.0, 0, 0))])
    x = fibonacci_sphere(100)
    assert np.max(np.abs(np.sum(field.tangent(x) * x, axis=-1))) < 1e-14


def test_flow_stays_on_the_sphere(generic):
    x = generic.field.flow(fibonacci_sphere(200), 1.0, 64)
    np.testing.assert_allclose(np.linalg.norm(x, axis=-1), 1.0, atol=1e-14)


def test_flow_of_constant_field_is_a_rotation():
    # (0,0,1) projected onto the sphere moves points along meridians towards the north pole
    field = SphereField.from_pairs([((0, 0, 0), (0.0, 0.0, 1.0))])
    x = np.array([[1.0, 0.0, 0.0]])
    y = field.flow(x, 0.1, 64)
    assert y[0, 2] > 0
    assert abs(y[0, 1]) < 1e-14


def test_inverse_flow_undoes_forward_flow(generic):
    x = fibonacci_sphere(300)
    there = psi_sphere(generic, x)
    back = psi_sphere(generic, there, Direction.INVERSE)
    assert np.max(np.linalg.norm(back - x, axis=-1)) < 1e-8


def test_standard_phi_is_antipodal(standard):
    x = fibonacci_sphere(50)
    np.testing.assert_allclose(phi_sphere(standard, x), -x)
    assert standard.is_standard


def test_generic_phi_is_an_involution_without_fixed_points(generic):
    x = fibonacci_sphere(500)
    y = phi_sphere(generic, x)
    assert np.max(np.linalg.norm(phi_sphere(generic, y) - x, axis=-1)) < 1e-7
    assert np.min(np.linalg.norm(y - x, axis=-1)) > 0.1


def test_phi_apply_matches_sphere_action(generic):
    u = P1Point(np.array([0.6, 0.8j]))
    np.testing.assert_allclose(
        phi_apply(generic, u).sphere(), phi_sphere(generic, u.sphere()[None, :])[0], atol=1e-12
    )


def test_standard_surface_is_real(standard):
    for x in fibonacci_sphere(40):
        z = embed_N(standard, P1Point.from_sphere(x))
        assert chordal(z, conj_c(z)) < 1e-10


def test_surface_frames_of_standard_rp2_are_totally_real(standard):
    points = np.array([[1.0, 0.0], [0.6, 0.8j], [0.3 + 0.4j, np.sqrt(0.75)]])
    for frame in surface_frames(standard, points):
        assert totally_real_det(frame) > 0.5


def test_scale_must_lie_in_unit_interval():
    with pytest.raises(ValueError):
        SurfaceSpec(scale=1.5)


def test_field_rejects_high_degree():
    with pytest.raises(ValueError):
        SphereField((FieldTerm((5, 0, 0), (1.0, 0.0, 0.0)),))


def test_spec_hash_tracks_content(generic):
    assert generic.spec_hash() == generic.with_scale(1.0).spec_hash()
    assert generic.spec_hash() != generic.with_scale(0.5).spec_hash()
    assert standard_spec(0.0).spec_hash() != generic.spec_hash()


def test_spec_file_round_trip(generic, tmp_path):
    path = save_spec(generic, tmp_path / "spec.json")
    assert load_spec(path).spec_hash() == generic.spec_hash()


@pytest.mark.parametrize(
    "data",
    [
        {"version": 1, "degree": 1, "terms": [{"powers": [2, 0, 0], "coeff": [1, 0, 0]}]},
        {"version": 2, "degree": 0},
        {"version": 1, "degree": 0, "thresholds": {"no_such_tolerance": 1.0}},
        {"version": 1, "degree": 1, "terms": [{"powers": [1, 0], "coeff": [1, 0, 0]}]},
        {"version": 1, "degree": 0, "scale": 2.0},
    ],
)
def test_malformed_specs_are_rejected(data):
    with pytest.raises(SpecFileError):
        parse_spec(data)


def test_unreadable_spec_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(SpecFileError):
        load_spec(path)


def test_thresholds_override_config(tmp_path):
    data = {"version": 1, "degree": 0, "thresholds": {"fixed_point_gap": 0.2}}
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(data))
    spec = load_spec(path)
    assert spec.threshold("fixed_point_gap") == 0.2
    assert spec.threshold("involution_tol") == 1e-7
