"""Path bases and presentations of bound quiver algebras."""

from __future__ import annotations

import pytest

from taumut.algebra import AlgebraSpec, Arrow, Quiver, build_algebra, normalize_relation
from taumut.errors import SpecError
from taumut.linalg import QQ, PrimeField
from taumut.presets import build_preset, preset_spec


def test_a3_path_basis():
    a = build_preset("a-path:3")
    # e1, e2, e3, a1, a2, a1a2
    assert a.dim == 6
    assert len(a.basis_paths(0, 2)) == 1
    assert len(a.basis_paths(2, 0)) == 0
    assert a.check_associativity()


def test_quiver_rejects_bad_arrow_endpoints():
    with pytest.raises(SpecError):
        Quiver(("1",), (Arrow("a", "1", "2"),))


def test_quiver_rejects_duplicate_names():
    with pytest.raises(SpecError):
        Quiver(("1", "1"), ())
    with pytest.raises(SpecError):
        Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("a", "2", "1")))


def test_relation_paths_must_compose():
    q = Quiver(("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3")))
    normalize_relation(q, [(1, ("a", "b"))])
    with pytest.raises(SpecError):
        normalize_relation(q, [(1, ("b", "a"))])
    with pytest.raises(SpecError):
        # too short for an admissible relation
        normalize_relation(q, [(1, ("a",))])


def test_spec_validation():
    q = Quiver(("1",), ())
    with pytest.raises(SpecError):
        AlgebraSpec(q, (), 1, QQ).validate()
    AlgebraSpec(q, (), 2, QQ).validate()


def test_spec_json_round_trip(tmp_path):
    spec = preset_spec("preproj-a:3", PrimeField(5))
    path = tmp_path / "alg.json"
    spec.save(str(path))
    back = AlgebraSpec.load(str(path))
    assert back.quiver == spec.quiver
    assert back.nilpotency == spec.nilpotency
    assert back.field == spec.field
    assert back.relations == spec.relations
    assert build_algebra(back).dim == build_algebra(spec).dim


def test_spec_load_rejects_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"vertices": ["1"]}', encoding="utf-8")
    with pytest.raises(SpecError):
        AlgebraSpec.load(str(path))


def test_relation_kills_exactly_one_parallel_path():
    a = build_preset("msex")
    # alpha*gamma dies, beta*gamma survives
    assert a.dim == 7
    vidx = a.quiver.vertex_index
    aidx = {arr.name: i for i, arr in enumerate(a.quiver.arrows)}
    dead = a.path_class(vidx["1"], (aidx["alpha"], aidx["gamma"]))
    alive = a.path_class(vidx["1"], (aidx["beta"], aidx["gamma"]))
    assert dead == ()
    assert alive != ()


def test_preprojective_a3_dimension():
    # n(n+1)(n+2)/6 for the doubled A_n quiver with mesh relations
    assert build_preset("preproj-a:3").dim == 10
    assert build_preset("preproj-a:2").dim == 4


def test_nakayama_dimensions():
    assert build_preset("nakayama:linear:3:2").dim == 5
    assert build_preset("nakayama:cyclic:2:2").dim == 4
    assert build_preset("nakayama:cyclic:2:3").dim == 6
    # l = 1 is the semisimple arrowless case
    one = build_preset("nakayama:linear:4:1")
    assert one.dim == 4 and not one.quiver.arrows
    # large l on a linear quiver leaves the hereditary path algebra
    assert build_preset("nakayama:linear:3:5").dim == 6


def test_opposite_algebra():
    a = build_preset("a-path:3")
    op = a.opposite()
    assert op.dim == a.dim
    assert {(x.source, x.target) for x in op.quiver.arrows} == {
        ("2", "1"),
        ("3", "2"),
    }
    assert op.check_associativity()


def test_unit_decomposes_into_idempotents():
    a = build_preset("a-path:2")
    unit = a.unit_vector()
    total = [0] * a.dim
    for v in range(a.n_vertices):
        total[a.idempotent[v]] += 1
    assert [int(x) for x in unit] == total


def test_unknown_preset_rejected():
    with pytest.raises(SpecError):
        build_preset("frobnicate:3")
    with pytest.raises(SpecError):
        build_preset("a-path:zero")
    with pytest.raises(SpecError):
        build_preset("preproj-a:5")
