from fractions import Fraction

import pytest

from mopuc.descriptors import BUNDLED, SchemaError, functional_from_json, system_from_json
from mopuc.errors import MomentUnavailable
from mopuc.scalars import GaussianRational


def test_atoms():
    L = functional_from_json(
        {"kind": "atoms", "atoms": [{"t": "0", "weight": "1/2"}, {"t": "1", "weight": "1/2"}], "hermitian": True}
    )
    assert L.moment(1) == GaussianRational(Fraction(1, 2), Fraction(-1, 2))


def test_minus_one_atom():
    L = functional_from_json({"kind": "atoms", "atoms": [{"t": "minus_one", "weight": 1}]})
    assert L.moment(1) == -1


def test_moments_rules():
    L = functional_from_json({"kind": "moments", "table": {"0": 1}, "default": {"geometric": "1/3"}})
    assert L.moment(2) == Fraction(1, 9)
    L = functional_from_json({"kind": "moments", "table": {"0": 1}, "default": "error"})
    with pytest.raises(MomentUnavailable):
        L.moment(1)


def test_lebesgue_and_real():
    assert functional_from_json({"kind": "lebesgue"}).moment(0) == 1
    M = functional_from_json({"kind": "real_atoms", "atoms": [{"x": "2", "weight": 1}]})
    assert M.moment(3) == 8


@pytest.mark.parametrize(
    "desc, path",
    [
        ({"kind": "moments", "table": {"0": 1, "1": "1/2"}, "hermitian": True}, "functional.hermitian"),
        ({"kind": "moments", "table": {"0": 1, "1": "1/2"}, "symmetric": True}, "functional.symmetric"),
        ({"kind": "atoms", "atoms": []}, "functional.atoms"),
        ({"kind": "atoms", "atoms": [{"weight": 1}]}, "functional.atoms[0].t"),
        ({"kind": "atoms", "atoms": [{"t": "a/b"}]}, "functional.atoms[0].t"),
        ({"kind": "atoms", "atoms": [{"t": "0", "weight": "x"}]}, "functional.atoms[0].weight"),
        ({"kind": "moments", "table": {"k": 1}}, "functional.table.k"),
        ({"kind": "moments", "table": {}, "default": "wrap"}, "functional.default"),
        ({"kind": "gauss"}, "functional.kind"),
        ({"kind": "lebesgue", "extra": 1}, "functional.extra"),
    ],
)
def test_schema_errors(desc, path):
    with pytest.raises(SchemaError) as e:
        functional_from_json(desc)
    assert e.value.path == path


def test_system_bundled():
    assert set(BUNDLED) == {"lebesgue", "geometric", "S2", "r3", "symmetric-r2"}
    assert system_from_json({"bundled": "r3"}).r == 3
    with pytest.raises(SchemaError) as e:
        system_from_json({"bundled": "nope"})
    assert e.value.path == "system.bundled"


def test_system_functionals():
    S = system_from_json({"functionals": [{"kind": "lebesgue"}, {"kind": "moments", "table": {"0": 2}}]})
    assert S.r == 2 and S[1].moment(0) == 2
    with pytest.raises(SchemaError) as e:
        system_from_json({"functionals": [{"kind": "lebesgue"}, {"kind": "real_atoms", "atoms": [{"x": 0}]}]})
    assert e.value.path == "system.functionals"
    with pytest.raises(SchemaError):
        system_from_json({"functionals": []})
