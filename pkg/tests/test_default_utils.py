from copy import deepcopy

import pytest

from tsaboost._src.defaults.defaults_utility import get_defaults_dict
from tsaboost._src.defaults.defaults_utility import linearize_dict
from tsaboost._src.defaults.defaults_utility import magic_to_dict
from tsaboost._src.defaults.defaults_utility import MagicProperties
from tsaboost._src.defaults.defaults_utility import update_nested_dict
from tsaboost._src.defaults.defaults_utility import validate_number


def test_update_nested_dict():
    """test all argument combinations of `update_nested_dicts`"""
    # `d` gets updated, that's why we deepcopy it
    d = {"a": 1, "b": {"c": 2, "d": None}, "f": None, "g": {"c": None, "d": 2}, "h": 1}
    u = {"a": 2, "b": 3, "e": 5, "g": {"c": 7, "d": 5}, "h": {"i": 3}}
    res = update_nested_dict(
        deepcopy(d), u, same_keys_only=False, replace_None_only=False
    )
    assert res == {
        "a": 2,
        "b": 3,
        "e": 5,
        "f": None,
        "g": {"c": 7, "d": 5},
        "h": {"i": 3},
    }, "failed updating nested dict"
    res = update_nested_dict(
        deepcopy(d), u, same_keys_only=True, replace_None_only=False
    )
    assert res == {
        "a": 2,
        "b": 3,
        "f": None,
        "g": {"c": 7, "d": 5},
        "h": {"i": 3},
    }, "failed updating nested dict"
    res = update_nested_dict(
        deepcopy(d), u, same_keys_only=True, replace_None_only=True
    )
    assert res == {
        "a": 1,
        "b": {"c": 2, "d": None},
        "f": None,
        "g": {"c": 7, "d": 2},
        "h": 1,
    }, "failed updating nested dict"


def test_magic_to_dict():
    """test all argument combinations of `magic_to_dict`"""
    d = {"a_b": 1, "c_d_e": 2, "a": 3, "c_d": {"e": 6}}
    res = magic_to_dict(d, separator="_")
    assert res == {"a": 3, "c": {"d": {"e": 6}}}
    d = {"a.b": 1, "c": 2, "a": 3, "c.d": {"e": 6}}
    res = magic_to_dict(d, separator=".")
    assert res == {"a": 3, "c": {"d": {"e": 6}}}
    with pytest.raises(AssertionError):
        magic_to_dict(0, separator=".")
    with pytest.raises(AssertionError):
        magic_to_dict(d, separator=0)


def test_magic_to_dict_dotted_three_levels():
    """dotted keys keep underscores and nest at every dot"""
    d = {"training.ghm.z_bins": 5, "training.n_iterations": 3, "sim.dt": 0.01}
    res = magic_to_dict(d, separator=".")
    assert res == {
        "training": {"ghm": {"z_bins": 5}, "n_iterations": 3},
        "sim": {"dt": 0.01},
    }


def test_magic_to_dict_names():
    """known names containing the separator are not split"""
    names = ("ghm", "n_iterations", "learning_rate")
    d = {"ghm_z_bins": 5, "ghm_momentum": 0.5, "learning_rate": 0.2, "unknown_key": 1}
    res = magic_to_dict(d, names=names)
    assert res == {
        "ghm": {"z_bins": 5, "momentum": 0.5},
        "learning_rate": 0.2,
        "unknown_key": 1,
    }


def test_linearize_dict():
    """test all argument combinations of `linearize_dict`"""
    mydict = {
        "training": {"depth": 6, "ghm": {"enabled": True, "z_bins": 10}},
        "sweep": {"k_folds": 5},
    }
    res = linearize_dict(mydict, separator=".")
    assert res == {
        "training.depth": 6,
        "training.ghm.enabled": True,
        "training.ghm.z_bins": 10,
        "sweep.k_folds": 5,
    }, "linearization of dict failed"
    with pytest.raises(AssertionError):
        linearize_dict(0, separator=".")
    with pytest.raises(AssertionError):
        linearize_dict(mydict, separator=0)


@pytest.mark.parametrize(
    "val, kwargs, expected",
    [
        (3, {"integer": True}, 3),
        (3.0, {"integer": True, "minimum": 1}, 3),
        (0.5, {"minimum": 0, "maximum": 1}, 0.5),
        (0, {"minimum": 0}, 0.0),
    ],
)
def test_validate_number_good(val, kwargs, expected):
    """good numbers come back as int or float"""
    res = validate_number(val, "x", object(), **kwargs)
    assert res == expected
    assert isinstance(res, int if kwargs.get("integer") else float)


@pytest.mark.parametrize(
    "val, kwargs",
    [
        (True, {}),
        ("1", {}),
        (None, {}),
        (2.5, {"integer": True}),
        (0, {"minimum": 0, "strict_min": True}),
        (-1, {"minimum": 0}),
        (1.01, {"maximum": 1}),
    ],
)
def test_validate_number_bad(val, kwargs):
    """bad numbers raise ValueError"""
    with pytest.raises(ValueError):
        validate_number(val, "x", object(), **kwargs)


def test_MagicProperties():
    """test MagicProperties class"""

    class BPsub1(MagicProperties):
        "MagicProperties class"

        @property
        def prop1(self):
            """prop1"""
            return self._prop1

        @prop1.setter
        def prop1(self, val):
            self._prop1 = val

    class BPsub2(MagicProperties):
        "MagicProperties class"

        @property
        def prop2(self):
            """prop2"""
            return self._prop2

        @prop2.setter
        def prop2(self, val):
            self._prop2 = val

    bp1 = BPsub1(prop1=1)

    # check setting attribute/property
    assert bp1.prop1 == 1, "`bp1.prop1` should be `1`"
    with pytest.raises(AttributeError):
        getattr(bp1, "prop1e")  # only properties are allowed to be set
    with pytest.raises(AttributeError):
        bp1.prop1e = 3

    assert bp1.as_dict() == {"prop1": 1}, "`as_dict` method failed"

    bp2 = BPsub2(prop2=2)
    bp1.prop1 = bp2  # assigning class to subproperty

    assert bp1.as_dict() == {"prop1": {"prop2": 2}}, "`as_dict` method failed"

    with pytest.raises(AttributeError):
        bp1.update(prop1_prop2=10, prop3=4)
    assert bp1.update(prop3=4, _match_properties=False).as_dict() == {
        "prop1": {"prop2": 10}
    }, "update should ignore `'prop3'`"

    bp3 = bp2.copy()
    assert bp3 is not bp2, "failed copying, should return a different id"
    assert bp3 == bp2, "failed copying, should return the same property values"
    assert bp3.as_dict(flatten=True) == bp2.as_dict(flatten=True)

    with pytest.raises(AttributeError):
        BPsub1(a=0)  # `a` is not a property in the class

    assert repr(MagicProperties()) == "MagicProperties()", "repr failed"


def test_get_defaults_dict():
    """test get_defaults_dict"""
    s0 = get_defaults_dict("training.ghm")
    s1 = get_defaults_dict()["training"]["ghm"]
    assert s0 == s1, "dicts don't match"
    s0["z_bins"] = 99
    assert get_defaults_dict("training.ghm")["z_bins"] == 10, "defaults must be copied"
