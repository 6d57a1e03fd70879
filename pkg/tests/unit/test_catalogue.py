import pytest

from algebra.errors import ParseError
from geometry.catalogue import get_variety


def test_names_resolve_to_cached_models():
    assert get_variety("P3") is get_variety("P3")
    assert get_variety("P2xP1").generators == ("f1", "f2")
    assert get_variety("P4").generators == ("H",)
    assert get_variety("P1xP1xP1").factors == (1, 1, 1)


@pytest.mark.parametrize("name,position,token", [
    ("Q3", 0, "Q3"),
    ("P0", 0, "P0"),
    ("P2xQ", 3, "Q"),
    ("P2x", 3, ""),
])
def test_unknown_names(name, position, token):
    with pytest.raises(ParseError) as info:
        get_variety(name)
    assert info.value.position == position
    assert info.value.token == token
