import pytest

from jetforms.catalog import UnknownEquation, all_entries, catalog, names
from jetforms.jetcalc import is_effective
from jetforms.jetpde import extract_pde, proportionality


def test_names():
    assert names() == ["plebanski1", "plebanski2", "grant", "husain", "klein-gordon", "wave1d"]
    with pytest.raises(UnknownEquation):
        catalog("nope")


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.name)
def test_entries_are_consistent(entry):
    ctx = entry.context
    assert proportionality(extract_pde(ctx, entry.form), entry.equation.lhs) == entry.scale
    assert is_effective(ctx, entry.effective)
    assert proportionality(extract_pde(ctx, entry.effective), entry.equation.lhs) is not None


def test_errata_flags():
    flags = {e.name: (e.printed_form_ok, e.printed_effective_ok, e.printed_lhs_ok) for e in all_entries()}
    assert flags == {
        "plebanski1": (False, True, None),
        "plebanski2": (True, False, None),
        "grant": (False, True, None),
        "husain": (True, False, None),
        "klein-gordon": (None, True, False),
        "wave1d": (True, True, None),
    }


def test_printed_effective_rows_represent_other_equations():
    p2, h = catalog("plebanski2"), catalog("husain")
    assert is_effective(p2.context, p2.printed_effective)
    assert str(extract_pde(p2.context, p2.printed_effective)) == "phi_11*phi_22 - phi_12^2 - phi_13 + phi_24"
    assert str(extract_pde(h.context, h.printed_effective)) == "3*phi_13*phi_24 - 3*phi_14*phi_23 + phi_11 + phi_22"
