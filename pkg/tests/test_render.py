import json

from hypothesis import given

from jetforms.catalog import catalog
from jetforms.dsl import parse_form
from jetforms.jetcalc import JetContext
from jetforms.msympl import check_harrivel
from jetforms.ratpoly import Polynomial
from jetforms.render import form_from_json, from_json, latex_form, latex_polynomial, render, to_json
from jetforms.variational import reconstruct
from strategies import context_and_form


def test_plebanski1_latex():
    assert latex_form(catalog("plebanski1").effective) == (
        r"-d^{1234} + \frac{1}{3}(d^{12}_{12} + d^{34}_{34})"
        r" - \frac{1}{6}(d^{13}_{13} + d^{14}_{14} + d^{23}_{23} + d^{24}_{24})"
    )


def test_scalar_text():
    assert render(Polynomial.const(1)) == "1"
    assert render(JetContext(2).scalar(1)) == "1"


def test_latex_polynomial():
    assert latex_polynomial(Polynomial.const(0)) == "0"
    e = catalog("klein-gordon")
    assert latex_form(e.effective).startswith("u m^{2} d^{1234}")


@given(context_and_form(cartan=False, max_degree=3))
def test_json_round_trip(cf):
    ctx, w = cf
    text = render(w, "json")
    assert form_from_json(json.loads(text)) == w


@given(context_and_form(cartan=False, max_degree=3))
def test_text_round_trip(cf):
    ctx, w = cf
    assert parse_form(render(w), ctx, degree=w.degree) == w


def test_polynomial_json_round_trip():
    P = Polynomial.var(__import__("jetforms.ratpoly", fromlist=["jet"]).jet("psi", (1, 2))) * 3
    assert from_json(to_json(P)) == P


def test_verdict_and_report_json():
    e = catalog("wave1d")
    v = json.loads(render(reconstruct(e.context, e.form, 2), "json"))
    assert v["status"] == "ReconstructionFound" and v["k"] == "1" and v["schema_version"] == 1
    r = json.loads(render(check_harrivel(e.context, e.effective), "json"))
    assert r["verdict"] is True and len(r["direct"]["nondegenerate"]["sampled_points"]) == 16
