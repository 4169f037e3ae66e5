#!/usr/bin/env python3
"""Step-by-step check of the Harrivel 5-form built from the Klein-Gordon form.

Shows d(w), its projection d_p(w), the closedness of m_w, and the rank of the
contraction map at sample points and on the special loci u = 0 and m = 0.
"""

from __future__ import annotations

from jetforms.catalog import catalog
from jetforms.exterior import ext_d
from jetforms.jetcalc import d_p
from jetforms.msympl import harrivel_adapted, harrivel_form, verify_multisymplectic_direct
from jetforms.ratpoly import U, param


def main() -> None:
    e = catalog("klein-gordon")
    ctx, w = e.context, e.effective
    print(f"w          = {w}")
    print(f"d w        = {ext_d(w)}")
    print(f"d_p w      = {d_p(ctx, w)}")
    print("  (p_mu dq^mu ^ beta vanishes because beta already contains every dq^mu)")
    m = harrivel_form(ctx, w)
    print(f"m_w        = {m}")
    print(f"d m_w      = {ext_d(m)}")
    res = verify_multisymplectic_direct(m)
    nd = res.nondegenerate
    print(f"nondegenerate at {len(nd.points)} sampled points: {nd.verdict}")
    adapted, _ = harrivel_adapted(ctx, w)
    for label, sub in [("u = 0", {U: 0}), ("m = 0", {param("m"): 0}), ("u = m = 0", {U: 0, param("m"): 0})]:
        restricted = adapted.map_coefficients(lambda c, sub=sub: c.subs(sub))
        print(f"nondegenerate on {label} (exact): {verify_multisymplectic_direct(restricted).nondegenerate.verdict}")


if __name__ == "__main__":
    main()
