#!/usr/bin/env python3
"""Recompute the representation table, the effective-form table and all verdicts.

For every catalog equation this prints the stored equation, whether the
printed representing form and the printed effective form hold up, the
computed effective form in LaTeX shorthand, the variational verdict and the
multisymplectic verdicts.
"""

from __future__ import annotations

import argparse

from jetforms.catalog import all_entries
from jetforms.jetpde import extract_pde
from jetforms.msympl import DEFAULT_SEED, check_harrivel
from jetforms.render import latex_form
from jetforms.variational import reconstruct


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--degree", type=int, default=2, help="degree bound for Lagrangian reconstruction")
    args = ap.parse_args()

    for e in all_entries():
        ctx = e.context
        print(f"== {e.name}: {e.title}")
        print(f"   equation           {e.equation.lhs} = 0")
        print(f"   representing form  {e.form}   (extracts to {e.scale} x equation)")
        if e.printed_form is not None:
            status = "ok" if e.printed_form_ok else f"ERRATUM: extracts to {extract_pde(ctx, e.printed_form)}"
            print(f"   printed form       {e.printed_form}   [{status}]")
        print(f"   effective (LaTeX)  {latex_form(e.effective)}")
        if e.printed_effective is not None:
            status = "matches" if e.printed_effective_ok else (
                f"ERRATUM: printed row extracts to {extract_pde(ctx, e.printed_effective)}")
            print(f"   printed effective  [{status}]")
        if e.printed_lhs_ok is False:
            print(f"   printed equation   ERRATUM: {e.printed_lhs} = 0")
        v = reconstruct(ctx, e.form, args.degree)
        detail = ""
        if v.witness is not None:
            detail = f" witness {'^'.join(g.name for g in v.witness[0])} (coefficient {v.witness[1]})"
        elif v.L is not None:
            detail = f" L = {v.L}"
        print(f"   variational        {v.status.value}{detail}")
        r = check_harrivel(ctx, e.effective, seed=args.seed)
        nd = r.direct.nondegenerate
        print(f"   multisymplectic    criteria {r.verdict}; direct closed={r.direct.closed} "
              f"nondegenerate={nd.verdict} ({'exact' if nd.exact else f'{len(nd.points)} samples'})")
        print()


if __name__ == "__main__":
    main()
