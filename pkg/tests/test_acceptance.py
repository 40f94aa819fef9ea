"""Acceptance gate: every shipped criterion must pass at full basis size.

One test per criterion so the report shows an individual pass/fail line
for each.  Criterion records are cached per session because the
eigensolver-backed ones are expensive.
"""

import pytest

from rumin_eta import verification

_CACHE = {}


def run_cached(cid):
    if cid not in _CACHE:
        _CACHE[cid] = verification.run_criterion(cid, basis_size=256)
    return _CACHE[cid]


@pytest.mark.parametrize("cid", verification.SUITES["all"])
def test_criterion(cid):
    record = run_cached(cid)
    detail = ", ".join(
        f"{p['name']}: {p['error']:.3e} vs {p['tolerance']:.3e}"
        for p in record["details"]["parts"]
        if not p["passed"]
    )
    assert record["passed"], (
        f"{record['id']} {record['description']}: worst ratio "
        f"{record['measured']:.6e} ({detail})"
    )
