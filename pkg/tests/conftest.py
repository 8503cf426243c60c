"""Shared fixtures.  The heavy zoo charts and full analyses are computed
once per session; acceptance reuses them together with their wall times."""

import time

import pytest

from secantgeo.genericity import derive_stream
from secantgeo.jets import chart_at, second_fundamental_form
from secantgeo.quadrics import rank_profile
from secantgeo.report import AnalyzeOptions, analyze
from secantgeo.zoo import catalog


@pytest.fixture(scope="session")
def entries():
    return {e.name: e for e in catalog()}


@pytest.fixture(scope="session")
def charted(entries):
    """name -> (entry, jet, system, profile) for every catalog entry."""
    out = {}
    for name, ent in entries.items():
        jet = chart_at(ent.map, list(ent.base_point), 3)
        s = second_fundamental_form(jet)
        prof = rank_profile(s, derive_stream(0, name, "profile"))
        out[name] = (ent, jet, s, prof)
    return out


_ANALYSES: dict = {}


@pytest.fixture(scope="session")
def analysis(entries):
    """name -> (AnalysisReport, wall seconds), cached across tests."""

    def run(name):
        if name not in _ANALYSES:
            ent = entries[name]
            t0 = time.time()
            rep = analyze({"kind": "zoo", "name": name}, AnalyzeOptions(),
                          descriptor=name, entry=ent)
            _ANALYSES[name] = (rep, time.time() - t0)
        return _ANALYSES[name]

    return run
