"""Shared fixtures: the worked divisor frames used throughout the suite."""

from __future__ import annotations

import json

import pytest

from logdiv.derivations import Divisor, LogFrame
from logdiv.enveloping import LieRinehartData
from logdiv.ring import PolyRing, PolyVec
from logdiv.weyl import parse_operator

EXAMPLE_H = "(x*z+y)*(x^4+y^5+x*y^4)"
EXAMPLE_MATRIX = [
    ["x^2+5/4*x*y", "3/4*x*y+y^2", "1/4*x*z^2-1/4*x*z"],
    ["0", "0", "x*z+y"],
    ["4*x*y^2+y^3+25*x^2", "3*y^3-x^2+20*x*y", "y^2*z^2-5*x*z-y^2*z+x"],
]
EXAMPLE_ALPHAS = ["1/4*x*z+19/4*x+6*y", "x", "y^2*z+19*y^2+120*x"]

# operators forming the displayed second-order relation against the frame
Q1_TEXT = ("-y*z^3*dz^2 - y^2*z*dx*dz - 3*y^2*z*dy*dz + y*z^2*dz^2"
           " - 2*y*z^2*dz + 4*y^2*dx*dz - 25*x*z*dy*dz + 8*y*z*dz"
           " + 25*x*dx*dz - x*dy*dz - 5*y*dy*dz - 5*z*dz^2 + dz^2 - 60*dz")
Q2_TEXT = ("1/4*( y*z^4*dz^2 + 4*x*y*z^2*dx*dz + 6*y^2*z^2*dx*dz"
           " + 2*y^2*z^2*dy*dz - 2*y*z^3*dz^2 + 4*x*y^2*dx^2 + 5*y^3*dx^2"
           " - 4*x*y^2*dx*dy - 2*y^3*dx*dy - 3*y^3*dy^2 + 4*y*z^3*dz"
           " - 4*x*y*z*dx*dz - 6*y^2*z*dx*dz - 2*y^2*z*dy*dz"
           " + 25*x*z^2*dy*dz + y*z^2*dz^2 + 4*x*y*z*dx + 6*y^2*z*dx"
           " + 2*y^2*z*dy + 25*x*y*dx*dy + 4*x^2*dy^2 - x*y*dy^2"
           " + 20*y^2*dy^2 - 24*y*z^2*dz - 5*x*z*dy*dz + 20*y*z*dy*dz"
           " + 2*y*z^2 - 60*x*y*dx - 16*y^2*dx - 44*y^2*dy + 25*x*z*dy"
           " + 20*y*z*dz - 4*x*dy*dz - 4*y*dy*dz - 20*y*z + 400*x*dx"
           " - 16*x*dy + 340*y*dy - 45*z*dz + 60*y + 9*dz - 365 )")
Q3_TEXT = ("1/4*( 4*x*z*dy*dz + 4*y*z*dy*dz - z^2*dz^2 - 4*x*dx*dz"
           " - 5*y*dx*dz + y*dy*dz + z*dz^2 - 13*z*dz + 10*dz )")


def normal_crossings_frame(n: int) -> LogFrame:
    ring = PolyRing([f"x{i + 1}" for i in range(n)] if n != 3
                    else ["x", "y", "z"])
    h = ring.one()
    for i in range(n):
        h = h * ring.var(i)
    rows = []
    for i in range(n):
        vec = [ring.zero()] * n
        vec[i] = ring.var(i)
        rows.append(PolyVec(vec))
    return LogFrame(Divisor(h), rows)


@pytest.fixture(scope="session")
def R3():
    return PolyRing(["x", "y", "z"])


@pytest.fixture(scope="session")
def example_frame(R3):
    h = R3.parse(EXAMPLE_H)
    rows = [PolyVec([R3.parse(s) for s in row]) for row in EXAMPLE_MATRIX]
    return LogFrame(Divisor(h), rows)


@pytest.fixture(scope="session")
def example_data(example_frame):
    return LieRinehartData.from_frame(example_frame)


@pytest.fixture(scope="session")
def example_qs(R3):
    return [parse_operator(R3, t) for t in (Q1_TEXT, Q2_TEXT, Q3_TEXT)]


@pytest.fixture(scope="session")
def xyz_frame():
    return normal_crossings_frame(3)


@pytest.fixture(scope="session")
def cusp_frame():
    ring = PolyRing(["x", "y"])
    rows = [PolyVec([ring.parse("3*x"), ring.parse("2*y")]),
            PolyVec([ring.parse("-3*y^2"), ring.parse("-2*x")])]
    return LogFrame(Divisor(ring.parse("x^2-y^3")), rows)


@pytest.fixture(scope="session")
def smooth_frame():
    ring = PolyRing(["x", "y"])
    rows = [PolyVec([ring.var(0), ring.zero()]),
            PolyVec([ring.zero(), ring.one()])]
    return LogFrame(Divisor(ring.var(0)), rows)


@pytest.fixture(scope="session")
def frame_contexts(xyz_frame, cusp_frame, example_frame):
    """(LieRinehartData, weight) pairs for the randomized suites."""
    return [(LieRinehartData.from_frame(xyz_frame), 8),
            (LieRinehartData.from_frame(cusp_frame), 2),
            (LieRinehartData.from_frame(example_frame), 1)]


@pytest.fixture()
def example_frame_file(tmp_path):
    doc = {"variables": ["x", "y", "z"], "h": EXAMPLE_H,
           "matrix": EXAMPLE_MATRIX}
    path = tmp_path / "example_frame.json"
    path.write_text(json.dumps(doc))
    return path


@pytest.fixture()
def example_ops_file(tmp_path):
    path = tmp_path / "example_ops.json"
    path.write_text(json.dumps({"operators": [Q1_TEXT, Q2_TEXT, Q3_TEXT]}))
    return path


@pytest.fixture()
def xyz_frame_file(tmp_path):
    doc = {"variables": ["x", "y", "z"], "h": "x*y*z",
           "matrix": [["x", "0", "0"], ["0", "y", "0"], ["0", "0", "z"]]}
    path = tmp_path / "xyz_frame.json"
    path.write_text(json.dumps(doc))
    return path
