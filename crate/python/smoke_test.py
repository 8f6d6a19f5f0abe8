"""Smoke test for the pycxgame extension module.

Build and install first:

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml
    pip install target/wheels/pycxgame-*.whl
"""

import math
from pathlib import Path

import pycxgame

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def main():
    g = pycxgame.Game.from_file(str(FIXTURES / "example_8_2.json"))
    print(g)

    sec = g.pure_security()
    print("h_low =", sec["h_low"], "h_high =", sec["h_high"])
    assert abs(sec["h_low"] - (7 - math.sqrt(3)) / 4) < 1e-9
    assert abs(sec["h_high"] - 3) < 1e-9

    reduced, trace = g.eliminate()
    print("reduced matrix:", reduced.matrix)
    assert reduced.matrix == [[2, 1 + 1j], [3 + 1j, 3]]

    eq = reduced.equalize()["equilibrium"]
    print("reduced-game value =", eq["value"])
    assert abs(eq["value"] - 2.4) < 1e-9

    report = g.solve()
    cert = report["certificate"]
    print("full-game value =", cert["value"], "via", cert["method"])
    assert cert["verified"]

    z = [complex(*p) for p in cert["z"]]
    w = [complex(*p) for p in cert["w"]]
    assert g.verify(z, w)["passed"]
    assert abs(g.payoff(z, w) - cert["value"]) < 1e-12

    sym = pycxgame.Game.from_file(str(FIXTURES / "symmetric.json"))
    assert abs(sym.minimax()["v_low"]) < 1e-7
    print("smoke test passed")


if __name__ == "__main__":
    main()
