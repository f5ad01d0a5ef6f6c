"""Smoke test for the `deza` extension module.

Build first with `cargo build -p deza-py --release`, then run
`python3 python/smoke_test.py`. The script loads `libdeza.so` straight from
the cargo target directory.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        for name in ("libdeza.so", "libdeza.dylib", "deza.dll"):
            path = ROOT / "target" / profile / name
            if path.exists():
                loader = importlib.machinery.ExtensionFileLoader("deza", str(path))
                spec = importlib.util.spec_from_loader("deza", loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                return module
    sys.exit("libdeza not found; run `cargo build -p deza-py --release` first")


M1 = [
    [0, 0, 1, 0, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 1, 0, 1],
    [0, 1, 0, 0, 1, 0, 0, 1],
    [1, 0, 0, 0, 0, 1, 1, 0],
    [0, 1, 0, 1, 0, 0, 1, 0],
    [1, 0, 1, 0, 0, 0, 0, 1],
    [0, 1, 1, 0, 0, 1, 0, 0],
    [1, 0, 0, 1, 1, 0, 0, 0],
]


def main():
    deza = load()
    m1 = deza.Digraph(M1)
    report = deza.verify(m1)
    assert report["classification"] == "deza_digraph", report
    assert report["params"] == {"kind": "deza", "n": 8, "k": 3, "b": 3, "a": 1, "t": 0}, report
    assert (report["alpha"], report["beta"]) == (6, 1)

    assert deza.skew_hadamard_deza(1) == m1
    assert deza.Digraph.from_digraph6(m1.digraph6()) == m1

    a, b, ar, br = deza.twin(4)
    assert deza.verify(a, "deza_graph")["params"]["k"] == 12
    assert deza.verify(ar, "reflexive")["params"]["k"] == 16

    n1 = deza.field_type2(3, 1)
    assert deza.verify(n1, "deza2")["params"] == {"kind": "typeII", "n": 81, "k": 24, "b": 9, "a": 6}

    found = deza.search((8, 3, 3, 1, 0), canonical_dedup=True)
    assert any(d.canonical_form() == m1.canonical_form() for d in found)

    quotient, size, classes = deza.decompose_digraph(deza.qr_design(7, 2), "b_eq_k")
    assert (quotient.order, size, len(classes)) == (7, 2, 7)

    f = deza.feasibility((4, 2, 2, 2, 0))
    assert not f["feasible"], f
    try:
        deza.decompose_digraph(m1)
    except ValueError as e:
        assert "b" in str(e)
    else:
        raise AssertionError("M1 decomposed")
    print("python smoke test passed")


if __name__ == "__main__":
    main()
