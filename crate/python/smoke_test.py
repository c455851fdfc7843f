"""Smoke test for the semstore Python module.

Build and install the module first:

    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/semstore-*.whl
    python python/smoke_test.py
"""

from pathlib import Path

import semstore

FIXTURES = Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"

COLLABORATORS = (FIXTURES / "collaborators.rq").read_text()


def test_load_and_query():
    store = semstore.Store()
    reports = store.load([str(FIXTURES / "lanl.pfx"), str(FIXTURES / "semantic_network.trp")])
    assert [(r.parsed, r.inserted, r.errors) for r in reports] == [(18, 18, [])]
    rows = store.query(COLLABORATORS, check=True)
    assert {(r["x"], r["y"]) for r in rows} == {
        ("lanl:marko", "necsi:carlos"),
        ("lanl:jhw", "necsi:carlos"),
        ("lanl:jbollen", "necsi:carlos"),
    }
    assert store.render(COLLABORATORS, "tsv").splitlines()[0] == "?x\t?y"


def test_infer():
    store = semstore.Store()
    store.load([str(FIXTURES / "lanl.pfx"), str(FIXTURES / "semantic_network.trp")])
    result = store.infer()
    assert result.derived == 3
    assert store.contains("ex:X", "rdf:type", "lanl:Institution")
    assert store.contains("lanl:LANL", "rdf:type", "lanl:Institution")
    assert store.infer().derived == 0
    stats = store.stats()
    assert (stats["asserted"], stats["derived"]) == (18, 3)


def test_cardinality_merge():
    store = semstore.Store()
    store.load([str(FIXTURES / "lanl.pfx"), str(FIXTURES / "cardinality.trp")])
    result = store.infer()
    assert result.merges == [("lanl:LANL", "lanl:LosAlamos")]
    assert store.canonical("lanl:LosAlamos") == store.canonical("lanl:LANL")


def test_edit_triples():
    store = semstore.Store()
    store.add_prefix("ex", "http://example.org/")
    assert store.add("ex:a", "ex:age", '"042"^^xsd:integer')
    assert not store.add("ex:a", "ex:age", '"42"^^xsd:integer')
    assert store.triples() == ['<ex:a, ex:age, "42"^^xsd:integer>']
    assert len(store) == 1
    assert store.remove("ex:a", "ex:age", '"42"^^xsd:integer')
    assert len(store) == 0 and store.check_indexes()
    try:
        store.add('"literal"', "ex:p", "ex:o")
    except semstore.SemstoreError as e:
        assert "subject" in str(e)
    else:
        raise AssertionError("literal subject accepted")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok {name}")
