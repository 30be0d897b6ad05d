# Smoke test for the python facade; runs with a plain interpreter, no
# framework needed.  PYTHONPATH must point at a directory holding the
# setlab package with its _core module.
import setlab


def main():
    assert setlab.__version__ == setlab.engine_version()

    p = setlab.parse("exists x. x = x")
    assert p["print"] == "exists x. x = x"
    assert p["canonical"] == setlab.parse(p["canonical"])["print"]
    assert p["freeVars"] == []

    assert setlab.classify("exists x. forall y. y in x") == {"class": "Sigma", "n": 2}
    assert setlab.classify("x in y") == {"class": "Delta0", "n": 0}

    n = setlab.normalize("exists x. exists y. x in y")
    assert n["outputClass"] == {"class": "Sigma", "n": 1}

    assert setlab.relativize("exists v. v in b", "a") == "exists v in a. v in b"

    lv = setlab.build_level(4)
    assert lv["index"] == 4 and lv["size"] == 16
    assert lv["elements"][0] == "#0" and lv["births"][0] == 1

    assert setlab.model_check(3, "Empty(x)", {"x": "∅"})
    assert not setlab.model_check(2, "exists v. Num(v, #2)")
    assert setlab.model_check(3, "exists v. Num(v, #2)")
    assert setlab.sigma0_truth("x in y", {"x": "∅", "y": "{∅}"})
    assert setlab.least_witness_level("exists x. Num(x, #1)") == 2
    assert setlab.least_witness_level("exists x. Num(x, #5)") is None

    r = setlab.run_srm("CLEAR 0\nADD 0 0", 3)
    assert r["status"] == "halted" and r["steps"] == 2 and r["limits"] == 0
    assert r["registers"] == ["#1"]

    asm = setlab.compile_d0("Empty(x)")
    out = setlab.run_srm(asm, 3, ["{∅}"])
    assert out["status"] == "halted" and out["registers"][0] == "#0"

    assert setlab.height("CLEAR 0") == 1

    one = setlab.kleene("Empty(x)")
    assert one["label"] == "Empty(x)"
    two = setlab.successor(one)
    assert two["label"] == "Empty(x)+1"
    assert setlab.least_witness_level(setlab.exists_sentence(two)) == 3
    assert setlab.model_check(4, setlab.comp_sentence(one, two))
    assert not setlab.model_check(4, setlab.comp_sentence(two, one))

    spec = setlab.spectrum(["exists x. Empty(x)"])
    assert spec["value"] == 1 and spec["perSentence"][0]["least"] == 1

    try:
        setlab.parse("x =")
    except setlab.SetlabError:
        pass
    else:
        raise AssertionError("expected SetlabError on a syntax error")

    print("smoke ok")


if __name__ == "__main__":
    main()
