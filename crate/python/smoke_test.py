"""Smoke test for the lieverify Python module.

Build and install first:  pip install -e crates/py --no-build-isolation
"""

import json

import lieverify


def main() -> None:
    sl2 = lieverify.LieAlgebra.catalog("sl2")
    assert sl2.labels == ["h", "e_plus", "e_minus"]
    assert sl2.bracket("h", "e_plus") == "2*e_plus"
    assert sl2.jacobi_witness() is None

    jordanian = sl2.rmatrix("r = h ^ e_plus")
    assert jordanian.satisfies_cybe()
    standard = sl2.rmatrix("r = e_plus ^ e_minus")
    assert not standard.satisfies_cybe()
    print("delta(h) =", jordanian.cocommutator("h"))

    heis = lieverify.LieAlgebra.from_definition("algebra heis\nbasis: x, y, z\n[x,y] = z\n")
    assert len(heis) == 3
    assert lieverify.LieAlgebra.from_definition(heis.to_definition()).to_definition() == heis.to_definition()

    so42 = lieverify.LieAlgebra.catalog("so42")
    r = so42.rmatrix("r = (h1 - h3) ^ e6 + 2*(h3 ^ e6 + e1 ^ e5 - e3 ^ e4)")
    assert r.satisfies_cybe()

    assert lieverify.normalize_scalar("2/4 + 0*i") == "1/2"

    q = lieverify.DeformedSl2(4)
    print("D P =", q.straighten("DP"), "|  P D =", q.straighten("PD"))
    report = json.loads(q.verify())
    assert report["summary"]["fail"] == 0
    assert report["summary"]["recorded_discrepancy"] == 1

    casimir = json.loads(lieverify.verify_claim("hopf.casimir"))
    assert all(c["status"] == "pass" for c in casimir["checks"])

    try:
        sl2.rmatrix("r = h ^")
    except ValueError as e:
        assert "1:8" in str(e)
    else:
        raise AssertionError("dangling operator accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
