import p1bundles as p1b


def test_generic_kernel():
    assert p1b.generic_kernel_splitting([0, 2, 2], [2], seed=1) == [0, 2]
    assert p1b.generic_kernel_splitting([6, 6, 6], [12], seed=1) == [3, 3]


def test_rnc_conormal():
    assert p1b.rnc_conormal(3, 3) == [-5, -5]
    assert p1b.rnc_conormal(3, 5) == [-5, -5, -3, -3]


def test_normal_bundle():
    nb = p1b.normal_bundle("projective", [3, 3])
    assert nb["tangent"] == [4, 4, 4]
    assert nb["normal"] == [5, 5]
    g24 = p1b.normal_bundle("grassmannian", [2, 4])
    assert g24["anticanonical_degree"] == 16
    assert all(a >= 1 for a in g24["tangent"])


def test_rathmann():
    assert p1b.rathmann_surjective(3, 3, 1)
    assert p1b.rathmann_surjective(3, 4, 2)


def test_src_certificate():
    cert = p1b.src_certificate("grassmannian", [2, 4], [[3]], seed=7)
    assert cert["gate"]["pass"]
    assert cert["splitting"] == [1, 1]
    assert cert["flags"]["very_free"]


def test_product_report():
    rep = p1b.product_report(3, 3, trials=3, seed=11)
    assert rep["pass"]
    best = rep["trials"][rep["best_trial"]]
    assert best["conormal"] == [-5, -5, -4, -4, -4]


def test_charp_demo():
    demo = p1b.charp_demo(3, samples=3, seed=17)
    assert demo["formula_fails_for_every_alpha"]
    assert demo["conormal_constant_over_alphas"]
    assert demo["pair_conormal"] == [-7, -7, -6, -5, -5]


def test_errors_are_typed():
    import pytest

    with pytest.raises(p1b.MathError):
        p1b.rnc_conormal(5, 3)  # e > n
