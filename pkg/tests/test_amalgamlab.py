from __future__ import annotations

import pytest

from amalgamkit import amalgamlab as L
from amalgamkit.perm import Permutation, PermGroup, fingerprint


def cyclic(n: int) -> PermGroup:
    return PermGroup([Permutation.from_cycles(n, [tuple(range(n))])])


def test_reference_groups():
    assert L.reference_l32().order() == 168
    assert L.is_simple_small(L.reference_l32())
    assert L.reference_s4().order() == 24
    assert L.reference_s3xs3().order() == 36
    assert L.reference_sl27().order == 336 and L.reference_sl27().involution_count == 1


def test_coset_action_and_two_transitivity():
    s4 = L.reference_s4()
    h = s4.stabilizer([0])
    act = L.coset_action(s4, h)
    assert act.degree == 4 and act.order() == 24 and L.is_two_transitive(act)
    assert not L.is_two_transitive(cyclic(5))


def test_split_witness_detects_non_split():
    c4 = cyclic(4)
    n = c4.subgroup([c4.generators[0] ** 2])
    assert L.split_witness(c4, n) is None
    s4 = L.reference_s4()
    v4 = s4.subgroup([Permutation.from_cycles(4, [(0, 1), (2, 3)]), Permutation.from_cycles(4, [(0, 2), (1, 3)])])
    k = L.split_witness(s4, v4)
    assert k is not None and k.order() == 6


def test_elementary_abelian_normal_in_s4():
    found = L.elementary_abelian_normal(L.reference_s4(), 4)
    assert len(found) == 1


def test_setting_orders(setting):
    assert (setting.g1.order(), setting.g2.order(), setting.b.order()) == (21504, 9216, 3072)


def test_twist_maps(setting):
    maps, suite = L.build_twists(setting)
    assert suite.ok
    beta = maps["beta"]
    ex = setting.group(L.E_X)
    assert L.same_subgroup(beta.image(ex), setting.group(L.W2_WORDS))
    x = setting.perms["a1"]
    assert beta.inverse_image(beta(x)) == x


def test_conjugator_search(setting):
    maps, _ = L.build_twists(setting)
    assert L.find_conjugator(setting.b, maps["alpha"], maps["alpha"]).is_identity()
    assert L.find_conjugator(setting.b, maps["id"], maps["beta"]) is None


def test_faithfulness_reports(setting):
    reps = {nm: L.faithfulness(setting, L.build_amalgam(setting, nm)) for nm in L.TWIST_NAMES}
    assert {nm: r.verdict for nm, r in reps.items()} == {
        "id": "unfaithful", "alpha": "unfaithful", "beta": "faithful", "alphabeta": "faithful"}
    assert reps["id"].witness == "E_x"
    # Q is normal in G1 and lies in B; it is among the tested candidates
    assert "Q" in [c[0] for c in reps["beta"].candidates]


@pytest.mark.parametrize("suite", ["structure_suite_g1", "structure_suite_g2", "structure_suite_b",
                                   "distinct_coset_check", "faithfulness_suite", "modules_suite"])
def test_suites_pass(setting, suite):
    r = getattr(L, suite)(setting)
    assert r.ok, [(c.check, c.expected, c.actual) for c in r.failed()]


def test_suites_deterministic(setting):
    from amalgamkit.report import render

    a = L.structure_suite_b(setting)
    b = L.structure_suite_b(setting)
    for s in (a, b):
        for c in s.checks:
            c.elapsed = 0.0
    assert render([a]) == render([b])


def test_split_witness_in_g2(setting):
    g2, imgs = setting.g2_twisted(L.twist("beta"))
    n = setting.group(L.W2_WORDS, imgs)
    k = L.split_witness(g2, n)
    assert k.order() == 576
    assert fingerprint(k).order == 576
