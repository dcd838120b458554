"""Verification suites for the groups G1, G2, B, the twists and faithfulness.

Concrete groups are permutation groups on the 31 nonzero vectors of F_2^5.
G1 uses the plain matrices of a1..a12.  G2 is generated by the twisted
images of a1..a11 together with a13; the structure suite for G2 uses the
beta labelling, where <a7, a4, a1a9, a2a8> is the normal 2^4.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .mataction import GeneratorTable, build_generators
from .perm import (GenMap, Homomorphism, Permutation, PermGroup, StructureFingerprint, center,
                   conjugacy_classes, derived_subgroup, extend_homomorphism, fingerprint,
                   frattini_2group, intersection, normal_closure, pcore, quotient, centralizer)
from .presentations import NAMES, Twist, twist
from .repmod import GroupModule, classify_complements, commutator_form_matches, squaring_form
from .report import Suite

TWIST_NAMES = ("id", "alpha", "beta", "alphabeta")

E_X = ("a1", "a2", "a4", "a7")
E_UP = ("a7", "a8", "a9", "a10")
W1 = ("a7", "a4", "a8", "a9")
W2_WORDS = ("a7", "a4", "a1*a9", "a2*a8")
E_T = ("a7", "a4")
Q_NAMES = ("a1", "a2", "a4", "a7", "a8", "a9", "a10")
L_NAMES = ("a3", "a5", "a6", "a11", "a12")


# ---------------------------------------------------------------------------
# reference groups for fingerprint comparison


def reference_l32() -> PermGroup:
    """GL_3(2) on the seven nonzero vectors of F_2^3."""
    from .gf2 import Gf2Matrix
    from .mataction import VectorAction

    act = VectorAction(3)
    return PermGroup([act.to_permutation(Gf2Matrix.elementary(3, 0, 1)),
                      act.to_permutation(Gf2Matrix((2, 4, 1), 3))], 7)


def reference_s4() -> PermGroup:
    return PermGroup([Permutation.from_cycles(4, [(0, 1)]), Permutation.from_cycles(4, [(0, 1, 2, 3)])])


def reference_s3xs3() -> PermGroup:
    return PermGroup([Permutation.from_cycles(6, [(0, 1)]), Permutation.from_cycles(6, [(0, 1, 2)]),
                      Permutation.from_cycles(6, [(3, 4)]), Permutation.from_cycles(6, [(3, 4, 5)])])


def reference_sl27() -> StructureFingerprint:
    """SL_2(7) as 2x2 matrices mod 7, acting on nonzero vectors."""
    vecs = [(a, b) for a in range(7) for b in range(7) if (a, b) != (0, 0)]
    idx = {v: i for i, v in enumerate(vecs)}

    def perm(m):
        return Permutation([idx[((v[0] * m[0] + v[1] * m[2]) % 7, (v[0] * m[1] + v[1] * m[3]) % 7)] for v in vecs])

    return fingerprint(PermGroup([perm((1, 1, 0, 1)), perm((0, 6, 1, 0))]))


# ---------------------------------------------------------------------------
# concrete setting


class Setting:
    """Generator table, permutation images and the standard subgroups."""

    def __init__(self, table: GeneratorTable | None = None):
        self.table = table or build_generators(4)
        self.perms = self.table.perms
        self.degree = self.table.action.degree

    def word(self, text: str, images: dict[str, Permutation] | None = None) -> Permutation:
        images = images or self.perms
        out = Permutation.identity(self.degree)
        for nm in text.split("*"):
            out = out * images[nm.strip()]
        return out

    def group(self, words: Sequence[str], images: dict[str, Permutation] | None = None,
              name: str | None = None) -> PermGroup:
        return PermGroup([self.word(w, images) for w in words], self.degree, name=name)

    def twisted_images(self, sigma: Twist) -> dict[str, Permutation]:
        """Images of a1..a11 under sigma, plus a12 and a13 unchanged."""
        act = self.table.action
        out = {nm: act.to_permutation(sigma.matrix(self.table, nm)) for nm in NAMES[:11]}
        out["a12"], out["a13"] = self.perms["a12"], self.perms["a13"]
        return out

    @cached_property
    def g1(self) -> PermGroup:
        return self.group(NAMES[:12], name="G1")

    @cached_property
    def g2(self) -> PermGroup:
        return self.group(NAMES[:11] + ("a13",), name="G2")

    @cached_property
    def b(self) -> PermGroup:
        return self.group(NAMES[:11], name="B")

    def g2_twisted(self, sigma: Twist) -> tuple[PermGroup, dict[str, Permutation]]:
        imgs = self.twisted_images(sigma)
        return self.group(NAMES[:11] + ("a13",), imgs, name=f"G2^{sigma.name}"), imgs


# ---------------------------------------------------------------------------
# helpers


def coset_action(g: PermGroup, h: PermGroup) -> PermGroup:
    """Action of g on the right cosets of h, found by sifting representatives."""
    reps = [g.identity()]
    rinv = [g.identity()]
    images: list[list[int]] = [[] for _ in g.generators]

    def locate(x: Permutation) -> int:
        for i, ri in enumerate(rinv):
            if x * ri in h:
                return i
        reps.append(x)
        rinv.append(x.inverse())
        return len(reps) - 1

    i = 0
    while i < len(reps):
        for s, img in zip(g.generators, images):
            img.append(locate(reps[i] * s))
        i += 1
    return PermGroup([Permutation(img) for img in images], len(reps))


def is_two_transitive(g: PermGroup) -> bool:
    if not g.is_transitive():
        return False
    return len(g.stabilizer([0]).orbit(1)) == g.degree - 1 if g.degree > 1 else True


def is_simple_small(g: PermGroup) -> bool:
    """Every non-identity class has normal closure the whole group."""
    n = g.order()
    return all(normal_closure(g, [c[0]]).order() == n for c in conjugacy_classes(g) if not c[0].is_identity())


def elementary_abelian_normal(g: PermGroup, order: int) -> list[PermGroup]:
    """Elementary abelian normal subgroups of the given 2-power order, as unions of involution classes."""
    invol = [c for c in conjugacy_classes(g) if c[0].order() == 2]
    target = order - 1
    out: list[PermGroup] = []
    seen: set[frozenset] = set()

    def rec(start: int, chosen: list[list[Permutation]], size: int):
        if size == target:
            elems = [e for c in chosen for e in c]
            h = PermGroup([e for e in elems], g.degree)
            if h.order() == order and h.is_elementary_abelian(2):
                key = frozenset(e.key() for e in elems)
                if key not in seen:
                    seen.add(key)
                    out.append(PermGroup(_basis_of(h), g.degree))
            return
        for i in range(start, len(invol)):
            c = invol[i]
            if size + len(c) <= target:
                rec(i + 1, chosen + [c], size + len(c))

    rec(0, [], 0)
    return out


def _basis_of(h: PermGroup) -> list[Permutation]:
    gens: list[Permutation] = []
    cur = PermGroup([], h.degree)
    for x in h.generators:
        if x not in cur:
            gens.append(x)
            cur = PermGroup(gens, h.degree)
    return gens


def same_subgroup(a: PermGroup, b: PermGroup) -> bool:
    return a.order() == b.order() and a.is_subgroup_of(b)


def split_witness(g: PermGroup, n: PermGroup, seed: int = 0, tries: int = 5000) -> PermGroup | None:
    """A complement to the normal subgroup n, or None when none exists.

    Picks elements x_1..x_k whose images generate g/n, then sweeps all
    n-multiples of them.  A complement K meets each coset n x_i in exactly
    one element and those elements generate K, so the sweep is exhaustive.
    """
    q = quotient(g, n)
    target = q.group.order()
    rng = random.Random(seed)
    el = g.elements()
    for _ in range(tries):
        k = 2 if target > 1 else 0
        xs = rng.sample(el, k) if k else []
        if PermGroup([q.image(x) for x in xs], q.group.degree).order() == target:
            break
    else:
        raise RuntimeError("no generating pair for the quotient found")
    nel = n.elements()
    for ns in itertools.product(nel, repeat=len(xs)):
        k = PermGroup([a * x for a, x in zip(ns, xs)], g.degree)
        if k.order() == target and intersection(k, n).order() == 1:
            return k
    return None


def fp_consistent(g: PermGroup, ref: PermGroup) -> bool:
    return fingerprint(g) == fingerprint(ref)


# ---------------------------------------------------------------------------
# suites


def structure_suite_g1(s: Setting | None = None) -> Suite:
    s = s or Setting()
    r = Suite("structure.g1")
    g1 = s.g1
    r.expect("order", 21504, g1.order)
    r.expect("order.closure", 21504, g1.closure_order, note="breadth-first closure oracle")
    q = s.group(Q_NAMES, name="Q")
    o2 = pcore(g1, 2)
    r.expect("O2.order", 128, o2.order)
    r.expect("O2.equals_Q", True, lambda: same_subgroup(o2, q))
    z = s.group(["a7"])
    r.expect("Z(Q).order", 2, lambda: center(q).order())
    r.expect("Z(Q)=<a7>", True, lambda: same_subgroup(center(q), z))
    r.expect("Phi(Q)=[Q,Q]=Z(Q)", True,
             lambda: same_subgroup(frattini_2group(q), z) and same_subgroup(derived_subgroup(q), z))
    mod = GroupModule(q, z, g1.generators)
    r.expect("Q/<a7>.elementary_abelian_rank", 6, lambda: mod.dim)
    form = squaring_form(mod, s.perms["a7"])
    r.expect("Q.type", "plus", form.witt_type, note="Witt type of the squaring form on Q/<a7>")
    r.expect("Q.squaring_polar=commutator", True,
             lambda: commutator_form_matches(mod, form, s.perms["a7"]))
    ex = s.group(E_X, name="E_x")
    r.expect("E_x.elementary_abelian_16", True, lambda: ex.order() == 16 and ex.is_elementary_abelian())
    r.expect("E_x.normal_in_G1", True, lambda: ex.is_normal_in(g1))
    r.expect("E_x.in_Q", True, lambda: ex.is_subgroup_of(q))
    quo = quotient(g1, q).group
    r.expect("G1/Q.order", 168, quo.order)
    r.expect("G1/Q.fingerprint~L3(2)", True, lambda: fp_consistent(quo, reference_l32()),
             note="fingerprint-consistent only")
    r.expect("G1/Q.simple", True, lambda: is_simple_small(quo))
    b = s.b
    act = coset_action(g1, b)
    r.expect("G1_on_G1/B.degree", 7, lambda: act.degree)
    r.expect("G1_on_G1/B.order", 168, act.order)
    r.expect("G1_on_G1/B.2-transitive", True, lambda: is_two_transitive(act))
    return r


def structure_suite_g2(s: Setting | None = None) -> Suite:
    s = s or Setting()
    r = Suite("structure.g2")
    g2, imgs = s.g2_twisted(twist("beta"))
    r.expect("order", 9216, g2.order)
    r.expect("order.closure", 9216, g2.closure_order, note="breadth-first closure oracle")
    r.expect("same_group_as_plain_C4", True, lambda: same_subgroup(g2, s.g2))
    f = pcore(g2, 2)
    r.expect("F.order", 256, f.order)
    et = s.group(E_T, imgs, name="E_T")
    r.expect("Z(F).order", 4, lambda: center(f).order())
    r.expect("Phi(F).order", 4, lambda: frattini_2group(f).order())
    r.expect("[F,F].order", 4, lambda: derived_subgroup(f).order())
    r.expect("Z(F)=Phi(F)=[F,F]=E_T", True,
             lambda: all(same_subgroup(x, et) for x in (center(f), frattini_2group(f), derived_subgroup(f))))
    r.expect("C_G2(F)=E_T", True, lambda: same_subgroup(centralizer(g2, f), et))
    quo = quotient(g2, f).group
    r.expect("G2/F.order", 36, quo.order)
    r.expect("G2/F.fingerprint~S3xS3", True, lambda: fp_consistent(quo, reference_s3xs3()),
             note="fingerprint-consistent only")
    r.expect("G2/F.center_order", 1, lambda: center(quo).order())
    r.expect("G2/F.abelianization", [2, 2], lambda: list(fingerprint(quo).abelianization_invariants))
    n = s.group(W2_WORDS, imgs, name="N")
    r.expect("N.elementary_abelian_16", True, lambda: n.order() == 16 and n.is_elementary_abelian())
    r.expect("N.normal_in_G2", True, lambda: n.is_normal_in(g2))
    r.expect("C_G2(N)=N", True, lambda: same_subgroup(centralizer(g2, n), n))
    found = elementary_abelian_normal(g2, 16)
    r.expect("elementary_abelian_normal_16.count", 1, lambda: len(found))
    r.expect("N=W2", True, lambda: _n_equals_w2(s, found, n))
    k = split_witness(g2, n)
    r.expect("split.K.order", 576, lambda: None if k is None else k.order())
    r.expect("split.K_meets_N_trivially", 1, lambda: None if k is None else intersection(k, n).order())
    r.artifacts["K"] = k
    return r


def _n_equals_w2(s: Setting, found: list[PermGroup], n: PermGroup) -> bool:
    """The normal 2^4 of G2, pulled back to B through beta, is W2."""
    if len(found) != 1 or not same_subgroup(found[0], n):
        return False
    beta = twist_map(s, "beta")
    pulled = PermGroup([beta.inverse_image(x) for x in found[0].generators], s.degree)
    return same_subgroup(pulled, s.group(W2_WORDS))


def structure_suite_b(s: Setting | None = None) -> Suite:
    s = s or Setting()
    r = Suite("structure.b")
    b = s.b
    r.expect("order", 3072, b.order)
    r.expect("index_in_G1", 7, lambda: s.g1.order() // b.order())
    r.expect("index_in_G2", 3, lambda: s.g2.order() // b.order())
    q = s.group(Q_NAMES)
    quo = quotient(b, q).group
    r.expect("B/Q.order", 24, quo.order)
    r.expect("B/Q.fingerprint~S4", True, lambda: fp_consistent(quo, reference_s4()),
             note="fingerprint-consistent only")
    named = {"E_x": s.group(E_X), "E^x": s.group(E_UP), "W1": s.group(W1), "W2": s.group(W2_WORDS)}
    found = elementary_abelian_normal(b, 16)
    r.expect("elementary_abelian_normal_16.count", 4, lambda: len(found))
    r.expect("elementary_abelian_normal_16.named", sorted(named),
             lambda: sorted(k for k, h in named.items() if any(same_subgroup(h, f) for f in found)))
    r.expect("C_B(W2)=W2", True, lambda: same_subgroup(centralizer(b, named["W2"]), named["W2"]))
    r.expect("C_B(W1)=W1", False, lambda: same_subgroup(centralizer(b, named["W1"]), named["W1"]))
    r.expect("Z(B)=<a7>", True, lambda: same_subgroup(center(b), s.group(["a7"])))
    r.expect("index2_over_Q.count", 1, lambda: _index_two_count(quo))
    return r


def _index_two_count(quo: PermGroup) -> int:
    """Index-2 subgroups of quo: 2^r - 1 with r the number of even abelian invariants."""
    inv = fingerprint(quo).abelianization_invariants
    r = sum(1 for x in inv if x % 2 == 0)
    return 2 ** r - 1


# ---------------------------------------------------------------------------
# twists


@dataclass
class TwistMap:
    name: str
    genmap: GenMap
    hom: Homomorphism | None
    _inv: dict[bytes, Permutation] = field(default_factory=dict, repr=False)

    @property
    def verified(self) -> bool:
        return self.hom is not None and self.hom.is_injective()

    def __call__(self, x: Permutation) -> Permutation:
        return self.hom(x)

    def inverse_image(self, y: Permutation) -> Permutation:
        if not self._inv:
            for e in self.hom.domain.elements():
                self._inv[self.hom(e).key()] = e
        return self._inv[y.key()]

    def image(self, h: PermGroup) -> PermGroup:
        return PermGroup([self(x) for x in h.generators], h.degree)


_TWIST_CACHE: dict[tuple[int, str], TwistMap] = {}


def twist_map(s: Setting, name: str) -> TwistMap:
    key = (id(s), name)
    if key not in _TWIST_CACHE:
        imgs = s.twisted_images(twist(name))
        gm = GenMap([s.perms[nm] for nm in NAMES[:11]], [imgs[nm] for nm in NAMES[:11]], name)
        _TWIST_CACHE[key] = TwistMap(name, gm, extend_homomorphism(gm, s.b))
    return _TWIST_CACHE[key]


def build_twists(s: Setting | None = None) -> tuple[dict[str, TwistMap], Suite]:
    s = s or Setting()
    r = Suite("amalgams.twists")
    maps = {nm: twist_map(s, nm) for nm in TWIST_NAMES}
    for nm, m in maps.items():
        r.expect(f"{nm}.automorphism_of_B", True, lambda m=m: m.verified,
                 note="exhaustive extension over all elements of B")
    q = s.group(Q_NAMES)
    r.expect("alpha.fixes_Q_elementwise", True, lambda: all(maps["alpha"](x) == x for x in q.elements()))
    r.expect("beta(E_x)=W2", True, lambda: same_subgroup(maps["beta"].image(s.group(E_X)), s.group(W2_WORDS)))
    r.expect("beta(W2)=E_x", True, lambda: same_subgroup(maps["beta"].image(s.group(W2_WORDS)), s.group(E_X)))
    ident = maps["id"].hom
    for nm in ("alpha", "beta"):
        h = maps[nm].hom
        r.expect(f"{nm}^2=1", True, lambda h=h: h.compose(h).equals(ident))
    a, bb = maps["alpha"].hom, maps["beta"].hom
    r.expect("alpha*beta=beta*alpha", True, lambda: a.compose(bb).equals(bb.compose(a)))
    r.expect("alphabeta=alpha_then_beta", True, lambda: a.compose(bb).equals(maps["alphabeta"].hom))
    return maps, r


def find_conjugator(b: PermGroup, sigma: TwistMap, tau: TwistMap) -> Permutation | None:
    """g in b with sigma(x) = tau(x)^g on generators, or None."""
    src = sigma.genmap.source
    want = [sigma(x) for x in src]
    have = [tau(x) for x in src]
    for g in b.elements():
        gi = g.inverse()
        if all(gi * h * g == w for h, w in zip(have, want)):
            return g
    return None


def distinct_coset_check(s: Setting | None = None) -> Suite:
    s = s or Setting()
    r = Suite("amalgams.distinct_cosets")
    maps = {nm: twist_map(s, nm) for nm in TWIST_NAMES}
    for i, a in enumerate(TWIST_NAMES):
        for bname in TWIST_NAMES[i:]:
            expected = a == bname
            r.expect(f"inner_equivalent({a},{bname})", expected,
                     lambda a=a, bname=bname: find_conjugator(s.b, maps[a], maps[bname]) is not None,
                     note="exhaustive sweep over all elements of B")
    return r


# ---------------------------------------------------------------------------
# faithfulness


@dataclass
class Amalgam:
    g1: PermGroup
    g2: PermGroup
    b: PermGroup
    twist: TwistMap
    a13: Permutation


@dataclass
class FaithfulnessReport:
    twist: str
    candidates: list[tuple[str, bool, bool]]
    verdict: str
    witness: str | None


def build_amalgam(s: Setting, name: str) -> Amalgam:
    g2, imgs = s.g2_twisted(twist(name))
    return Amalgam(s.g1, g2, s.b, twist_map(s, name), imgs["a13"])


def normal_candidates(s: Setting) -> list[tuple[str, PermGroup]]:
    """Nontrivial normal subgroups of G1 inside B.

    Such a subgroup maps to a normal subgroup of G1/Q inside B/Q, which is
    trivial since G1/Q is simple, so it lies in Q.  A nontrivial normal
    subgroup of Q meets Z(Q) = <a7>, so it contains a7 and corresponds to a
    G1-invariant subspace of Q/<a7>.
    """
    q = s.group(Q_NAMES)
    z = s.group(["a7"])
    mod = GroupModule(q, z, s.g1.generators)
    named = {"<a7>": z, "E_x": s.group(E_X), "E^x": s.group(E_UP), "Q": q}
    out = []
    for sub in mod.invariant_subspaces():
        h = mod.preimage(sub)
        label = next((k for k, v in named.items() if same_subgroup(v, h)), f"dim{sub.dim}")
        out.append((label, h))
    return out


def faithfulness(s: Setting, a: Amalgam) -> FaithfulnessReport:
    cands = []
    witness = None
    for label, h in normal_candidates(s):
        n1 = h.is_normal_in(a.g1)
        img = a.twist.image(h)
        n2 = img.is_normal_in(PermGroup(img.generators + [a.a13], s.degree))
        cands.append((label, n1, n2))
        if n1 and n2 and witness is None:
            witness = label
    return FaithfulnessReport(a.twist.name, cands, "unfaithful" if witness else "faithful", witness)


def faithfulness_suite(s: Setting | None = None) -> Suite:
    s = s or Setting()
    r = Suite("amalgams.faithfulness")
    cands = normal_candidates(s)
    r.expect("candidates", ["<a7>", "E^x", "E_x", "Q"], lambda: sorted(lbl for lbl, _ in cands),
             note="Q is normal in G1 and lies in B, so it is tested as a candidate")
    expected = {"id": ("unfaithful", "E_x"), "alpha": ("unfaithful", "E_x"),
                "beta": ("faithful", None), "alphabeta": ("faithful", None)}
    for nm in TWIST_NAMES:
        rep = faithfulness(s, build_amalgam(s, nm))
        r.expect(f"{nm}.verdict", list(expected[nm]), lambda rep=rep: [rep.verdict, rep.witness])
        r.artifacts[nm] = rep
    am = build_amalgam(s, "beta")
    ex_b = am.twist.image(s.group(E_X))
    r.expect("[E_x^beta,a13]_not_in_E_x^beta", True,
             lambda: any(x.inverse() * am.a13 * x * am.a13 not in ex_b for x in ex_b.generators))
    return r


def complements_suite(s: Setting | None = None) -> Suite:
    s = s or Setting()
    r = Suite("modules.complements")
    q = s.group(Q_NAMES)
    z = s.group(["a7"])
    rep = classify_complements(s.g1, q, z, s.group(L_NAMES),
                               flag_subgroups={"E_x": s.group(E_X), "E^x": s.group(E_UP)})
    r.expect("pairs_tested", 16384, lambda: rep.pairs_tested)
    r.expect("pairs_valid", 1024, lambda: rep.pairs_valid)
    r.expect("complements", 256, lambda: rep.complements)
    r.expect("classes", 4, lambda: len(rep.classes))
    r.expect("class_sizes", [64, 64, 64, 64], lambda: sorted(c.size for c in rep.classes))
    r.expect("preimage_orders", [336] * 4, lambda: [c.fingerprint.order for c in rep.classes])
    r.expect("classes_with_>=2_involutions", 3,
             lambda: sum(1 for c in rep.classes if c.fingerprint.involution_count >= 2))
    r.expect("classes_with_1_involution", 1,
             lambda: sum(1 for c in rep.classes if c.fingerprint.involution_count == 1))
    r.expect("unique_involution_class~SL2(7)", True,
             lambda: [c.fingerprint for c in rep.classes if c.fingerprint.involution_count == 1] == [reference_sl27()],
             note="fingerprint-consistent only")
    r.expect("classes_semisimple_on_both", 1,
             lambda: sum(1 for c in rep.classes if c.flags["E_x"] and c.flags["E^x"]))
    r.artifacts["report"] = rep
    return r


def modules_suite(s: Setting | None = None) -> Suite:
    from .repmod import build_w_module, count_invariant_isotropic, spin_submodules, w_witnesses

    s = s or Setting()
    r = Suite("modules.invariants")
    q = s.group(Q_NAMES)
    mod = GroupModule(q, s.group(["a7"]), s.g1.generators)
    r.expect("Q/<a7>.invariant_subspaces", 4, lambda: len(mod.invariant_subspaces("enumerate")),
             note="all 2825 subspaces of F_2^6 tested")
    r.expect("Q/<a7>.invariant_subspaces.spin", 4, lambda: len(mod.invariant_subspaces("spin")),
             note="sums of cyclic submodules")
    w = build_w_module()
    r.expect("W.axioms_failed", [], w.check_axioms, note="exhaustive over all 64 elements")
    r.expect("W.submodules", 3, lambda: len(spin_submodules([w.matrix(g) for g in w.actors], w.dim)))
    wit = w_witnesses(w)
    r.expect("W.S_order", 6, lambda: wit["S_order"])
    for nm, qnz in (("U1", False), ("U2", True), ("U3", True)):
        r.expect(f"W.{nm}", {"subspace": True, "S_invariant": True, "q_nonzero": qnz, "dim": 2},
                 lambda nm=nm: wit[nm])
    for n, want in ((4, 4), (5, 3), (6, 3)):
        r.expect(f"I.count.n={n}", want, lambda n=n: count_invariant_isotropic(n),
                 note="invariant subspaces on which the quadratic form vanishes")
    return r
