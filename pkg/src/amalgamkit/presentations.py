"""Relator sets for the rank-two amalgams built from the n = 4 generator table.

Relators come from matrix arithmetic: a pair of root elements either has its
commutator inside the shared subgroup, in which case the relator is the
commutator times a canonical word for the inverse, or it generates a group
whose product has odd or non-shared order, in which case the relator is a
power of the product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .gf2 import Gf2Matrix
from .mataction import GeneratorTable, build_generators
from .words import Presentation, Word, parse_presentation

NAMES = tuple(f"a{k}" for k in range(1, 14))
G1_NAMES = NAMES[:12]
G2_NAMES = NAMES[:11] + ("a13",)
B_NAMES = NAMES[:11]
# subgroup of the degree-16 completion: point stabiliser of A16
L16_NAMES = ("a3", "a5", "a6", "a8", "a9", "a10", "a11", "a12", "a13")

TWIST_TEXT = {
    "id": {},
    "alpha": {"a3": "a7*a3", "a11": "a7*a11"},
    "beta": {"a1": "a1*a7*a9", "a2": "a2*a7*a8"},
}

M24_RELATORS = ("(a6*a12*a13)^5", "(a11*a12*a13)^11", "(a10*a12*a13)^5")
HE_RELATORS = ("(a12*a2*a8*a13)^5", "(a6*a12*a2*a7*a8*a13)^5", "(a10*a8*a13*a12*a7)^5")


def _name_pres() -> Presentation:
    return Presentation(NAMES)


@dataclass(frozen=True)
class Twist:
    """Generator-image map on a1..a11; unnamed generators are fixed."""

    name: str
    images: dict = field(hash=False)

    def word_image(self, k: int) -> Word:
        nm = NAMES[k - 1]
        return self.images.get(nm, Word((k,)))

    def apply(self, w: Word) -> Word:
        return w.substitute([self.word_image(k) for k in range(1, 14)])

    def then(self, other: "Twist", name: str | None = None) -> "Twist":
        """Apply self first, then other."""
        imgs = {}
        for k in range(1, 12):
            w = other.apply(self.word_image(k))
            if w != Word((k,)):
                imgs[NAMES[k - 1]] = w
        return Twist(name or f"{self.name}{other.name}", imgs)

    def matrix(self, table: GeneratorTable, nm: str) -> Gf2Matrix:
        return table.eval_word(self.images.get(nm, Word((NAMES.index(nm) + 1,))))

    def on_shared(self, table: GeneratorTable, g: Gf2Matrix) -> Gf2Matrix:
        """Image of a shared-subgroup matrix, via its canonical word."""
        return table.eval_word(self.apply(table.factor_element(g)))


@lru_cache(maxsize=None)
def twist(name: str) -> Twist:
    """``id``, ``alpha``, ``beta`` or ``alphabeta``."""
    if name == "alphabeta":
        return twist("alpha").then(twist("beta"), "alphabeta")
    p = _name_pres()
    return Twist(name, {k: p.parse_word(v) for k, v in TWIST_TEXT[name].items()})


def _comm(x: Gf2Matrix, y: Gf2Matrix) -> Gf2Matrix:
    return x.inverse() @ y.inverse() @ x @ y


def _pair_relator(i: int, j: int, x: Gf2Matrix, y: Gf2Matrix, table: GeneratorTable,
                  pull=None) -> Word:
    c = _comm(x, y)
    try:
        target = c.inverse() if pull is None else pull(c.inverse())
        w = table.factor_element(target)
    except ValueError:
        return Word((i, j)) ** (x @ y).order()
    return Word((i,)).commutator(Word((j,))) * w


def derive_presentation(sigma: Twist | str | None = None, table: GeneratorTable | None = None,
                        check: bool = True) -> Presentation:
    """Relators for G1, G2 twisted by ``sigma``, glued over a1..a11."""
    if isinstance(sigma, str):
        sigma = twist(sigma)
    sigma = sigma or twist("id")
    table = table or build_generators(4)
    sup = "" if sigma.name == "id" else f"^{sigma.name}"
    m = table.matrices
    rels: list[Word] = []
    labels: list[str] = []
    for k in range(1, 14):
        rels.append(Word((k, k)))
        labels.append(f"R({k},{k})")
    for i in range(1, 13):
        for j in range(i + 1, 13):
            rels.append(_pair_relator(i, j, m[NAMES[i - 1]], m[NAMES[j - 1]], table))
            labels.append(f"R({i},{j})")
    # sigma is an involution on the shared subgroup for all four twists, but
    # pull back through the honest inverse to keep the rule general
    inv = _inverse_on_shared(sigma, table)
    for i in range(1, 12):
        x = sigma.matrix(table, NAMES[i - 1])
        rels.append(_pair_relator(i, 13, x, m["a13"], table, pull=inv))
        labels.append(f"R{sup}({i},13)")
    p = Presentation(NAMES, rels, labels)
    if check:
        bad = self_test(p, sigma, table)
        if bad:
            raise AssertionError(f"relators fail in the matrix group: {bad}")
    return p


def _inverse_on_shared(sigma: Twist, table: GeneratorTable):
    images = {}
    # sigma permutes the shared subgroup; tabulate sigma^-1 by inverting sigma
    for rows, w in table._word_table.words.items():
        g = table.eval_word(Word(w))
        images[sigma.on_shared(table, g).rows] = g
    if len(images) != len(table._word_table):
        raise ValueError(f"{sigma.name} is not injective on the shared subgroup")

    def pull(g: Gf2Matrix) -> Gf2Matrix:
        if g.rows not in images:
            raise ValueError("element outside the shared subgroup")
        return images[g.rows]

    return pull


def matrix_images(sigma: Twist, table: GeneratorTable, side: str) -> list[Gf2Matrix]:
    """Matrices for a1..a13: G1 side plain, G2 side through sigma."""
    m = table.matrices
    if side == "g1":
        return [m[nm] for nm in NAMES]
    return [sigma.matrix(table, nm) if k <= 11 else m[nm] for k, nm in enumerate(NAMES, 1)]


def self_test(p: Presentation, sigma: Twist, table: GeneratorTable) -> list[str]:
    """Labels of relators that do not evaluate to the identity."""
    one = Gf2Matrix.identity(table.dim)
    g1 = matrix_images(sigma, table, "g1")
    g2 = matrix_images(sigma, table, "g2")
    bad = []
    for lab, r in zip(p.labels or [str(i) for i in range(len(p.relators))], p.relators):
        used = {abs(x) for x in r.letters}
        sides = []
        if 13 not in used:
            sides.append(g1)
        if 12 not in used:
            sides.append(g2)
        for imgs in sides:
            if r.evaluate(imgs, lambda a, b: a @ b, lambda a: a.inverse(), one) != one:
                bad.append(lab)
                break
    return bad


def side_presentation(p: Presentation, side: str) -> Presentation:
    names = {"g1": G1_NAMES, "g2": G2_NAMES, "b": B_NAMES}[side]
    return p.restrict(names)


def completion_presentation(target: str) -> tuple[Presentation, list[Word]]:
    """Presentation and subgroup words for a named completion."""
    if target in ("m24", "he"):
        base = derive_presentation("alphabeta")
        extra = M24_RELATORS if target == "m24" else HE_RELATORS
        pres = base.with_relators([base.parse_word(t) for t in extra],
                                  [f"{target}:{t}" for t in extra])
        return pres, [Word((k,)) for k in range(1, 13)]
    if target == "a16":
        pres = derive_presentation("beta")
        return pres, [pres.word(nm) for nm in L16_NAMES]
    raise ValueError(f"unknown completion {target!r}")


def load_presentation(text: str) -> Presentation:
    return parse_presentation(text)
