"""Combinatorial carrousel trees, Eggers reduction and tree canonical codes."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .contact import QMap, q_map, verify_ultrametric
from .puiseux import Curve, InvariantError, characteristic_exponents
from .scalar import INFINITY, format_rational, is_infinite


class UltrametricError(ValueError):
    def __init__(self, triples):
        self.triples = triples
        shown = ", ".join(str(t) for t in triples[:5])
        super().__init__(f"q-map is not ultrametric; violating triples: {shown}")


class CarrouselStructureError(InvariantError):
    pass


@dataclass
class CarrouselNode:
    q: object  # Fraction, or INFINITY at leaves
    sheets: frozenset
    children: list = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def walk(self):
        yield self
        for ch in self.children:
            yield from ch.walk()

    def leaves(self):
        return [v for v in self.walk() if v.is_leaf]


def build_carrousel_tree(qm: QMap) -> CarrouselNode:
    """Tree of ``q``-equivalence classes with valence-2 vertices suppressed."""
    q = qm.q
    mu = len(q)
    bad = verify_ultrametric(q)
    if bad:
        raise UltrametricError(bad)
    finite = {q[j][k] for j in range(mu) for k in range(j + 1, mu)}
    if any(v < 1 for v in finite):
        raise ValueError("contact exponents must be >= 1")
    levels = sorted(finite | {Fraction(1)})  # increasing; leaves sit at inf

    def split(members: list[int], level_idx: int) -> CarrouselNode:
        """Node for ``members`` at ``levels[level_idx]``, after suppression."""
        if len(members) == 1:
            return CarrouselNode(INFINITY, frozenset(members))
        qv = levels[level_idx]
        # classes of the next finer relation q(j,k) >= levels[level_idx + 1]
        while True:
            nxt = level_idx + 1
            thresh = levels[nxt] if nxt < len(levels) else INFINITY
            classes = _classes(q, members, thresh)
            if len(classes) > 1:
                break
            level_idx = nxt  # single class: valence-2 vertex, skip level
            qv = levels[level_idx]
        node = CarrouselNode(qv, frozenset(members))
        node.children = [split(cl, level_idx + 1) for cl in classes]
        return node

    everything = list(range(mu))
    root = CarrouselNode(Fraction(1), frozenset(everything))
    if mu == 1:
        root.children = [CarrouselNode(INFINITY, frozenset(everything))]
        return root
    thresh = levels[1] if len(levels) > 1 else INFINITY
    classes = _classes(q, everything, thresh)
    if len(classes) == 1:
        # root keeps its single child
        root.children = [split(everything, 1)]
    else:
        root.children = [split(cl, 1) for cl in classes]
    return root


def _classes(q, members: list[int], thresh) -> list[list[int]]:
    out: list[list[int]] = []
    for j in members:
        for cl in out:
            if q[cl[0]][j] >= thresh:
                cl.append(j)
                break
        else:
            out.append([j])
    return out


def curve_tree(c: Curve, qm: Optional[QMap] = None) -> CarrouselNode:
    return build_carrousel_tree(qm or q_map(c))


# ---------------------------------------------------------------- codes


def _qlabel(q) -> str:
    return "inf" if is_infinite(q) else format_rational(q)


def canonical_code(tree, labels: Optional[dict] = None) -> str:
    """Isomorphism-invariant string code of a decorated rooted tree.

    Works on carrousel trees, Eggers trees and splice diagrams.  ``labels``
    optionally maps leaf sheets to extra labels (used to keep branches
    apart during the Eggers reduction).
    """
    if isinstance(tree, CarrouselNode):
        return _carrousel_code(tree, labels)
    if isinstance(tree, (EggersNode, EggersLeaf)):
        return _eggers_code(tree)
    from .splice import SpliceDiagram, splice_code

    if isinstance(tree, SpliceDiagram):
        return splice_code(tree)
    raise TypeError(f"no canonical code for {type(tree).__name__}")


def _carrousel_code(node: CarrouselNode, labels=None) -> str:
    if node.is_leaf:
        if labels is not None:
            (s,) = node.sheets
            return f"L{labels[s]}"
        return "L"
    kids = sorted(_carrousel_code(ch, labels) for ch in node.children)
    return f"{_qlabel(node.q)}[{','.join(kids)}]"


# ---------------------------------------------------------------- Eggers


@dataclass
class EggersLeaf:
    sheet: int
    branch: Optional[int] = None


@dataclass
class EggersNode:
    """Vertex of the reduced tree.

    ``q = m/n`` with ``n = r * (own multiplicity of the parent)``.  ``n_own``
    is the multiplicity seen by non-central children; ``n_in`` the one seen
    on arrival (it skips the denominator of a parent reached through the
    parent's central, extra-flagged edge).
    """

    q: Fraction
    m: int
    n: int
    r: Optional[int]  # None at the root
    s: Optional[int]
    sheets: frozenset
    children: list = field(default_factory=list)  # (EggersNode | EggersLeaf, extra: bool)
    n_own: int = 1
    n_in: int = 1

    @property
    def is_root(self) -> bool:
        return self.r is None

    def walk(self):
        yield self
        for ch, _ in self.children:
            if isinstance(ch, EggersNode):
                yield from ch.walk()

    def extra_child(self):
        for ch, flag in self.children:
            if flag:
                return ch
        return None


def eggers_reduce(tree: CarrouselNode, branch_of: Optional[dict] = None) -> EggersNode:
    """Collapse groups of ``r_v`` isomorphic subtrees and decorate with (m, n, r, s).

    ``branch_of`` maps sheet index -> branch index.  When given, subtrees are
    grouped by isomorphism *including* the branch labels of their leaves, so
    that exactly one arrow survives per branch.
    """
    if tree.is_leaf:
        raise ValueError("tree has no root vertex")
    memo: dict[int, str] = {}

    def code(node):
        key = id(node)
        if key not in memo:
            memo[key] = _carrousel_code(node, branch_of)
        return memo[key]

    def reduce(node: CarrouselNode, parent: Optional[EggersNode], via_extra: bool) -> EggersNode:
        qv = Fraction(node.q)
        if parent is None:
            n = math.lcm(1, qv.denominator)
            en = EggersNode(qv, int(qv * n), n, None, None, node.sheets, n_own=n, n_in=1)
            groups_r = 1
        else:
            n_in = parent.n_in if via_extra else parent.n_own
            n_own = math.lcm(n_in, qv.denominator)
            r = n_own // n_in
            n = r * parent.n_own
            s = n * (qv - parent.q)
            if s.denominator != 1 or s <= 0:
                raise InvariantError(f"non-integral or non-positive s at q={qv}")
            en = EggersNode(qv, int(qv * n), n, r, int(s), node.sheets, n_own=n_own, n_in=n_in)
            groups_r = r

        by_class: dict[str, list] = defaultdict(list)
        order: list[str] = []
        for ch in node.children:
            c = code(ch)
            if c not in by_class:
                order.append(c)
            by_class[c].append(ch)

        extra_classes = [c for c in order if len(by_class[c]) % groups_r]
        if len(extra_classes) > 1 or any(len(by_class[c]) % groups_r != 1 for c in extra_classes):
            counts = {c: len(by_class[c]) for c in order}
            raise CarrouselStructureError(
                f"carrousel structure violation at q={format_rational(qv)} (r={groups_r}): class counts {counts}"
            )
        kept = []
        for c in order:
            members = sorted(by_class[c], key=lambda v: min(v.sheets))
            if c in extra_classes:
                extra, rest = members[0], members[1:]
                kept.append((extra, True))
            else:
                rest = members
            kept.extend((rest[j], False) for j in range(0, len(rest), groups_r))
        kept.sort(key=lambda pair: min(pair[0].sheets))
        for ch, flag in kept:
            if ch.is_leaf:
                (sh,) = ch.sheets
                en.children.append((EggersLeaf(sh, None if branch_of is None else branch_of[sh]), flag))
            else:
                en.children.append((reduce(ch, en, flag), flag))
        return en

    return reduce(tree, None, False)


def curve_eggers(c: Curve, qm: Optional[QMap] = None) -> EggersNode:
    qm = qm or q_map(c)
    branch_of = {j: s.branch for j, s in enumerate(qm.sheets)}
    return eggers_reduce(build_carrousel_tree(qm), branch_of)


def _eggers_code(node) -> str:
    if isinstance(node, EggersLeaf):
        return "L"
    kids = sorted(("!" if flag else "") + _eggers_code(ch) for ch, flag in node.children)
    head = f"{node.m}/{node.n}" if node.r is None else f"{node.m}/{node.n},r{node.r},s{node.s}"
    return f"{head}[{','.join(kids)}]"


# ---------------------------------------------------------------- equivalence


def tree_code(c: Curve) -> str:
    return canonical_code(curve_tree(c))


def equivalent(c1: Curve, c2: Curve) -> bool:
    """Same embedded topology (equivalently, same outer Lipschitz geometry)."""
    return tree_code(c1) == tree_code(c2)


def _fmt_set(values) -> str:
    return "{" + ", ".join(format_rational(v) for v in values) + "}"


def explain_difference(c1: Curve, c2: Curve) -> Optional[str]:
    """Short human-readable reason two curves are not equivalent (None if they are)."""
    if equivalent(c1, c2):
        return None
    ch1 = sorted(tuple(characteristic_exponents(b)) for b in c1)
    ch2 = sorted(tuple(characteristic_exponents(b)) for b in c2)
    if len(c1) != len(c2):
        return f"{len(c1)} vs {len(c2)} branches"
    if ch1 != ch2:
        f1 = "; ".join(_fmt_set(s) for s in ch1)
        f2 = "; ".join(_fmt_set(s) for s in ch2)
        return f"characteristic exponents {f1} vs {f2}"
    from .contact import coincidence_exponent

    def coinc(c):
        qm = q_map(c)
        return sorted(
            coincidence_exponent(c, a, b, qm) for a in range(len(c)) for b in range(a + 1, len(c))
        )

    k1, k2 = coinc(c1), coinc(c2)
    if k1 != k2:
        return f"coincidence exponents {_fmt_set(k1)} vs {_fmt_set(k2)}"
    return "carrousel trees differ"


# ---------------------------------------------------------------- export


def carrousel_to_json(node: CarrouselNode) -> dict:
    out: dict = {"q": "inf" if is_infinite(node.q) else [node.q.numerator, node.q.denominator]}
    if node.is_leaf:
        (s,) = node.sheets
        out["sheet"] = s
    out["children"] = [carrousel_to_json(ch) for ch in node.children]
    return out


def eggers_to_json(node, extra: Optional[bool] = None) -> dict:
    if isinstance(node, EggersLeaf):
        out: dict = {"q": "inf"}
        if node.branch is not None:
            out["branch"] = node.branch
    else:
        out = {"q": [node.m, node.n]}
        if node.r is not None:
            out["r"] = node.r
            out["s"] = node.s
    if extra is not None:
        out["extra"] = extra
    out["children"] = (
        [] if isinstance(node, EggersLeaf) else [eggers_to_json(ch, flag) for ch, flag in node.children]
    )
    return out


def carrousel_to_text(node: CarrouselNode, indent: int = 0) -> str:
    pad = "  " * indent
    if node.is_leaf:
        (s,) = node.sheets
        lines = [f"{pad}leaf sheet {s}"]
    else:
        lines = [f"{pad}q={_qlabel(node.q)} ({len(node.sheets)} sheets)"]
        lines += [carrousel_to_text(ch, indent + 1) for ch in node.children]
    return "\n".join(lines)


def eggers_to_text(node, indent: int = 0, extra: bool = False) -> str:
    pad = "  " * indent
    mark = " [extra, label %d]" % extra if extra else ""
    if isinstance(node, EggersLeaf):
        b = "" if node.branch is None else f" branch {node.branch + 1}"
        return f"{pad}leaf{b}{mark}"
    if node.r is None:
        head = f"{pad}q={node.m}/{node.n} (root)"
    else:
        head = f"{pad}q={node.m}/{node.n} m={node.m} n={node.n} r={node.r} s={node.s}"
    lines = [head + mark]
    for ch, flag in node.children:
        lines.append(eggers_to_text(ch, indent + 1, node.r if flag else False))
    return "\n".join(lines)


def carrousel_to_dot(node: CarrouselNode) -> str:
    lines = ["digraph carrousel {", "  node [shape=circle];"]
    ids: dict[int, str] = {}

    def visit(v):
        vid = f"v{len(ids)}"
        ids[id(v)] = vid
        label = _qlabel(v.q) if not v.is_leaf else ""
        lines.append(f'  {vid} [label="{label}"];')
        for ch in v.children:
            cid = visit(ch)
            lines.append(f"  {vid} -> {cid} [arrowhead=none];")
        return vid

    visit(node)
    lines.append("}")
    return "\n".join(lines) + "\n"


def eggers_to_dot(node: EggersNode) -> str:
    lines = ["digraph eggers {", "  node [shape=circle];"]
    counter = [0]

    def visit(v, r_parent=None):
        vid = f"v{counter[0]}"
        counter[0] += 1
        label = "" if isinstance(v, EggersLeaf) else f"{v.m}/{v.n}"
        lines.append(f'  {vid} [label="{label}"];')
        if isinstance(v, EggersNode):
            for ch, flag in v.children:
                cid = visit(ch)
                attr = f', taillabel="{v.r}"' if flag else ""
                lines.append(f"  {vid} -> {cid} [arrowhead=none{attr}];")
        return vid

    visit(node)
    lines.append("}")
    return "\n".join(lines) + "\n"
