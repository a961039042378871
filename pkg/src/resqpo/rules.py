"""Linear rules with negative application conditions and their SqPO semantics."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .catops import (
    final_pullback_complement,
    pullback,
    pushout,
    pushout_along,
    pushout_complement,
)
from .constraints import (
    ConstraintSet,
    ConstraintViolation,
    ForbiddenRelationSet,
    forbidden_relations,
    rigid_forbidden_relations,
    satisfies,
)
from .graph import (
    Cospan,
    Graph,
    Morphism,
    MorphismError,
    cycle,
    enumerate_monos,
    exists_mono,
    iter_isomorphisms,
    iter_monos,
    path,
)
from .overlaps import SpanPredicate, curate, span_to_monic_span


@dataclass(frozen=True)
class Rule:
    """``O <- K -> I``, read from input ``I`` to output ``O``."""

    output: Graph
    interface: Graph
    input: Graph
    ko: Morphism
    ki: Morphism

    def __post_init__(self) -> None:
        if self.ko.source != self.interface or self.ki.source != self.interface:
            raise MorphismError("rule legs must start at the interface")
        if self.ko.target != self.output or self.ki.target != self.input:
            raise MorphismError("rule legs must end at output and input")
        if not (self.ko.is_monic and self.ki.is_monic):
            raise MorphismError("rule legs must be monic")

    def graphs(self) -> Tuple[Graph, Graph, Graph]:
        return self.output, self.interface, self.input


@dataclass(frozen=True)
class NegativeCondition:
    """``¬∃(I ↪ P)``: the match must not extend to the context ``P``."""

    embedding: Morphism

    def __post_init__(self) -> None:
        if not self.embedding.is_monic:
            raise MorphismError("condition embedding must be monic")
        if self.embedding.is_iso:
            raise ValueError("condition context equals the rule input; the condition is constant false")

    @property
    def context(self) -> Graph:
        return self.embedding.target


@dataclass(frozen=True)
class ConditionalRule:
    rule: Rule
    nacs: Tuple[NegativeCondition, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "nacs", tuple(self.nacs))
        for nac in self.nacs:
            if nac.embedding.source != self.rule.input:
                raise MorphismError("condition must live over the rule input")


@dataclass(frozen=True)
class DirectDerivation:
    match: Morphism  # I -> X
    intermediate: Graph  # X̄
    result: Graph  # X'
    comatch: Morphism  # O -> X'
    k_to_intermediate: Morphism
    intermediate_to_host: Morphism
    intermediate_to_result: Morphism


def _as_conditional(r) -> ConditionalRule:
    return r if isinstance(r, ConditionalRule) else ConditionalRule(r)


def match_satisfies(m: Morphism, nacs: Sequence[NegativeCondition]) -> bool:
    for nac in nacs:
        emb = nac.embedding
        if emb.source != m.source:
            raise MorphismError("condition and match start at different graphs")
        vseed = {emb.vmap[x]: m.vmap[x] for x in emb.vmap}
        eseed = {emb.emap[x]: m.emap[x] for x in emb.emap}
        if exists_mono(nac.context, m.target, vseed, eseed):
            return False
    return True


def admissible_matches(r: ConditionalRule, x: Graph) -> List[Morphism]:
    r = _as_conditional(r)
    return [m for m in enumerate_monos(r.rule.input, x) if match_satisfies(m, r.nacs)]


def apply_sqpo(r: Rule, x: Graph, m: Morphism) -> DirectDerivation:
    """Delete by final pullback complement, then glue in the output by pushout."""
    if isinstance(r, ConditionalRule):
        r = r.rule
    xb, k_to_xb, xb_to_x = final_pullback_complement(r.ki, m)
    xp, o_to_xp, xb_to_xp = pushout_along(r.ko, k_to_xb)
    return DirectDerivation(m, xb, xp, o_to_xp, k_to_xb, xb_to_x, xb_to_xp)


# --- minimal constraint-preserving conditions ------------------------------


def _fresh_relabel(p: Graph, i_to_p: Morphism) -> Tuple[Graph, Morphism]:
    """Give the image of I its I-ids and number everything else."""
    taken_v = set(i_to_p.source.vertices)
    taken_e = {e.id for e in i_to_p.source.edges}
    inv_v = {w: v for v, w in i_to_p.vmap.items()}
    inv_e = {w: e for e, w in i_to_p.emap.items()}
    vmap: Dict[str, str] = {}
    emap: Dict[str, str] = {}
    k = 0
    for v in p.vertices:
        if v in inv_v:
            vmap[v] = inv_v[v]
            continue
        while f"w{k}" in taken_v:
            k += 1
        vmap[v] = f"w{k}"
        taken_v.add(f"w{k}")
    k = 0
    for e in p.edges:
        if e.id in inv_e:
            emap[e.id] = inv_e[e.id]
            continue
        while f"n{k}" in taken_e:
            k += 1
        emap[e.id] = f"n{k}"
        taken_e.add(f"n{k}")
    q, iso = p.relabel(vmap, emap)
    return q, i_to_p.then(iso)


def nacs_equivalent(a: NegativeCondition, b: NegativeCondition, iota: Optional[Morphism] = None) -> bool:
    """Contexts iso under the input (optionally transported along ``iota: I_a -> I_b``)."""
    ea, eb = a.embedding, b.embedding
    if iota is None:
        iota = ea.source.identity()
    vseed = {ea.vmap[x]: eb.vmap[iota.vmap[x]] for x in ea.vmap}
    eseed = {ea.emap[x]: eb.emap[iota.emap[x]] for x in ea.emap}
    return next(iter_isomorphisms(a.context, b.context, vseed, eseed), None) is not None


def minimal_nacs(r: Rule, s: ForbiddenRelationSet) -> List[NegativeCondition]:
    """Weakest conjunction of negative conditions under which every SqPO step preserves ``s.source``.

    For each forbidden relation ``(C2 <- D -> C1)``, in both orientations:
    embed ``C2`` into O so that exactly D lands in K, then glue ``C1`` onto I
    along ``D -> K -> I``; the glued context yields a condition if it satisfies
    the constraints itself.
    """
    if isinstance(r, ConditionalRule):
        r = r.rule
    c = s.source
    if not all(satisfies(g, c) for g in r.graphs()):
        raise ConstraintViolation("rule graphs must satisfy the constraints")
    o = r.output
    k_of_o_v = {w: x for x, w in r.ko.vmap.items()}
    k_of_o_e = {w: x for x, w in r.ko.emap.items()}
    out: List[NegativeCondition] = []
    for rel in s.relations:
        for l2, l1 in rel.orientations:
            c2, d = l2.target, l2.source
            in_d_v = set(l2.vmap.values())
            in_d_e = set(l2.emap.values())
            for gv, ge in iter_monos(c2.index, o.index):
                if any((gv[y] in k_of_o_v) != (y in in_d_v) for y in c2.vertices):
                    continue
                if any((ge[y.id] in k_of_o_e) != (y.id in in_d_e) for y in c2.edges):
                    continue
                d_to_k = Morphism(
                    d,
                    r.interface,
                    {x: k_of_o_v[gv[l2.vmap[x]]] for x in d.vertices},
                    {x: k_of_o_e[ge[l2.emap[x]]] for x in l2.emap},
                )
                p, _, i_to_p = pushout_along(l1, d_to_k.then(r.ki))
                if not satisfies(p, c):
                    continue
                p, i_to_p = _fresh_relabel(p, i_to_p)
                nac = NegativeCondition(i_to_p)
                if not any(nacs_equivalent(nac, other) for other in out):
                    out.append(nac)
    return out


def with_minimal_nacs(r: Rule, s: Optional[ForbiddenRelationSet] = None) -> ConditionalRule:
    return ConditionalRule(r, tuple(minimal_nacs(r, s or rigid_forbidden_relations())))


# --- composition ---------------------------------------------------------


@dataclass(frozen=True)
class CompositionDiagram:
    """All objects and arrows of the composition diagram along one overlap."""

    n21: Graph
    i2_to_n: Morphism
    o1_to_n: Morphism
    k1_to_k1p: Morphism
    k1p_to_n: Morphism
    i1_to_i21: Morphism
    k1p_to_i21: Morphism
    k2_to_k2p: Morphism
    k2p_to_n: Morphism
    o2_to_o21: Morphism
    k2p_to_o21: Morphism
    k21_to_k1p: Morphism
    k21_to_k2p: Morphism
    rule: Rule


def composition_diagram(r2: Rule, mu: SpanPredicate, r1: Rule) -> Optional[CompositionDiagram]:
    """Build the diagram for composing ``r2`` after ``r1`` along ``mu``; ``None`` without a pushout complement."""
    if mu.left != r2.input or mu.right != r1.output:
        raise MorphismError("overlap must relate the input of r2 with the output of r1")
    n21, i2_to_n, o1_to_n = pushout(span_to_monic_span(mu))
    poc = pushout_complement(r1.ko, o1_to_n)
    if poc is None:
        return None
    _, k1_to_k1p, k1p_to_n = poc
    _, i1_to_i21, k1p_to_i21 = pushout_along(r1.ki, k1_to_k1p)
    _, k2_to_k2p, k2p_to_n = final_pullback_complement(r2.ki, i2_to_n)
    _, o2_to_o21, k2p_to_o21 = pushout_along(r2.ko, k2_to_k2p)
    _, k21_to_k1p, k21_to_k2p = pullback(Cospan(k1p_to_n, k2p_to_n))
    rule = Rule(
        o2_to_o21.target,
        k21_to_k1p.source,
        i1_to_i21.target,
        k21_to_k2p.then(k2p_to_o21),
        k21_to_k1p.then(k1p_to_i21),
    )
    return CompositionDiagram(
        n21, i2_to_n, o1_to_n, k1_to_k1p, k1p_to_n, i1_to_i21, k1p_to_i21,
        k2_to_k2p, k2p_to_n, o2_to_o21, k2p_to_o21, k21_to_k1p, k21_to_k2p, rule,
    )


def compose_sqpo(
    r2: ConditionalRule,
    mu: SpanPredicate,
    r1: ConditionalRule,
    relations: Optional[ForbiddenRelationSet] = None,
) -> Optional[ConditionalRule]:
    """SqPO composite of ``r2`` after ``r1`` along ``mu``, or ``None`` if not admissible.

    The composite's conditions are recomputed as the minimal constraint
    preserving ones for ``relations`` (rigid by default).  The overlap is
    rejected when its diagram cannot be built, when ``I2 -> N21`` violates a
    condition of ``r2``, or when the composite input cannot occur in a
    constraint-satisfying graph (``I21`` or ``I1 -> I21`` failing).
    """
    r1, r2 = _as_conditional(r1), _as_conditional(r2)
    relations = relations or rigid_forbidden_relations()
    diag = composition_diagram(r2.rule, mu, r1.rule)
    if diag is None:
        return None
    if not match_satisfies(diag.i2_to_n, r2.nacs):
        return None
    composite = diag.rule
    if not all(satisfies(g, relations.source) for g in composite.graphs()):
        return None
    if not match_satisfies(diag.i1_to_i21, r1.nacs):
        return None
    return ConditionalRule(composite, tuple(minimal_nacs(composite, relations)))


def enumerate_rule_matches(
    r2: ConditionalRule, r1: ConditionalRule, c: ConstraintSet, strategy: str = "implicit"
) -> List[Tuple[SpanPredicate, ConditionalRule]]:
    r1, r2 = _as_conditional(r1), _as_conditional(r2)
    for g in r1.rule.graphs() + r2.rule.graphs():
        if not satisfies(g, c):
            raise ConstraintViolation("rule graphs must satisfy the constraints")
    relations = forbidden_relations(c)
    out = []
    for ov in curate(r2.rule.input, r1.rule.output, c, strategy):
        comp = compose_sqpo(r2, ov.span, r1, relations)
        if comp is not None:
            out.append((ov.span, comp))
    return out


# --- rule isomorphism ----------------------------------------------------


def rules_isomorphic(r: ConditionalRule, rp: ConditionalRule) -> bool:
    """Commuting triple of graph isos that also matches the condition sets up to iso."""
    r, rp = _as_conditional(r), _as_conditional(rp)
    a, b = r.rule, rp.rule
    if len(r.nacs) != len(rp.nacs):
        return False
    for kappa in iter_isomorphisms(a.interface, b.interface):
        seeds = []
        for la, lb in ((a.ko, b.ko), (a.ki, b.ki)):
            seeds.append(
                (
                    {la.vmap[x]: lb.vmap[kappa.vmap[x]] for x in la.vmap},
                    {la.emap[x]: lb.emap[kappa.emap[x]] for x in la.emap},
                )
            )
        if next(iter_isomorphisms(a.output, b.output, *seeds[0]), None) is None:
            continue
        for iota in iter_isomorphisms(a.input, b.input, *seeds[1]):
            if all(any(nacs_equivalent(n, m, iota) for m in rp.nacs) for n in r.nacs) and all(
                any(nacs_equivalent(m, n, iota.inverse()) for n in r.nacs) for m in rp.nacs
            ):
                return True
    return False


# --- builtin rules ---------------------------------------------------------


def _rule(o: Graph, k: Graph, i: Graph) -> Rule:
    """Rule whose legs are identity-named inclusions."""
    return Rule(o, k, i, o.inclusion(k), i.inclusion(k))


def identity_rule(g: Graph) -> Rule:
    return _rule(g, g, g)


def plain_builtin_rule(name: str) -> Rule:
    base, _, arg = name.partition(":")
    uv = Graph.build(["u", "v"])
    edge = Graph.build(["u", "v"], [("e", "u", "v")])
    if base == "create-vertex" and not arg:
        return _rule(Graph.build(["v"]), Graph(), Graph())
    if base == "delete-vertex" and not arg:
        return _rule(Graph(), Graph(), Graph.build(["v"]))
    if base == "create-edge" and not arg:
        return _rule(edge, uv, uv)
    if base == "delete-edge" and not arg:
        return _rule(uv, uv, edge)
    if base in ("create-cycle", "break-chain"):
        try:
            n = int(arg)
        except ValueError:
            raise KeyError(name) from None
        if n < 1:
            raise KeyError(name)
        chain = path(n)
        if base == "create-cycle":
            return _rule(cycle(n + 1), chain, chain)
        cut = f"e{n // 2}"
        kept = chain.subgraph(chain.vertices, [e.id for e in chain.edges if e.id != cut])
        return _rule(kept, kept, chain)
    raise KeyError(name)


BUILTIN_NAMES = ("create-vertex", "delete-vertex", "create-edge", "delete-edge", "create-cycle:n", "break-chain:n")


def builtin_rule(name: str, relations: Optional[ForbiddenRelationSet] = None) -> ConditionalRule:
    """Builtin rule by name, carrying its minimal conditions for ``relations`` (rigid by default)."""
    return with_minimal_nacs(plain_builtin_rule(name), relations)
