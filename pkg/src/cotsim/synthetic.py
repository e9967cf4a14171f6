"""Sanity-check hypothesis classes sitting at the extremes of CoT informativeness.

* product class: CoT map and output map vary independently, so observing the
  CoT buys nothing;
* fully informative class: the CoT names the hypothesis, so one example
  identifies it;
* i.i.d. replication class: the CoT packs T independent observations of the
  output function into each example.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .classes import HypothesisClass
from .core import CotHypothesis, CotOutput, ExplicitInputs, InputSeq, Token
from .errors import ClassConstructionError, DomainMismatchError


@dataclass(frozen=True, eq=False)
class TableHypothesis(CotHypothesis):
    """Hypothesis given by an explicit input -> (y, z) table."""

    mapping: Mapping[InputSeq, CotOutput]
    id: int = field(default=-1)

    def eval(self, x: InputSeq) -> CotOutput:
        try:
            return self.mapping[x]
        except KeyError as exc:
            raise DomainMismatchError(f"input {x} outside hypothesis domain") from exc


class ListClass(HypothesisClass):
    def __init__(self, kind: str, hypotheses: Sequence[TableHypothesis], meta: dict):
        self.kind = kind
        self._hyps = list(hypotheses)
        self._meta = meta

    def __len__(self) -> int:
        return len(self._hyps)

    def __getitem__(self, hid: int) -> TableHypothesis:
        return self._hyps[hid]

    def params(self) -> dict:
        return dict(self._meta)


def build_product(
    domain: Sequence[InputSeq],
    cot_maps: Sequence[Sequence[Token]],
    ete_maps: Sequence[Sequence[Token]],
) -> ListClass:
    """Product-structure class: h_{g,f}(x) = (f(x), (g(x),)).

    Ids enumerate CoT maps in the outer loop: id = g_index * len(ete_maps) + f_index.
    """
    if not cot_maps or not ete_maps:
        raise ClassConstructionError("component lists must be non-empty")
    domain = [tuple(x) for x in domain]
    for m in itertools.chain(cot_maps, ete_maps):
        if len(m) != len(domain):
            raise ClassConstructionError("map length must match the domain")
    hyps = []
    for gi, g in enumerate(cot_maps):
        for fi, f in enumerate(ete_maps):
            mapping = {
                x: CotOutput(int(f[k]), (int(g[k]),)) for k, x in enumerate(domain)
            }
            hyps.append(TableHypothesis(mapping, gi * len(ete_maps) + fi))
    return ListClass(
        "product",
        hyps,
        {"kind": "product", "cot_maps": len(cot_maps), "ete_maps": len(ete_maps)},
    )


def build_fully_informative(
    domain: Sequence[InputSeq], ete_maps: Sequence[Sequence[Token]]
) -> ListClass:
    """Each hypothesis reveals its own identity in the CoT: h_f(x) = (f(x), (id_f,))."""
    if not ete_maps:
        raise ClassConstructionError("component lists must be non-empty")
    domain = [tuple(x) for x in domain]
    hyps = []
    for fi, f in enumerate(ete_maps):
        if len(f) != len(domain):
            raise ClassConstructionError("map length must match the domain")
        mapping = {x: CotOutput(int(f[k]), (fi,)) for k, x in enumerate(domain)}
        hyps.append(TableHypothesis(mapping, fi))
    return ListClass(
        "fully_informative", hyps, {"kind": "fully_informative", "maps": len(ete_maps)}
    )


def build_iid(
    base_maps: Sequence[Sequence[Token]], base_domain_size: int, replication: int
) -> ListClass:
    """Replication class: input is a T-tuple, CoT = (f(x_1)..f(x_T)), y = f(x_T)."""
    if not base_maps:
        raise ClassConstructionError("component lists must be non-empty")
    if replication < 1:
        raise ClassConstructionError("replication factor must be >= 1")
    hyps = []
    domain = list(itertools.product(range(base_domain_size), repeat=replication))
    for fi, f in enumerate(base_maps):
        if len(f) != base_domain_size:
            raise ClassConstructionError("base map length must match the base domain")
        mapping = {}
        for x in domain:
            z = tuple(int(f[a]) for a in x)
            mapping[x] = CotOutput(z[-1], z)
        hyps.append(TableHypothesis(mapping, fi))
    return ListClass(
        "iid",
        hyps,
        {
            "kind": "iid",
            "base_maps": len(base_maps),
            "base_domain": base_domain_size,
            "replication": replication,
        },
    )


def iid_product_distribution(base_probs: Sequence[float], replication: int) -> ExplicitInputs:
    """The T-fold product of a base distribution over symbols 0..k-1."""
    pairs = []
    for x in itertools.product(range(len(base_probs)), repeat=replication):
        p = 1.0
        for a in x:
            p *= base_probs[a]
        pairs.append((x, p))
    return ExplicitInputs(pairs)
