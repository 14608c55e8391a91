"""Recover a nearest language string and its edit script from a chart.

A minimum-cost derivation tree is rebuilt top-down: each node scans its
candidate productions and split points for the first combination whose
costs telescope to the node's own cost.  The repair annotations attached
to the covering productions then spell out, leaf to leaf, which input
characters are kept, dropped, replaced, or freshly emitted; replaying
those operations against the input yields the corrected string.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .covering import CoveringGrammar
from .cyk import PairSetChart, distance_from_chart, ec_parse


class RetrievalError(RuntimeError):
    """Internal inconsistency between a chart and the requested expansion."""


@dataclass
class Edit:
    """One edit against the original input.

    Positions index the original input; an insert adds its character
    before that position.  ``char`` is empty for deletes.
    """

    op: str
    pos: int
    char: str = ""

    def as_dict(self) -> dict:
        d: dict = {"op": self.op, "pos": self.pos}
        if self.op != "delete":
            d["char"] = self.char
        return d


@dataclass
class RetrievalStats:
    """Work counter for the split-point scans."""

    split_steps: int = 0


@dataclass
class ParseNode:
    """Derivation tree node: nonterminal over input span [i, j) at cost."""

    nonterminal: str
    i: int
    j: int
    cost: int
    production: object = None
    children: list = field(default_factory=list)


def iter_nodes(tree: ParseNode):
    """Yield every node of the tree, parents before children."""
    queue = deque([tree])
    while queue:
        node = queue.popleft()
        yield node
        queue.extend(node.children)


def parse_tree(
    chart: PairSetChart,
    cg: CoveringGrammar,
    distance: int,
    stats: RetrievalStats | None = None,
) -> ParseNode:
    """Rebuild one minimum-cost derivation of the whole input.

    Ties break on the first qualifying production in sorted production
    order, then the smallest split point.
    """
    if stats is None:
        stats = RetrievalStats()
    n = chart.n
    if n == 0:
        raise RetrievalError("cannot rebuild a tree over empty input")
    if chart.get(0, n, cg.start_id) != distance:
        raise RetrievalError("requested cost is absent from the top cell")
    text = chart.text
    root = ParseNode(cg.nt_names[cg.start_id], 0, n, distance)
    queue = deque([root])
    while queue:
        node = queue.popleft()
        i, j, cost = node.i, node.j, node.cost
        a_id = cg.nt_id[node.nonterminal]
        if j - i == 1:
            for prod in cg.terminal_by_lhs_char.get((a_id, text[i]), ()):
                if prod.cost == cost:
                    node.production = prod
                    break
            else:
                raise RetrievalError(
                    f"no terminal production derives {text[i]!r} from "
                    f"{node.nonterminal} at cost {cost}"
                )
            continue
        found = False
        for prod, b, c, pcost in cg.binary_by_lhs.get(a_id, ()):
            if pcost > cost:
                continue
            for k in range(i + 1, j):
                stats.split_steps += 1
                left_cost = chart.get(i, k, b)
                if left_cost > cost - pcost:
                    continue
                right_cost = chart.get(k, j, c)
                if pcost + left_cost + right_cost == cost:
                    node.production = prod
                    left = ParseNode(cg.nt_names[b], i, k, left_cost)
                    right = ParseNode(cg.nt_names[c], k, j, right_cost)
                    node.children = [left, right]
                    queue.append(left)
                    queue.append(right)
                    found = True
                    break
            if found:
                break
        if not found:
            raise RetrievalError(
                f"no decomposition of {node.nonterminal} over "
                f"[{i}, {j}) at cost {cost}"
            )
    return root


def extract_correction(
    tree: ParseNode, cg: CoveringGrammar, text: str
) -> tuple[str, list[Edit]]:
    """Expand repair annotations into the corrected string and edit script."""
    out: list[str] = []
    edits: list[Edit] = []
    cursor = 0
    stack: list[tuple[ParseNode, tuple, int]] = [
        (tree, cg.annotations[tree.production], 0)
    ]
    while stack:
        node, tmpl, idx = stack.pop()
        while idx < len(tmpl):
            item = tmpl[idx]
            idx += 1
            kind = item[0]
            if kind == "match":
                out.append(text[cursor])
                cursor += 1
            elif kind == "consume":
                edits.append(Edit("delete", cursor))
                cursor += 1
            elif kind == "sub":
                edits.append(Edit("substitute", cursor, item[1]))
                out.append(item[1])
                cursor += 1
            elif kind == "emit":
                edits.append(Edit("insert", cursor, item[1]))
                out.append(item[1])
            else:
                child = node.children[item[1]]
                if child.production is None:
                    raise RetrievalError("unexpanded child in derivation tree")
                stack.append((node, tmpl, idx))
                stack.append((child, cg.annotations[child.production], 0))
                break
    if cursor != len(text):
        raise RetrievalError(
            f"annotations consumed {cursor} of {len(text)} input characters"
        )
    if len(edits) != tree.cost:
        raise RetrievalError(
            f"edit script length {len(edits)} != tree cost {tree.cost}"
        )
    return "".join(out), edits


def apply_edits(text: str, edits: list[Edit]) -> str:
    """Replay a script against the input it was extracted from."""
    out: list[str] = []
    pos = 0
    for e in edits:
        if e.pos < pos or e.pos > len(text):
            raise ValueError(f"edit position {e.pos} out of order")
        out.append(text[pos : e.pos])
        pos = e.pos
        if e.op == "insert":
            out.append(e.char)
        elif e.op == "delete":
            pos += 1
        elif e.op == "substitute":
            out.append(e.char)
            pos += 1
        else:
            raise ValueError(f"unknown edit operation {e.op!r}")
    out.append(text[pos:])
    return "".join(out)


@dataclass
class Correction:
    """Distance, one nearest language string, and a script reaching it."""

    distance: int
    corrected: str
    edits: list[Edit]


def correct(
    cg: CoveringGrammar, text: str, stats: RetrievalStats | None = None
) -> Correction:
    """Parse, rebuild a minimum-cost tree, and expand it into a repair."""
    if not text:
        info = cg.nullinfo[cg.grammar.start]
        edits = [Edit("insert", 0, ch) for ch in info.witness]
        return Correction(info.mnullcount, info.witness, edits)
    chart = ec_parse(cg, text)
    distance = distance_from_chart(chart, cg)
    tree = parse_tree(chart, cg, distance, stats)
    corrected, edits = extract_correction(tree, cg, text)
    return Correction(distance, corrected, edits)
