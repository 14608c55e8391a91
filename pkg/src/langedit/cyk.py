"""Error-correcting chart parser over a covering grammar.

Cells are filled stage by stage on span length.  A span of length s can
only decompose into two strictly shorter spans, so every cell is final
when its stage ends; per-nonterminal, per-start tuple lists make each
stage a scan over already-final tuples with O(1) lookups of the matching
right sibling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .covering import INF, CoveringGrammar


class ChartError(RuntimeError):
    """Internal inconsistency: the chart does not support what was asked."""


@dataclass
class PairSetChart:
    """Upper-triangular chart: cost of every nonterminal over every span.

    ``cells[i][j]`` is a dense per-nonterminal cost list for input[i:j]
    (0-based, end exclusive), INF marking absence.
    """

    n: int
    text: str
    nt_names: tuple[str, ...]
    cells: list
    combination_attempts: int = 0
    stage_attempts: list = field(default_factory=list)

    def get(self, i: int, j: int, nt_id: int) -> int:
        cell = self.cells[i][j]
        return INF if cell is None else cell[nt_id]

    def entries(self, i: int, j: int) -> list[tuple[str, int]]:
        cell = self.cells[i][j]
        if cell is None:
            return []
        return [
            (self.nt_names[a], c) for a, c in enumerate(cell) if c < INF
        ]


def ec_parse(cg: CoveringGrammar, text: str) -> PairSetChart:
    """Fill the full chart for text; every cell holds exact minimum costs."""
    cg.check_alphabet(text)
    n = len(text)
    num = cg.num_nt
    cells: list[list] = [[None] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        for j in range(i + 1, n + 1):
            cells[i][j] = [INF] * num
    chart = PairSetChart(n=n, text=text, nt_names=cg.nt_names, cells=cells)
    if n == 0:
        return chart

    # tuples (end, cost) of settled spans, per nonterminal and start position
    tuples: list[list[list[tuple[int, int]]]] = [
        [[] for _ in range(n)] for _ in range(num)
    ]

    term_by_char = cg.terminal_by_char
    for i, ch in enumerate(text):
        cell = cells[i][i + 1]
        for a, cost in term_by_char[ch]:
            if cost < cell[a]:
                cell[a] = cost
    for i in range(n):
        cell = cells[i][i + 1]
        for a in range(num):
            if cell[a] < INF:
                tuples[a][i].append((i + 1, cell[a]))

    binary = cg.binary_prods
    # saturation bound; no true cell minimum can reach it
    sat = n + max(p.cost for p in cg.grammar.productions) + 1
    attempts_total = 0
    for s in range(2, n + 1):
        attempts = 0
        top = n - s + 1
        for a, b, c, pcost in binary:
            xb = tuples[b]
            for i in range(top):
                j = i + s
                row = xb[i]
                if not row:
                    continue
                dst = cells[i][j]
                besta = dst[a]
                for k, l1 in row:
                    attempts += 1
                    l2 = cells[k][j][c]
                    if l2 < INF:
                        tot = l1 + l2 + pcost
                        if tot > sat:
                            tot = sat
                        if tot < besta:
                            besta = tot
                dst[a] = besta
        for i in range(top):
            cell = cells[i][i + s]
            j = i + s
            for a in range(num):
                if cell[a] < INF:
                    tuples[a][i].append((j, cell[a]))
        chart.stage_attempts.append(attempts)
        attempts_total += attempts
    chart.combination_attempts = attempts_total
    return chart


def distance_from_chart(chart: PairSetChart, cg: CoveringGrammar) -> int:
    """Minimum edit distance to the language, read off the top cell."""
    if chart.n == 0:
        return cg.nullinfo[cg.grammar.start].mnullcount
    d = chart.get(0, chart.n, cg.start_id)
    if d >= INF:
        raise ChartError("start symbol unreachable in the top cell")
    return d
