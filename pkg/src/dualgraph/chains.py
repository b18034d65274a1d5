"""Normal forms of linear chains under the move calculus.

A chain of rational curves can be rewritten by blow-ups, blow-downs and
elementary transformations without changing its discriminant or the
(non-negative part of the) signature of its intersection form.  The three
reachable normal forms are the single 0-vertex, the single (-1)-vertex, and
chains reading 0, 0, then entries of weight <= -2.  Which one applies is
dictated by the inertia of the form:

  one zero eigenvalue, no positive  ->  the 0-vertex
  negative definite                 ->  contract to the minimal chain
  one positive eigenvalue           ->  the 0,0-prefix form

Chains whose form has two or more non-negative eigenvalues reach none of
these; standardize_chain rejects them up front.  Negative definite chains
other than the single (-1) also have no normal form in the list; they are
returned in snc-minimal shape and flagged as non-standard.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import NotAChain, NotStandardizable
from .graph import Selection, WeightedGraph, classify_shape, subdivisor
from .lattice import signature
from .moves import (
    Move,
    MoveLog,
    blow_down,
    blow_up_edge,
    blow_up_free,
    elementary_transformation,
)


@dataclass(frozen=True)
class ChainType:
    """Reading of a chain as negated weights, canonical up to reversal."""

    entries: Tuple[int, ...]

    def __post_init__(self):
        ordered = tuple(self.entries)
        object.__setattr__(self, "entries", min(ordered, tuple(reversed(ordered))))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def is_standard(self) -> bool:
        e = self.entries
        if e == (0,) or e == (1,):
            return True
        return len(e) >= 2 and e[0] == 0 and e[1] == 0 and all(x >= 2 for x in e[2:])


def chain_order(g: WeightedGraph, selection: Selection = None) -> Tuple[int, ...]:
    """Vertex ids of a chain in path order, starting from the earlier tip."""
    sel = subdivisor(g, selection)
    shape = classify_shape(g, sel)
    if not shape.is_chain:
        raise NotAChain("selection is not a connected cycle-free chain")
    ids = sorted(sel, key=g.position)
    if len(ids) == 1:
        return (ids[0],)
    tips = [v for v in ids if sel.degree(v) == 1]
    start = min(tips, key=g.position)
    order = [start]
    prev = None
    while len(order) < len(ids):
        nxt = [u for u in sel.neighbors(order[-1]) if u != prev]
        prev = order[-1]
        order.append(nxt[0])
    return tuple(order)


def chain_type(g: WeightedGraph, selection: Selection = None) -> ChainType:
    order = chain_order(g, selection)
    return ChainType(tuple(-g.weight(v) for v in order))


@dataclass(frozen=True)
class StandardizeResult:
    chain_type: ChainType
    log: MoveLog
    graph: WeightedGraph
    is_standard: bool


def _standalone(g: WeightedGraph, selection: Selection) -> WeightedGraph:
    sel = subdivisor(g, selection)
    ids = sorted(sel, key=g.position)
    return WeightedGraph(ids, {v: g.weight(v) for v in ids},
                         sel.induced_edges(), g.next_id)


def _types(g: WeightedGraph, order) -> List[int]:
    return [-g.weight(v) for v in order]


def _is_terminal(t: List[int]) -> bool:
    if len(t) == 1:
        return t[0] >= 0
    if all(x >= 2 for x in t):
        return True
    if t[0] == 0 and t[1] == 0 and all(x >= 2 for x in t[2:]):
        return True
    if t[-1] == 0 and t[-2] == 0 and all(x >= 2 for x in t[:-2]):
        return True
    return False


class _Session:
    """Mutable rewriting state: current graph plus accumulated move list."""

    def __init__(self, g: WeightedGraph, budget: int):
        self.g = g
        self.moves: List[Move] = []
        self.budget = budget

    def _spend(self, n: int) -> None:
        self.budget -= n
        if self.budget < 0:
            raise RuntimeError("chain rewriting exceeded its move budget; "
                               "this indicates a bug in the case analysis")

    def prim(self, result) -> Move:
        self.g, move = result
        self.moves.append(move)
        self._spend(1)
        return move

    def comp(self, result) -> MoveLog:
        self.g, log = result
        self.moves.extend(log.moves)
        self._spend(len(log))
        return log


def _contract_type_ones(s: _Session) -> None:
    # blow down every weight -1 vertex, smallest id first, but never the
    # last remaining vertex
    while len(s.g) > 1:
        for v in sorted(s.g.vertices):
            if s.g.weight(v) == -1 and s.g.degree(v) <= 2:
                s.prim(blow_down(s.g, v))
                break
        else:
            return


def _ramp_single_negative(s: _Session, v: int) -> None:
    # [t] with t <= -1 becomes 2,...,2,0,0 read from the far end
    s.prim(blow_up_free(s.g, v))
    while -s.g.weight(v) < 0:
        last = [u for u in s.g.neighbors(v) if s.g.weight(u) == -1][0]
        s.prim(blow_up_edge(s.g, last, v))
    s.comp(elementary_transformation(s.g, v, "free"))


def _run_ets(s: _Session, zero: int, side, count: int) -> None:
    # repeated elementary transformation on a 0-vertex; the 0 migrates to a
    # fresh vertex each time.  side "free" lowers the tip's neighbor by one
    # unit of type, a neighbor id raises that neighbor instead
    for _ in range(count):
        log = s.comp(elementary_transformation(s.g, zero, side))
        zero = log.moves[0].vertex


def standardize_chain(g: WeightedGraph, selection: Selection = None) -> StandardizeResult:
    """Rewrite a chain into its normal form, returning type, log and graph.

    The moves operate on a standalone copy of the selected chain (ids and
    weights preserved); the log replays against that copy.  Chains whose
    intersection form has two or more non-negative eigenvalues admit no
    normal form and raise NotStandardizable.
    """
    order0 = chain_order(g, selection)
    start = _standalone(g, selection)
    plus, zero_eigs, _minus = signature(start)
    if plus + zero_eigs >= 2:
        raise NotStandardizable(
            f"intersection form has inertia ({plus},{zero_eigs},{_minus}); "
            "no chain normal form is reachable"
        )
    total_weight = sum(abs(start.weight(v)) for v in start.vertices)
    budget = 50 * (len(start) + total_weight + 4) ** 2
    s = _Session(start, budget)

    while True:
        _contract_type_ones(s)
        order = list(chain_order(s.g))
        t = _types(s.g, order)
        if _is_terminal(t):
            break
        k = len(t)
        if k == 1:
            _ramp_single_negative(s, order[0])
            continue
        bad = [i for i, x in enumerate(t) if x <= 0]
        if len(bad) > 2 or (len(bad) == 2 and bad[1] != bad[0] + 1):
            raise RuntimeError(f"unreachable chain pattern {t}")
        if min(bad) > (k - 1) - max(bad):
            order.reverse()
            t.reverse()
            bad = sorted(k - 1 - i for i in bad)
        p = bad[0]
        if p == 0:
            if len(bad) == 1:
                if t[0] == 0:
                    # free transformations push the tip's neighbor to 0
                    _run_ets(s, order[0], "free", t[1])
                else:
                    # ladder of edge blow-ups raises the negative tip to 0,
                    # leaving a single transient 1 to absorb by one free
                    # transformation
                    left, right = order[0], order[1]
                    for _ in range(-t[0]):
                        move = s.prim(blow_up_edge(s.g, left, right))
                        right = move.vertex
                    s.comp(elementary_transformation(s.g, left, "free"))
            else:
                if t[0] == 0 and t[1] <= -1:
                    _run_ets(s, order[0], order[1], -t[1])
                elif t[0] <= -1 and t[1] == 0:
                    _run_ets(s, order[1], order[0], -t[0])
                else:
                    raise RuntimeError(f"unreachable chain pattern {t}")
        else:
            if len(bad) == 1:
                if t[p] == 0:
                    # walk the zero toward the left tip
                    _run_ets(s, order[p], order[p + 1], t[p - 1] - 1)
                else:
                    # raise the interior negative to 0 with a ladder on its
                    # right edge, then absorb the transient 1
                    v, right = order[p], order[p + 1]
                    for _ in range(-t[p]):
                        move = s.prim(blow_up_edge(s.g, v, right))
                        right = move.vertex
                    s.comp(elementary_transformation(s.g, v, right))
            else:
                if t[p] == 0 and t[p + 1] <= -1:
                    _run_ets(s, order[p], order[p + 1], -t[p + 1])
                elif t[p] <= -1 and t[p + 1] == 0:
                    _run_ets(s, order[p + 1], order[p], -t[p])
                elif t[p] == 0 and t[p + 1] == 0:
                    _run_ets(s, order[p], order[p + 1], 2)
                else:
                    raise RuntimeError(f"unreachable chain pattern {t}")

    final_type = chain_type(s.g) if len(s.g) else ChainType(())
    return StandardizeResult(
        chain_type=final_type,
        log=MoveLog(tuple(s.moves)),
        graph=s.g,
        is_standard=final_type.is_standard,
    )
