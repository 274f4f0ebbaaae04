"""Compile certificates into membership-query strategies for the chain game.

A hidden subset of the certified vertex set is probed with questions
"is this vertex in the set?"; the compiled strategy decides whether the
subset is a chain using at most |ground| - 1 questions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certify import Leaf, Prune, certificate_ground
from .errors import CapExceeded, GroundMismatch, ParseError

GAME_CAP = 16


@dataclass(frozen=True)
class Answer:
    is_chain: bool


@dataclass(frozen=True)
class Query:
    vertex: str
    yes: object
    no: object


@dataclass(frozen=True)
class Transcript:
    """Queries asked (vertex, answer) in order, plus the final verdict."""

    queries: tuple
    verdict: bool

    def to_obj(self):
        return {
            "queries": [[v, 1 if a else 0] for v, a in self.queries],
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class GameReport:
    ground_size: int
    subsets_tested: int
    mismatches: int
    max_queries: int
    histogram: dict

    def to_obj(self):
        return {
            "ground_size": self.ground_size,
            "subsets_tested": self.subsets_tested,
            "mismatches": self.mismatches,
            "max_queries": self.max_queries,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def compile_strategy(certificate, ground):
    """Build the query tree a certificate induces over its vertex set.

    A Split queries its vertex.  On "no" the deletion child handles the
    rest of the ground.  On "yes" every vertex absent from the link (a
    "dead" vertex: together with the queried one it cannot sit in any
    chain) is probed next in canonical order, answering not-a-chain as
    soon as one is present; afterwards the link child takes over on the
    link's vertex set.  A Leaf answers yes without a question, which is
    what keeps the budget one below the ground size.
    """
    ground = tuple(ground)
    implied = certificate_ground(certificate)
    if implied != frozenset(ground):
        raise GroundMismatch(
            f"certificate covers {sorted(implied)}, ground is {sorted(ground)}"
        )
    return _compile(certificate, ground)


def _compile(node, ground):
    if isinstance(node, Leaf):
        if ground != (node.vertex,):
            raise GroundMismatch(f"leaf {node.vertex!r} against ground {ground}")
        return Answer(True)
    if isinstance(node, Prune):
        return _compile(node.child, ground)
    y = node.vertex
    if y not in ground:
        raise GroundMismatch(f"split vertex {y!r} missing from ground {ground}")
    rest = tuple(v for v in ground if v != y)
    link_vertices = certificate_ground(node.lk)
    if not link_vertices <= frozenset(rest):
        raise GroundMismatch(f"link vertices escape the ground at {y!r}")
    yes = _compile(node.lk, tuple(v for v in rest if v in link_vertices))
    for dead in reversed([v for v in rest if v not in link_vertices]):
        yes = Query(dead, Answer(False), yes)
    return Query(y, yes, _compile(node.dl, rest))


def play(strategy, hidden):
    """Walk the tree answering membership truthfully.

    Returns (verdict, transcript).
    """
    hidden = frozenset(hidden)
    queries = []
    node = strategy
    while isinstance(node, Query):
        answer = node.vertex in hidden
        queries.append((node.vertex, answer))
        node = node.yes if answer else node.no
    return node.is_chain, Transcript(tuple(queries), node.is_chain)


def exhaustive_check(strategy, ground, leq, cap=GAME_CAP):
    """Play every subset of the ground and compare with the chain predicate.

    ``leq`` is the order predicate on ground elements; a subset is a
    chain when all its pairs are comparable.  Returns a GameReport whose
    mismatch count must be zero for a correct strategy.
    """
    ground = tuple(ground)
    n = len(ground)
    if n > cap:
        raise CapExceeded(f"ground of {n} exceeds the cap of {cap}")
    index = {v: i for i, v in enumerate(ground)}
    comparable = [0] * n
    for i, u in enumerate(ground):
        for j, v in enumerate(ground):
            if leq(u, v) or leq(v, u):
                comparable[i] |= 1 << j

    compiled = _flatten(strategy, index)
    mismatches = 0
    max_queries = 0
    histogram = {}
    for mask in range(1 << n):
        node = compiled
        count = 0
        while node[0] == "q":
            count += 1
            node = node[2] if mask & node[1] else node[3]
        verdict = node[1]
        is_chain = True
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            if mask & ~comparable[i]:
                is_chain = False
                break
            m ^= low
        if verdict != is_chain:
            mismatches += 1
        if count > max_queries:
            max_queries = count
        histogram[count] = histogram.get(count, 0) + 1
    return GameReport(
        ground_size=n,
        subsets_tested=1 << n,
        mismatches=mismatches,
        max_queries=max_queries,
        histogram=histogram,
    )


def _flatten(node, index):
    if isinstance(node, Answer):
        return ("a", node.is_chain)
    return (
        "q",
        1 << index[node.vertex],
        _flatten(node.yes, index),
        _flatten(node.no, index),
    )


def strategy_to_obj(strategy):
    if isinstance(strategy, Answer):
        return {"type": "answer", "chain": strategy.is_chain}
    return {
        "type": "query",
        "vertex": strategy.vertex,
        "yes": strategy_to_obj(strategy.yes),
        "no": strategy_to_obj(strategy.no),
    }


def strategy_from_obj(obj):
    if not isinstance(obj, dict) or "type" not in obj:
        raise ParseError("strategy node must be an object with a type")
    kind = obj["type"]
    try:
        if kind == "answer":
            return Answer(bool(obj["chain"]))
        if kind == "query":
            return Query(
                obj["vertex"],
                strategy_from_obj(obj["yes"]),
                strategy_from_obj(obj["no"]),
            )
    except KeyError as exc:
        raise ParseError(f"bad strategy node: missing {exc}") from None
    raise ParseError(f"unknown strategy node type {kind!r}")


def strategy_depth(strategy):
    if isinstance(strategy, Answer):
        return 0
    return 1 + max(strategy_depth(strategy.yes), strategy_depth(strategy.no))
