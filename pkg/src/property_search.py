#!/usr/bin/env python3
"""
Counterexample Search

Boolean expressions over named checkers ("schreier-epi & !regular-schreier")
evaluated on every instance of a corpus, smallest total order first.

Grammar:
    expr   := term ('|' term)*
    term   := factor ('&' factor)*
    factor := '!' factor | '(' expr ')' | NAME

Expressions that only mention homomorphism-level checkers run over the
surjections of the corpus; anything else runs over generalized points, where
"schreier-point" is false for non-split instances. Every hit is re-evaluated
with the definition-literal checkers before it is emitted.
"""

import logging
import re
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, Dict, Iterator, List, Optional, Set, Tuple, Union

from corpus import Corpus
from points import (
    is_regular_schreier_epi,
    is_regular_schreier_epi_literal,
    is_schreier_epi,
    is_schreier_epi_literal,
    is_schreier_gp,
    is_schreier_gp_literal,
    is_schreier_point,
    is_schreier_point_literal,
    is_strong_gp,
    is_strong_gp_literal,
)
from serialization import gp_to_dict, hom_to_dict
from verify import Report

logger = logging.getLogger(__name__)

Node = Union[str, Tuple]

GP_DOMAIN = "generalized-points"
EPI_DOMAIN = "surjections"

# name -> (optimized, definition-literal); each takes a generalized point
GP_CHECKERS: Dict[str, Tuple[Callable, Callable]] = {
    "split": (lambda gp: gp.is_split(), lambda gp: gp.is_split()),
    "schreier-point": (
        lambda gp: gp.is_split() and is_schreier_point(gp.as_point()).holds,
        lambda gp: gp.is_split() and is_schreier_point_literal(gp.as_point()).holds,
    ),
    "strong-gp": (lambda gp: is_strong_gp(gp).holds, lambda gp: is_strong_gp_literal(gp).holds),
    "schreier-gp": (lambda gp: is_schreier_gp(gp).holds, lambda gp: is_schreier_gp_literal(gp).holds),
}

# name -> (optimized, definition-literal); each takes a surjection
EPI_CHECKERS: Dict[str, Tuple[Callable, Callable]] = {
    "schreier-epi": (lambda f: is_schreier_epi(f).holds, lambda f: is_schreier_epi_literal(f).holds),
    "regular-schreier": (
        lambda f: is_regular_schreier_epi(f).holds,
        lambda f: is_regular_schreier_epi_literal(f).holds,
    ),
}

_TOKEN = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9_-]*)|(.))")


class ExpressionError(ValueError):
    """Raised for malformed expressions or unknown checker names"""


def checker_names() -> List[str]:
    return sorted(GP_CHECKERS) + sorted(EPI_CHECKERS)


def _tokenize(text: str) -> List[str]:
    tokens = []
    for name, symbol in _TOKEN.findall(text):
        if name:
            tokens.append(name)
        elif symbol.strip():
            if symbol not in "&|!()":
                raise ExpressionError(f"unexpected character '{symbol}' in expression")
            tokens.append(symbol)
    return tokens


class _Parser:
    def __init__(self, tokens: List[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        token = self.peek()
        if token is None:
            raise ExpressionError("expression ends unexpectedly")
        self.pos += 1
        return token

    def expr(self) -> Node:
        node = self.term()
        while self.peek() == "|":
            self.take()
            node = ("or", node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek() == "&":
            self.take()
            node = ("and", node, self.factor())
        return node

    def factor(self) -> Node:
        token = self.take()
        if token == "!":
            return ("not", self.factor())
        if token == "(":
            node = self.expr()
            if self.take() != ")":
                raise ExpressionError("missing ')'")
            return node
        if token in "&|)":
            raise ExpressionError(f"unexpected '{token}'")
        if token not in GP_CHECKERS and token not in EPI_CHECKERS:
            raise ExpressionError(f"unknown checker '{token}'; known: {', '.join(checker_names())}")
        return token


def parse_expression(text: str) -> Node:
    tokens = _tokenize(text)
    if not tokens:
        raise ExpressionError("empty expression")
    parser = _Parser(tokens)
    node = parser.expr()
    if parser.peek() is not None:
        raise ExpressionError(f"unexpected '{parser.peek()}' after position {parser.pos}")
    return node


def referenced_names(node: Node) -> Set[str]:
    if isinstance(node, str):
        return {node}
    return set().union(*(referenced_names(child) for child in node[1:]))


def search_domain(node: Node) -> str:
    return EPI_DOMAIN if referenced_names(node) <= set(EPI_CHECKERS) else GP_DOMAIN


def evaluate(node: Node, lookup: Callable[[str], bool]) -> bool:
    """Short-circuit evaluation; lookup is called only for names that matter"""
    if isinstance(node, str):
        return lookup(node)
    op = node[0]
    if op == "not":
        return not evaluate(node[1], lookup)
    if op == "and":
        return evaluate(node[1], lookup) and evaluate(node[2], lookup)
    return evaluate(node[1], lookup) or evaluate(node[2], lookup)


def _lookup(instance, domain: str, literal: bool, values: Dict[str, bool]) -> Callable[[str], bool]:
    which = 1 if literal else 0

    def lookup(name: str) -> bool:
        if name not in values:
            if name in EPI_CHECKERS:
                f = instance if domain == EPI_DOMAIN else instance.f
                values[name] = bool(EPI_CHECKERS[name][which](f))
            else:
                values[name] = bool(GP_CHECKERS[name][which](instance))
        return values[name]

    return lookup


def _instances(corpus: Corpus, domain: str) -> Iterator:
    return corpus.surjections_all() if domain == EPI_DOMAIN else corpus.generalized_points()


def _serialize(instance, domain: str) -> Dict:
    if domain == EPI_DOMAIN:
        return {"f": hom_to_dict(instance)}
    return {"gp": gp_to_dict(instance)}


def _orders(instance, domain: str) -> List[int]:
    if domain == EPI_DOMAIN:
        return [instance.dom.order, instance.cod.order]
    return instance.orders()


def _search_shard(node: Node, corpus: Corpus, shard: Tuple[int, int],
                  on_hit: Optional[Callable[[Dict], None]] = None) -> Tuple[int, List[Dict], int]:
    k, n = shard
    domain = search_domain(node)
    checked, hits, failures = 0, [], 0
    for index, instance in enumerate(_instances(corpus, domain)):
        if index % n != k:
            continue
        checked += 1
        values: Dict[str, bool] = {}
        if not evaluate(node, _lookup(instance, domain, False, values)):
            continue
        literal_values: Dict[str, bool] = {}
        if not evaluate(node, _lookup(instance, domain, True, literal_values)):
            failures += 1
            logger.warning(f"⚠️  Hit {index} did not revalidate under the literal checkers")
            continue
        hit = {
            "index": index,
            "orders": _orders(instance, domain),
            "instance": _serialize(instance, domain),
            "values": dict(sorted(values.items())),
        }
        hits.append(hit)
        if on_hit is not None:
            on_hit(hit)
    return checked, hits, failures


def _run_search_shard(text: str, params: Dict, cache_dir: Optional[str],
                      shard: Tuple[int, int]) -> Tuple[int, List[Dict], int]:
    return _search_shard(parse_expression(text), Corpus.from_params(params, cache_dir), shard)


def search(expression: str, corpus: Corpus, jobs: int = 1,
           on_hit: Optional[Callable[[Dict], None]] = None, cache_dir: Optional[str] = None) -> Report:
    """
    Evaluate the expression on every corpus instance.

    Hits reach on_hit in stream order: live with one job, after the pool
    finishes with several.

    Raises:
        ExpressionError: malformed expression or unknown checker
    """
    node = parse_expression(expression)
    domain = search_domain(node)
    logger.info(f"🔍 Searching {domain} for '{expression}' over {len(corpus)} monoids")
    start = time.perf_counter()

    if jobs <= 1:
        checked, hits, failures = _search_shard(node, corpus, (0, 1), on_hit)
    else:
        checked, hits, failures = 0, [], 0
        params = corpus.params()
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = [
                executor.submit(_run_search_shard, expression, params, cache_dir, (k, jobs))
                for k in range(jobs)
            ]
            for future in as_completed(futures):
                part_checked, part_hits, part_failures = future.result()
                checked += part_checked
                hits.extend(part_hits)
                failures += part_failures
        hits.sort(key=lambda hit: hit["index"])
        if on_hit is not None:
            for hit in hits:
                on_hit(hit)

    elapsed_ms = round((time.perf_counter() - start) * 1000, 1)
    logger.info(f"📊 search | domain={domain} | checked={checked} | hits={len(hits)} | elapsed={elapsed_ms}ms")
    return Report(
        suite="search",
        params={"corpus": corpus.params(), "expression": expression},
        checked=checked,
        violations=[],
        elapsed_ms=elapsed_ms,
        notes={
            "domain": domain,
            "hit_count": len(hits),
            "hit_indices": [hit["index"] for hit in hits],
            "revalidation_failures": failures,
        },
    )


def search_hits(expression: str, corpus: Corpus) -> List[Dict]:
    """All hits in stream order"""
    hits: List[Dict] = []
    search(expression, corpus, on_hit=hits.append)
    return hits
