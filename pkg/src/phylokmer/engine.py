"""Two-sided index construction and k-mer classification.

The forward side indexes the genome concatenation, the reverse side its
literal reversal; each side maps a k-mer to the leftmost (respectively
rightmost) genome containing it, via phrase-boundary contexts on a labeled
grid.  The answer for a k-mer is the lowest common ancestor of those two
leaves, the root of the smallest subtree containing every genome where the
k-mer occurs.  k is chosen per query, never at build time.

Per classify call, trie work is shared across k-mers: one incremental
descent per pattern position and trie family (at most 4m descents for a
pattern of length m), with loci verified lazily and memoized for the call.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import contexts as contexts_mod
from . import lz77 as lz77_mod
from .grid import ContextGrid
from .lca import LcaStructure, build_lca
from .model import (
    Concatenation,
    GenomeRecord,
    PhyloTree,
    build_concatenation,
    reverse_concatenation,
)
from .tries import CompactTrie, TextAccess, build_trie

INDEX_FORMAT_VERSION = 1


@dataclass(frozen=True)
class SideIndex:
    """One direction of the index: parse, context tries, and labeled grid.

    ``text`` is the (possibly reversed) concatenation.  ``suffix_trie`` is
    built over the reversed suffix-set strings, so descending with a
    reversed k-mer fragment yields the co-lex rank range of suffixes ending
    with that fragment; ``prefix_trie`` covers the retained prefixes.
    """

    text: bytes
    parse: lz77_mod.Lz77Parse
    suffix_set: contexts_mod.SuffixSet
    prefix_set: contexts_mod.PrefixSet
    suffix_trie: CompactTrie
    prefix_trie: CompactTrie
    grid: ContextGrid
    is_reverse: bool


@dataclass(frozen=True)
class KmerIndex:
    """Queryable artifact: both sides, the tree, and its LCA structure."""

    tree: PhyloTree
    forward: SideIndex
    reverse: SideIndex
    lca: LcaStructure
    sentinel: int
    version: int = INDEX_FORMAT_VERSION


@dataclass(frozen=True)
class KmerResult:
    """Answer for one k-mer: 1-based pattern position and vertex number (None = absent)."""

    position: int
    kmer: bytes
    answer: int | None


@dataclass
class QueryStats:
    """Instrumentation for one classify call."""

    descents: int = 0
    verifications: int = 0
    grid_queries: int = 0


def _suffix_occurrence_refs(
    side_contexts: Sequence[contexts_mod.BoundaryContext], strings: Sequence[bytes]
) -> tuple[tuple[int, int], ...]:
    """(end position, length) of one occurrence per suffix-set string."""
    where = {}
    for ctx in side_contexts:
        where.setdefault(ctx.suffix, ctx.boundary_pos)
    return tuple((where[s], len(s)) for s in strings)


def _prefix_occurrence_refs(
    side_contexts: Sequence[contexts_mod.BoundaryContext], strings: Sequence[bytes]
) -> tuple[tuple[int, int], ...]:
    """(start position, length) of one occurrence per prefix-set string."""
    where = {}
    for ctx in side_contexts:
        where.setdefault(ctx.prefix, ctx.boundary_pos)
    return tuple((where[s], len(s)) for s in strings)


def reversed_suffix_access(text: bytes, refs: Sequence[tuple[int, int]]) -> TextAccess:
    """Extractor for reversed suffix-set strings stored as (end, length) text refs."""

    def access(string_id: int, start: int, stop: int) -> bytes:
        end, _ = refs[string_id]
        # string s satisfies s[j] == text[end - 1 - j]
        chunk = text[end - stop : end - start]
        return chunk[::-1]

    return access


def prefix_access(text: bytes, refs: Sequence[tuple[int, int]]) -> TextAccess:
    """Extractor for prefix-set strings stored as (start, length) text refs."""

    def access(string_id: int, start: int, stop: int) -> bytes:
        pos, _ = refs[string_id]
        return text[pos + start : pos + stop]

    return access


def build_side(
    concatenation: Concatenation, leaf_vertices: Sequence[int], is_reverse: bool
) -> SideIndex:
    """Parse one text orientation and assemble its tries and grid.

    ``leaf_vertices[ordinal - 1]`` maps this text's genome ordinals to tree
    vertex numbers; the grid aggregates labels with min on the forward side
    and max on the reverse side.
    """
    parse = lz77_mod.lz77_parse(concatenation.text)
    suffix_set, prefix_set, ctxs = contexts_mod.build_context_sets(concatenation, parse)
    aggregate = "max" if is_reverse else "min"
    points = contexts_mod.grid_points(ctxs, suffix_set, prefix_set, aggregate, leaf_vertices)

    text = concatenation.text
    suffix_refs = _suffix_occurrence_refs(ctxs, suffix_set.strings)
    prefix_refs = _prefix_occurrence_refs(ctxs, prefix_set.strings)
    reversed_suffixes = sorted(s[::-1] for s in suffix_set.strings)
    suffix_trie = build_trie(reversed_suffixes, reversed_suffix_access(text, suffix_refs))
    prefix_trie = build_trie(list(prefix_set.strings), prefix_access(text, prefix_refs))

    return SideIndex(
        text=text,
        parse=parse,
        suffix_set=suffix_set,
        prefix_set=prefix_set,
        suffix_trie=suffix_trie,
        prefix_trie=prefix_trie,
        grid=ContextGrid(points, aggregate),
        is_reverse=is_reverse,
    )


def build_index(
    tree: PhyloTree,
    genomes: Iterable[GenomeRecord],
    sentinel: bytes | int = b"$",
) -> KmerIndex:
    """Build the full two-sided index for a tree and its leaf genomes."""
    concat = build_concatenation(tree, genomes, sentinel)
    forward = build_side(concat, tree.leaves, is_reverse=False)
    rev_concat = reverse_concatenation(concat)
    rev_leaf_vertices = tuple(reversed(tree.leaves))
    reverse = build_side(rev_concat, rev_leaf_vertices, is_reverse=True)
    return KmerIndex(
        tree=tree,
        forward=forward,
        reverse=reverse,
        lca=build_lca(tree),
        sentinel=concat.sentinel,
    )


class _DescentTable:
    """One incremental trie descent with per-length lazy verification."""

    __slots__ = ("trie", "fed", "loci", "cache", "stats")

    def __init__(self, trie: CompactTrie, fed: bytes, max_len: int, stats: QueryStats):
        stats.descents += 1
        self.trie = trie
        self.fed = fed
        self.loci = trie.loci_for_pattern_extensions(fed, max_len)
        self.cache: list[None | bool | tuple[int, int]] = [None] * len(self.loci)
        self.stats = stats

    def interval(self, length: int) -> tuple[int, int] | None:
        got = self.cache[length]
        if got is None:
            locus = self.loci[length]
            if locus is None:
                got = False
            else:
                self.stats.verifications += 1
                verified = self.trie.verify_locus(locus, self.fed[:length])
                got = False if verified is None else verified.rank_interval
            self.cache[length] = got
        return None if got is False else got


class _QueryState:
    """Per-call memo: four descent-table families keyed by pattern position."""

    def __init__(self, index: KmerIndex, pattern: bytes, k: int, stats: QueryStats):
        self.index = index
        self.pattern = pattern
        self.k = k
        self.stats = stats
        self.fwd_alpha: dict[int, _DescentTable] = {}
        self.fwd_beta: dict[int, _DescentTable] = {}
        self.rev_alpha: dict[int, _DescentTable] = {}
        self.rev_beta: dict[int, _DescentTable] = {}

    # Alpha tables cover k-mer left parts (up to k bytes), beta tables the
    # remainders (up to k - 1 bytes).  Keys are the pattern positions where
    # the fed bytes start or end, so tables are shared across k-mers.

    def fwd_alpha_at(self, end: int) -> _DescentTable:
        table = self.fwd_alpha.get(end)
        if table is None:
            fed = self.pattern[max(0, end - self.k) : end][::-1]
            table = _DescentTable(self.index.forward.suffix_trie, fed, len(fed), self.stats)
            self.fwd_alpha[end] = table
        return table

    def fwd_beta_at(self, start: int) -> _DescentTable:
        table = self.fwd_beta.get(start)
        if table is None:
            fed = self.pattern[start : start + self.k - 1]
            table = _DescentTable(self.index.forward.prefix_trie, fed, len(fed), self.stats)
            self.fwd_beta[start] = table
        return table

    def rev_alpha_at(self, start: int) -> _DescentTable:
        table = self.rev_alpha.get(start)
        if table is None:
            fed = self.pattern[start : start + self.k]
            table = _DescentTable(self.index.reverse.suffix_trie, fed, len(fed), self.stats)
            self.rev_alpha[start] = table
        return table

    def rev_beta_at(self, end: int) -> _DescentTable:
        table = self.rev_beta.get(end)
        if table is None:
            fed = self.pattern[max(0, end - (self.k - 1)) : end][::-1]
            table = _DescentTable(self.index.reverse.prefix_trie, fed, len(fed), self.stats)
            self.rev_beta[end] = table
        return table


def _forward_best(state: _QueryState, i: int) -> int | None:
    """Min grid label over all splits of the k-mer at position i (0-based)."""
    k = state.k
    side = state.index.forward
    grid = side.grid
    prefix_root = side.prefix_trie.root_locus()
    best = None
    for j in range(1, k + 1):
        alpha_iv = state.fwd_alpha_at(i + j).interval(j)
        if alpha_iv is None:
            continue
        if j == k:
            beta_iv = None if prefix_root is None else prefix_root.rank_interval
        else:
            beta_iv = state.fwd_beta_at(i + j).interval(k - j)
        if beta_iv is None:
            continue
        state.stats.grid_queries += 1
        label = grid.range_best(alpha_iv[0], alpha_iv[1], beta_iv[0], beta_iv[1])
        if label is not None and (best is None or label < best):
            best = label
    return best


def _reverse_best(state: _QueryState, i: int) -> int | None:
    """Max grid label over all splits of the reversed k-mer at position i."""
    k = state.k
    side = state.index.reverse
    grid = side.grid
    prefix_root = side.prefix_trie.root_locus()
    best = None
    for j in range(1, k + 1):
        s = i + k - j
        alpha_iv = state.rev_alpha_at(s).interval(j)
        if alpha_iv is None:
            continue
        if j == k:
            beta_iv = None if prefix_root is None else prefix_root.rank_interval
        else:
            beta_iv = state.rev_beta_at(s).interval(k - j)
        if beta_iv is None:
            continue
        state.stats.grid_queries += 1
        label = grid.range_best(alpha_iv[0], alpha_iv[1], beta_iv[0], beta_iv[1])
        if label is not None and (best is None or label > best):
            best = label
    return best


def _check_pattern(index: KmerIndex, pattern: bytes) -> None:
    if bytes([index.sentinel]) in pattern:
        raise ValueError("pattern contains the sentinel byte")


def side_query(index: KmerIndex, side: SideIndex, kmer: bytes) -> int | None:
    """Vertex of the leftmost (forward side) or rightmost (reverse side)
    genome containing ``kmer``, or None if it occurs nowhere."""
    if not kmer:
        raise ValueError("empty k-mer")
    _check_pattern(index, kmer)
    state = _QueryState(index, kmer, len(kmer), QueryStats())
    if side.is_reverse:
        return _reverse_best(state, 0)
    return _forward_best(state, 0)


def classify(index: KmerIndex, pattern: bytes, k: int) -> list[KmerResult]:
    """Classify every k-mer of ``pattern``; k is chosen here, at query time.

    Returns one KmerResult per position (1-based); the answer is the vertex
    number of the smallest subtree containing all genomes with that k-mer,
    or None when the k-mer occurs in no genome.  Empty when k exceeds the
    pattern length.
    """
    results, _ = classify_with_stats(index, pattern, k)
    return results


def classify_with_stats(
    index: KmerIndex, pattern: bytes, k: int
) -> tuple[list[KmerResult], QueryStats]:
    """classify plus instrumentation counters for the call."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    _check_pattern(index, pattern)
    stats = QueryStats()
    results: list[KmerResult] = []
    if k > len(pattern):
        return results, stats
    state = _QueryState(index, pattern, k, stats)
    lca_struct = index.lca
    for i in range(len(pattern) - k + 1):
        kmer = pattern[i : i + k]
        left = _forward_best(state, i)
        right = _reverse_best(state, i)
        if left is None or right is None:
            answer = None
        else:
            answer = lca_struct.query(left, right)
        results.append(KmerResult(position=i + 1, kmer=kmer, answer=answer))
    return results, stats
