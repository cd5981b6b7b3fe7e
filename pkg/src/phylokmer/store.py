"""Binary index file format, version 1.

Little-endian throughout.  Layout: magic, format version, sentinel byte,
tree section, then one section per side (text, phrases, suffix and prefix
occurrence references, grid points).  Search structures that rebuild
deterministically in linear-ish time from the stored data (tries, grid
decomposition, LCA tables) are reconstructed on load rather than stored.
"""
from __future__ import annotations

import io
import struct
from typing import BinaryIO

from .contexts import PrefixSet, SuffixSet
from .engine import INDEX_FORMAT_VERSION, KmerIndex, SideIndex, prefix_access, reversed_suffix_access
from .grid import ContextGrid
from .lca import build_lca
from .lz77 import Lz77Parse, Phrase
from .model import PhyloTree
from .tries import build_trie

MAGIC = b"PKMRIDX\x00"

_NO_LITERAL = 0x0100


class IndexFileError(ValueError):
    """Unreadable or incompatible index file."""


def _write_u8(out: BinaryIO, value: int) -> None:
    out.write(struct.pack("<B", value))


def _write_u16(out: BinaryIO, value: int) -> None:
    out.write(struct.pack("<H", value))


def _write_u32(out: BinaryIO, value: int) -> None:
    out.write(struct.pack("<I", value))


def _write_u64(out: BinaryIO, value: int) -> None:
    out.write(struct.pack("<Q", value))


def _read(src: BinaryIO, size: int) -> bytes:
    data = src.read(size)
    if len(data) != size:
        raise IndexFileError("truncated index file")
    return data


def _read_u8(src: BinaryIO) -> int:
    return struct.unpack("<B", _read(src, 1))[0]


def _read_u16(src: BinaryIO) -> int:
    return struct.unpack("<H", _read(src, 2))[0]


def _read_u32(src: BinaryIO) -> int:
    return struct.unpack("<I", _read(src, 4))[0]


def _read_u64(src: BinaryIO) -> int:
    return struct.unpack("<Q", _read(src, 8))[0]


def _write_tree(out: BinaryIO, tree: PhyloTree) -> None:
    count = tree.vertex_count
    _write_u32(out, count)
    for v in range(1, count + 1):
        _write_u32(out, tree.parent[v])
    for v in range(1, count + 1):
        label = tree.labels[v]
        if label is None:
            _write_u16(out, 0xFFFF)
        else:
            encoded = label.encode("utf-8")
            if len(encoded) >= 0xFFFF:
                raise ValueError(f"label too long on vertex {v}")
            _write_u16(out, len(encoded))
            out.write(encoded)


def _read_tree(src: BinaryIO) -> PhyloTree:
    count = _read_u32(src)
    if count == 0:
        raise IndexFileError("index file holds an empty tree")
    parent = [0] * (count + 1)
    for v in range(1, count + 1):
        parent[v] = _read_u32(src)
    labels: list[str | None] = [None] * (count + 1)
    for v in range(1, count + 1):
        size = _read_u16(src)
        if size != 0xFFFF:
            labels[v] = _read(src, size).decode("utf-8")
    children: list[list[int]] = [[] for _ in range(count + 1)]
    root = 0
    for v in range(1, count + 1):
        if parent[v] == 0:
            if root:
                raise IndexFileError("index file tree has two roots")
            root = v
        else:
            children[parent[v]].append(v)
    if not root:
        raise IndexFileError("index file tree has no root")
    # In-order numbering makes ascending child numbers the original order.
    leaves = tuple(v for v in range(1, count + 1) if not children[v])
    return PhyloTree(
        parent=tuple(parent),
        children=tuple(tuple(c) for c in children),
        labels=tuple(labels),
        root=root,
        leaves=leaves,
    )


def _write_side(out: BinaryIO, side: SideIndex) -> None:
    _write_u64(out, len(side.text))
    out.write(side.text)
    _write_u32(out, len(side.parse.phrases))
    for phrase in side.parse.phrases:
        _write_u64(out, phrase.start)
        _write_u64(out, phrase.match_len)
        _write_u64(out, 0 if phrase.source is None else phrase.source + 1)
        _write_u16(out, _NO_LITERAL if phrase.literal is None else phrase.literal)
    text = side.text
    _write_u32(out, len(side.suffix_set.strings))
    for s in side.suffix_set.strings:
        end = text.find(s) + len(s)
        _write_u64(out, end)
        _write_u32(out, len(s))
    _write_u32(out, len(side.prefix_set.strings))
    for p in side.prefix_set.strings:
        _write_u64(out, text.find(p) if p else 0)
        _write_u32(out, len(p))
    _write_u32(out, len(side.grid.points))
    for x, y, label in side.grid.points:
        _write_u32(out, x)
        _write_u32(out, y)
        _write_u32(out, label)


def _read_side(src: BinaryIO, is_reverse: bool) -> SideIndex:
    text = _read(src, _read_u64(src))
    phrases = []
    for _ in range(_read_u32(src)):
        start = _read_u64(src)
        match_len = _read_u64(src)
        source = _read_u64(src)
        literal = _read_u16(src)
        phrases.append(
            Phrase(
                start=start,
                match_len=match_len,
                source=None if source == 0 else source - 1,
                literal=None if literal == _NO_LITERAL else literal,
            )
        )
    boundaries = tuple(p.start for p in phrases) + (len(text),)
    parse = Lz77Parse(phrases=tuple(phrases), boundary_positions=boundaries)

    suffix_refs = []
    suffix_strings = []
    for _ in range(_read_u32(src)):
        end = _read_u64(src)
        size = _read_u32(src)
        suffix_refs.append((end, size))
        suffix_strings.append(text[end - size : end])
    prefix_refs = []
    prefix_strings = []
    for _ in range(_read_u32(src)):
        pos = _read_u64(src)
        size = _read_u32(src)
        prefix_refs.append((pos, size))
        prefix_strings.append(text[pos : pos + size])

    points = []
    for _ in range(_read_u32(src)):
        x = _read_u32(src)
        y = _read_u32(src)
        label = _read_u32(src)
        points.append((x, y, label))

    suffix_set = SuffixSet(
        strings=tuple(suffix_strings),
        rank={s: i + 1 for i, s in enumerate(suffix_strings)},
    )
    prefix_set = PrefixSet(
        strings=tuple(prefix_strings),
        rank={p: i + 1 for i, p in enumerate(prefix_strings)},
    )
    reversed_suffixes = sorted(s[::-1] for s in suffix_strings)
    aggregate = "max" if is_reverse else "min"
    return SideIndex(
        text=text,
        parse=parse,
        suffix_set=suffix_set,
        prefix_set=prefix_set,
        suffix_trie=build_trie(reversed_suffixes, reversed_suffix_access(text, suffix_refs)),
        prefix_trie=build_trie(prefix_strings, prefix_access(text, prefix_refs)),
        grid=ContextGrid(points, aggregate),
        is_reverse=is_reverse,
    )


def save_index(index: KmerIndex, path: str) -> None:
    """Write the index to ``path`` in format version 1."""
    out = io.BytesIO()
    out.write(MAGIC)
    _write_u16(out, index.version)
    _write_u8(out, index.sentinel)
    _write_tree(out, index.tree)
    _write_side(out, index.forward)
    _write_side(out, index.reverse)
    with open(path, "wb") as fh:
        fh.write(out.getvalue())


def load_index(path: str) -> KmerIndex:
    """Read an index written by save_index; errors on foreign or newer files."""
    with open(path, "rb") as fh:
        magic = fh.read(len(MAGIC))
        if magic != MAGIC:
            raise IndexFileError(f"{path}: not an index file (bad magic)")
        version = _read_u16(fh)
        if version != INDEX_FORMAT_VERSION:
            raise IndexFileError(f"{path}: unsupported format version {version}")
        sentinel = _read_u8(fh)
        tree = _read_tree(fh)
        forward = _read_side(fh, is_reverse=False)
        reverse = _read_side(fh, is_reverse=True)
        trailing = fh.read(1)
        if trailing:
            raise IndexFileError(f"{path}: trailing bytes after index data")
    return KmerIndex(
        tree=tree,
        forward=forward,
        reverse=reverse,
        lca=build_lca(tree),
        sentinel=sentinel,
        version=version,
    )
