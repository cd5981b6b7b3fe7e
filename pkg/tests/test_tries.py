"""Compact tries: blind descent, lazy verification, rank intervals."""
import random

import pytest

from phylokmer.tries import build_trie

PREFIX_STRINGS = [b"", b"AGAT", b"AT", b"ATACAT", b"ATTACAT", b"CAT", b"TACAT", b"TTACAT"]
REV_SUFFIX_STRINGS = [b"A", b"AT", b"ATA", b"ATAGATTAG", b"C", b"G", b"GA", b"T", b"TTAG"]


def brute_interval(strings, pattern):
    ranks = [i + 1 for i, s in enumerate(strings) if s.startswith(pattern)]
    return (ranks[0], ranks[-1]) if ranks else None


def descend_verified(trie, pattern):
    locus = trie.blind_descend(pattern)
    if locus is None:
        return None
    return trie.verify_locus(locus, pattern)


def test_root_locus_spans_everything():
    trie = build_trie(PREFIX_STRINGS)
    root = trie.root_locus()
    assert root.rank_interval == (1, 8)
    assert root.matched_depth == 0
    assert not root.candidate


def test_fixture_prefix_trie_descents():
    trie = build_trie(PREFIX_STRINGS)
    assert descend_verified(trie, b"AGAT").rank_interval == (2, 2)
    assert descend_verified(trie, b"AT").rank_interval == (3, 5)
    assert descend_verified(trie, b"G") is None
    assert descend_verified(trie, b"").rank_interval == (1, 8)
    assert descend_verified(trie, b"TACAT").rank_interval == (7, 7)


def test_fixture_reversed_suffix_trie_descents():
    trie = build_trie(REV_SUFFIX_STRINGS)
    assert descend_verified(trie, b"G").rank_interval == (6, 7)
    assert descend_verified(trie, b"GAT") is None
    assert descend_verified(trie, b"ATAG").rank_interval == (4, 4)


def test_terminal_string_sorts_before_extensions():
    trie = build_trie([b"A", b"AB", b"ABC"])
    assert descend_verified(trie, b"A").rank_interval == (1, 3)
    assert descend_verified(trie, b"AB").rank_interval == (2, 3)
    assert descend_verified(trie, b"ABC").rank_interval == (3, 3)
    assert descend_verified(trie, b"ABCD") is None


def test_blind_descent_skips_need_verification():
    # Blind descent compares only edge-leading bytes, so a probe that is
    # wrong inside a skipped run still reaches a candidate locus.
    trie = build_trie(PREFIX_STRINGS)
    blind = trie.blind_descend(b"AGXT")
    assert blind is not None and blind.candidate
    assert blind.rank_interval == (2, 2)
    assert trie.verify_locus(blind, b"AGXT") is None
    good = trie.verify_locus(trie.blind_descend(b"AGAT"), b"AGAT")
    assert good.rank_interval == (2, 2)
    assert not good.candidate


def test_string_at_round_trip():
    trie = build_trie(PREFIX_STRINGS)
    for rank, s in enumerate(PREFIX_STRINGS, start=1):
        assert trie.string_at(rank) == s


def test_build_rejects_bad_input():
    with pytest.raises(ValueError):
        build_trie([b"B", b"A"])
    with pytest.raises(ValueError):
        build_trie([b"A", b"A"])


def test_empty_trie():
    trie = build_trie([])
    assert trie.root_locus() is None
    assert trie.blind_descend(b"A") is None
    assert trie.blind_descend(b"") is None


def test_extension_loci_match_individual_descents():
    rng = random.Random(21)
    for _ in range(100):
        pool = {bytes(rng.choice(b"ACG") for _ in range(rng.randint(0, 10))) for _ in range(rng.randint(1, 25))}
        strings = sorted(pool)
        trie = build_trie(strings)
        pattern = bytes(rng.choice(b"ACG") for _ in range(rng.randint(0, 12)))
        loci = trie.loci_for_pattern_extensions(pattern, len(pattern))
        assert len(loci) == len(pattern) + 1
        for length in range(len(pattern) + 1):
            single = trie.blind_descend(pattern[:length])
            if loci[length] is None:
                assert single is None
            else:
                assert single is not None
                assert single.rank_interval == loci[length].rank_interval
                assert single.matched_depth == loci[length].matched_depth
        # Once dead, extensions of this same descent stay dead.
        seen_dead = False
        for locus in loci:
            if locus is None:
                seen_dead = True
            else:
                assert not seen_dead


def test_verified_descents_match_brute_force():
    rng = random.Random(22)
    for _ in range(150):
        pool = {bytes(rng.choice(b"AC") for _ in range(rng.randint(0, 8))) for _ in range(rng.randint(1, 20))}
        strings = sorted(pool)
        trie = build_trie(strings)
        for _ in range(20):
            if rng.random() < 0.5 and strings:
                base = rng.choice(strings)
                probe = bytearray(base[: rng.randint(0, len(base))])
                if probe and rng.random() < 0.4:
                    probe[rng.randrange(len(probe))] = rng.choice(b"ACG")
                probe = bytes(probe)
            else:
                probe = bytes(rng.choice(b"ACG") for _ in range(rng.randint(0, 6)))
            expected = brute_interval(strings, probe)
            got = descend_verified(trie, probe)
            if expected is None:
                assert got is None
            else:
                assert got is not None and got.rank_interval == expected


def test_text_access_extraction_matches_inline_storage():
    # Same strings, but representatives extracted through an access callback
    # into a shared blob instead of stored copies.
    rng = random.Random(23)
    for _ in range(40):
        blob = bytes(rng.choice(b"ACGT") for _ in range(rng.randint(10, 80)))
        refs = []
        pool = set()
        for _ in range(rng.randint(1, 12)):
            start = rng.randrange(len(blob))
            end = rng.randint(start, min(len(blob), start + 9))
            piece = blob[start:end]
            if piece not in pool:
                pool.add(piece)
                refs.append((start, end))
        order = sorted(range(len(refs)), key=lambda i: blob[refs[i][0] : refs[i][1]])
        strings = [blob[refs[i][0] : refs[i][1]] for i in order]
        spans = [refs[i] for i in order]

        def access(rank0, start, stop):
            lo, hi = spans[rank0]
            return blob[lo + start : lo + stop]

        plain = build_trie(strings)
        via_access = build_trie(strings, text_access=access)
        for _ in range(25):
            probe = bytes(rng.choice(b"ACGT") for _ in range(rng.randint(0, 8)))
            a = descend_verified(plain, probe)
            b = descend_verified(via_access, probe)
            if a is None:
                assert b is None
            else:
                assert b is not None and a.rank_interval == b.rank_interval
