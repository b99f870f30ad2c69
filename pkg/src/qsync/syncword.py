"""Synchronizing-word decision and search.

Exact search runs BFS over bitset-encoded state subsets, so words come back
minimum-length with deterministic lexicographic tie-breaking (letters are
expanded in alphabet order). The greedy search merges one state pair at a
time via BFS on the pair automaton and scales past the subset guard.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automaton import Dfa, Word, _coerce_word, apply_word
from .errors import GuardExceededError, NotSynchronizingError

SUBSET_SEARCH_MAX_STATES = 24


@dataclass(frozen=True)
class SyncReport:
    word: str
    final: int  # final state, or block id in partition mode
    length: int
    method: str  # subset_bfs | greedy_pairs | verify

    def to_doc(self) -> dict:
        return {"word": self.word, "final": self.final, "length": self.length, "method": self.method}


def is_synchronizing_word(dfa: Dfa, w) -> int | None:
    """The common final state if `w` merges all of Q, else None."""
    word = _coerce_word(dfa, w)
    image = set(range(dfa.n))
    for letter in word.letters:
        row = dfa.delta[letter]
        image = {row[q] for q in image}
    if len(image) == 1:
        return next(iter(image))
    return None


def _letter_images(dfa: Dfa):
    """For each letter, the map mask -> image mask, as per-state target bits."""
    return [tuple(1 << row[q] for q in range(dfa.n)) for row in dfa.delta]


def _apply_mask(targets, mask: int) -> int:
    image = 0
    q = 0
    while mask:
        if mask & 1:
            image |= targets[q]
        mask >>= 1
        q += 1
    return image


def shortest_sync_word(dfa: Dfa, max_states: int = SUBSET_SEARCH_MAX_STATES) -> SyncReport | None:
    """BFS on the subset automaton from the full state set.

    Returns a minimum-length synchronizing word (lexicographically smallest
    among the minima), or None when the automaton is not synchronizing.
    """
    if dfa.n > max_states:
        raise GuardExceededError(
            f"subset search guard is {max_states} states, automaton has {dfa.n}; "
            "use greedy_sync_word"
        )
    full = (1 << dfa.n) - 1
    if dfa.n == 1:  # already merged; shortest applicable word is one letter
        return SyncReport(dfa.alphabet[0], 0, 1, "subset_bfs")
    targets = _letter_images(dfa)
    parent: dict[int, tuple[int, int]] = {full: (-1, -1)}  # mask -> (prev mask, letter)
    queue = deque([full])
    while queue:
        mask = queue.popleft()
        for letter in range(dfa.alphabet_size):
            image = _apply_mask(targets[letter], mask)
            if image in parent:
                continue
            parent[image] = (mask, letter)
            if image & (image - 1) == 0:  # singleton
                letters = []
                node = image
                while parent[node][0] != -1:
                    prev, used = parent[node]
                    letters.append(used)
                    node = prev
                letters.reverse()
                word = Word(tuple(letters), dfa.alphabet_size)
                return SyncReport(
                    word.text(dfa.alphabet), image.bit_length() - 1, len(letters), "subset_bfs"
                )
            queue.append(image)
    return None


def _merge_pair(dfa: Dfa, p: int, q: int) -> tuple[int, ...] | None:
    """Shortest word sending states p and q to a common state (pair BFS)."""
    start = (p, q) if p <= q else (q, p)
    parent: dict[tuple[int, int], tuple[tuple[int, int] | None, int]] = {start: (None, -1)}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        for letter in range(dfa.alphabet_size):
            row = dfa.delta[letter]
            u, v = row[pair[0]], row[pair[1]]
            nxt = (u, v) if u <= v else (v, u)
            if nxt in parent:
                continue
            parent[nxt] = (pair, letter)
            if nxt[0] == nxt[1]:
                letters = []
                node = nxt
                while parent[node][0] is not None:
                    prev, used = parent[node]
                    letters.append(used)
                    node = prev
                letters.reverse()
                return tuple(letters)
            queue.append(nxt)
    return None


def greedy_sync_word(dfa: Dfa) -> SyncReport | None:
    """Pair-merging heuristic: valid but possibly non-minimal output.

    Repeatedly merges the lexicographically smallest pair of the current
    image; None as soon as some pair cannot be merged (not synchronizing).
    """
    image = sorted(range(dfa.n))
    letters: list[int] = []
    while len(image) > 1:
        piece = _merge_pair(dfa, image[0], image[1])
        if piece is None:
            return None
        letters.extend(piece)
        for letter in piece:
            row = dfa.delta[letter]
            image = sorted({row[q] for q in image})
    if not letters:  # single-state automaton: any letter synchronizes
        letters = [0]
        image = [dfa.delta[0][image[0]]]
    word = Word(tuple(letters), dfa.alphabet_size)
    return SyncReport(word.text(dfa.alphabet), image[0], len(letters), "greedy_pairs")


def cerny_audit(dfa: Dfa, max_states: int = SUBSET_SEARCH_MAX_STATES) -> dict:
    """Compare the exact shortest length against the (n-1)^2 bound."""
    report = shortest_sync_word(dfa, max_states)
    if report is None:
        raise NotSynchronizingError(f"{dfa.name or 'automaton'} is not synchronizing")
    bound = (dfa.n - 1) ** 2
    return {"length": report.length, "bound": bound, "within": report.length <= bound}


def synchronizes_to_class(dfa: Dfa, w, block_of) -> int | None:
    """Partition synchronization: the common block if `w` drives every state
    into one block of `block_of`, else None.
    """
    word = _coerce_word(dfa, w)
    blocks = {block_of(apply_word(dfa, word, q)) for q in range(dfa.n)}
    if len(blocks) == 1:
        return next(iter(blocks))
    return None
