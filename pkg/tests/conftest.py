"""Shared test helpers: word transformations and hypothesis strategies."""

from __future__ import annotations

import random
from typing import Optional

from hypothesis import strategies as st

from knot818.diagram import (
    BRANCH_SITES,
    INNER_SITES,
    OUTER_SITES,
    DiagramWord,
    canonical_818,
)


def transformed_canonical(
    offset: int = 0,
    reverse: bool = False,
    mirror: bool = False,
    inner: Optional[tuple[str, ...]] = None,
    outer: Optional[tuple[str, ...]] = None,
    branch: Optional[tuple[str, ...]] = None,
) -> DiagramWord:
    """A valid word: canonical_818 rotated/reversed/mirrored/relabeled.

    The per-class permutations keep the relabeling class-preserving, so
    the result always passes validate_word.
    """
    word = canonical_818()
    mapping = {}
    mapping.update(zip(INNER_SITES, inner or INNER_SITES))
    mapping.update(zip(OUTER_SITES, outer or OUTER_SITES))
    mapping.update(zip(BRANCH_SITES, branch or BRANCH_SITES))
    word = word.relabeled(mapping)
    if reverse:
        word = word.reversed_()
    if mirror:
        word = word.mirrored()
    return word.rotated(offset)


def random_valid_word(rng: random.Random) -> DiagramWord:
    return transformed_canonical(
        offset=rng.randrange(20),
        reverse=rng.random() < 0.5,
        mirror=rng.random() < 0.5,
        inner=tuple(rng.sample(INNER_SITES, 4)),
        outer=tuple(rng.sample(OUTER_SITES, 4)),
        branch=tuple(rng.sample(BRANCH_SITES, 4)),
    )


valid_words = st.builds(
    transformed_canonical,
    offset=st.integers(0, 19),
    reverse=st.booleans(),
    mirror=st.booleans(),
    inner=st.permutations(INNER_SITES).map(tuple),
    outer=st.permutations(OUTER_SITES).map(tuple),
    branch=st.permutations(BRANCH_SITES).map(tuple),
)


def braid_words(max_strands: int = 4, max_len: int = 8):
    """Strategy for arbitrary braid words (closures may be links)."""
    from knot818.braid import BraidWord

    def build(strands: int, signs_and_indices: list[tuple[bool, int]]) -> BraidWord:
        letters = tuple(
            (i % (strands - 1) + 1) * (1 if pos else -1) for pos, i in signs_and_indices
        )
        return BraidWord(strands, letters)

    return st.builds(
        build,
        st.integers(2, max_strands),
        st.lists(st.tuples(st.booleans(), st.integers(0, 10)), max_size=max_len),
    )
