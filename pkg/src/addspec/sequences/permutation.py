"""Index permutations and sequence rearrangements."""

import json
import logging
from dataclasses import dataclass

from addspec.model import BijectionError, PreconditionError
from addspec.sequences.prefix import SequencePrefix

logger = logging.getLogger('addspec')


@dataclass(frozen=True)
class Explicit:
    """sigma given as the list sigma(1), ..., sigma(N)."""

    mapping: tuple[int, ...]

    kind = 'explicit'

    def images(self, N: int) -> list[int]:
        if len(self.mapping) != N:
            raise BijectionError(
                f'explicit permutation has {len(self.mapping)} entries, window is {N}',
                size=len(self.mapping), window=N)
        return list(self.mapping)

    def to_json(self) -> dict:
        return {'kind': 'explicit', 'mapping': list(self.mapping)}


@dataclass(frozen=True)
class SwapRule:
    """sigma exchanging each listed pair of indices, fixing all others."""

    pairs: tuple[tuple[int, int], ...]

    kind = 'swap'

    def images(self, N: int) -> list[int]:
        images = list(range(1, N + 1))
        seen: set[int] = set()
        for i, j in self.pairs:
            if i in seen or j in seen or i == j:
                raise BijectionError(
                    f'swap pairs must be disjoint, index {i} or {j} repeats',
                    pair=[i, j])
            seen.update((i, j))
            if not (1 <= i <= N and 1 <= j <= N):
                raise BijectionError(
                    f'swap pair ({i}, {j}) leaves the window 1..{N}',
                    pair=[i, j], window=N)
            images[i - 1], images[j - 1] = j, i
        return images

    def to_json(self) -> dict:
        return {'kind': 'swap', 'pairs': [list(p) for p in self.pairs]}


@dataclass(frozen=True)
class PowerSwap:
    """sigma exchanging 2^(2k-1) and 2^(2k) for every k >= 1."""

    kind = 'powerswap'

    def images(self, N: int) -> list[int]:
        if (N + 1) & N or (N + 1).bit_length() % 2 == 1:
            below, above = _powerswap_windows(N)
            if (N + 1) & N:
                reason = 'must end just below a power of 2'
            else:
                # N+1 = 2^(2k): the pair 2^(2k-1) <-> 2^(2k) straddles the window.
                reason = f'splits the pair {(N + 1) // 2} <-> {N + 1}'
            raise BijectionError(
                f'powerswap window N={N} {reason}; try N={below} or N={above}',
                window=N, suggested=[below, above])
        images = list(range(1, N + 1))
        low = 2
        while 2 * low <= N:
            images[low - 1], images[2 * low - 1] = 2 * low, low
            low *= 4
        return images

    def to_json(self) -> dict:
        return {'kind': 'powerswap'}


def _powerswap_windows(N: int) -> tuple[int, int]:
    """Nearest valid powerswap windows 2^odd - 1 at or below and at or above N."""
    windows = [2**j - 1 for j in range(1, (N + 1).bit_length() + 3, 2)]
    return max(w for w in windows if w <= N), min(w for w in windows if w >= N)


PermutationSpec = Explicit | SwapRule | PowerSwap


def resolve(sigma: PermutationSpec, N: int) -> list[int]:
    """Return sigma(1..N) after checking it is a bijection of {1..N}."""
    images = sigma.images(N)
    if sorted(images) != list(range(1, N + 1)):
        bad = next(i for i, v in enumerate(sorted(images), 1) if v != i)
        raise BijectionError(
            f'{sigma.kind} permutation is not a bijection of 1..{N}',
            first_bad=bad, window=N)
    return images


def rearrange(A: SequencePrefix, sigma: PermutationSpec) -> SequencePrefix:
    """The sigma-rearrangement {a_sigma(n)}."""
    images = resolve(sigma, len(A))
    return SequencePrefix(tuple(A.values[i - 1] for i in images))


def sort_rearrangement(A: SequencePrefix) -> tuple[SequencePrefix, Explicit]:
    """Increasing rearrangement and its order-inducing permutation.

    Ties keep their original order, which makes the permutation unique.
    """
    order = sorted(range(len(A)), key=A.values.__getitem__)
    sigma = Explicit(tuple(i + 1 for i in order))
    return SequencePrefix(tuple(A.values[i] for i in order)), sigma


def permutation_from_json(data: dict | str) -> PermutationSpec:
    """Parse a permutation from its JSON form (or the word 'powerswap')."""
    if isinstance(data, str):
        if data.strip() == 'powerswap':
            return PowerSwap()
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise PreconditionError(f'invalid permutation JSON: {e}') from None
    kind = data.get('kind') if isinstance(data, dict) else None
    if kind == 'explicit':
        return Explicit(tuple(int(i) for i in data['mapping']))
    if kind == 'swap':
        return SwapRule(tuple((int(i), int(j)) for i, j in data['pairs']))
    if kind == 'powerswap':
        return PowerSwap()
    raise PreconditionError(
        f'unknown permutation kind {kind!r}; valid: explicit, swap, powerswap',
        kind=kind)
