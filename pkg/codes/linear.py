"""Binary linear block codes with syndrome decoding.

Words are uint8 vectors with position 1 on the left; bit strings read the same way.
"""
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from algorithms.simon import gf2_nullspace, gf2_rank
from config import MAX_CODE_K
from core.errors import CapExceededError, DimensionError, DomainError

Word = Union[str, Sequence[int], np.ndarray]


def as_word(w: Word, n: Optional[int] = None) -> np.ndarray:
    out = np.array([int(ch) for ch in w] if isinstance(w, str) else list(w), dtype=np.uint8)
    if np.any(out > 1):
        raise DomainError("binary words may only contain 0 and 1")
    if n is not None and out.shape[0] != n:
        raise DimensionError(f"expected a word of length {n}, got {out.shape[0]}")
    return out


def word_str(w: np.ndarray) -> str:
    return "".join(str(int(b)) for b in w)


def _row_ints(matrix: np.ndarray) -> List[int]:
    return [int(word_str(row), 2) for row in matrix]


def _ints_to_matrix(rows: List[int], n: int) -> np.ndarray:
    if not rows:
        return np.zeros((0, n), dtype=np.uint8)
    return np.array([as_word(format(r, f"0{n}b")) for r in rows], dtype=np.uint8)


def _solve_gf2(a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """One solution x of a x = b over F2, or None."""
    rows, cols = a.shape
    aug = np.concatenate([a % 2, (b % 2).reshape(-1, 1)], axis=1).astype(np.uint8)
    pivots = []
    r = 0
    for c in range(cols):
        hit = np.nonzero(aug[r:, c])[0] if r < rows else []
        if len(hit) == 0:
            continue
        p = r + hit[0]
        aug[[r, p]] = aug[[p, r]]
        for i in range(rows):
            if i != r and aug[i, c]:
                aug[i] ^= aug[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if np.any(aug[r:, -1]):
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for i, c in enumerate(pivots):
        x[c] = aug[i, -1]
    return x


@dataclass
class LinearCode:
    G: np.ndarray
    H: np.ndarray = None
    name: str = "code"

    def __post_init__(self):
        self.G = np.atleast_2d(np.asarray(self.G, dtype=np.uint8)) % 2
        n = self.G.shape[1]
        if gf2_rank(_row_ints(self.G), n) != self.G.shape[0]:
            raise DomainError(f"{self.name}: generator rows are linearly dependent")
        if self.H is None:
            self.H = _ints_to_matrix(gf2_nullspace(_row_ints(self.G), n), n)
        self.H = np.asarray(self.H, dtype=np.uint8).reshape(-1, n) % 2
        if self.H.shape[0] != n - self.k:
            raise DimensionError(f"{self.name}: parity matrix needs {n - self.k} independent rows")
        if np.any(self.G.astype(int) @ self.H.T.astype(int) % 2):
            raise DomainError(f"{self.name}: G H^T is not zero over F2")

    @classmethod
    def from_parity(cls, H, name: str = "code") -> "LinearCode":
        H = np.atleast_2d(np.asarray(H, dtype=np.uint8))
        n = H.shape[1]
        G = _ints_to_matrix(gf2_nullspace(_row_ints(H), n), n)
        return cls(G, H, name)

    @property
    def n(self) -> int:
        return self.G.shape[1]

    @property
    def k(self) -> int:
        return self.G.shape[0]

    def _check_k(self):
        if self.k > MAX_CODE_K:
            raise CapExceededError(f"{self.name}: exhaustive scan capped at k={MAX_CODE_K}, got k={self.k}")

    def codewords(self) -> np.ndarray:
        self._check_k()
        messages = np.array(list(itertools.product([0, 1], repeat=self.k)), dtype=int).reshape(-1, self.k)
        return (messages @ self.G.astype(int) % 2).astype(np.uint8)

    @cached_property
    def d(self) -> int:
        weights = self.codewords().sum(axis=1)
        nonzero = weights[weights > 0]
        return int(nonzero.min()) if nonzero.size else 0

    @property
    def rate(self) -> float:
        return self.k / self.n

    def contains(self, w: Word) -> bool:
        return not np.any(self.H.astype(int) @ as_word(w, self.n).astype(int) % 2)

    def to_dict(self):
        return {"name": self.name, "n": self.n, "k": self.k,
                "G": [word_str(r) for r in self.G], "H": [word_str(r) for r in self.H]}


def min_distance(code: LinearCode) -> int:
    return code.d


def encode(code: LinearCode, w: Word) -> Union[str, np.ndarray]:
    out = (as_word(w, code.k).astype(int) @ code.G.astype(int) % 2).astype(np.uint8)
    return word_str(out) if isinstance(w, str) else out


def syndrome(code: LinearCode, u: Word) -> str:
    return word_str(code.H.astype(int) @ as_word(u, code.n).astype(int) % 2)


def message_of(code: LinearCode, c: Word) -> np.ndarray:
    x = _solve_gf2(code.G.T, as_word(c, code.n))
    if x is None:
        raise DomainError(f"{word_str(as_word(c))} is not a codeword of {code.name}")
    return x


@dataclass
class SyndromeTable:
    leaders: Dict[str, np.ndarray] = field(default_factory=dict)

    def leader(self, s: str) -> np.ndarray:
        return self.leaders[s]

    def __len__(self):
        return len(self.leaders)


def coset_leader_table(code: LinearCode) -> SyndromeTable:
    """Minimum-weight member of every coset, found by scanning errors in order of weight."""
    needed = 2 ** (code.n - code.k)
    if code.n - code.k > MAX_CODE_K:
        raise CapExceededError(f"{code.name}: syndrome table would hold 2^{code.n - code.k} entries")
    table = SyndromeTable()
    for weight in range(code.n + 1):
        for positions in itertools.combinations(range(code.n), weight):
            e = np.zeros(code.n, dtype=np.uint8)
            e[list(positions)] = 1
            table.leaders.setdefault(syndrome(code, e), e)
            if len(table) == needed:
                return table
    return table


def correct(code: LinearCode, u: Word, table: Optional[SyndromeTable] = None) -> np.ndarray:
    table = table or coset_leader_table(code)
    return as_word(u, code.n) ^ table.leader(syndrome(code, u))


def decode(code: LinearCode, u: Word, table: Optional[SyndromeTable] = None) -> Union[str, np.ndarray]:
    """Message of the nearest codeword, through the coset leader of u's syndrome."""
    message = message_of(code, correct(code, u, table))
    return word_str(message) if isinstance(u, str) else message


def dual_code(code: LinearCode) -> LinearCode:
    return LinearCode(code.H.copy(), code.G.copy(), name=f"{code.name}^perp")


def is_subcode(small: LinearCode, big: LinearCode) -> bool:
    return small.n == big.n and all(big.contains(row) for row in small.G)


def weight_enumerator(code: LinearCode) -> Dict[int, int]:
    return dict(sorted(Counter(int(w) for w in code.codewords().sum(axis=1)).items()))


def repetition_code(n: int, q: int = 2) -> LinearCode:
    if q != 2:
        raise DomainError("codes are supported over F2 only")
    if n < 1:
        raise DimensionError("repetition code needs n >= 1")
    return LinearCode(np.ones((1, n), dtype=np.uint8), name=f"Rep({n})")


def hamming_code(r: int) -> LinearCode:
    """Binary Hamming code: parity column j is the binary expansion of j, most significant bit on top."""
    if r < 2:
        raise DomainError(f"Hamming codes need r >= 2, got {r}")
    n = 2 ** r - 1
    H = np.array([[(j >> (r - 1 - row)) & 1 for j in range(1, n + 1)] for row in range(r)], dtype=np.uint8)
    return LinearCode.from_parity(H, name=f"H2({r})")


def hamming_734() -> LinearCode:
    return hamming_code(3)


def hamming_error_position(u: Word) -> int:
    """For a Hamming word with at most one flip, the syndrome read in binary is the flipped position (0 = none)."""
    code = hamming_734() if len(u) == 7 else hamming_code(int(np.log2(len(u) + 1)))
    position = int(syndrome(code, u), 2)
    logging.debug(f"Hamming syndrome of {word_str(as_word(u))} points at position {position}")
    return position
