"""Codebook membership checkers and encoders.

Three code families share one checker interface:

* ``BchCode``     — BCH(127,113,2) over GF(2^7); membership via the two
  syndromes v(alpha) and v(alpha^3), equivalent to divisibility by the
  degree-14 generator polynomial lcm(m_1, m_3).
* ``PolarCode``   — (128,114) polar code with a 6-bit CRC; membership via
  the involutory butterfly transform (frozen positions must come back zero)
  plus the CRC over the 120 unfrozen bits.
* ``GenericLinearCode`` — any code given by a full-rank parity-check matrix.

For every family the membership test is a linear map GF(2)^n -> GF(2)^m
with m <= 63, exposed as one packed integer per bit position
(``syndrome_masks``): a vector is a codeword iff the XOR of the masks over
its support is zero. That makes GRAND query loops a handful of integer XORs
per candidate. The unpacked ``check_matrix`` (n x m, uint8) serves batched
syndrome computation in the simulator.

Binary polynomials are plain ints, bit i = coefficient of x^i.
"""

from __future__ import annotations

import os
from importlib import resources

import numpy as np

__all__ = [
    "gf2_degree",
    "gf2_mul",
    "gf2_mod",
    "gf2_rank",
    "GF128",
    "BchCode",
    "PolarCode",
    "GenericLinearCode",
    "polar_transform",
    "load_code_config",
    "build_code",
    "DEFAULT_PRIMITIVE_POLY",
    "DEFAULT_CRC6_POLY",
]

DEFAULT_PRIMITIVE_POLY = 0x89  # x^7 + x^3 + 1
DEFAULT_CRC6_POLY = 0x61  # x^6 + x^5 + 1


def gf2_degree(p):
    return p.bit_length() - 1


def gf2_mul(a, b):
    """Carry-less product of two binary polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def gf2_mod(a, b):
    """Remainder of binary polynomial ``a`` modulo ``b``."""
    db = gf2_degree(b)
    while gf2_degree(a) >= db:
        a ^= b << (gf2_degree(a) - db)
    return a


def gf2_rank(mat):
    """Rank over GF(2) of a 0/1 matrix."""
    m = np.array(mat, dtype=np.uint8) % 2
    rank = 0
    rows, cols = m.shape
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        eliminate = (m[:, col] == 1) & (np.arange(rows) != rank)
        m[eliminate] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


class GF128:
    """GF(2^7) built from a degree-7 primitive polynomial.

    Elements are 7-bit ints in the polynomial basis; exp/log tables cover
    the 127 nonzero elements. Construction fails if alpha does not have
    full order 127 (i.e. the polynomial is not primitive).
    """

    ORDER = 127

    def __init__(self, primitive_poly=DEFAULT_PRIMITIVE_POLY):
        if gf2_degree(primitive_poly) != 7:
            raise ValueError(f"primitive polynomial must have degree 7, got {primitive_poly:#x}")
        self.primitive_poly = primitive_poly
        exp = []
        x = 1
        for _ in range(self.ORDER):
            exp.append(x)
            x <<= 1
            if x & 0x80:
                x ^= primitive_poly
        if x != 1 or len(set(exp)) != self.ORDER:
            raise ValueError(f"{primitive_poly:#x} is not primitive over GF(2^7)")
        self.exp = exp
        self.log = {v: i for i, v in enumerate(exp)}

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % self.ORDER]

    def alpha_pow(self, i):
        return self.exp[i % self.ORDER]

    def minimal_poly(self, exponent):
        """Minimal polynomial over GF(2) of alpha^exponent, as a packed int."""
        conjugates = []
        e = exponent % self.ORDER
        while e not in conjugates:
            conjugates.append(e)
            e = (2 * e) % self.ORDER
        coeffs = [1]  # polynomial with GF(2^7) coefficients, low degree first
        for c in conjugates:
            root = self.alpha_pow(c)
            nxt = [0] * (len(coeffs) + 1)
            for i, v in enumerate(coeffs):
                nxt[i + 1] ^= v
                nxt[i] ^= self.mul(v, root)
            coeffs = nxt
        if any(v not in (0, 1) for v in coeffs):
            raise AssertionError("minimal polynomial has non-binary coefficients")
        packed = 0
        for i, v in enumerate(coeffs):
            packed |= v << i
        return packed


def _masks_to_matrix(masks, width):
    bits = np.zeros((len(masks), width), dtype=np.uint8)
    for i, m in enumerate(masks):
        for t in range(width):
            bits[i, t] = (m >> t) & 1
    return bits


class BchCode:
    """Two-error-correcting BCH code of length 127 and dimension 113."""

    n = 127
    k = 113
    t = 2
    name = "bch127"

    def __init__(self, primitive_poly=DEFAULT_PRIMITIVE_POLY):
        self.field = GF128(primitive_poly)
        m1 = self.field.minimal_poly(1)
        m3 = self.field.minimal_poly(3)
        self.generator_poly = gf2_mul(m1, m3)
        if gf2_degree(self.generator_poly) != self.n - self.k:
            raise AssertionError("generator polynomial degree mismatch")
        if gf2_mod((1 << self.n) ^ 1, self.generator_poly) != 0:
            raise AssertionError("generator polynomial does not divide x^127 + 1")
        # Column i of the check map: [bits of alpha^i | bits of alpha^{3i}].
        masks = [
            self.field.alpha_pow(i) | (self.field.alpha_pow(3 * i) << 7)
            for i in range(self.n)
        ]
        self.syndrome_masks = np.array(masks, dtype=np.int64)
        self.check_matrix = _masks_to_matrix(masks, 14)
        # Systematic encoding: parity row i = x^{14+i} mod g.
        deg = self.n - self.k
        rows = [gf2_mod(1 << (deg + i), self.generator_poly) for i in range(self.k)]
        self._parity = _masks_to_matrix(rows, deg)

    @property
    def rate(self):
        return self.k / self.n

    def encode(self, msg):
        """Systematic codeword(s): parity bits at positions 0..13, message at 14..126."""
        arr = np.asarray(msg, dtype=np.uint8)
        single = arr.ndim == 1
        msg2 = np.atleast_2d(arr)
        if msg2.shape[-1] != self.k:
            raise ValueError(f"message length must be {self.k}")
        parity = (msg2.astype(np.float32) @ self._parity.astype(np.float32)) % 2
        cw = np.concatenate([parity.astype(np.uint8), msg2], axis=-1)
        return cw[0] if single else cw

    def syndrome_int(self, v):
        support = np.flatnonzero(np.asarray(v, dtype=np.uint8))
        if support.size == 0:
            return 0
        return int(np.bitwise_xor.reduce(self.syndrome_masks[support]))

    def is_codeword(self, v):
        return self.syndrome_int(v) == 0


def polar_transform(u):
    """Butterfly transform x = u F^{(x)log2(n)} with F = [[1,0],[1,1]] over GF(2).

    Involutory: applying it twice restores the input. Accepts one vector or
    a batch whose last axis is the block.
    """
    x = np.array(u, dtype=np.uint8, copy=True)
    n = x.shape[-1]
    if n & (n - 1):
        raise ValueError("block length must be a power of two")
    span = 1
    while span < n:
        for i in range(0, n, 2 * span):
            x[..., i : i + span] ^= x[..., i + span : i + 2 * span]
        span *= 2
    return x


def _crc_unit_rows(length, crc_poly):
    """Contribution of each stream bit to the CRC check remainder."""
    deg = gf2_degree(crc_poly)
    rows = [gf2_mod(1 << (length - 1 - s), crc_poly) for s in range(length)]
    return _masks_to_matrix(rows, deg)


class PolarCode:
    """Polar (128,114) code: frozen positions zero, 6-bit CRC on the data.

    Membership applies the butterfly transform (its own inverse) and checks
    that the frozen entries are zero and the 120 unfrozen bits pass the CRC.
    """

    n = 128
    info_len = 114
    crc_len = 6
    name = "polar128"

    def __init__(self, frozen_set, crc_poly=DEFAULT_CRC6_POLY):
        frozen = tuple(sorted(set(int(i) for i in frozen_set)))
        if len(frozen) != self.n - self.info_len - self.crc_len:
            raise ValueError(
                f"need exactly {self.n - self.info_len - self.crc_len} frozen indices, got {len(frozen)}"
            )
        if frozen and (frozen[0] < 0 or frozen[-1] >= self.n):
            raise ValueError("frozen indices out of range")
        if gf2_degree(crc_poly) != self.crc_len:
            raise ValueError(f"CRC polynomial must have degree {self.crc_len}")
        self.frozen_set = frozen
        self.crc_poly = crc_poly
        self.unfrozen = tuple(i for i in range(self.n) if i not in set(frozen))

        # CRC generation matrix: remainder of x^{6 + (113 - i)} per message bit.
        gen_rows = [
            gf2_mod(1 << (self.crc_len + self.info_len - 1 - i), crc_poly)
            for i in range(self.info_len)
        ]
        self._crc_gen = _masks_to_matrix(gen_rows, self.crc_len)
        self._crc_check = _crc_unit_rows(self.info_len + self.crc_len, crc_poly)

        # Linear membership map: transform, take frozen bits, CRC the rest.
        transform_rows = polar_transform(np.eye(self.n, dtype=np.uint8))
        frozen_part = transform_rows[:, list(frozen)]
        crc_part = (
            transform_rows[:, list(self.unfrozen)].astype(np.float32)
            @ self._crc_check.astype(np.float32)
        ) % 2
        self.check_matrix = np.concatenate(
            [frozen_part, crc_part.astype(np.uint8)], axis=1
        )
        weights = (1 << np.arange(self.check_matrix.shape[1], dtype=np.int64))
        self.syndrome_masks = (self.check_matrix.astype(np.int64) @ weights).astype(np.int64)
        if np.any(self.syndrome_masks == 0):
            raise AssertionError("degenerate check map: some single flip is undetectable")

    @classmethod
    def default(cls):
        """Build from the packaged config (frozen set from the universal
        reliability order for block length 128)."""
        cfg = resources.files("orbgrand").joinpath("data/polar128_5g.cfg").read_text()
        return build_code(parse_code_config(cfg))

    @property
    def k(self):
        return self.info_len

    @property
    def rate(self):
        # CRC bits are overhead: energy per *information* bit uses K = 114.
        return self.info_len / self.n

    def crc_bits(self, msg):
        """CRC of the message, MSB first (ready to append to the data)."""
        msg = np.atleast_2d(np.asarray(msg, dtype=np.uint8))
        crc = (msg.astype(np.float32) @ self._crc_gen.astype(np.float32)) % 2
        return crc.astype(np.uint8)[:, ::-1]

    def encode(self, msg):
        arr = np.asarray(msg, dtype=np.uint8)
        single = arr.ndim == 1
        msg2 = np.atleast_2d(arr)
        if msg2.shape[-1] != self.info_len:
            raise ValueError(f"message length must be {self.info_len}")
        payload = np.concatenate([msg2, self.crc_bits(msg2)], axis=-1)
        u = np.zeros((msg2.shape[0], self.n), dtype=np.uint8)
        u[:, list(self.unfrozen)] = payload
        x = polar_transform(u)
        return x[0] if single else x

    def syndrome_int(self, v):
        support = np.flatnonzero(np.asarray(v, dtype=np.uint8))
        if support.size == 0:
            return 0
        return int(np.bitwise_xor.reduce(self.syndrome_masks[support]))

    def is_codeword(self, v):
        return self.syndrome_int(v) == 0


class GenericLinearCode:
    """Linear code defined by a full-rank parity-check matrix H."""

    name = "generic"

    def __init__(self, parity_check_matrix):
        h = np.array(parity_check_matrix, dtype=np.uint8) % 2
        if h.ndim != 2:
            raise ValueError("H must be a 2-D 0/1 matrix")
        m, n = h.shape
        if m >= n:
            raise ValueError("H must have fewer rows than columns")
        if m > 63:
            raise ValueError("at most 63 check equations supported")
        if gf2_rank(h) != m:
            raise ValueError("H must have full row rank")
        self.h = h
        self.n = n
        self.k = n - m
        weights = (1 << np.arange(m, dtype=np.int64))
        self.check_matrix = h.T.copy()
        self.syndrome_masks = (self.check_matrix.astype(np.int64) @ weights).astype(np.int64)
        self._generator = self._systematic_generator()

    @property
    def rate(self):
        return self.k / self.n

    def _systematic_generator(self):
        """Generator matrix with message bits on the non-pivot columns of H."""
        h = self.h.copy()
        m, n = h.shape
        pivots = []
        row = 0
        for col in range(n):
            pivot = None
            for r in range(row, m):
                if h[r, col]:
                    pivot = r
                    break
            if pivot is None:
                continue
            h[[row, pivot]] = h[[pivot, row]]
            eliminate = (h[:, col] == 1) & (np.arange(m) != row)
            h[eliminate] ^= h[row]
            pivots.append(col)
            row += 1
            if row == m:
                break
        info = [c for c in range(n) if c not in set(pivots)]
        g = np.zeros((self.k, n), dtype=np.uint8)
        for i, col in enumerate(info):
            g[i, col] = 1
            # pivot column p (row r of reduced H) must absorb h[r, col]
            for r, p in enumerate(pivots):
                g[i, p] = h[r, col]
        self.info_positions = tuple(info)
        return g

    def encode(self, msg):
        arr = np.asarray(msg, dtype=np.uint8)
        single = arr.ndim == 1
        msg2 = np.atleast_2d(arr)
        if msg2.shape[-1] != self.k:
            raise ValueError(f"message length must be {self.k}")
        cw = (msg2.astype(np.float32) @ self._generator.astype(np.float32)) % 2
        cw = cw.astype(np.uint8)
        return cw[0] if single else cw

    def syndrome_int(self, v):
        v = np.asarray(v, dtype=np.uint8)
        if v.shape[-1] != self.n:
            raise ValueError(f"vector length must be {self.n}")
        support = np.flatnonzero(v)
        if support.size == 0:
            return 0
        return int(np.bitwise_xor.reduce(self.syndrome_masks[support]))

    def is_codeword(self, v):
        return self.syndrome_int(v) == 0


# ---------------------------------------------------------------------------
# Config files: plain "key = value" lines, '#' comments.


def parse_code_config(text):
    cfg = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        cfg[key] = value
    return cfg


def load_code_config(path):
    with open(path) as fh:
        cfg = parse_code_config(fh.read())
    cfg["_dir"] = os.path.dirname(os.path.abspath(path))
    return cfg


def build_code(spec):
    """Build a code object from a name ('bch127', 'polar128'), a config-file
    path, or an already-parsed config dict."""
    if isinstance(spec, str):
        if spec == "bch127":
            return BchCode()
        if spec == "polar128":
            return PolarCode.default()
        return build_code(load_code_config(spec))
    cfg = spec
    kind = cfg.get("code")
    if kind == "bch127":
        prim = int(cfg.get("primitive_poly", hex(DEFAULT_PRIMITIVE_POLY)), 16)
        return BchCode(primitive_poly=prim)
    if kind == "polar128":
        if "frozen_set" not in cfg:
            raise ValueError("polar128 config requires frozen_set")
        frozen = [int(tok) for tok in cfg["frozen_set"].split(",")]
        crc = int(cfg.get("crc_poly", hex(DEFAULT_CRC6_POLY)), 16)
        return PolarCode(frozen_set=frozen, crc_poly=crc)
    if kind == "generic":
        if "h_matrix" not in cfg:
            raise ValueError("generic config requires h_matrix")
        path = cfg["h_matrix"]
        base = cfg.get("_dir")
        if base and not os.path.isabs(path):
            path = os.path.join(base, path)
        with open(path) as fh:
            rows = [
                [int(ch) for ch in line.strip()]
                for line in fh
                if line.strip() and not line.startswith("#")
            ]
        return GenericLinearCode(np.array(rows, dtype=np.uint8))
    raise ValueError(f"unknown code {kind!r}")
