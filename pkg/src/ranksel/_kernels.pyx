# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled query kernels.

C twin of ``ranksel._pure``: same operations, same semantics, selected
automatically by ``ranksel._backend`` when this extension is importable.
The hot paths live in the verbatim C block below; the Cython layer only
unwraps memoryviews and loops for the batch variants.

In-word select uses broadword arithmetic by default and switches to the
bit-deposit instruction at import time when the CPU has it; both paths
stay reachable through :func:`set_select_path` so either can be tested
and benchmarked.
"""

import numpy as np

from libc.stdint cimport int64_t, uint16_t, uint32_t, uint64_t

cdef extern from *:
    r"""
    #include <stdint.h>

    #if defined(__GNUC__) || defined(__clang__)
    #  define RS_POPCOUNT64(x) ((unsigned) __builtin_popcountll(x))
    #else
    static unsigned rs_popcount_soft(uint64_t x) {
        x = x - ((x >> 1) & 0x5555555555555555ULL);
        x = (x & 0x3333333333333333ULL) + ((x >> 2) & 0x3333333333333333ULL);
        x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0FULL;
        return (unsigned)((x * 0x0101010101010101ULL) >> 56);
    }
    #  define RS_POPCOUNT64(x) rs_popcount_soft(x)
    #endif

    /* ---- in-word select ------------------------------------------------ */

    static uint8_t RS_SELECT_IN_BYTE[2048];

    static void rs_init_select_in_byte(void) {
        int b, i, seen;
        for (b = 0; b < 256; ++b) {
            seen = 0;
            for (i = 0; i < 8; ++i) {
                if ((b >> i) & 1) {
                    RS_SELECT_IN_BYTE[(seen << 8) | b] = (uint8_t)i;
                    ++seen;
                }
            }
            for (; seen < 8; ++seen)
                RS_SELECT_IN_BYTE[(seen << 8) | b] = 8;
        }
    }

    /* Broadword select of the (k+1)-th set bit, k zero-based:
       per-byte inclusive prefix popcounts via multiplication, locate the
       byte with a SWAR comparison, finish in a 2 KiB byte table. */
    static unsigned rs_select64_broadword(uint64_t x, unsigned k) {
        const uint64_t ones8 = 0x0101010101010101ULL;
        const uint64_t msbs8 = 0x8080808080808080ULL;
        uint64_t s, k8, geq;
        unsigned place, bits_before;
        s = x - ((x >> 1) & 0x5555555555555555ULL);
        s = (s & 0x3333333333333333ULL) + ((s >> 2) & 0x3333333333333333ULL);
        s = ((s + (s >> 4)) & 0x0F0F0F0F0F0F0F0FULL) * ones8;
        k8 = (uint64_t)k * ones8;
        geq = ((k8 | msbs8) - s) & msbs8;
        place = RS_POPCOUNT64(geq) << 3;
        bits_before = (unsigned)(((s << 8) >> place) & 0xFF);
        return place + RS_SELECT_IN_BYTE[((k - bits_before) << 8) | ((x >> place) & 0xFF)];
    }

    #if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    #include <immintrin.h>
    __attribute__((target("bmi2")))
    static unsigned rs_select64_pdep(uint64_t x, unsigned k) {
        return (unsigned) __builtin_ctzll(_pdep_u64(1ULL << k, x));
    }
    static int rs_have_pdep(void) { return __builtin_cpu_supports("bmi2"); }
    #else
    static unsigned rs_select64_pdep(uint64_t x, unsigned k) {
        return rs_select64_broadword(x, k);
    }
    static int rs_have_pdep(void) { return 0; }
    #endif

    typedef unsigned (*rs_select64_fn)(uint64_t, unsigned);
    static rs_select64_fn rs_select64 = rs_select64_broadword;

    static void rs_set_select_mode(int use_pdep) {
        rs_select64 = use_pdep ? rs_select64_pdep : rs_select64_broadword;
    }

    /* ---- shared query pieces -------------------------------------------- */

    /* scan 64-bit words of one basic block for the r-th alpha bit */
    static uint64_t rs_finish(const uint64_t* words, uint64_t w, int alpha, uint64_t r) {
        for (;;) {
            uint64_t target = alpha ? words[w] : ~words[w];
            unsigned c = RS_POPCOUNT64(target);
            if (r <= c) return (w << 6) + rs_select64(target, (unsigned)(r - 1));
            r -= c;
            ++w;
        }
    }

    /* ---- poppy: 64-bit entry = uint32 block count | three 10-bit fields - */

    static uint64_t rs_poppy_rank1(const uint64_t* l0, const uint64_t* l12,
                                   const uint64_t* words, uint64_t n,
                                   uint64_t total, uint64_t i) {
        uint64_t e, res, w0, wq, w;
        uint32_t fields;
        unsigned k, t, rem;
        if (i == n) return total;
        e = l12[i >> 11];
        res = l0[i >> 32] + (uint32_t)e;
        fields = (uint32_t)(e >> 32);
        k = (unsigned)((i >> 9) & 3);
        for (t = 0; t < k; ++t) res += (fields >> (10 * t)) & 0x3FF;
        w0 = (i >> 9) << 3;
        wq = i >> 6;
        for (w = w0; w < wq; ++w) res += RS_POPCOUNT64(words[w]);
        rem = (unsigned)(i & 63);
        if (rem) res += RS_POPCOUNT64(words[wq] & ((1ULL << rem) - 1));
        return res;
    }

    static uint64_t rs_poppy_select(const uint64_t* l0, uint64_t nl0,
                                    const uint64_t* l12, uint64_t nl12,
                                    const uint64_t* samples, uint64_t nsamples,
                                    const uint64_t* words, int alpha, uint64_t j) {
        uint64_t b0 = 0, jr, base, end, start, b, r, e, f;
        uint32_t fields;
        unsigned k;
        if (alpha) {
            while (b0 + 1 < nl0 && l0[b0 + 1] < j) ++b0;
            jr = j - l0[b0];
        } else {
            while (b0 + 1 < nl0 && ((b0 + 1) << 32) - l0[b0 + 1] < j) ++b0;
            jr = j - ((b0 << 32) - l0[b0]);
        }
        base = b0 << 21;
        end = (b0 + 1) << 21;
        if (end > nl12) end = nl12;
        start = base;
        if (nsamples) {
            uint64_t sb = samples[(j - 1) >> 13] >> 11;
            if (sb > start) start = sb;
        }
        b = start;
        if (alpha) {
            while (b + 1 < end && (uint32_t)l12[b + 1] < jr) ++b;
            e = l12[b];
            r = jr - (uint32_t)e;
        } else {
            while (b + 1 < end && ((b + 1 - base) << 11) - (uint32_t)l12[b + 1] < jr) ++b;
            e = l12[b];
            r = jr - (((b - base) << 11) - (uint32_t)e);
        }
        fields = (uint32_t)(e >> 32);
        k = 0;
        while (k < 3) {
            f = (fields >> (10 * k)) & 0x3FF;
            if (!alpha) f = 512 - f;
            if (r <= f) break;
            r -= f;
            ++k;
        }
        return rs_finish(words, ((b << 2) + k) << 3, alpha, r);
    }

    /* ---- flat: 128-bit entry = 44-bit count | seven 12-bit cumulative --- */

    #define RS_FLAT_L1_MASK 0xFFFFFFFFFFFULL

    static unsigned rs_flat_ck(uint64_t lo, uint64_t hi, unsigned k) {
        unsigned s = 44u + 12u * (k - 1u);
        __uint128_t e = (((__uint128_t)hi) << 64) | lo;
        return (unsigned)(((uint64_t)(e >> s)) & 0xFFFu);
    }

    static unsigned rs_flat_field(uint64_t lo, uint64_t hi, unsigned k, int alpha) {
        unsigned c = rs_flat_ck(lo, hi, k);
        return alpha ? c : 512u * k - c;
    }

    /* widen seven 12-bit fields to 16-bit lanes: 16-bit reads at every
       third byte masked to 12 bits, interleaved with 16-bit reads at the
       following byte shifted right by four */
    static void rs_unpack12(uint64_t lo, uint64_t hi, uint16_t out[7]) {
        __uint128_t packed = ((((__uint128_t)hi) << 64) | lo) >> 44;
        int m;
        for (m = 0; m < 4; ++m)
            out[2 * m] = (uint16_t)(((uint64_t)(packed >> (24 * m))) & 0x0FFFu);
        for (m = 0; m < 3; ++m)
            out[2 * m + 1] = (uint16_t)((((uint64_t)(packed >> (24 * m + 8))) & 0xFFFFu) >> 4);
    }

    static unsigned rs_search7(uint64_t lo, uint64_t hi, unsigned r, int alpha, int strategy) {
        if (strategy == 2) {        /* compare all lanes against r - 1 */
            uint16_t lanes[7];
            int32_t t = (int32_t)r - 1;
            unsigned q = 0;
            int k;
            rs_unpack12(lo, hi, lanes);
            if (alpha) {
                for (k = 0; k < 7; ++k) q += (int32_t)lanes[k] > t;
            } else {
                for (k = 0; k < 7; ++k) q += (int32_t)(512 * (k + 1)) - (int32_t)lanes[k] > t;
            }
            return 7u - q;
        }
        if (strategy == 1) {        /* uniform binary: exactly three probes */
            unsigned b = (rs_flat_field(lo, hi, 4, alpha) < r) ? 4u : 0u;
            if (rs_flat_field(lo, hi, b + 2, alpha) < r) b += 2;
            if (rs_flat_field(lo, hi, b + 1, alpha) < r) b += 1;
            return b;
        }
        {                           /* linear scan with early exit */
            unsigned b = 0;
            while (b < 7 && rs_flat_field(lo, hi, b + 1, alpha) < r) ++b;
            return b;
        }
    }

    static uint64_t rs_flat_rank1(const uint64_t* l0, uint64_t nl0,
                                  const uint64_t* ebuf, const uint64_t* words,
                                  uint64_t n, uint64_t total, uint64_t i) {
        uint64_t b, lo, hi, res, w0, wq, w;
        unsigned k, rem;
        if (i == n) return total;
        b = i >> 12;
        lo = ebuf[2 * b];
        hi = ebuf[2 * b + 1];
        res = lo & RS_FLAT_L1_MASK;
        if (nl0) res += l0[i >> 44];
        k = (unsigned)((i >> 9) & 7);
        if (k) res += rs_flat_ck(lo, hi, k);
        w0 = (i >> 9) << 3;
        wq = i >> 6;
        for (w = w0; w < wq; ++w) res += RS_POPCOUNT64(words[w]);
        rem = (unsigned)(i & 63);
        if (rem) res += RS_POPCOUNT64(words[wq] & ((1ULL << rem) - 1));
        return res;
    }

    static uint64_t rs_flat_select(const uint64_t* l0, uint64_t nl0,
                                   const uint64_t* ebuf, uint64_t nl1,
                                   const uint64_t* samples, uint64_t nsamples,
                                   const uint64_t* words, int alpha, uint64_t j,
                                   int strategy) {
        uint64_t b0 = 0, jr = j, base = 0, end = nl1, start, b, r, lo, hi;
        unsigned k;
        if (nl0) {
            if (alpha) {
                while (b0 + 1 < nl0 && l0[b0 + 1] < j) ++b0;
                jr = j - l0[b0];
            } else {
                while (b0 + 1 < nl0 && ((b0 + 1) << 44) - l0[b0 + 1] < j) ++b0;
                jr = j - ((b0 << 44) - l0[b0]);
            }
            base = b0 << 32;
            end = (b0 + 1) << 32;
            if (end > nl1) end = nl1;
        }
        start = base;
        if (nsamples) {
            uint64_t sb = samples[(j - 1) >> 13] >> 12;
            if (sb > start) start = sb;
        }
        b = start;
        if (alpha) {
            while (b + 1 < end && (ebuf[2 * b + 2] & RS_FLAT_L1_MASK) < jr) ++b;
            r = jr - (ebuf[2 * b] & RS_FLAT_L1_MASK);
        } else {
            while (b + 1 < end && ((b + 1 - base) << 12) - (ebuf[2 * b + 2] & RS_FLAT_L1_MASK) < jr) ++b;
            r = jr - (((b - base) << 12) - (ebuf[2 * b] & RS_FLAT_L1_MASK));
        }
        lo = ebuf[2 * b];
        hi = ebuf[2 * b + 1];
        k = rs_search7(lo, hi, (unsigned)r, alpha, strategy);
        if (k) {
            unsigned c = rs_flat_ck(lo, hi, k);
            r -= alpha ? c : (k << 9) - c;
        }
        return rs_finish(words, ((b << 3) + k) << 3, alpha, r);
    }

    /* ---- wide: 64-bit block counts + 127 cumulative 16-bit counters ----- */

    static unsigned rs_wide_field(const uint16_t* l2, unsigned k, int alpha) {
        unsigned c = l2[k - 1];
        return alpha ? c : 512u * k - c;
    }

    static unsigned rs_search127(const uint16_t* l2, unsigned r, int alpha, int strategy) {
        if (strategy == 2) {
            int32_t t = (int32_t)r - 1;
            unsigned q = 0;
            int k;
            if (alpha) {
                for (k = 0; k < 127; ++k) q += (int32_t)l2[k] > t;
            } else {
                for (k = 0; k < 127; ++k) q += (int32_t)(512 * (k + 1)) - (int32_t)l2[k] > t;
            }
            return 127u - q;
        }
        if (strategy == 1) {        /* fixed seven-level schedule */
            unsigned b = (rs_wide_field(l2, 64, alpha) < r) ? 64u : 0u;
            unsigned step;
            for (step = 32; step >= 1; step >>= 1)
                if (rs_wide_field(l2, b + step, alpha) < r) b += step;
            return b;
        }
        {
            unsigned b = 0;
            while (b < 127 && rs_wide_field(l2, b + 1, alpha) < r) ++b;
            return b;
        }
    }

    static uint64_t rs_wide_rank1(const uint64_t* l1, const uint16_t* l2,
                                  const uint64_t* words, uint64_t n,
                                  uint64_t total, uint64_t i) {
        uint64_t b, res, w0, wq, w;
        unsigned k, rem;
        if (i == n) return total;
        b = i >> 16;
        res = l1[b];
        k = (unsigned)((i >> 9) & 127);
        if (k) res += l2[127 * b + k - 1];
        w0 = (i >> 9) << 3;
        wq = i >> 6;
        for (w = w0; w < wq; ++w) res += RS_POPCOUNT64(words[w]);
        rem = (unsigned)(i & 63);
        if (rem) res += RS_POPCOUNT64(words[wq] & ((1ULL << rem) - 1));
        return res;
    }

    static uint64_t rs_wide_select(const uint64_t* l1, uint64_t nl1,
                                   const uint16_t* l2,
                                   const uint64_t* samples, uint64_t nsamples,
                                   const uint64_t* words, int alpha, uint64_t j,
                                   int strategy) {
        uint64_t start = 0, b, r;
        unsigned k;
        if (nsamples) start = samples[(j - 1) >> 13] >> 16;
        b = start;
        if (alpha) {
            while (b + 1 < nl1 && l1[b + 1] < j) ++b;
            r = j - l1[b];
        } else {
            while (b + 1 < nl1 && ((b + 1) << 16) - l1[b + 1] < j) ++b;
            r = j - ((b << 16) - l1[b]);
        }
        k = rs_search127(l2 + 127 * b, (unsigned)r, alpha, strategy);
        if (k) r -= rs_wide_field(l2 + 127 * b, k, alpha);
        return rs_finish(words, ((b << 7) + k) << 3, alpha, r);
    }
    """
    unsigned RS_POPCOUNT64(uint64_t x) nogil
    void rs_init_select_in_byte() nogil
    unsigned rs_select64_broadword(uint64_t x, unsigned k) nogil
    unsigned rs_select64_pdep(uint64_t x, unsigned k) nogil
    int rs_have_pdep() nogil
    unsigned (*rs_select64)(uint64_t, unsigned) nogil
    void rs_set_select_mode(int use_pdep) nogil
    uint64_t rs_finish(const uint64_t* words, uint64_t w, int alpha, uint64_t r) nogil
    uint64_t rs_poppy_rank1(const uint64_t* l0, const uint64_t* l12,
                            const uint64_t* words, uint64_t n,
                            uint64_t total, uint64_t i) nogil
    uint64_t rs_poppy_select(const uint64_t* l0, uint64_t nl0,
                             const uint64_t* l12, uint64_t nl12,
                             const uint64_t* samples, uint64_t nsamples,
                             const uint64_t* words, int alpha, uint64_t j) nogil
    uint64_t rs_flat_rank1(const uint64_t* l0, uint64_t nl0,
                           const uint64_t* ebuf, const uint64_t* words,
                           uint64_t n, uint64_t total, uint64_t i) nogil
    uint64_t rs_flat_select(const uint64_t* l0, uint64_t nl0,
                            const uint64_t* ebuf, uint64_t nl1,
                            const uint64_t* samples, uint64_t nsamples,
                            const uint64_t* words, int alpha, uint64_t j,
                            int strategy) nogil
    uint64_t rs_wide_rank1(const uint64_t* l1, const uint16_t* l2,
                           const uint64_t* words, uint64_t n,
                           uint64_t total, uint64_t i) nogil
    uint64_t rs_wide_select(const uint64_t* l1, uint64_t nl1,
                            const uint16_t* l2,
                            const uint64_t* samples, uint64_t nsamples,
                            const uint64_t* words, int alpha, uint64_t j,
                            int strategy) nogil

IS_COMPILED = True

rs_init_select_in_byte()
HAS_PDEP = bool(rs_have_pdep())
if HAS_PDEP:
    rs_set_select_mode(1)
_select_path = "pdep" if HAS_PDEP else "portable"


cdef inline const uint64_t* _p64(const uint64_t[::1] a) noexcept nogil:
    if a.shape[0] == 0:
        return NULL
    return &a[0]


cdef inline const uint16_t* _p16(const uint16_t[::1] a) noexcept nogil:
    if a.shape[0] == 0:
        return NULL
    return &a[0]


# ---------------------------------------------------------------------------
# word-level primitives

def popcount_word(w):
    return RS_POPCOUNT64(<uint64_t> w)


def select_in_word(w, j):
    return rs_select64(<uint64_t> w, <unsigned> (j - 1))


def select0_in_word(w, j):
    return rs_select64(~(<uint64_t> w), <unsigned> (j - 1))


def select_in_word_portable(w, j):
    return rs_select64_broadword(<uint64_t> w, <unsigned> (j - 1))


def select_in_word_pdep(w, j):
    if not HAS_PDEP:
        raise RuntimeError("CPU does not support the bit-deposit instruction")
    return rs_select64_pdep(<uint64_t> w, <unsigned> (j - 1))


def set_select_path(name):
    """Pick the in-word select implementation: auto, portable, or pdep."""
    global _select_path
    if name == "auto":
        rs_set_select_mode(1 if HAS_PDEP else 0)
        _select_path = "pdep" if HAS_PDEP else "portable"
    elif name == "portable":
        rs_set_select_mode(0)
        _select_path = "portable"
    elif name == "pdep":
        if not HAS_PDEP:
            raise ValueError("CPU does not support the bit-deposit instruction")
        rs_set_select_mode(1)
        _select_path = "pdep"
    else:
        raise ValueError(f"unknown select path {name!r}")


def select_path():
    return _select_path


# ---------------------------------------------------------------------------
# construction helpers

def block_popcounts(const uint64_t[::1] words):
    """Popcount of every 512-bit basic block (8-word groups, short tail ok)."""
    cdef Py_ssize_t nw = words.shape[0]
    cdef Py_ssize_t nb = (nw + 7) // 8
    out = np.zeros(nb, dtype=np.uint64)
    cdef uint64_t[::1] o = out
    cdef Py_ssize_t bi, base, t, full = nw // 8
    cdef uint64_t s
    with nogil:
        for bi in range(full):
            base = bi * 8
            s = 0
            for t in range(8):
                s += RS_POPCOUNT64(words[base + t])
            o[bi] = s
        if full < nb:
            s = 0
            for t in range(full * 8, nw):
                s += RS_POPCOUNT64(words[t])
            o[full] = s
    return out


def basic_select_batch(const uint64_t[::1] words, const int64_t[::1] blocks,
                       const int64_t[::1] ranks, int alpha, uint64_t[::1] out):
    """Per query: position of the rank-th alpha bit inside basic block b."""
    cdef Py_ssize_t m
    cdef const uint64_t* pw = _p64(words)
    with nogil:
        for m in range(blocks.shape[0]):
            out[m] = rs_finish(pw, (<uint64_t> blocks[m]) << 3, alpha,
                               <uint64_t> ranks[m])


def count_ones_range(const uint64_t[::1] words, start, end):
    """Number of set bits in bit positions [start, end) of the word array."""
    cdef uint64_t s = start, e = end, ws, we, w, span, total = 0
    cdef unsigned rem
    if s >= e:
        return 0
    ws = s >> 6
    we = (e - 1) >> 6
    if ws == we:
        span = e - s
        if span == 64:
            return RS_POPCOUNT64(words[ws])
        return RS_POPCOUNT64((words[ws] >> (s & 63)) & (((<uint64_t> 1) << span) - 1))
    total = RS_POPCOUNT64(words[ws] >> (s & 63))
    for w in range(ws + 1, we):
        total += RS_POPCOUNT64(words[w])
    rem = <unsigned> (e - (we << 6))
    if rem == 64:
        total += RS_POPCOUNT64(words[we])
    else:
        total += RS_POPCOUNT64(words[we] & (((<uint64_t> 1) << rem) - 1))
    return total


# ---------------------------------------------------------------------------
# poppy

def poppy_rank1(const uint64_t[::1] l0, const uint64_t[::1] l12,
                const uint64_t[::1] words, uint64_t n, uint64_t total_ones,
                uint64_t i):
    return rs_poppy_rank1(_p64(l0), _p64(l12), _p64(words), n, total_ones, i)


def poppy_select(const uint64_t[::1] l0, const uint64_t[::1] l12,
                 const uint64_t[::1] samples, const uint64_t[::1] words,
                 uint64_t n, int alpha, uint64_t j):
    return rs_poppy_select(_p64(l0), <uint64_t> l0.shape[0],
                           _p64(l12), <uint64_t> l12.shape[0],
                           _p64(samples), <uint64_t> samples.shape[0],
                           _p64(words), alpha, j)


def poppy_rank1_batch(const uint64_t[::1] l0, const uint64_t[::1] l12,
                      const uint64_t[::1] words, uint64_t n, uint64_t total_ones,
                      const int64_t[::1] queries, uint64_t[::1] out):
    cdef Py_ssize_t t
    cdef const uint64_t* pl0 = _p64(l0)
    cdef const uint64_t* pl12 = _p64(l12)
    cdef const uint64_t* pw = _p64(words)
    with nogil:
        for t in range(queries.shape[0]):
            out[t] = rs_poppy_rank1(pl0, pl12, pw, n, total_ones, <uint64_t> queries[t])


def poppy_select_batch(const uint64_t[::1] l0, const uint64_t[::1] l12,
                       const uint64_t[::1] samples, const uint64_t[::1] words,
                       uint64_t n, int alpha,
                       const int64_t[::1] queries, uint64_t[::1] out):
    cdef Py_ssize_t t
    cdef const uint64_t* pl0 = _p64(l0)
    cdef const uint64_t* pl12 = _p64(l12)
    cdef const uint64_t* ps = _p64(samples)
    cdef const uint64_t* pw = _p64(words)
    cdef uint64_t nl0 = l0.shape[0], nl12 = l12.shape[0], ns = samples.shape[0]
    with nogil:
        for t in range(queries.shape[0]):
            out[t] = rs_poppy_select(pl0, nl0, pl12, nl12, ps, ns, pw, alpha,
                                     <uint64_t> queries[t])


# ---------------------------------------------------------------------------
# flat

def flat_rank1(const uint64_t[::1] l0, const uint64_t[::1] ebuf,
               const uint64_t[::1] words, uint64_t n, uint64_t total_ones,
               uint64_t i):
    return rs_flat_rank1(_p64(l0), <uint64_t> l0.shape[0], _p64(ebuf),
                         _p64(words), n, total_ones, i)


def flat_select(const uint64_t[::1] l0, const uint64_t[::1] ebuf,
                const uint64_t[::1] samples, const uint64_t[::1] words,
                uint64_t n, int alpha, uint64_t j, int strategy):
    return rs_flat_select(_p64(l0), <uint64_t> l0.shape[0],
                          _p64(ebuf), <uint64_t> (ebuf.shape[0] >> 1),
                          _p64(samples), <uint64_t> samples.shape[0],
                          _p64(words), alpha, j, strategy)


def flat_rank1_batch(const uint64_t[::1] l0, const uint64_t[::1] ebuf,
                     const uint64_t[::1] words, uint64_t n, uint64_t total_ones,
                     const int64_t[::1] queries, uint64_t[::1] out):
    cdef Py_ssize_t t
    cdef const uint64_t* pl0 = _p64(l0)
    cdef const uint64_t* pe = _p64(ebuf)
    cdef const uint64_t* pw = _p64(words)
    cdef uint64_t nl0 = l0.shape[0]
    with nogil:
        for t in range(queries.shape[0]):
            out[t] = rs_flat_rank1(pl0, nl0, pe, pw, n, total_ones,
                                   <uint64_t> queries[t])


def flat_select_batch(const uint64_t[::1] l0, const uint64_t[::1] ebuf,
                      const uint64_t[::1] samples, const uint64_t[::1] words,
                      uint64_t n, int alpha,
                      const int64_t[::1] queries, uint64_t[::1] out, int strategy):
    cdef Py_ssize_t t
    cdef const uint64_t* pl0 = _p64(l0)
    cdef const uint64_t* pe = _p64(ebuf)
    cdef const uint64_t* ps = _p64(samples)
    cdef const uint64_t* pw = _p64(words)
    cdef uint64_t nl0 = l0.shape[0], nl1 = ebuf.shape[0] >> 1, ns = samples.shape[0]
    with nogil:
        for t in range(queries.shape[0]):
            out[t] = rs_flat_select(pl0, nl0, pe, nl1, ps, ns, pw, alpha,
                                    <uint64_t> queries[t], strategy)


# ---------------------------------------------------------------------------
# wide

def wide_rank1(const uint64_t[::1] l1, const uint16_t[::1] l2,
               const uint64_t[::1] words, uint64_t n, uint64_t total_ones,
               uint64_t i):
    return rs_wide_rank1(_p64(l1), _p16(l2), _p64(words), n, total_ones, i)


def wide_select(const uint64_t[::1] l1, const uint16_t[::1] l2,
                const uint64_t[::1] samples, const uint64_t[::1] words,
                uint64_t n, int alpha, uint64_t j, int strategy):
    return rs_wide_select(_p64(l1), <uint64_t> l1.shape[0], _p16(l2),
                          _p64(samples), <uint64_t> samples.shape[0],
                          _p64(words), alpha, j, strategy)


def wide_rank1_batch(const uint64_t[::1] l1, const uint16_t[::1] l2,
                     const uint64_t[::1] words, uint64_t n, uint64_t total_ones,
                     const int64_t[::1] queries, uint64_t[::1] out):
    cdef Py_ssize_t t
    cdef const uint64_t* pl1 = _p64(l1)
    cdef const uint16_t* pl2 = _p16(l2)
    cdef const uint64_t* pw = _p64(words)
    with nogil:
        for t in range(queries.shape[0]):
            out[t] = rs_wide_rank1(pl1, pl2, pw, n, total_ones, <uint64_t> queries[t])


def wide_select_batch(const uint64_t[::1] l1, const uint16_t[::1] l2,
                      const uint64_t[::1] samples, const uint64_t[::1] words,
                      uint64_t n, int alpha,
                      const int64_t[::1] queries, uint64_t[::1] out, int strategy):
    cdef Py_ssize_t t
    cdef const uint64_t* pl1 = _p64(l1)
    cdef const uint16_t* pl2 = _p16(l2)
    cdef const uint64_t* ps = _p64(samples)
    cdef const uint64_t* pw = _p64(words)
    cdef uint64_t nl1 = l1.shape[0], ns = samples.shape[0]
    with nogil:
        for t in range(queries.shape[0]):
            out[t] = rs_wide_select(pl1, nl1, pl2, ps, ns, pw, alpha,
                                    <uint64_t> queries[t], strategy)
