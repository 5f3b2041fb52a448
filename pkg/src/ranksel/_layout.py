"""Block geometry shared by all index layouts.

Every index resolves the interior of a 512-bit basic block with hardware
popcount; they differ in the mid/top level block sizes and in how the
mid-level counters are packed.
"""

WORD_BITS = 64

# basic block: smallest unit any index stores a counter for
BASIC_BITS = 512
BASIC_WORDS = BASIC_BITS // WORD_BITS

# poppy: 2048-bit mid blocks grouped under 2^32-bit top blocks
POPPY_L1_BITS = 2048
POPPY_L0_BITS = 1 << 32
POPPY_L1_PER_L0 = POPPY_L0_BITS // POPPY_L1_BITS  # 2^21

# flat: 4096-bit mid blocks, optional 2^44-bit top blocks
FLAT_L1_BITS = 4096
FLAT_L0_BITS = 1 << 44
FLAT_L1_PER_L0 = FLAT_L0_BITS // FLAT_L1_BITS  # 2^32

# wide: 65536-bit mid blocks, no top level
WIDE_L1_BITS = 65536
WIDE_L2_PER_L1 = WIDE_L1_BITS // BASIC_BITS  # 128

# select support: position of every SAMPLE_RATE-th one (or zero) is stored
SAMPLE_RATE = 8192
