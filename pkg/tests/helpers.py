from typing import Sequence

import numpy as np

from domain.channel_algebra import bsc
from domain.coding import Codebook, CodingRegime
from domain.models import CompoundWiretap, Pairing


def manual_codebook(words: Sequence[Sequence[int]], n: int, delta: float = 0.5, input_size: int = 2) -> Codebook:
    """Single-encoder CSI codebook with the given J x L codeword indices, for one matched state."""
    return Codebook(
        regime=CodingRegime.CSI,
        n=n,
        delta=delta,
        tau=0.1,
        input_size=input_size,
        words=(np.array(words, dtype=np.int64),),
        state_encoders=((0, 0, 0),),
        decoder_links=((0, 0),),
        seed=0,
        exponent_scaled=False,
    )


def bsc_pair(legit: float = 0.03, eaves: float = 0.35) -> CompoundWiretap:
    return CompoundWiretap.single(bsc(legit), bsc(eaves))


def two_state_compound() -> CompoundWiretap:
    return CompoundWiretap((bsc(0.03), bsc(0.05)), (bsc(0.3), bsc(0.35)), Pairing.MATCHED)


def product_compound() -> CompoundWiretap:
    return CompoundWiretap((bsc(0.05), bsc(0.1)), (bsc(0.2), bsc(0.3)), Pairing.PRODUCT)
