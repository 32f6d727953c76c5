import hashlib

import numpy as np

# Counter-based generator; streams are identical across platforms for a seed.
RNG_ALGORITHM = "philox4x64"


def rng_stream(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def derive_seed(master_seed: int, *labels: str | int) -> int:
    """Stable 63-bit seed for a pipeline stage, e.g. `derive_seed(7, "split")`."""
    key = "\x1f".join([str(master_seed), *(str(label) for label in labels)])
    digest = hashlib.blake2b(key.encode("utf-8"), digest_size=8).digest()

    return int.from_bytes(digest, "big") & (2**63 - 1)
