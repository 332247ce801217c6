import hashlib
import numpy as np


def derive_seed(master, *keys):
    """
    integer seed from a master seed and a sequence of keys
    (method name, seed index, artifact kind ...), stable across runs and platforms
    """
    message = "|".join([str(int(master))] + [str(k) for k in keys])
    digest = hashlib.sha256(message.encode('utf-8')).digest()
    return int.from_bytes(digest[:16], 'little')


def rng_for(master, *keys):
    """independent numpy Generator for (master, keys)"""
    return np.random.default_rng(np.random.SeedSequence(derive_seed(master, *keys)))
