import hashlib

PERSON = b"svp-vqe-seed"


def derive_seed(master: int, *parts: int) -> int:
    """seed = blake2b(master, parts...) 的前 8 字节，与执行顺序和进程无关"""
    key = ":".join(str(v) for v in (master, *parts)).encode("ascii")
    digest = hashlib.blake2b(key, digest_size=8, person=PERSON).digest()
    return int.from_bytes(digest, "little")
