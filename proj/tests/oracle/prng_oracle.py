#!/usr/bin/env python3
"""Evolve-and-extract reference for the 32b-bit decimal PRNG stream.

Writes hex of the first BYTES bytes for a 10-state rule given by its Sibl_0
permutation. Independent of the C++ sources; used once to freeze the golden.
"""
import argparse


def rule_table(perm):
    digits = [int(c) for c in perm]
    assert sorted(digits) == list(range(10))
    sibl = [None] * 100
    sibl[0] = digits
    rot = lambda s, k: s[-k % 10:] + s[:-k % 10] if k % 10 else list(s)
    for i in range(1, 10):
        sibl[i] = rot(digits, i)
    for j in range(10, 100):
        sibl[j] = rot(sibl[j % 10], j // 10)
    for i in range(10):
        for j in range(i + 1, 10):
            sibl[10 * j + i] = list(sibl[10 * i + j])
    table = [0] * 1000
    for j in range(100):
        for t in range(10):
            table[10 * j + t] = sibl[j][t]
    return table


def step(table, cells):
    n = len(cells)
    return [table[100 * cells[i - 1] + 10 * cells[i] + cells[(i + 1) % n]] for i in range(n)]


def stream(perm, blocks, seed, count):
    table = rule_table(perm)
    n, w, bits = 100 * blocks + 1, 14 * blocks, 32 * blocks
    assert len(seed) == w
    cells = [int(c) for c in seed] + [0] * (n - w - 1) + [1]
    for _ in range(n):
        cells = step(table, cells)
    out = bytearray()
    for _ in range(count):
        cells = step(table, cells)
        value = int("".join(map(str, cells[:w]))) % (1 << bits)
        out += value.to_bytes(bits // 8, "big")
    return bytes(out)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--perm", default="8135940672")
    ap.add_argument("--blocks", type=int, default=1)
    ap.add_argument("--seed", default="00000000000007")
    ap.add_argument("--bytes", type=int, default=64)
    a = ap.parse_args()
    words = -(-a.bytes // (4 * a.blocks))
    print(stream(a.perm, a.blocks, a.seed, words)[: a.bytes].hex())
