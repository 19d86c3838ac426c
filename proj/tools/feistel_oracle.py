#!/usr/bin/env python3
"""Straight-line reference for Feistel encryption over (Z_2)^k.

Each round sends (x, y) to (f(x) xor y, x). The state is x * 2^k + y,
printed as zero-padded hex. Used to produce the golden files under
data/golden; the C++ implementation is checked against them.

  feistel_oracle.py --keys K --rounds R --bits B --input HEX
  feistel_oracle.py --keys K --rounds R --bits B --all     (every state)
"""
import argparse
import json


def encrypt(keys, rounds, bits, state):
    mask = (1 << bits) - 1
    x, y = state >> bits, state & mask
    for f in keys[:rounds]:
        x, y = f[x] ^ y, x
    return (x << bits) | y


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--keys", required=True)
    ap.add_argument("--rounds", type=int, required=True)
    ap.add_argument("--bits", type=int, default=8)
    ap.add_argument("--input")
    ap.add_argument("--all", action="store_true")
    args = ap.parse_args()
    with open(args.keys) as fh:
        keys = json.load(fh)["rounds"]
    if len(keys) < args.rounds:
        raise SystemExit("not enough round functions")
    width = (2 * args.bits + 3) // 4
    states = range(1 << (2 * args.bits)) if args.all else [int(args.input, 16)]
    for s in states:
        out = "%0*x" % (width, encrypt(keys, args.rounds, args.bits, s))
        print(("%0*x %s" % (width, s, out)) if args.all else out)


if __name__ == "__main__":
    main()
