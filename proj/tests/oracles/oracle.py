#!/usr/bin/env python3
# Copyright 2026 The samplemark Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent reference values for the golden vectors in the C++ tests.

Uses hashlib for SHA-256 and a from-scratch MT19937-64 so that nothing here
shares code with the library. Run it and paste the printed values into
tests/golden_values.hpp when the hashing or stream contract changes.
"""

import hashlib
import math
import struct

MASK64 = (1 << 64) - 1


class MT19937_64:
    NN, MM = 312, 156
    MATRIX_A = 0xB5026F5AA96619E9
    UM, LM = 0xFFFFFFFF80000000, 0x7FFFFFFF

    def __init__(self, seed):
        self.mt = [0] * self.NN
        self.mt[0] = seed & MASK64
        for i in range(1, self.NN):
            prev = self.mt[i - 1]
            self.mt[i] = (6364136223846793005 * (prev ^ (prev >> 62)) + i) & MASK64
        self.mti = self.NN

    def next(self):
        if self.mti >= self.NN:
            mag01 = (0, self.MATRIX_A)
            mt = self.mt
            for i in range(self.NN):
                x = (mt[i] & self.UM) | (mt[(i + 1) % self.NN] & self.LM)
                mt[i] = mt[(i + self.MM) % self.NN] ^ (x >> 1) ^ mag01[x & 1]
            self.mti = 0
        x = self.mt[self.mti]
        self.mti += 1
        x ^= (x >> 29) & 0x5555555555555555
        x ^= (x << 17) & 0x71D67FFFEDA60000
        x ^= (x << 37) & 0xFFF7EEE000000000
        x ^= x >> 43
        return x & MASK64

    def uniform(self):
        return (self.next() >> 11) * 2.0 ** -53

    def bounded(self, n):
        threshold = ((1 << 64) - n) % n
        while True:
            x = self.next()
            if x >= threshold:
                return x % n


def serialize(tokens):
    return b"".join(struct.pack(">I", t) for t in tokens)


def secret_number(context, candidate, k):
    window = context[len(context) - min(k, len(context)):] if k > 0 else []
    digest = hashlib.sha256(serialize(list(window) + [candidate])).digest()
    x = struct.unpack(">Q", digest[:8])[0]
    return (x >> 11) * 2.0 ** -53


def green_partition(context, k, gamma, vocab):
    window = context[len(context) - min(k, len(context)):] if k > 0 else []
    digest = hashlib.sha256(serialize(window)).digest()
    rng = MT19937_64(struct.unpack(">Q", digest[:8])[0])
    perm = list(range(vocab))
    green = int(math.floor(gamma * vocab))
    for i in range(green):
        j = i + rng.bounded(vocab - i)
        perm[i], perm[j] = perm[j], perm[i]
    return sorted(perm[:green])


def draw(probs_with_ids, u):
    total = 0.0
    for _, p in probs_with_ids:
        total += p
    target = u * total
    cum = 0.0
    for idx, (_, p) in enumerate(probs_with_ids):
        cum += p
        if cum > target:
            return idx
    return len(probs_with_ids) - 1


def sample_with_replacement(probs, y, rng):
    items = [(i, p) for i, p in enumerate(probs) if p > 0]
    out = []
    for _ in range(y):
        out.append(items[draw(items, rng.uniform())][0])
    return out


def sample_without_replacement(probs, y, rng):
    items = [(i, p) for i, p in enumerate(probs) if p > 0]
    out = []
    for _ in range(min(y, len(items))):
        idx = draw(items, rng.uniform())
        out.append(items[idx][0])
        del items[idx]
    return out


def main():
    # std::mt19937_64 conformance value mandated by the C++ standard.
    rng = MT19937_64(5489)
    for _ in range(9999):
        rng.next()
    print("mt19937_64 default 10000th:", rng.next())

    print("secret([5],7,k=1) = %.17g" % secret_number([5], 7, 1))
    print("secret([5],8,k=1) = %.17g" % secret_number([5], 8, 1))
    print("secret([],7,k=1)  = %.17g" % secret_number([], 7, 1))
    print("secret([1,2,3],4,k=2) = %.17g" % secret_number([1, 2, 3], 4, 2))
    print("secret([1,2,3],4,k=0) = %.17g" % secret_number([1, 2, 3], 4, 0))

    print("green([5],k=1,gamma=0.5,V=8) =", green_partition([5], 1, 0.5, 8))
    print("green([5],k=1,gamma=0.25,V=40) =", green_partition([5], 1, 0.25, 40))

    uniform40 = [1.0 / 40] * 40
    print("swr(uniform40,y=5,seed=42) =",
          sample_with_replacement(uniform40, 5, MT19937_64(42)))
    print("swor(uniform40,y=5,seed=42) =",
          sample_without_replacement(uniform40, 5, MT19937_64(42)))

    r = MT19937_64(42)
    print("first uniforms seed 42: %.17g %.17g" % (r.uniform(), r.uniform()))
    r = MT19937_64(7)
    print("bounded seed 7, n=10:", [r.bounded(10) for _ in range(8)])


if __name__ == "__main__":
    main()
