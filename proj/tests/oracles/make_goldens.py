# Copyright 2026 The BBC Ledger Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference encoder for the golden files under tests/golden/.

This is a from-scratch implementation of the canonical byte format and the
Merkle rule (leaf = SHA-256(0x00 || tx bytes), internal = SHA-256(0x01 ||
left || right), odd level duplicates its last node). The C++ tests compare
the library's output against the files this script writes; regenerate with

    python3 tests/oracles/make_goldens.py

from the repository root.
"""

import hashlib
import pathlib
import struct

OUT = pathlib.Path(__file__).resolve().parent.parent / "golden"


def u8(v):
    return struct.pack(">B", v)


def u32(v):
    return struct.pack(">I", v)


def u64(v):
    return struct.pack(">Q", v)


def i16(v):
    return struct.pack(">h", v)


def i32(v):
    return struct.pack(">i", v)


def boolean(v):
    return b"\x01" if v else b"\x00"


def string(s):
    raw = s.encode("utf-8")
    return u32(len(raw)) + raw


def string_list(items):
    out = u32(len(items))
    for s in items:
        out += string(s)
    return out


def encode_event(e):
    return (
        string(e["item_id"])
        + u8(e["stage"])
        + string(e["batch_number"])
        + string(e["origin"])
        + i32(e["storage_temp"])
        + u64(e["expiry"])
        + u64(e["event_time"])
        + string_list(e["ingredients_added"])
        + string_list(e["declared_label"])
    )


def encode_attestation(a):
    out = u32(a["actor_id"]) + u32(a["key_id"])
    for v in a["values"]:
        out += i16(v)
    out += u64(a["match_score"])
    out += boolean(a["accepted"])
    out += u32(a["verifier_node"])
    out += u64(a["nonce"])
    return out


def encode_transaction(tx):
    return encode_event(tx["event"]) + encode_attestation(tx["attestation"])


def encode_header(h):
    return (
        u32(h["version"])
        + u64(h["height"])
        + h["prev_hash"]
        + h["merkle_root"]
        + u64(h["timestamp"])
        + u32(h["proposer_id"])
    )


def sha256(data):
    return hashlib.sha256(data).digest()


def merkle_root(tx_bytes_list):
    if not tx_bytes_list:
        return b"\x00" * 32
    level = [sha256(b"\x00" + b) for b in tx_bytes_list]
    while len(level) > 1:
        if len(level) % 2 != 0:
            level.append(level[-1])
        level = [
            sha256(b"\x01" + level[i] + level[i + 1])
            for i in range(0, len(level), 2)
        ]
    return level[0]


# Fixed sample transactions; tests/ledger_test.cpp builds the same values.
SAMPLE_TX1 = {
    "event": {
        "item_id": "lettuce-42",
        "stage": 0,  # FARM
        "batch_number": "B-001",
        "origin": "greenleaf-farm",
        "storage_temp": 450,
        "expiry": 9000,
        "event_time": 17,
        "ingredients_added": ["lettuce"],
        "declared_label": [],
    },
    "attestation": {
        "actor_id": 101,
        "key_id": 1,
        "values": [(7 * i + 3) % 1201 - 600 for i in range(64)],
        "match_score": 1234,
        "accepted": True,
        "verifier_node": 2,
        "nonce": 5,
    },
}

SAMPLE_TX2 = {
    "event": {
        "item_id": "sandwich-7",
        "stage": 1,  # PROCESSING
        "batch_number": "B-002",
        "origin": "midtown-kitchen",
        "storage_temp": -150,
        "expiry": 12000,
        "event_time": 29,
        "ingredients_added": ["bread", "peanut"],
        "declared_label": [],
    },
    "attestation": {
        "actor_id": 102,
        "key_id": 1,
        "values": [(13 * i + 11) % 1501 - 750 for i in range(64)],
        "match_score": 77,
        "accepted": True,
        "verifier_node": 0,
        "nonce": 6,
    },
}

GENESIS = {
    "version": 1,
    "height": 0,
    "prev_hash": b"\x00" * 32,
    "merkle_root": b"\x00" * 32,
    "timestamp": 0,
    "proposer_id": 0,
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    genesis_bytes = encode_header(GENESIS)
    assert len(genesis_bytes) == 88, len(genesis_bytes)
    (OUT / "genesis_header.bin").write_bytes(genesis_bytes)
    (OUT / "genesis_header_hash.txt").write_text(
        sha256(genesis_bytes).hex() + "\n"
    )

    tx1 = encode_transaction(SAMPLE_TX1)
    tx2 = encode_transaction(SAMPLE_TX2)
    (OUT / "sample_tx1.bin").write_bytes(tx1)
    (OUT / "sample_tx2.bin").write_bytes(tx2)
    (OUT / "sample_tx1_id.txt").write_text(sha256(tx1).hex() + "\n")
    (OUT / "sample_tx2_id.txt").write_text(sha256(tx2).hex() + "\n")
    (OUT / "merkle_two_txs.txt").write_text(
        merkle_root([tx1, tx2]).hex() + "\n"
    )

    print("golden files written to", OUT)


if __name__ == "__main__":
    main()
