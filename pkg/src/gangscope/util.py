"""Canonical serialization helpers shared across the package.

Everything that claims byte-for-byte determinism (vocabulary fingerprints,
model files, evaluation reports) funnels through canonical_json.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any


def canonical_json(obj: Any) -> str:
    """Serialize to JSON with a stable byte representation.

    Keys are sorted, separators are compact, and non-ASCII text (emoji) is
    kept verbatim. NaN/Infinity are rejected so output stays portable.
    """
    return json.dumps(obj, sort_keys=True, ensure_ascii=False,
                      separators=(",", ":"), allow_nan=False)


def sha256_hex(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def fingerprint_of(obj: Any) -> str:
    """Stable hex digest of an arbitrary JSON-serializable object."""
    return sha256_hex(canonical_json(obj))
