# Copyright 2026 vrevoke contributors
# SPDX-License-Identifier: Apache-2.0
"""Ledger-based certificate revocation for vehicular PKI."""

from ._core import (
    Service,
    VrevokeError,
    byte_to_trytes,
    check_metrics_csv,
    derive_address,
    emit_cdf,
    generate_keypair,
    hashed_id,
    percentile,
    run_check_benchmark,
    run_crl_baseline,
    run_window_benchmark,
    sha256,
    sign,
    summarize,
    trytes_to_byte,
    verify,
)

__all__ = [
    "Service",
    "VrevokeError",
    "byte_to_trytes",
    "check_metrics_csv",
    "derive_address",
    "emit_cdf",
    "generate_keypair",
    "hashed_id",
    "percentile",
    "run_check_benchmark",
    "run_crl_baseline",
    "run_window_benchmark",
    "sha256",
    "sign",
    "summarize",
    "trytes_to_byte",
    "verify",
]
