/**
 * @file crypto.cpp
 * @brief SHA-256 and Ed25519 on top of OpenSSL 3.x
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/certkit.hpp"
#include "vrevoke/error.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <memory>

namespace vrevoke {

namespace {

constexpr std::size_t kEd25519KeySize = 32;
constexpr std::size_t kEd25519SigSize = 64;

struct PkeyDeleter {
    void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct MdCtxDeleter {
    void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

KeyPair keypair_from_private(Bytes private_key) {
    PkeyPtr pkey(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, private_key.data(), private_key.size()));
    if (!pkey) throw Error(ErrorCode::InvalidArgument, "cannot load Ed25519 private key");
    Bytes pub(kEd25519KeySize);
    std::size_t len = pub.size();
    if (EVP_PKEY_get_raw_public_key(pkey.get(), pub.data(), &len) != 1 || len != kEd25519KeySize) {
        throw Error(ErrorCode::InvalidArgument, "cannot derive Ed25519 public key");
    }
    return KeyPair{std::move(pub), std::move(private_key)};
}

}  // namespace

Sha256Digest sha256(ByteView data) {
    Sha256Digest digest{};
    SHA256(data.data(), data.size(), digest.data());
    return digest;
}

KeyPair generate_keypair(std::optional<ByteView> seed) {
    Bytes priv(kEd25519KeySize);
    if (seed) {
        auto digest = sha256(*seed);
        std::copy(digest.begin(), digest.end(), priv.begin());
    } else if (RAND_bytes(priv.data(), static_cast<int>(priv.size())) != 1) {
        throw Error(ErrorCode::InvalidArgument, "OS random source unavailable");
    }
    return keypair_from_private(std::move(priv));
}

KeyPair generate_keypair(std::string_view seed) {
    auto bytes = to_bytes(seed);
    return generate_keypair(ByteView(bytes));
}

Bytes sign(ByteView private_key, ByteView message) {
    if (private_key.size() != kEd25519KeySize) {
        throw Error(ErrorCode::InvalidArgument, "private key must be 32 bytes");
    }
    PkeyPtr pkey(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, private_key.data(), private_key.size()));
    MdCtxPtr ctx(EVP_MD_CTX_new());
    if (!pkey || !ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, pkey.get()) != 1) {
        throw Error(ErrorCode::InvalidArgument, "cannot initialise Ed25519 signer");
    }
    Bytes sig(kEd25519SigSize);
    std::size_t len = sig.size();
    if (EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(), message.size()) != 1) {
        throw Error(ErrorCode::InvalidArgument, "Ed25519 signing failed");
    }
    sig.resize(len);
    return sig;
}

bool verify(ByteView public_key, ByteView message, ByteView signature) noexcept {
    if (public_key.size() != kEd25519KeySize || signature.size() != kEd25519SigSize) return false;
    PkeyPtr pkey(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, public_key.data(), public_key.size()));
    MdCtxPtr ctx(EVP_MD_CTX_new());
    if (!pkey || !ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, pkey.get()) != 1) {
        return false;
    }
    return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(), message.data(), message.size()) == 1;
}

}  // namespace vrevoke
