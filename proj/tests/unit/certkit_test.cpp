/**
 * @file certkit_test.cpp
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "sha256_oracle.hpp"
#include "vrevoke/certkit.hpp"
#include "vrevoke/error.hpp"
#include "vrevoke/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

namespace vrevoke {
namespace {

Certificate sample_tbs(CertKind kind = CertKind::Stc) {
    Certificate c;
    c.kind = kind;
    c.subject_id = to_bytes("subject-1");
    c.public_key = generate_keypair("subject-1").public_key;
    c.not_before = 1'600'000'000;
    c.not_after = 1'700'000'000;
    c.permissions = {"cam", "denm"};
    return c;
}

bool contains_subsequence(const Bytes& haystack, const Bytes& needle) {
    return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

TEST(Sha256Oracle, FipsVectors) {
    auto empty = oracle::sha256({});
    EXPECT_EQ(to_hex(Bytes(empty.begin(), empty.end())),
              "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(oracle::sha256_low_hex(to_bytes("abc"), 32),
              "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(oracle::sha256_low_hex(to_bytes("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"), 32),
              "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST(Sha256, MatchesOracle) {
    Rng rng(7);
    for (std::size_t len : {0u, 1u, 55u, 56u, 63u, 64u, 65u, 119u, 1000u}) {
        Bytes data(len);
        for (auto& b : data) b = static_cast<std::uint8_t>(rng.below(256));
        auto d = sha256(data);
        EXPECT_EQ(to_hex(Bytes(d.begin(), d.end())), oracle::sha256_low_hex(data, 32)) << len;
    }
}

TEST(HashedId, EmptyInputKnownAnswer) {
    EXPECT_EQ(hash_bytes({}).hex(), "a495991b7852b855");
    EXPECT_EQ(hash_bytes({}).hex(), oracle::sha256_low_hex({}, 8));
    EXPECT_EQ(hash_bytes({}, HashLength::H3).hex(), "52b855");
    EXPECT_EQ(hash_bytes({}, HashLength::H10).hex(), oracle::sha256_low_hex({}, 10));
}

TEST(HashedId, TruncationsAreSuffixesOfOneDigest) {
    auto cert = issue_certificate(sample_tbs(CertKind::Root), generate_keypair("root").private_key);
    auto h3 = whole_certificate_hash(cert, HashLength::H3).hex();
    auto h8 = whole_certificate_hash(cert, HashLength::H8).hex();
    auto h10 = whole_certificate_hash(cert, HashLength::H10).hex();
    EXPECT_EQ(h8.substr(h8.size() - 6), h3);
    EXPECT_EQ(h10.substr(h10.size() - 16), h8);
    EXPECT_EQ(h8, oracle::sha256_low_hex(canonical_encode(cert), 8));
}

TEST(HashedId, RejectsBadLengths) {
    EXPECT_THROW(HashedId(Bytes(5)), Error);
    EXPECT_THROW(hash_length_from(4), Error);
    EXPECT_THROW(HashedId::from_hex("zz"), Error);
    EXPECT_EQ(HashedId::from_hex("0102030405060708").size(), 8u);
    EXPECT_TRUE(HashedId::zero().is_zero());
}

TEST(CanonicalId, Validation) {
    EXPECT_THROW(CanonicalId(""), Error);
    EXPECT_THROW(CanonicalId(std::string("a\x01", 2)), Error);
    EXPECT_THROW(CanonicalId("caf\xc3\xa9"), Error);
    EXPECT_EQ(CanonicalId("VIN 123").str(), "VIN 123");
}

TEST(Keys, SeededIsDeterministic) {
    EXPECT_EQ(generate_keypair("a").public_key, generate_keypair("a").public_key);
    EXPECT_NE(generate_keypair("a").public_key, generate_keypair("b").public_key);
    EXPECT_EQ(generate_keypair("a").public_key.size(), 32u);
}

TEST(Keys, ThousandRandomKeypairsAreDistinct) {
    std::set<Bytes> pubs, privs;
    for (int i = 0; i < 1000; ++i) {
        auto kp = generate_keypair();
        pubs.insert(kp.public_key);
        privs.insert(kp.private_key);
    }
    EXPECT_EQ(pubs.size(), 1000u);
    EXPECT_EQ(privs.size(), 1000u);
}

TEST(Signatures, CrossKeyTrialsFail) {
    Bytes msg = to_bytes("hello");
    for (int i = 0; i < 100; ++i) {
        auto a = generate_keypair();
        auto b = generate_keypair();
        auto sig = sign(a.private_key, msg);
        EXPECT_TRUE(verify(a.public_key, msg, sig));
        EXPECT_FALSE(verify(b.public_key, msg, sig));
    }
}

TEST(Signatures, TamperAndGarbage) {
    auto kp = generate_keypair("t");
    Bytes msg = to_bytes("payload");
    auto sig = sign(kp.private_key, msg);
    msg[0] ^= 1;
    EXPECT_FALSE(verify(kp.public_key, msg, sig));
    EXPECT_FALSE(verify(kp.public_key, msg, Bytes(3)));
    EXPECT_FALSE(verify(Bytes(5), msg, sig));
}

TEST(Encoding, RoundTripProperty) {
    Rng rng(42);
    for (int i = 0; i < 300; ++i) {
        Certificate c;
        c.kind = static_cast<CertKind>(rng.below(4));
        c.subject_id.resize(rng.below(40));
        for (auto& b : c.subject_id) b = static_cast<std::uint8_t>(rng.below(256));
        c.public_key = generate_keypair(std::to_string(i)).public_key;
        c.not_before = static_cast<std::int64_t>(rng.next() >> 2) - (std::int64_t(1) << 60);
        c.not_after = c.not_before + 1 + static_cast<std::int64_t>(rng.below(1'000'000));
        for (std::uint64_t p = rng.below(4); p > 0; --p) c.permissions.insert("perm" + std::to_string(rng.below(10)));
        c.issuer_hash = hash_bytes(c.subject_id);
        c.signature.resize(rng.below(2) ? 64 : 0, 0xAB);
        auto enc = canonical_encode(c);
        EXPECT_EQ(canonical_decode(enc), c);
        EXPECT_EQ(canonical_encode(canonical_decode(enc)), enc);
    }
}

TEST(Encoding, InjectiveOnFieldBoundaries) {
    Certificate a = sample_tbs();
    Certificate b = sample_tbs();
    a.subject_id = to_bytes("ab");
    a.permissions = {"c"};
    b.subject_id = to_bytes("a");
    b.permissions = {"bc"};
    EXPECT_NE(canonical_encode(a), canonical_encode(b));
    b = a;
    b.not_after += 1;
    EXPECT_NE(canonical_encode(a), canonical_encode(b));
}

TEST(Encoding, StrictDecode) {
    auto enc = canonical_encode(sample_tbs());
    auto longer = enc;
    longer.push_back(0);
    EXPECT_THROW(canonical_decode(longer), Error);
    EXPECT_THROW(canonical_decode(ByteView(enc).first(enc.size() - 1)), Error);
    auto bad_kind = enc;
    bad_kind[0] = 9;
    EXPECT_THROW(canonical_decode(bad_kind), Error);
}

TEST(Encoding, OverlongFieldRejected) {
    auto c = sample_tbs();
    c.subject_id.assign(kMaxFieldLength + 1, 'x');
    try {
        canonical_encode(c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EncodingOverflow);
    }
}

TEST(Encoding, NoPrivateKeyBytesInCertificate) {
    auto issuer = generate_keypair("issuer");
    auto subject = generate_keypair("subject");
    auto root_tbs = sample_tbs(CertKind::Root);
    root_tbs.public_key = issuer.public_key;
    auto root = issue_certificate(root_tbs, issuer.private_key);
    auto tbs = sample_tbs();
    tbs.public_key = subject.public_key;
    auto cert = issue_certificate(tbs, issuer.private_key, &root);
    for (const auto* c : {&root, &cert}) {
        auto enc = canonical_encode(*c);
        EXPECT_FALSE(contains_subsequence(enc, issuer.private_key));
        EXPECT_FALSE(contains_subsequence(enc, subject.private_key));
    }
}

TEST(Issue, ChainVerification) {
    auto root_keys = generate_keypair("root");
    auto tbs = sample_tbs(CertKind::Root);
    tbs.public_key = root_keys.public_key;
    auto root = issue_certificate(tbs, root_keys.private_key);
    EXPECT_TRUE(root.issuer_hash.is_zero());
    EXPECT_TRUE(verify_issued_by(root, root));

    auto child = issue_certificate(sample_tbs(), root_keys.private_key, &root);
    EXPECT_EQ(child.issuer_hash, whole_certificate_hash(root));
    EXPECT_TRUE(verify_issued_by(child, root));
    EXPECT_EQ(to_be_signed(child), to_be_signed([&] {
                  auto c = child;
                  c.signature.clear();
                  return c;
              }()));

    auto forged = child;
    forged.not_after += 1;
    EXPECT_FALSE(verify_issued_by(forged, root));

    auto other = issue_certificate(sample_tbs(), generate_keypair("other").private_key, &root);
    EXPECT_FALSE(verify_issued_by(other, root));
}

TEST(Issue, RejectsEmptyValidity) {
    auto tbs = sample_tbs();
    tbs.not_after = tbs.not_before;
    EXPECT_THROW(issue_certificate(tbs, generate_keypair("k").private_key), Error);
}

TEST(Certificate, ValidityIsHalfOpen) {
    auto c = sample_tbs();
    EXPECT_FALSE(c.valid_at(c.not_before - 1));
    EXPECT_TRUE(c.valid_at(c.not_before));
    EXPECT_FALSE(c.valid_at(c.not_after));
}

}  // namespace
}  // namespace vrevoke
