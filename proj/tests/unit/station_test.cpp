/**
 * @file station_test.cpp
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/authorities.hpp"
#include "vrevoke/error.hpp"
#include "vrevoke/station.hpp"

#include <gtest/gtest.h>

namespace vrevoke {
namespace {

constexpr std::int64_t kNowMs = 1'700'000'000'000;
constexpr std::int64_t kNow = kNowMs / 1000;

class StationTest : public ::testing::Test {
protected:
    Ledger ledger;
    Vpki vpki{TrustConfig{}, ledger};

    StationConfig config(std::string id, Connectivity c = Connectivity::Direct) {
        StationConfig cfg;
        cfg.id = std::move(id);
        cfg.connectivity = c;
        cfg.root_cert = vpki.trust().root.cert;
        cfg.ra_cert = vpki.trust().ra.cert;
        cfg.authority_certs = vpki.trust().authority_certs();
        return cfg;
    }

    struct Credential {
        Certificate stc;
        KeyPair keys;
    };

    Credential issue(const std::string& id) {
        CanonicalId cid(id);
        vpki.ltca().preregister(cid);
        auto ltc = vpki.ltca().enroll(cid, generate_keypair(id + "/ltc").public_key, kNow);
        auto keys = generate_keypair(id + "/stc");
        return {vpki.stca().authorize(ltc, keys.public_key, kNow), keys};
    }

    void revoke(const Certificate& stc) {
        vpki.ma().report_misbehavior({whole_certificate_hash(stc), {}, "test", kNow}, kNowMs);
    }
};

TEST_F(StationTest, ReceivePipeline) {
    Station rx(config("rx"), ledger);
    Station tx(config("tx"), ledger);
    auto good = issue("good");
    auto bad = issue("bad");
    tx.install_credential(good.stc, good.keys);
    tx.install_credential(bad.stc, bad.keys);
    revoke(bad.stc);

    EXPECT_EQ(rx.receive(tx.send(to_bytes("cam"), good.stc, kNowMs), kNowMs), ReceiveResult::Accepted);
    EXPECT_EQ(rx.receive(tx.send(to_bytes("cam"), bad.stc, kNowMs), kNowMs), ReceiveResult::IgnoredRevoked);
    EXPECT_EQ(rx.check_revocation(good.stc, kNowMs), RevocationStatus::Valid);
    EXPECT_EQ(rx.check_revocation(bad.stc, kNowMs), RevocationStatus::Revoked);

    auto msg = tx.send(to_bytes("cam"), good.stc, kNowMs);
    msg.payload[0] ^= 1;
    EXPECT_EQ(rx.receive(msg, kNowMs), ReceiveResult::IgnoredBadSignature);
}

TEST_F(StationTest, OneLedgerQueryPerCheck) {
    Station rx(config("rx"), ledger, LatencyModel::constant(10));
    auto a = issue("a");
    for (int i = 0; i < 20; ++i) {
        auto t = rx.check_revocation_traced(whole_certificate_hash(a.stc), kNowMs);
        EXPECT_EQ(t.ledger_queries, 1u);
        EXPECT_EQ(t.latency_ms, 10.0);
    }
    EXPECT_EQ(rx.ledger_queries(), 20u);
    EXPECT_EQ(ledger.query_count(), 20u);
}

TEST_F(StationTest, RevocationBecomesVisibleAfterPublishLatency) {
    Ledger slow(LatencyModel::constant(8000));
    Vpki v(TrustConfig{}, slow);
    v.ltca().preregister(CanonicalId("x"));
    auto ltc = v.ltca().enroll(CanonicalId("x"), Bytes(32), kNow);
    auto stc = v.stca().authorize(ltc, Bytes(32), kNow);
    v.ma().report_misbehavior({whole_certificate_hash(stc), {}, "r", kNow}, kNowMs);
    Station rx(config("rx"), slow);
    EXPECT_EQ(rx.check_revocation(stc, kNowMs + 7999), RevocationStatus::Valid);
    EXPECT_EQ(rx.check_revocation(stc, kNowMs + 8000), RevocationStatus::Revoked);
}

TEST_F(StationTest, ForgedRevocationsIgnored) {
    Station rx(config("rx"), ledger);
    auto victim = issue("victim");
    auto h = whole_certificate_hash(victim.stc);
    auto attacker = generate_keypair("attacker");

    auto forged = RevocationPayload::make(h, kNow, vpki.trust().ra.cert, attacker.private_key);
    ledger.attach(ZeroValueTransaction::make(derive_address(h), forged.encode(), kNowMs));
    auto by_ma = RevocationPayload::make(h, kNow, vpki.trust().ma.cert, vpki.trust().ma.keys.private_key);
    ledger.attach(ZeroValueTransaction::make(derive_address(h), by_ma.encode(), kNowMs));
    // genuine RA signature for a different certificate, replayed at the victim's address
    auto other = RevocationPayload::make(hash_bytes(to_bytes("other")), kNow, vpki.trust().ra.cert,
                                         vpki.trust().ra.keys.private_key);
    ledger.attach(ZeroValueTransaction::make(derive_address(h), other.encode(), kNowMs));

    auto t = rx.check_revocation_traced(h, kNowMs);
    EXPECT_EQ(t.status, RevocationStatus::Valid);
    EXPECT_EQ(t.transactions_seen, 3u);
}

TEST_F(StationTest, RejectsUntrustedSigners) {
    Station rx(config("rx"), ledger);
    Ledger other_ledger;
    TrustConfig foreign;
    foreign.domain = "foreign";
    Vpki other(foreign, other_ledger);
    other.ltca().preregister(CanonicalId("f"));
    auto ltc = other.ltca().enroll(CanonicalId("f"), Bytes(32), kNow);
    auto keys = generate_keypair("f");
    auto stc = other.stca().authorize(ltc, keys.public_key, kNow);
    EXPECT_FALSE(rx.verify_message(make_secured_message(to_bytes("m"), stc, keys, kNowMs)));

    auto own = issue("own");
    EXPECT_TRUE(rx.verify_message(make_secured_message(to_bytes("m"), own.stc, own.keys, kNowMs)));
    EXPECT_FALSE(rx.verify_message(make_secured_message(to_bytes("m"), own.stc, keys, kNowMs)));
    // generated after the STC lifetime
    auto late = make_secured_message(to_bytes("m"), own.stc, own.keys, own.stc.not_after * 1000);
    EXPECT_FALSE(rx.verify_message(late));
}

TEST_F(StationTest, VerifyFirstOrdering) {
    auto cfg = config("rx");
    cfg.verify_before_revocation_check = true;
    Station rx(cfg, ledger);
    auto a = issue("a");
    auto msg = make_secured_message(to_bytes("m"), a.stc, a.keys, kNowMs);
    msg.signature[0] ^= 1;
    auto t = rx.receive_traced(msg, kNowMs);
    EXPECT_EQ(t.result, ReceiveResult::IgnoredBadSignature);
    EXPECT_EQ(t.check.ledger_queries, 0u);
}

TEST_F(StationTest, SendRequiresInstalledValidCredential) {
    Station tx(config("tx"), ledger);
    auto a = issue("a");
    EXPECT_THROW(tx.send(to_bytes("m"), a.stc, kNowMs), Error);
    tx.install_credential(a.stc, a.keys);
    try {
        tx.send(to_bytes("m"), a.stc, a.stc.not_after * 1000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ExpiredCredential);
    }
}

TEST_F(StationTest, BadTrustStoreRejected) {
    auto cfg = config("rx");
    cfg.root_cert.not_after += 1;
    EXPECT_THROW(Station(cfg, ledger), Error);
    cfg = config("rx");
    cfg.ra_cert = issue("not-an-authority").stc;
    EXPECT_THROW(Station(cfg, ledger), Error);
}

TEST_F(StationTest, DelegatedCheck) {
    StationNetwork net;
    Station rsu(config("rsu"), ledger, LatencyModel::constant(3), 0, &net);
    Station relay(config("relay", Connectivity::P2POnly), ledger, LatencyModel::zero(), 0, &net);
    auto cfg = config("obu", Connectivity::P2POnly);
    cfg.neighbor_ids = {"gone", "relay", "rsu"};
    Station obu(cfg, ledger, LatencyModel::zero(), 0, &net);
    net.set_reachable("gone", false);

    auto a = issue("a");
    revoke(a.stc);
    auto t = obu.check_revocation_traced(whole_certificate_hash(a.stc), kNowMs);
    EXPECT_EQ(t.status, RevocationStatus::Revoked);
    EXPECT_EQ(t.answered_by, "rsu");
    EXPECT_EQ(t.ledger_queries, 1u);
    EXPECT_EQ(obu.ledger_queries(), 0u);

    EXPECT_EQ(delegate_check(obu, rsu, whole_certificate_hash(a.stc), kNowMs, net), RevocationStatus::Revoked);
    net.set_reachable("rsu", false);
    try {
        delegate_check(obu, rsu, whole_certificate_hash(a.stc), kNowMs, net);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NeighborUnreachable);
    }
    EXPECT_EQ(obu.check_revocation(a.stc, kNowMs), RevocationStatus::Unknown);
}

TEST_F(StationTest, OfflineIsUnknownAndDropsMessages) {
    Station rx(config("rx", Connectivity::Offline), ledger);
    auto a = issue("a");
    EXPECT_EQ(rx.check_revocation(a.stc, kNowMs), RevocationStatus::Unknown);
    EXPECT_EQ(rx.receive(make_secured_message(to_bytes("m"), a.stc, a.keys, kNowMs), kNowMs),
              ReceiveResult::IgnoredUnknown);
}

TEST(StationEnums, Names) {
    EXPECT_EQ(to_string(RevocationStatus::Revoked), "revoked");
    EXPECT_EQ(to_string(RevocationStatus::Valid), "valid");
    EXPECT_EQ(to_string(RevocationStatus::Unknown), "unknown");
}

}  // namespace
}  // namespace vrevoke
