/**
 * @file service.cpp
 * @brief Journal-backed VPKI service and its HTTP/JSON front end
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/service.hpp"

#include "vrevoke/config.hpp"
#include "vrevoke/error.hpp"

#include <fmt/format.h>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <thread>

namespace vrevoke {

using nlohmann::json;

namespace {

constexpr std::string_view kJournalMagic = "VREVOKE-JOURNAL";
constexpr std::string_view kJournalVersion = "1";

std::int64_t parse_i64(const std::string& s) {
    try {
        std::size_t used = 0;
        auto v = std::stoll(s, &used);
        if (used == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw Error(ErrorCode::StoreError, fmt::format("bad integer '{}' in journal", s));
}

CanonicalId canonical_from_hex(const std::string& hex) {
    auto bytes = from_hex(hex);
    return CanonicalId(std::string(bytes.begin(), bytes.end()));
}

}  // namespace

std::int64_t system_clock_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

ServiceConfig service_from_json(const json& j) {
    ServiceConfig c;
    if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "service config must be an object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "listen") {
                auto listen = value.get<std::string>();
                auto colon = listen.rfind(':');
                if (colon == std::string::npos) throw Error(ErrorCode::ConfigInvalid, "listen must be host:port");
                c.host = listen.substr(0, colon);
                c.port = std::stoi(listen.substr(colon + 1));
            } else if (key == "store_path") {
                c.store_path = value.get<std::string>();
            } else if (key == "hash_id_length") {
                c.hash_length = hash_length_from(value.get<std::size_t>());
            } else if (key == "publish_latency") {
                c.publish_latency = latency_from_json(value);
            } else if (key == "seed") {
                c.seed = value.get<std::uint64_t>();
            } else {
                throw Error(ErrorCode::ConfigInvalid, fmt::format("unknown key '{}' in service", key));
            }
        } catch (const json::exception& e) {
            throw Error(ErrorCode::ConfigInvalid, fmt::format("bad value for '{}': {}", key, e.what()));
        } catch (const std::logic_error& e) {
            throw Error(ErrorCode::ConfigInvalid, fmt::format("bad value for '{}': {}", key, e.what()));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ConfigInvalid) throw;
            throw Error(ErrorCode::ConfigInvalid, e.what());
        }
    }
    return c;
}

// ----------------------------------------------------------------------------
// Journal
// ----------------------------------------------------------------------------

Journal::Journal(std::filesystem::path path) : path_(std::move(path)) {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    out_.open(path_, std::ios::app | std::ios::binary);
    if (!out_) throw Error(ErrorCode::StoreError, fmt::format("cannot open journal {}", path_.string()));
}

void Journal::append(const std::vector<std::string>& fields) {
    std::lock_guard lock(mutex_);
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += '\t';
        line += fields[i];
    }
    line += '\n';
    out_.write(line.data(), static_cast<std::streamsize>(line.size()));
    out_.flush();
    if (!out_) throw Error(ErrorCode::StoreError, fmt::format("write to {} failed", path_.string()));
}

void Journal::replay(const std::filesystem::path& path,
                     const std::function<void(const std::vector<std::string>&)>& visit) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::StoreError, fmt::format("cannot read journal {}", path.string()));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            auto tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        try {
            visit(fields);
        } catch (const Error& e) {
            throw Error(ErrorCode::StoreError, fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
        }
    }
}

// ----------------------------------------------------------------------------
// VpkiService
// ----------------------------------------------------------------------------

VpkiService::VpkiService(const ServiceConfig& config, Clock clock)
    : clock_(std::move(clock)), hash_length_(config.hash_length), seed_(config.seed) {
    std::vector<std::vector<std::string>> lines;
    const bool existing = std::filesystem::exists(config.store_path) && std::filesystem::file_size(config.store_path) > 0;
    if (existing) {
        Journal::replay(config.store_path, [&](const std::vector<std::string>& f) { lines.push_back(f); });
        if (lines.size() < 2 || lines[0] != std::vector<std::string>{std::string(kJournalMagic), std::string(kJournalVersion)} ||
            lines[1].size() != 3 || lines[1][0] != "CONFIG") {
            throw Error(ErrorCode::StoreError, fmt::format("{} is not a vrevoke journal", config.store_path.string()));
        }
        auto stored_length = hash_length_from(static_cast<std::size_t>(parse_i64(lines[1][1])));
        if (stored_length != config.hash_length) {
            throw Error(ErrorCode::ConfigInvalid,
                        fmt::format("store uses HashedId{} but HashedId{} is configured",
                                    static_cast<int>(stored_length), static_cast<int>(config.hash_length)));
        }
        seed_ = static_cast<std::uint64_t>(std::stoull(lines[1][2]));
        if (seed_ != config.seed) spdlog::info("using stored trust seed {} (configured {})", seed_, config.seed);
    }

    TrustConfig trust;
    trust.seed = seed_;
    trust.hash_length = hash_length_;
    ledger_ = std::make_unique<Ledger>(config.publish_latency, mix_seed(seed_, lines.size()));
    vpki_ = std::make_unique<Vpki>(trust, *ledger_, static_cast<AuthorityObserver*>(this));

    for (std::size_t i = 2; i < lines.size(); ++i) replay_line(lines[i]);

    journal_ = std::make_unique<Journal>(config.store_path);
    if (!existing) {
        journal_->append({std::string(kJournalMagic), std::string(kJournalVersion)});
        journal_->append({"CONFIG", std::to_string(static_cast<int>(hash_length_)), std::to_string(seed_)});
    }
    ledger_->set_attach_observer([this](const LedgerEntry& entry) {
        journal_->append({"ATTACH", format_ledger_line(entry)});
    });

    StationConfig checker;
    checker.id = "service-checker";
    checker.root_cert = vpki_->trust().root.cert;
    checker.ra_cert = vpki_->trust().ra.cert;
    checker.authority_certs = {vpki_->trust().ltca.cert, vpki_->trust().stca.cert};
    checker.hash_length = hash_length_;
    checker_ = std::make_unique<Station>(std::move(checker), *ledger_);
}

VpkiService::~VpkiService() {
    if (ledger_) ledger_->set_attach_observer(nullptr);
}

void VpkiService::replay_line(const std::vector<std::string>& f) {
    auto need = [&](std::size_t n) {
        if (f.size() != n) throw Error(ErrorCode::StoreError, fmt::format("{} event needs {} fields", f[0], n));
    };
    const auto& event = f[0];
    if (event == "PREREG") {
        need(2);
        vpki_->ltca().restore_preregistration(canonical_from_hex(f[1]));
    } else if (event == "LTC") {
        need(4);
        vpki_->ltca().restore_record(IssuanceRecord{HashedId::from_hex(f[1]), HashedId::zero(hash_length_),
                                                    canonical_from_hex(f[2]), parse_i64(f[3])});
    } else if (event == "STC") {
        need(4);
        vpki_->stca().restore_record(
            IssuanceRecord{HashedId::from_hex(f[1]), HashedId::from_hex(f[2]), std::nullopt, parse_i64(f[3])});
    } else if (event == "BAN") {
        need(3);
        vpki_->ltca().restore_ban(canonical_from_hex(f[1]), parse_i64(f[2]));
    } else if (event == "REPORT") {
        need(3);
        vpki_->ma().restore_report(HashedId::from_hex(f[1]));
    } else if (event == "ATTACH") {
        need(6);
        std::string line = f[1];
        for (std::size_t i = 2; i < f.size(); ++i) line += '\t' + f[i];
        ledger_->restore(parse_ledger_line(line));
    } else {
        throw Error(ErrorCode::StoreError, fmt::format("unknown journal event '{}'", event));
    }
}

void VpkiService::on_preregistered(const CanonicalId& id) { journal_->append({"PREREG", to_hex(id.bytes())}); }

void VpkiService::on_ltc_issued(const IssuanceRecord& r) {
    journal_->append({"LTC", r.issued_cert_hash.hex(), to_hex(r.subject->bytes()), std::to_string(r.issue_time)});
}

void VpkiService::on_stc_issued(const IssuanceRecord& r) {
    journal_->append({"STC", r.issued_cert_hash.hex(), r.parent_ref.hex(), std::to_string(r.issue_time)});
}

void VpkiService::on_banned(const CanonicalId& id, std::int64_t ban_time) {
    journal_->append({"BAN", to_hex(id.bytes()), std::to_string(ban_time)});
}

void VpkiService::on_reported(const HashedId& hash, std::int64_t report_time) {
    journal_->append({"REPORT", hash.hex(), std::to_string(report_time)});
}

void VpkiService::preregister(const CanonicalId& id) { vpki_->ltca().preregister(id); }

Certificate VpkiService::enroll(const CanonicalId& id, ByteView public_key) {
    return vpki_->ltca().enroll(id, public_key, to_unix_seconds(clock_()));
}

Certificate VpkiService::authorize(const Certificate& ltc, ByteView public_key) {
    return vpki_->stca().authorize(ltc, public_key, to_unix_seconds(clock_()));
}

ReportOutcome VpkiService::report(const HashedId& stc_hash, Bytes evidence, std::string reporter) {
    if (stc_hash.length() != hash_length_) throw Error(ErrorCode::InvalidArgument, "hash length does not match service");
    auto now = clock_();
    MisbehaviorReport r{stc_hash, std::move(evidence), std::move(reporter), to_unix_seconds(now)};
    return vpki_->ma().report_misbehavior(r, now);
}

CanonicalId VpkiService::resolve(const HashedId& stc_hash) {
    return vpki_->ra().resolve_identity(stc_hash, to_unix_seconds(clock_()));
}

RevocationStatus VpkiService::status(const HashedId& cert_hash) {
    if (cert_hash.length() != hash_length_) throw Error(ErrorCode::InvalidArgument, "hash length does not match service");
    std::lock_guard lock(checker_mutex_);
    return checker_->check_revocation_traced(cert_hash, clock_()).status;
}

std::vector<ZeroValueTransaction> VpkiService::ledger_address(const TryteAddress& address) {
    return ledger_->find_transactions(address, clock_());
}

// ----------------------------------------------------------------------------
// Request dispatch
// ----------------------------------------------------------------------------

namespace {

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::DecodeError:
        case ErrorCode::EncodingOverflow:
        case ErrorCode::ConfigInvalid: return 400;
        case ErrorCode::BannedSubject:
        case ErrorCode::NotPreRegistered:
        case ErrorCode::LtcaRejected:
        case ErrorCode::ExpiredLtc:
        case ErrorCode::BadChain: return 403;
        case ErrorCode::ResolutionFailed: return 404;
        default: return 500;
    }
}

HttpResponse reply(int status, const json& body) { return HttpResponse{status, body.dump()}; }

HttpResponse error_reply(int status, std::string_view code, std::string_view message) {
    return reply(status, {{"error", code}, {"message", message}});
}

std::string field(const json& body, const char* key) {
    if (!body.contains(key) || !body.at(key).is_string()) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("missing string field '{}'", key));
    }
    return body.at(key).get<std::string>();
}

json certificate_json(const Certificate& cert) {
    return {{"kind", to_string(cert.kind)}, {"hash", whole_certificate_hash(cert).hex()}, {"encoded", to_hex(canonical_encode(cert))}};
}

HttpResponse dispatch(VpkiService& service, std::string_view method, std::string_view path, std::string_view raw) {
    auto parse_body = [&] {
        auto body = json::parse(raw);
        if (!body.is_object()) throw Error(ErrorCode::InvalidArgument, "request body must be a JSON object");
        return body;
    };
    auto suffix = [&](std::string_view prefix) -> std::optional<std::string> {
        if (path.size() > prefix.size() && path.substr(0, prefix.size()) == prefix) {
            return std::string(path.substr(prefix.size()));
        }
        return std::nullopt;
    };

    if (method == "GET") {
        if (auto hash = suffix("/revocation-status/")) {
            auto id = HashedId::from_hex(*hash);
            return reply(200, {{"hash", id.hex()}, {"status", to_string(service.status(id))}});
        }
        if (auto address = suffix("/ledger-address/")) {
            TryteAddress addr(*address);
            auto txs = service.ledger_address(addr);
            if (txs.empty()) return error_reply(404, "NotFound", "no transactions at address");
            json list = json::array();
            for (const auto& tx : txs) {
                list.push_back({{"tx_id", tx.tx_id.hex()}, {"attach_time_ms", tx.attach_time_ms}, {"payload", to_hex(tx.payload)}});
            }
            return reply(200, {{"address", addr.str()}, {"transactions", list}});
        }
        if (path == "/trust") {
            const auto& t = service.trust();
            return reply(200, {{"root", certificate_json(t.root.cert)},
                               {"ltca", certificate_json(t.ltca.cert)},
                               {"stca", certificate_json(t.stca.cert)},
                               {"ra", certificate_json(t.ra.cert)},
                               {"ma", certificate_json(t.ma.cert)},
                               {"hash_id_length", static_cast<int>(service.hash_length())}});
        }
    } else if (method == "POST") {
        if (path == "/preregister") {
            CanonicalId id(field(parse_body(), "canonical_id"));
            service.preregister(id);
            return reply(200, {{"canonical_id", id.str()}});
        }
        if (path == "/enroll") {
            auto body = parse_body();
            auto ltc = service.enroll(CanonicalId(field(body, "canonical_id")), from_hex(field(body, "public_key")));
            return reply(200, {{"ltc", to_hex(canonical_encode(ltc))},
                               {"ltc_hash", whole_certificate_hash(ltc, service.hash_length()).hex()}});
        }
        if (path == "/authorize") {
            auto body = parse_body();
            auto ltc = canonical_decode(from_hex(field(body, "ltc")));
            auto stc = service.authorize(ltc, from_hex(field(body, "public_key")));
            return reply(200, {{"stc", to_hex(canonical_encode(stc))},
                               {"stc_hash", whole_certificate_hash(stc, service.hash_length()).hex()}});
        }
        if (path == "/misbehavior-report") {
            auto body = parse_body();
            auto hash = HashedId::from_hex(field(body, "stc_hash"));
            Bytes evidence = body.contains("evidence") ? from_hex(field(body, "evidence")) : Bytes{};
            std::string reporter = body.contains("reporter") ? field(body, "reporter") : "service";
            auto outcome = service.report(hash, std::move(evidence), std::move(reporter));
            json out{{"stc_hash", hash.hex()}, {"first_report", outcome.first_report}};
            if (outcome.revocation) {
                const auto& rev = *outcome.revocation;
                out["tx_id"] = rev.tx.tx_id.hex();
                out["address"] = rev.tx.address.str();
                out["queryable_time_ms"] = rev.receipt.queryable_time_ms;
                out["resolved"] = rev.resolved.has_value();
            }
            return reply(200, out);
        }
        if (path == "/resolve") {
            auto hash = HashedId::from_hex(field(parse_body(), "stc_hash"));
            return reply(200, {{"stc_hash", hash.hex()}, {"canonical_id", service.resolve(hash).str()}});
        }
    }
    return error_reply(404, "NotFound", fmt::format("no endpoint {} {}", method, path));
}

}  // namespace

HttpResponse handle_request(VpkiService& service, std::string_view method, std::string_view path,
                            std::string_view body) {
    try {
        return dispatch(service, method, path, body);
    } catch (const json::exception& e) {
        return error_reply(400, "InvalidArgument", e.what());
    } catch (const Error& e) {
        return error_reply(status_for(e.code()), to_string(e.code()), e.what());
    }
}

// ----------------------------------------------------------------------------
// HTTP server
// ----------------------------------------------------------------------------

struct HttpServer::Impl {
    VpkiService& service;
    httplib::Server server;
    std::thread thread;

    explicit Impl(VpkiService& s) : service(s) {
        auto handler = [this](const httplib::Request& req, httplib::Response& res) {
            auto r = handle_request(service, req.method, req.path, req.body);
            spdlog::debug("{} {} -> {}", req.method, req.path, r.status);
            res.status = r.status;
            res.set_content(r.body, "application/json");
        };
        server.Get(R"(/.*)", handler);
        server.Post(R"(/.*)", handler);
    }
};

HttpServer::HttpServer(VpkiService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
    int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw Error(ErrorCode::ConfigInvalid, fmt::format("cannot bind {}:{}", host, port));
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    return bound;
}

void HttpServer::listen(const std::string& host, int port) {
    if (!impl_->server.listen(host, port)) {
        throw Error(ErrorCode::ConfigInvalid, fmt::format("cannot listen on {}:{}", host, port));
    }
}

void HttpServer::stop() {
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace vrevoke
