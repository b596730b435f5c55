#include "oaforge/catalog.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>
#include <zlib.h>

#include <json.hpp>

#include "oaforge/array_file.hpp"
#include "oaforge/errors.hpp"

namespace oaforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint32_t crc(const std::uint8_t* data, std::size_t len) {
    return static_cast<std::uint32_t>(::crc32(::crc32(0L, Z_NULL, 0), data, static_cast<uInt>(len)));
}

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}

std::string rows_text(int n, const std::vector<Word>& rows) {
    std::string s = "OA " + std::to_string(rows.size()) + " " + std::to_string(n) + " 2 0\n";
    for (Word w : rows) s += format_word(w, n) + "\n";
    return s;
}

std::vector<Word> parse_rows(const std::string& text) {
    std::istringstream in(text);
    const ArrayFile af = read_array_file(in);
    return af.rows.words();
}

json entry_json(const CatalogEntry& e) {
    return json{{"key", e.key.hex()},
                {"level", e.level},
                {"representative", rows_text(e.n, e.representative)},
                {"occurrences", e.occurrences},
                {"aut_order", to_string(e.aut_order)},
                {"parent", e.parent.hex()},
                {"type", e.type}};
}

CatalogEntry entry_from_json(const json& j) {
    CatalogEntry e;
    e.key = CanonicalKey::from_hex(j.at("key").get<std::string>());
    e.level = j.at("level").get<std::string>();
    const std::string rep = j.at("representative").get<std::string>();
    std::istringstream hs(rep);
    std::string tag;
    std::uint64_t count = 0;
    hs >> tag >> count >> e.n;
    e.representative = parse_rows(rep);
    e.occurrences = j.at("occurrences").get<std::uint64_t>();
    e.aut_order = parse_group_order(j.at("aut_order").get<std::string>());
    e.parent = CanonicalKey::from_hex(j.at("parent").get<std::string>());
    e.type = j.at("type").get<std::string>();
    return e;
}

}  // namespace

GroupOrder parse_group_order(const std::string& text) {
    if (text.empty()) throw InvalidArgument("empty group order");
    GroupOrder v = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw InvalidArgument("bad group order `" + text + "`");
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    return v;
}

std::vector<std::uint8_t> encode_entry(const CatalogEntry& e) { return json::to_cbor(entry_json(e)); }

CatalogEntry decode_entry(const std::vector<std::uint8_t>& bytes) {
    try {
        return entry_from_json(json::from_cbor(bytes));
    } catch (const json::exception& ex) {
        throw CorruptStore(std::string("undecodable catalog entry: ") + ex.what());
    }
}

Catalog::Catalog(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_ / "catalog");
    for (const auto& d : fs::directory_iterator(root_ / "catalog"))
        if (d.is_directory()) replay(d.path().filename().string());
}

Catalog::~Catalog() = default;

fs::path Catalog::level_dir(const std::string& name) const { return root_ / "catalog" / name; }

Catalog::Level& Catalog::level(const std::string& name) {
    std::lock_guard lock(levels_mu_);
    auto& slot = levels_[name];
    if (!slot) {
        slot = std::make_unique<Level>();
        fs::create_directories(level_dir(name));
    }
    return *slot;
}

const Catalog::Level* Catalog::find_level(const std::string& name) const {
    std::lock_guard lock(levels_mu_);
    auto it = levels_.find(name);
    return it == levels_.end() ? nullptr : it->second.get();
}

UpsertResult Catalog::merge(Level& lv, const CatalogEntry& e) {
    if (e.occurrences == 0) throw InvalidArgument("catalog entries need occurrences >= 1");
    Shard& sh = lv.shards[CanonicalKeyHash{}(e.key) % lv.shards.size()];
    std::lock_guard lock(sh.mu);
    auto [it, fresh] = sh.map.try_emplace(e.key, e);
    if (fresh) return UpsertResult::Inserted;
    it->second.occurrences += e.occurrences;
    return UpsertResult::Incremented;
}

UpsertResult Catalog::upsert(const CatalogEntry& e) { return merge(level(e.level), e); }

void Catalog::replay(const std::string& name) {
    Level& lv = level(name);
    const fs::path log = level_dir(name) / "log";
    if (!fs::exists(log)) return;
    std::ifstream in(log, std::ios::binary);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t pos = 0, good = 0;
    while (pos + 8 <= data.size()) {
        const std::uint32_t len = get_u32(&data[pos]);
        const std::uint32_t sum = get_u32(&data[pos + 4]);
        if (pos + 8 + len > data.size()) break;  // torn tail
        const std::uint8_t* payload = &data[pos + 8];
        const bool last = pos + 8 + len == data.size();
        if (crc(payload, len) != sum) {
            if (last) break;
            throw CorruptStore("checksum mismatch in " + log.string() + " at offset " + std::to_string(pos));
        }
        json batch;
        try {
            batch = json::from_cbor(payload, payload + len);
        } catch (const json::exception& ex) {
            throw CorruptStore("undecodable batch in " + log.string() + ": " + ex.what());
        }
        const CanonicalKey parent = CanonicalKey::from_hex(batch.at("parent").get<std::string>());
        if (lv.committed.insert(parent).second)
            for (const auto& je : batch.at("entries")) merge(lv, entry_from_json(je));
        pos += 8 + len;
        good = pos;
    }
    if (good != data.size()) fs::resize_file(log, good);
}

void Catalog::commit_batch(const std::string& name, const CanonicalKey& parent, const std::vector<CatalogEntry>& entries) {
    Level& lv = level(name);
    json batch{{"parent", parent.hex()}, {"entries", json::array()}};
    for (const auto& e : entries) {
        if (e.level != name) throw InvalidArgument("entry level does not match batch level");
        batch["entries"].push_back(entry_json(e));
    }
    const std::vector<std::uint8_t> payload = json::to_cbor(batch);
    std::vector<std::uint8_t> record;
    put_u32(record, static_cast<std::uint32_t>(payload.size()));
    put_u32(record, crc(payload.data(), payload.size()));
    record.insert(record.end(), payload.begin(), payload.end());

    std::lock_guard lock(lv.log_mu);
    if (lv.committed.count(parent)) return;
    const fs::path log = level_dir(name) / "log";
    std::FILE* f = std::fopen(log.c_str(), "ab");
    if (!f) throw Error("cannot open " + log.string());
    std::size_t to_write = record.size();
    const bool crash = crash_after_ == 0;
    if (crash) to_write = 8 + payload.size() / 2;
    const std::size_t wrote = std::fwrite(record.data(), 1, to_write, f);
    std::fflush(f);
    ::fsync(::fileno(f));
    std::fclose(f);
    if (crash) {
        crash_after_ = -1;
        throw Error("injected crash while committing a batch");
    }
    if (crash_after_ > 0) --crash_after_;
    if (wrote != to_write) throw Error("short write to " + log.string());
    lv.committed.insert(parent);
    for (const auto& e : entries) merge(lv, e);
}

bool Catalog::parent_committed(const std::string& name, const CanonicalKey& parent) const {
    const Level* lv = find_level(name);
    if (!lv) return false;
    std::lock_guard lock(lv->log_mu);
    return lv->committed.count(parent) != 0;
}

std::size_t Catalog::committed_parent_count(const std::string& name) const {
    const Level* lv = find_level(name);
    if (!lv) return 0;
    std::lock_guard lock(lv->log_mu);
    return lv->committed.size();
}

std::vector<CatalogEntry> Catalog::snapshot(const std::string& name) const {
    std::vector<CatalogEntry> out;
    const Level* lv = find_level(name);
    if (!lv) return out;
    for (const auto& sh : lv->shards) {
        std::lock_guard lock(sh.mu);
        for (const auto& [k, e] : sh.map) out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) { return a.key < b.key; });
    return out;
}

std::vector<std::string> Catalog::levels() const {
    std::lock_guard lock(levels_mu_);
    std::vector<std::string> out;
    for (const auto& [name, lv] : levels_) out.push_back(name);
    return out;
}

void Catalog::write_index(const std::string& name) const {
    const auto entries = snapshot(name);
    std::vector<std::uint8_t> b;
    for (const auto& e : entries) {
        const auto& kb = e.key.bytes();
        put_u32(b, static_cast<std::uint32_t>(kb.size()));
        b.insert(b.end(), kb.begin(), kb.end());
    }
    const std::uint32_t sum = crc(b.data(), b.size());
    for (char c : std::string("OAIX")) b.push_back(static_cast<std::uint8_t>(c));
    put_u32(b, static_cast<std::uint32_t>(entries.size()));
    put_u32(b, sum);
    fs::create_directories(level_dir(name));
    const fs::path tmp = level_dir(name) / "index.tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
        if (!out) throw Error("cannot write " + tmp.string());
    }
    fs::rename(tmp, level_dir(name) / "index");
}

std::vector<CanonicalKey> Catalog::read_index(const std::string& name) const {
    const fs::path path = level_dir(name) / "index";
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorruptStore("missing index " + path.string());
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (data.size() < 12 || std::string(data.end() - 12, data.end() - 8) != "OAIX")
        throw CorruptStore("index footer missing in " + path.string());
    const std::size_t body = data.size() - 12;
    const std::uint32_t count = get_u32(&data[body + 4]);
    const std::uint32_t sum = get_u32(&data[body + 8]);
    if (crc(data.data(), body) != sum) throw CorruptStore("index checksum mismatch in " + path.string());
    std::vector<CanonicalKey> keys;
    std::size_t pos = 0;
    while (pos < body) {
        if (pos + 4 > body) throw CorruptStore("truncated index record");
        const std::uint32_t len = get_u32(&data[pos]);
        if (pos + 4 + len > body) throw CorruptStore("truncated index record");
        keys.emplace_back(std::vector<std::uint8_t>(data.begin() + pos + 4, data.begin() + pos + 4 + len));
        pos += 4 + len;
    }
    if (keys.size() != count) throw CorruptStore("index count mismatch");
    return keys;
}

}  // namespace oaforge
