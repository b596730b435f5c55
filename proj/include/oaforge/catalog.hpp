#pragma once

// Durable store of class records keyed by canonical form.
//
// Layout under the root directory:
//   catalog/<level>/log    length-prefixed, CRC32-checked batches (one per parent)
//   catalog/<level>/index  sorted keys with a checksummed footer
//
// Reopening a root replays every committed batch; a torn final record is dropped.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "oaforge/canon.hpp"
#include "oaforge/cube.hpp"

namespace oaforge {

struct CatalogEntry {
    CanonicalKey key;
    std::string level;
    int n = 0;
    std::vector<Word> representative;  // sorted words
    std::uint64_t occurrences = 1;
    GroupOrder aut_order = 1;
    CanonicalKey parent;
    std::string type;

    friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

std::vector<std::uint8_t> encode_entry(const CatalogEntry& e);
CatalogEntry decode_entry(const std::vector<std::uint8_t>& bytes);

GroupOrder parse_group_order(const std::string& text);

enum class UpsertResult { Inserted, Incremented };

class Catalog {
public:
    explicit Catalog(std::filesystem::path root);
    ~Catalog();
    Catalog(const Catalog&) = delete;
    Catalog& operator=(const Catalog&) = delete;

    const std::filesystem::path& root() const noexcept { return root_; }

    // In-memory get-or-insert; safe from any number of threads.
    UpsertResult upsert(const CatalogEntry& e);

    // Appends the batch to the level log, then merges it. A parent already
    // committed at this level is skipped, which makes replays idempotent.
    void commit_batch(const std::string& level, const CanonicalKey& parent, const std::vector<CatalogEntry>& entries);
    bool parent_committed(const std::string& level, const CanonicalKey& parent) const;
    std::size_t committed_parent_count(const std::string& level) const;

    // Entries sorted by key.
    std::vector<CatalogEntry> snapshot(const std::string& level) const;
    std::vector<std::string> levels() const;

    void write_index(const std::string& level) const;
    // Throws CorruptStore on a checksum mismatch.
    std::vector<CanonicalKey> read_index(const std::string& level) const;

    // Test hook: the batch after the next `batches` commits is half written and throws.
    void inject_crash_after(int batches) { crash_after_ = batches; }

private:
    struct Shard {
        mutable std::mutex mu;
        std::unordered_map<CanonicalKey, CatalogEntry, CanonicalKeyHash> map;
    };
    struct Level {
        std::array<Shard, 16> shards;
        mutable std::mutex log_mu;
        std::set<CanonicalKey> committed;
    };

    Level& level(const std::string& name);
    const Level* find_level(const std::string& name) const;
    std::filesystem::path level_dir(const std::string& name) const;
    void replay(const std::string& name);
    UpsertResult merge(Level& lv, const CatalogEntry& e);

    std::filesystem::path root_;
    mutable std::mutex levels_mu_;
    std::map<std::string, std::unique_ptr<Level>> levels_;
    int crash_after_ = -1;
};

}  // namespace oaforge
