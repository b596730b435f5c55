#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <unistd.h>

#include "oaforge/catalog.hpp"
#include "oaforge/errors.hpp"

using namespace oaforge;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("oaforge_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

CanonicalKey key_of(std::uint32_t v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "01%08x", v);
    return CanonicalKey::from_hex(buf);
}

CatalogEntry entry(std::uint32_t v, const std::string& level, const CanonicalKey& parent = {}) {
    return CatalogEntry{key_of(v), level, 5, {0, 7, v % 32}, 1, GroupOrder(v + 1), parent, "t" + std::to_string(v % 3)};
}

}  // namespace

TEST_CASE("entries round trip through the binary encoding") {
    CatalogEntry e = entry(42, "2_3", key_of(7));
    e.aut_order = factorial(30);
    CHECK(decode_entry(encode_entry(e)) == e);
    CHECK_THROWS_AS(decode_entry({0xff, 0x00}), CorruptStore);
    CHECK(parse_group_order("480") == 480);
    CHECK_THROWS_AS(parse_group_order("4x"), InvalidArgument);
}

TEST_CASE("concurrent upserts") {
    TempDir dir;
    Catalog cat(dir.path);
    std::vector<std::thread> pool;
    std::atomic<int> inserted{0};
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&, t] {
            for (int i = 0; i < 1000; ++i)
                if (cat.upsert(entry(static_cast<std::uint32_t>((i * 7 + t) % 500), "L")) == UpsertResult::Inserted) ++inserted;
        });
    for (auto& th : pool) th.join();
    const auto snap = cat.snapshot("L");
    CHECK(inserted == 500);
    CHECK(snap.size() == 500);
    std::uint64_t total = 0;
    for (const auto& e : snap) total += e.occurrences;
    CHECK(total == 8000);
    CHECK(std::is_sorted(snap.begin(), snap.end(), [](const auto& a, const auto& b) { return a.key < b.key; }));
}

TEST_CASE("committed batches survive reopening and are idempotent") {
    TempDir dir;
    {
        Catalog cat(dir.path);
        cat.commit_batch("2_3", key_of(1), {entry(10, "2_3", key_of(1)), entry(11, "2_3", key_of(1))});
        cat.commit_batch("2_3", key_of(2), {entry(12, "2_3", key_of(2))});
        cat.commit_batch("2_3", key_of(2), {entry(12, "2_3", key_of(2))});
        CHECK(cat.snapshot("2_3").size() == 3);
        CHECK_THROWS_AS(cat.commit_batch("2_3", key_of(3), {entry(1, "3_3")}), InvalidArgument);
    }
    Catalog again(dir.path);
    CHECK(again.committed_parent_count("2_3") == 2);
    CHECK(again.parent_committed("2_3", key_of(1)));
    CHECK_FALSE(again.parent_committed("2_3", key_of(3)));
    const auto snap = again.snapshot("2_3");
    REQUIRE(snap.size() == 3);
    for (const auto& e : snap) CHECK(e.occurrences == 1);
    CHECK(again.levels() == std::vector<std::string>{"2_3"});
}

TEST_CASE("a crash mid-batch loses only that batch") {
    TempDir dir;
    {
        Catalog cat(dir.path);
        cat.inject_crash_after(2);
        cat.commit_batch("L", key_of(1), {entry(1, "L", key_of(1))});
        cat.commit_batch("L", key_of(2), {entry(2, "L", key_of(2))});
        CHECK_THROWS_AS(cat.commit_batch("L", key_of(3), {entry(3, "L", key_of(3)), entry(4, "L", key_of(3))}), Error);
    }
    const auto size_before = fs::file_size(dir.path / "catalog" / "L" / "log");
    Catalog resumed(dir.path);
    CHECK(fs::file_size(dir.path / "catalog" / "L" / "log") < size_before);
    CHECK(resumed.committed_parent_count("L") == 2);
    CHECK_FALSE(resumed.parent_committed("L", key_of(3)));
    resumed.commit_batch("L", key_of(3), {entry(3, "L", key_of(3)), entry(4, "L", key_of(3))});
    Catalog final_view(dir.path);
    CHECK(final_view.snapshot("L").size() == 4);
}

TEST_CASE("a damaged record before the tail is reported") {
    TempDir dir;
    {
        Catalog cat(dir.path);
        cat.commit_batch("L", key_of(1), {entry(1, "L", key_of(1))});
        cat.commit_batch("L", key_of(2), {entry(2, "L", key_of(2))});
    }
    const fs::path log = dir.path / "catalog" / "L" / "log";
    {
        std::fstream f(log, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(12);
        f.put('\x7f');
    }
    CHECK_THROWS_AS(Catalog{dir.path}, CorruptStore);
}

TEST_CASE("index files") {
    TempDir dir;
    Catalog cat(dir.path);
    for (std::uint32_t v = 0; v < 20; ++v) cat.upsert(entry(v, "L"));
    cat.write_index("L");
    const auto keys = cat.read_index("L");
    CHECK(keys.size() == 20);
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    const fs::path idx = dir.path / "catalog" / "L" / "index";
    {
        std::fstream f(idx, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(5);
        f.put('\x55');
    }
    CHECK_THROWS_AS(cat.read_index("L"), CorruptStore);
    CHECK_THROWS_AS(cat.read_index("missing"), CorruptStore);
}
