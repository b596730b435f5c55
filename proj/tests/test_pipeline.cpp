#include <doctest.h>

#include <filesystem>
#include <set>

#include <unistd.h>

#include "oaforge/algebra.hpp"
#include "oaforge/catalog.hpp"
#include "oaforge/constructions.hpp"
#include "oaforge/errors.hpp"
#include "oaforge/pipeline.hpp"

using namespace oaforge;
namespace fs = std::filesystem;

namespace {

std::uint64_t as_u64(GroupOrder g) { return static_cast<std::uint64_t>(g); }

}  // namespace

TEST_CASE("words of a given weight and first coordinate") {
    const auto w = words_of_weight(5, 2, 1);
    CHECK(w.size() == 4);
    for (Word x : w) {
        CHECK(weight(x) == 2);
        CHECK(has_coord(x, 1));
    }
    CHECK(std::is_sorted(w.begin(), w.end()));
    CHECK(words_of_weight(5, 2, 0).size() == 6);
    CHECK(words_of_weight(5, 0, 0) == std::vector<Word>{0});
    CHECK(words_of_weight(5, 0, 1).empty());
}

TEST_CASE("local partition conditions") {
    const LocalPartition lp = restrict_to_local(fdf_c13(), 3, 3, 3);
    CHECK_NOTHROW(verify_local(lp));
    LocalPartition no_zero = lp;
    no_zero.plus.erase(no_zero.plus.begin());
    CHECK_THROWS_AS(verify_local(no_zero), VerificationFailure);
    LocalPartition outside = lp;
    outside.plus.push_back(all_ones(13));
    CHECK_THROWS_AS(verify_local(outside), VerificationFailure);
    LocalPartition adjacent = lp;
    adjacent.plus.push_back(unit(2));
    std::sort(adjacent.plus.begin(), adjacent.plus.end());
    CHECK_THROWS_AS(verify_local(adjacent), VerificationFailure);
    LocalPartition short_row = lp;
    short_row.plus.erase(short_row.plus.begin() + 1);
    CHECK_THROWS_AS(verify_local(short_row), VerificationFailure);
}

TEST_CASE("seed types on small lengths") {
    CHECK(seed_specs(6).size() == 2);
    CHECK(seed_specs(6)[0].type() == "3+3");
    CHECK(seed_specs(6)[1].type() == "6");
    for (const auto& lp : seed_local_partitions(9)) CHECK_NOTHROW(verify_local(lp));
    CHECK(seed_local_partitions(9).size() == seed_specs(9).size());
}

TEST_CASE("seeds of other degrees") {
    const auto seeds = seed_classes(8, 4);
    CHECK_FALSE(seeds.empty());
    std::set<CanonicalKey> keys;
    for (const auto& s : seeds) {
        CHECK_NOTHROW(verify_local(s.representative));
        CHECK(keys.insert(s.key).second);
    }
}

TEST_CASE("every emission is a valid local partition") {
    for (const auto& seed : seed_local_partitions(9)) {
        std::uint64_t emitted = 0;
        const auto n = extend(seed, 2, 3, [&](LocalPartition&& lp) {
            CHECK_NOTHROW(verify_local(lp));
            CHECK(lp.r0 == 2);
            CHECK(lp.r1 == 3);
            CHECK(std::includes(lp.plus.begin(), lp.plus.end(), seed.plus.begin(), seed.plus.end()));
            ++emitted;
        });
        CHECK(n == emitted);
    }
    CHECK_THROWS_AS(extend(seed_local_partitions(9)[0], 3, 3, [](LocalPartition&&) {}), InvalidArgument);
}

TEST_CASE("double counting holds at each level and detects a dropped solution") {
    const auto seeds = seed_classes(9);
    const LevelResult l1 = classify_level(seeds, 2, 3);
    CHECK(l1.validation_failures == 0);
    CHECK(l1.validated == l1.classes.size());
    std::uint64_t occ = 0;
    for (const auto& c : l1.classes) occ += c.occurrences;
    CHECK(occ == l1.raw_solutions);
    const LevelResult l2 = classify_level(l1.classes, 3, 3);
    CHECK(l2.validation_failures == 0);

    const ClassRecord& child = l1.classes.front();
    const ClassRecord* parent = nullptr;
    for (const auto& s : seeds)
        if (s.key == child.parent) parent = &s;
    REQUIRE(parent);
    CHECK(validate_double_count(*parent, child));
    ClassRecord dropped = child;
    dropped.occurrences -= 1;
    CHECK_FALSE(validate_double_count(*parent, dropped));
}

TEST_CASE("thread count does not change the result") {
    const auto seeds = seed_classes(9);
    LevelOptions opts;
    opts.threads = 4;
    const LevelResult a = classify_level(seeds, 2, 3);
    const LevelResult b = classify_level(seeds, 2, 3, opts);
    REQUIRE(a.classes.size() == b.classes.size());
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
        CHECK(a.classes[i].key == b.classes[i].key);
        CHECK(a.classes[i].representative == b.classes[i].representative);
        CHECK(a.classes[i].occurrences == b.classes[i].occurrences);
    }
}

TEST_CASE("a level resumes from its catalog after a crash") {
    const fs::path dir = fs::temp_directory_path() / ("oaforge_resume_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    const auto seeds = seed_classes(9);
    const LevelResult reference = classify_level(seeds, 2, 3);
    {
        Catalog cat(dir);
        cat.inject_crash_after(1);
        LevelOptions opts;
        opts.catalog = &cat;
        CHECK_THROWS_AS(classify_level(seeds, 2, 3, opts), Error);
    }
    Catalog cat(dir);
    CHECK(cat.committed_parent_count("2_3") == 1);
    LevelOptions opts;
    opts.catalog = &cat;
    const LevelResult resumed = classify_level(seeds, 2, 3, opts);
    CHECK(resumed.validation_failures == 0);
    CHECK(resumed.raw_solutions == reference.raw_solutions);
    REQUIRE(resumed.classes.size() == reference.classes.size());
    for (std::size_t i = 0; i < resumed.classes.size(); ++i) {
        CHECK(resumed.classes[i].key == reference.classes[i].key);
        CHECK(resumed.classes[i].occurrences == reference.classes[i].occurrences);
    }
    CHECK(cat.snapshot("2_3").size() == reference.classes.size());
    fs::remove_all(dir);
}

TEST_CASE("schedules") {
    CHECK(default_schedule(2).empty());
    CHECK(default_schedule(3) == std::vector<std::pair<int, int>>{{2, 3}, {3, 3}});
    CHECK(default_schedule(5) == std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 4}, {4, 4}, {4, 5}, {5, 5}});
    CHECK(level_name(2, 3) == "2_3");
}

TEST_CASE("completion reproduces the Hamming code") {
    const VertexSet h = hamming_code(3);
    const LocalPartition lp = restrict_to_local(h, 3, 3, 1);
    for (auto rule : {CompletionRule::Low, CompletionRule::High}) CHECK(complete_partition(lp, rule).cells[0] == h);
    CHECK_THROWS_AS(complete_partition(restrict_to_local(h, 2, 2, 1)), InvalidArgument);
    CHECK_THROWS_AS(complete_partition(restrict_to_local(h, 2, 3, 1)), InvalidArgument);
}

TEST_CASE("completion rejects a damaged partial partition") {
    const VertexSet c13 = fdf_c13();
    LocalPartition lp = restrict_to_local(c13, 5, 5, 3);
    lp.plus.erase(std::find_if(lp.plus.begin(), lp.plus.end(), [](Word w) { return weight(w) == 5; }));
    CHECK_THROWS_AS(complete_partition(lp), CountContradiction);
}

TEST_CASE("classification of small arrays") {
    CHECK(classify_oa({2, 3, 2, 1}).size() == 1);
    CHECK(classify_oa({16, 6, 2, 3}).size() == 1);
    const auto ham = classify_oa({16, 7, 2, 3});
    REQUIRE(ham.size() == 1);
    CHECK(are_equivalent(ham[0].array, hamming_code(3), {GroupKind::FullAut, 7}));
    CHECK(as_u64(ham[0].aut_order) == 16 * 168);
    CHECK_THROWS_AS(classify_oa({32, 7, 2, 3}), InvalidArgument);
    CHECK_THROWS_AS(classify_oa({9, 2, 3, 1}), InvalidArgument);
}
