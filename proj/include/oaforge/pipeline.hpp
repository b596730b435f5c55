#pragma once

// Staged classification of equitable 2-partitions with quotient matrix
// [[0,n],[c,n-c]] through (r0,r1)-local partitions: seeds, level-by-level
// extension by exact cover, isomorph rejection, double counting, completion.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oaforge/algebra.hpp"
#include "oaforge/canon.hpp"
#include "oaforge/cube.hpp"

namespace oaforge {

class Catalog;

// P_plus is stored explicitly; P_minus is the rest of the domain, i.e. every
// word starting with 0 of weight <= r0 or starting with 1 of weight <= r1.
struct LocalPartition {
    int n = 0;
    int r0 = 0;
    int r1 = 0;
    int c = 0;
    std::vector<Word> plus;  // sorted

    int radius(Word w) const noexcept { return (w & 1u) ? r1 : r0; }
    bool in_domain(Word w) const noexcept { return weight(w) <= radius(w); }
    std::vector<Word> domain() const;
    std::vector<Word> minus() const;
    friend bool operator==(const LocalPartition&, const LocalPartition&) = default;
};

// Words of weight k whose first coordinate is `first` (0 or 1), increasing.
std::vector<Word> words_of_weight(int n, int k, int first);

// Checks conditions (I)-(IV); throws VerificationFailure naming the first violation.
void verify_local(const LocalPartition& lp);

// Words of C inside the (r0,r1) domain.
LocalPartition restrict_to_local(const VertexSet& c, int r0, int r1, int c_param);

CanonicalKey local_key(const LocalPartition& lp);

struct SeedSpec {
    std::vector<int> cycle_lengths;  // cycle_lengths[marked] holds coordinate 1
    int marked = 0;
    std::string type() const;  // marked length first, then the rest descending: "3+6+4"
};

// (2-factor, marked vertex) classes on n vertices.
std::vector<SeedSpec> seed_specs(int n);
LocalPartition seed_from_spec(int n, const SeedSpec& spec);

struct ClassRecord {
    CanonicalKey key;
    LocalPartition representative;
    std::uint64_t occurrences = 1;  // N(G): solutions from the parent in this class
    GroupOrder aut_order = 1;       // stabilizer order among permutations fixing coordinate 1
    CanonicalKey parent;
    std::string type;
};

// One record per class of (2,2)-local partitions. Weight-2 members of P_plus
// form a (c-1)-regular graph on the coordinates.
std::vector<ClassRecord> seed_classes(int n, int c = 3);
std::vector<LocalPartition> seed_local_partitions(int n, int c = 3);

// Every (r0',r1')-local partition containing lp, where exactly one radius grows by 1.
// Returns the number of emissions.
std::uint64_t extend(const LocalPartition& lp, int r0, int r1, const std::function<void(LocalPartition&&)>& emit);

struct LevelOptions {
    int threads = 1;
    Catalog* catalog = nullptr;  // persist each parent's batch; skip parents already committed
    bool verify_representatives = true;
    std::function<void(std::size_t done, std::size_t total)> progress;
};

struct LevelResult {
    std::vector<ClassRecord> classes;  // grouped by parent in input order, then by key
    std::uint64_t raw_solutions = 0;
    std::uint64_t validated = 0;
    std::uint64_t validation_failures = 0;
};

std::string level_name(int r0, int r1);

LevelResult classify_level(const std::vector<ClassRecord>& reps, int r0, int r1, const LevelOptions& opts = {});

// |Aut(parent)| == N(child) * |Aut(child)|, the double count of the child's class.
bool validate_double_count(const ClassRecord& parent, const ClassRecord& child);

// Radii visited after (2,2) on the way to (r,r).
std::vector<std::pair<int, int>> default_schedule(int r);

enum class CompletionRule {
    Low,   // fix the lowest coordinates of u, leave the highest ones free
    High,  // fix the highest coordinates, leave the lowest ones free
};

// Completes an (r,r)-local partition with r >= n - t - 1 to (C, complement),
// verified equitable with [[0,n],[c,n-c]]. Throws CountContradiction when some
// subcube count is neither lambda - 1 nor lambda.
EquitablePartition complete_partition(const LocalPartition& lp, CompletionRule rule = CompletionRule::Low);

struct OAClass {
    CanonicalKey key;
    VertexSet array;
    GroupOrder aut_order = 1;
};

// All arrays with the given parameters up to equivalence, for q = 2 on the
// Bierbrauer-Friedman bound. n <= 7 runs a direct exact cover; larger n runs
// the local-partition pipeline.
std::vector<OAClass> classify_oa(const OAParams& p, int threads = 1);

}  // namespace oaforge
