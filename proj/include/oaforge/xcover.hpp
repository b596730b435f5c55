#pragma once

// Exact cover with per-item multiplicities: choose blocks so that every item
// lies in exactly alpha(item) chosen blocks.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace oaforge {

class CoverInstance {
public:
    int add_item(int alpha);
    // Items listed more than once contribute once.
    int add_block(std::vector<int> items, std::uint64_t payload);
    int add_block(std::vector<int> items) { return add_block(std::move(items), blocks_.size()); }

    int item_count() const noexcept { return static_cast<int>(alpha_.size()); }
    int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
    int alpha(int item) const { return alpha_.at(item); }
    const std::vector<int>& block(int b) const { return blocks_.at(b); }
    std::uint64_t payload(int b) const { return payload_.at(b); }

private:
    std::vector<int> alpha_;
    std::vector<std::vector<int>> blocks_;
    std::vector<std::uint64_t> payload_;
};

// Sorted indices of the chosen blocks.
using CoverSolution = std::vector<int>;

// Emits every solution once, in an order fixed by the instance; returns the count.
std::uint64_t solve_all(const CoverInstance& inst, const std::function<void(const CoverSolution&)>& emit);
std::uint64_t count_all(const CoverInstance& inst);

// True iff `chosen` meets every multiplicity exactly.
bool is_cover(const CoverInstance& inst, const CoverSolution& chosen);

// Plain-text instance: `item <id> <alpha>` and `block <id> <item ids...>` lines,
// '#' comments. Names are kept for printing solutions.
struct NamedCoverInstance {
    CoverInstance instance;
    std::vector<std::string> item_names;
    std::vector<std::string> block_names;
};

NamedCoverInstance parse_cover_text(std::istream& in);

}  // namespace oaforge
