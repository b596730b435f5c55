#include "oaforge/xcover.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

#include "oaforge/errors.hpp"

namespace oaforge {

int CoverInstance::add_item(int alpha) {
    if (alpha < 0) throw InvalidArgument("item multiplicity must be nonnegative");
    alpha_.push_back(alpha);
    return item_count() - 1;
}

int CoverInstance::add_block(std::vector<int> items, std::uint64_t payload) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    for (int i : items)
        if (i < 0 || i >= item_count()) throw InvalidArgument("block references undeclared item");
    blocks_.push_back(std::move(items));
    payload_.push_back(payload);
    return block_count() - 1;
}

bool is_cover(const CoverInstance& inst, const CoverSolution& chosen) {
    std::vector<int> hits(inst.item_count(), 0);
    for (int b : chosen)
        for (int i : inst.block(b)) ++hits[i];
    for (int i = 0; i < inst.item_count(); ++i)
        if (hits[i] != inst.alpha(i)) return false;
    return true;
}

namespace {

enum : char { kActive = 0, kChosen = 1, kRemoved = 2 };

class Solver {
public:
    Solver(const CoverInstance& inst, const std::function<void(const CoverSolution&)>* emit)
        : emit_(emit), need_(inst.item_count()), cand_(inst.item_count(), 0) {
        const int nb = inst.block_count();
        std::vector<int> order(nb);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return inst.payload(a) < inst.payload(b); });
        for (int i = 0; i < inst.item_count(); ++i) need_[i] = inst.alpha(i);
        item_blocks_.resize(inst.item_count());
        for (int b : order) {
            const auto& items = inst.block(b);
            if (items.empty()) {
                free_.push_back(b);
                continue;
            }
            bool dead = false;
            for (int i : items)
                if (need_[i] == 0) dead = true;
            if (dead) continue;
            const int id = static_cast<int>(original_.size());
            original_.push_back(b);
            items_.push_back(items);
            for (int i : items) {
                item_blocks_[i].push_back(id);
                ++cand_[i];
            }
        }
        state_.assign(original_.size(), kActive);
        for (int i = 0; i < inst.item_count(); ++i)
            if (cand_[i] < need_[i]) infeasible_ = true;
    }

    std::uint64_t run() {
        if (infeasible_) return 0;
        search();
        return count_;
    }

private:
    void remove(int b) {
        state_[b] = kRemoved;
        for (int i : items_[b]) --cand_[i];
        undo_.push_back(b);
    }

    void restore_to(std::size_t mark) {
        while (undo_.size() > mark) {
            int b = undo_.back();
            undo_.pop_back();
            state_[b] = kActive;
            for (int i : items_[b]) ++cand_[i];
        }
    }

    void search() {
        int best = -1;
        int best_slack = 0;
        for (std::size_t i = 0; i < need_.size(); ++i) {
            if (need_[i] == 0) continue;
            const int slack = cand_[i] - need_[i];
            if (slack < 0) return;
            if (best < 0 || slack < best_slack) {
                best = static_cast<int>(i);
                best_slack = slack;
            }
        }
        if (best < 0) {
            leaf(0);
            return;
        }
        int b = -1;
        for (int cand : item_blocks_[best])
            if (state_[cand] == kActive) {
                b = cand;
                break;
            }
        // include b
        const std::size_t mark = undo_.size();
        state_[b] = kChosen;
        for (int i : items_[b]) {
            --need_[i];
            --cand_[i];
        }
        chosen_.push_back(original_[b]);
        for (int i : items_[b]) {
            if (need_[i] != 0) continue;
            for (int other : item_blocks_[i])
                if (state_[other] == kActive) remove(other);
        }
        search();
        restore_to(mark);
        chosen_.pop_back();
        for (int i : items_[b]) {
            ++need_[i];
            ++cand_[i];
        }
        state_[b] = kActive;
        // exclude b
        remove(b);
        search();
        restore_to(mark);
    }

    void leaf(std::size_t free_index) {
        if (free_index == free_.size()) {
            ++count_;
            if (emit_) {
                CoverSolution sol = chosen_;
                std::sort(sol.begin(), sol.end());
                (*emit_)(sol);
            }
            return;
        }
        leaf(free_index + 1);
        chosen_.push_back(free_[free_index]);
        leaf(free_index + 1);
        chosen_.pop_back();
    }

    const std::function<void(const CoverSolution&)>* emit_;
    std::vector<int> need_;
    std::vector<int> cand_;
    std::vector<std::vector<int>> items_;
    std::vector<std::vector<int>> item_blocks_;
    std::vector<int> original_;
    std::vector<int> free_;
    std::vector<char> state_;
    std::vector<int> undo_;
    std::vector<int> chosen_;
    std::uint64_t count_ = 0;
    bool infeasible_ = false;
};

}  // namespace

std::uint64_t solve_all(const CoverInstance& inst, const std::function<void(const CoverSolution&)>& emit) {
    Solver s(inst, &emit);
    return s.run();
}

std::uint64_t count_all(const CoverInstance& inst) {
    Solver s(inst, nullptr);
    return s.run();
}

NamedCoverInstance parse_cover_text(std::istream& in) {
    NamedCoverInstance out;
    std::map<std::string, int> item_ids;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        std::string id;
        if (!(ls >> id)) throw ParseError(lineno, "line " + std::to_string(lineno) + ": missing id");
        if (kind == "item") {
            int alpha = 0;
            std::string extra;
            if (!(ls >> alpha) || alpha < 0 || (ls >> extra))
                throw ParseError(lineno, "line " + std::to_string(lineno) + ": expected `item <id> <alpha>`");
            if (item_ids.count(id)) throw ParseError(lineno, "line " + std::to_string(lineno) + ": duplicate item " + id);
            item_ids[id] = out.instance.add_item(alpha);
            out.item_names.push_back(id);
        } else if (kind == "block") {
            std::vector<int> items;
            std::string name;
            while (ls >> name) {
                auto it = item_ids.find(name);
                if (it == item_ids.end())
                    throw ParseError(lineno, "line " + std::to_string(lineno) + ": unknown item " + name);
                items.push_back(it->second);
            }
            out.instance.add_block(std::move(items));
            out.block_names.push_back(id);
        } else {
            throw ParseError(lineno, "line " + std::to_string(lineno) + ": unknown record `" + kind + "`");
        }
    }
    return out;
}

}  // namespace oaforge
