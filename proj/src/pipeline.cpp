#include "oaforge/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>

#include "oaforge/catalog.hpp"
#include "oaforge/errors.hpp"
#include "oaforge/xcover.hpp"

namespace oaforge {

namespace {

enum : std::uint8_t { kOutside = 0, kMinus = 1, kPlus = 2, kLayer = 3 };

std::vector<std::uint8_t> state_table(const LocalPartition& lp) {
    check_dimension(lp.n, kMaxDenseDim);
    std::vector<std::uint8_t> st(cube_size(lp.n), kOutside);
    for (Word w : lp.domain()) st[w] = kMinus;
    for (Word w : lp.plus) st[w] = kPlus;
    return st;
}

template <class F>
void for_each_neighbor(Word w, int n, F&& f) {
    for (int i = 0; i < n; ++i) f(w ^ (Word{1} << i));
}

Word next_combination(Word s) {
    const Word c = s & (~s + 1);
    const Word r = s + c;
    return (((r ^ s) >> 2) / c) | r;
}

std::string join_type(int marked, std::vector<int> rest) {
    std::sort(rest.rbegin(), rest.rend());
    std::string s = std::to_string(marked);
    for (int x : rest) s += "+" + std::to_string(x);
    return s;
}

void partitions_into(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 3; --p) {
        cur.push_back(p);
        partitions_into(n - p, p, cur, out);
        cur.pop_back();
    }
}

struct UnionFindSmall {
    std::vector<int> parent;
    explicit UnionFindSmall(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// One edge list (edges as two-bit words) per isomorphism class of d-regular graphs on n vertices.
std::vector<std::vector<Word>> regular_graphs(int n, int d) {
    struct Partial {
        std::vector<Word> edges;
        std::vector<int> degree;
    };
    const int total_edges = n * d / 2;
    std::vector<Partial> layer{{{}, std::vector<int>(n, 0)}};
    for (int e = 0; e < total_edges; ++e) {
        std::vector<Partial> next;
        std::set<CanonicalKey> seen;
        for (const auto& g : layer) {
            for (int i = 0; i < n; ++i) {
                if (g.degree[i] >= d) continue;
                for (int j = i + 1; j < n; ++j) {
                    if (g.degree[j] >= d) continue;
                    const Word edge = (Word{1} << i) | (Word{1} << j);
                    if (std::find(g.edges.begin(), g.edges.end(), edge) != g.edges.end()) continue;
                    Partial h = g;
                    h.edges.push_back(edge);
                    std::sort(h.edges.begin(), h.edges.end());
                    ++h.degree[i];
                    ++h.degree[j];
                    if (seen.insert(canonize(n, h.edges, GroupKind::CoordPerm).key).second) next.push_back(std::move(h));
                }
            }
        }
        layer = std::move(next);
    }
    std::vector<std::vector<Word>> out;
    for (auto& g : layer)
        if (std::all_of(g.degree.begin(), g.degree.end(), [&](int x) { return x == d; })) out.push_back(std::move(g.edges));
    return out;
}

LocalPartition seed_from_edges(int n, int c, const std::vector<Word>& edges) {
    LocalPartition lp{n, 2, 2, c, {0}};
    lp.plus.insert(lp.plus.end(), edges.begin(), edges.end());
    std::sort(lp.plus.begin(), lp.plus.end());
    return lp;
}

ClassRecord seed_record(LocalPartition lp, std::string type) {
    verify_local(lp);
    const CanonResult cr = canonize(lp.n, lp.plus, GroupKind::CoordPermFixFirst);
    return ClassRecord{cr.key, std::move(lp), 1, cr.aut_order, {}, std::move(type)};
}

}  // namespace

std::vector<Word> words_of_weight(int n, int k, int first) {
    std::vector<Word> out;
    const int m = k - first;
    if (m < 0 || m > n - 1 || n < 1) return out;
    if (m == 0) {
        out.push_back(static_cast<Word>(first));
        return out;
    }
    const Word limit = Word{1} << (n - 1);
    for (Word s = (Word{1} << m) - 1; s < limit; s = next_combination(s)) {
        out.push_back((s << 1) | static_cast<Word>(first));
        if (s == ((Word{1} << m) - 1) << (n - 1 - m)) break;
    }
    return out;
}

std::vector<Word> LocalPartition::domain() const {
    std::vector<Word> out;
    for (int w = 0; w <= r0; ++w) {
        auto v = words_of_weight(n, w, 0);
        out.insert(out.end(), v.begin(), v.end());
    }
    for (int w = 1; w <= r1; ++w) {
        auto v = words_of_weight(n, w, 1);
        out.insert(out.end(), v.begin(), v.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Word> LocalPartition::minus() const {
    std::vector<Word> out;
    const auto dom = domain();
    std::set_difference(dom.begin(), dom.end(), plus.begin(), plus.end(), std::back_inserter(out));
    return out;
}

void verify_local(const LocalPartition& lp) {
    auto fail = [](const std::string& what) { throw VerificationFailure("local partition: " + what); };
    if (!std::is_sorted(lp.plus.begin(), lp.plus.end()) ||
        std::adjacent_find(lp.plus.begin(), lp.plus.end()) != lp.plus.end())
        fail("P_plus is not a sorted set");
    std::vector<std::uint8_t> st(cube_size(lp.n), kOutside);
    for (Word w : lp.domain()) st[w] = kMinus;
    for (Word w : lp.plus) {
        if (w >= st.size() || st[w] != kMinus) fail("(I) word " + format_word(w, lp.n) + " lies outside the domain");
        st[w] = kPlus;
    }
    if (lp.plus.empty() || lp.plus.front() != 0) fail("(II) the zero word is not in P_plus");
    for (Word w : lp.plus)
        for_each_neighbor(w, lp.n, [&](Word x) {
            if (st[x] == kPlus) fail("(III) adjacent words " + format_word(w, lp.n) + " and " + format_word(x, lp.n));
        });
    for (Word v : lp.domain()) {
        if (weight(v) >= lp.radius(v)) continue;
        int plus = 0;
        for_each_neighbor(v, lp.n, [&](Word x) {
            if (st[x] == kOutside) fail("neighbourhood of " + format_word(v, lp.n) + " leaves the domain");
            plus += st[x] == kPlus;
        });
        if (st[v] == kMinus && plus != lp.c)
            fail("(IV) word " + format_word(v, lp.n) + " has " + std::to_string(plus) + " neighbours in P_plus, expected " +
                 std::to_string(lp.c));
    }
}

LocalPartition restrict_to_local(const VertexSet& c, int r0, int r1, int c_param) {
    if (!c.contains(0)) throw InvalidArgument("restriction needs the zero word in the set");
    LocalPartition lp{c.dim(), r0, r1, c_param, {}};
    for (Word w : c.members())
        if (lp.in_domain(w)) lp.plus.push_back(w);
    return lp;
}

CanonicalKey local_key(const LocalPartition& lp) { return canonize(lp.n, lp.plus, GroupKind::CoordPermFixFirst).key; }

std::string SeedSpec::type() const {
    std::vector<int> rest;
    for (std::size_t i = 0; i < cycle_lengths.size(); ++i)
        if (static_cast<int>(i) != marked) rest.push_back(cycle_lengths[i]);
    return join_type(cycle_lengths.at(marked), rest);
}

std::vector<SeedSpec> seed_specs(int n) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions_into(n, n, cur, parts);
    std::stable_sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a > b;
    });
    std::vector<SeedSpec> out;
    for (const auto& p : parts) {
        int prev = -1;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] == prev) continue;
            prev = p[i];
            out.push_back({p, static_cast<int>(i)});
        }
    }
    return out;
}

LocalPartition seed_from_spec(int n, const SeedSpec& spec) {
    int sum = 0;
    for (int len : spec.cycle_lengths) {
        if (len < 3) throw InvalidArgument("cycles must have length >= 3");
        sum += len;
    }
    if (sum != n) throw InvalidArgument("cycle lengths must sum to n");
    std::vector<int> order{spec.cycle_lengths.at(spec.marked)};
    for (std::size_t i = 0; i < spec.cycle_lengths.size(); ++i)
        if (static_cast<int>(i) != spec.marked) order.push_back(spec.cycle_lengths[i]);
    std::vector<Word> edges;
    int base = 0;
    for (int len : order) {
        for (int i = 0; i < len; ++i) edges.push_back((Word{1} << (base + i)) | (Word{1} << (base + (i + 1) % len)));
        base += len;
    }
    return seed_from_edges(n, 3, edges);
}

std::vector<ClassRecord> seed_classes(int n, int c) {
    check_dimension(n, kMaxDenseDim);
    if (c < 1 || c > n) throw InvalidArgument("c must lie in 1..n");
    const int d = c - 1;
    if ((n * d) % 2) throw InvalidArgument("no " + std::to_string(d) + "-regular graph on " + std::to_string(n) + " vertices");
    std::vector<ClassRecord> out;
    if (d == 2) {
        for (const auto& spec : seed_specs(n)) out.push_back(seed_record(seed_from_spec(n, spec), spec.type()));
    } else {
        int graph_index = 0;
        for (const auto& edges : regular_graphs(n, d)) {
            ++graph_index;
            const CanonResult cr = canonize(n, edges, GroupKind::CoordPerm);
            UnionFindSmall uf(n);
            for (const auto& g : cr.generators)
                for (int i = 0; i < n; ++i) uf.unite(i, g.perm[i]);
            for (int v = 0; v < n; ++v) {
                if (uf.find(v) != v) continue;
                std::vector<int> swap(n);
                std::iota(swap.begin(), swap.end(), 0);
                std::swap(swap[0], swap[v]);
                const CoordPerm relabel(swap);
                std::vector<Word> moved;
                for (Word e : edges) moved.push_back(relabel.apply(e));
                out.push_back(seed_record(seed_from_edges(n, c, moved),
                                          "g" + std::to_string(graph_index) + "v" + std::to_string(v + 1)));
            }
        }
    }
    std::set<CanonicalKey> keys;
    for (const auto& r : out)
        if (!keys.insert(r.key).second) throw VerificationFailure("two seeds share a canonical key");
    return out;
}

std::vector<LocalPartition> seed_local_partitions(int n, int c) {
    std::vector<LocalPartition> out;
    for (auto& r : seed_classes(n, c)) out.push_back(std::move(r.representative));
    return out;
}

std::uint64_t extend(const LocalPartition& lp, int r0, int r1, const std::function<void(LocalPartition&&)>& emit) {
    int b;
    if (r0 == lp.r0 + 1 && r1 == lp.r1)
        b = 0;
    else if (r0 == lp.r0 && r1 == lp.r1 + 1)
        b = 1;
    else
        throw InvalidArgument("target must grow exactly one radius by 1");
    const int n = lp.n;
    const int rb = b ? lp.r1 : lp.r0;
    std::vector<std::uint8_t> st = state_table(lp);
    const std::vector<Word> layer = words_of_weight(n, rb + 1, b);
    for (Word u : layer) st[u] = kLayer;

    CoverInstance inst;
    std::vector<int> item_of(st.size(), -1);
    for (Word v : words_of_weight(n, rb, b)) {
        if (st[v] != kMinus) continue;
        int beta = 0;
        for_each_neighbor(v, n, [&](Word x) {
            if (st[x] == kOutside) throw InvalidArgument("target leaves a constrained neighbourhood outside the domain");
            beta += st[x] == kPlus;
        });
        const int alpha = lp.c - beta;
        if (alpha < 0) return 0;
        item_of[v] = inst.add_item(alpha);
    }
    std::vector<int> items;
    for (Word u : layer) {
        bool blocked = false;
        items.clear();
        for_each_neighbor(u, n, [&](Word x) {
            if (st[x] == kPlus) blocked = true;
            if (item_of[x] >= 0) items.push_back(item_of[x]);
        });
        if (!blocked) inst.add_block(items, u);
    }

    LocalPartition base = lp;
    base.r0 = r0;
    base.r1 = r1;
    return solve_all(inst, [&](const CoverSolution& sol) {
        LocalPartition child = base;
        for (int blk : sol) child.plus.push_back(static_cast<Word>(inst.payload(blk)));
        std::sort(child.plus.begin(), child.plus.end());
        emit(std::move(child));
    });
}

std::string level_name(int r0, int r1) { return std::to_string(r0) + "_" + std::to_string(r1); }

bool validate_double_count(const ClassRecord& parent, const ClassRecord& child) {
    return parent.aut_order == static_cast<GroupOrder>(child.occurrences) * child.aut_order;
}

namespace {

constexpr std::size_t kChunkSize = 256;

// Children of one parent, merged from chunks canonized by any worker.
struct ParentJob {
    std::size_t index = 0;
    std::mutex mu;
    std::unordered_map<CanonicalKey, std::size_t, CanonicalKeyHash> by_key;
    std::vector<ClassRecord> kids;
    std::size_t pending = 0;  // chunks queued or running
};

struct Chunk {
    ParentJob* job = nullptr;
    std::vector<LocalPartition> items;
};

// Canonical images serve as representatives, so results do not depend on
// which worker canonized which chunk.
void canonize_chunk(Chunk& chunk, const ClassRecord& parent) {
    ParentJob& job = *chunk.job;
    std::vector<CanonResult> results;
    results.reserve(chunk.items.size());
    try {
        for (const auto& lp : chunk.items) results.push_back(canonize(lp.n, lp.plus, GroupKind::CoordPermFixFirst));
    } catch (...) {
        std::lock_guard lock(job.mu);
        --job.pending;
        throw;
    }
    std::lock_guard lock(job.mu);
    for (std::size_t k = 0; k < results.size(); ++k) {
        CanonResult& cr = results[k];
        auto [it, fresh] = job.by_key.try_emplace(cr.key, job.kids.size());
        if (fresh) {
            const LocalPartition& lp = chunk.items[k];
            LocalPartition rep{lp.n, lp.r0, lp.r1, lp.c, std::move(cr.image)};
            job.kids.push_back({std::move(cr.key), std::move(rep), 1, cr.aut_order, parent.key, parent.type});
        } else {
            ++job.kids[it->second].occurrences;
        }
    }
    --job.pending;
}

}  // namespace

LevelResult classify_level(const std::vector<ClassRecord>& reps, int r0, int r1, const LevelOptions& opts) {
    LevelResult res;
    if (reps.empty()) return res;
    const std::string level = level_name(r0, r1);
    const std::size_t count = reps.size();
    std::vector<std::vector<ClassRecord>> children(count);
    std::vector<char> skipped(count, 0);
    std::vector<std::uint64_t> raw(count, 0);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mu;
    std::exception_ptr failure;

    std::mutex queue_mu;
    std::condition_variable queue_cv;
    std::deque<Chunk> queue;
    std::size_t active_producers = 0;
    const int threads = std::max(1, opts.threads);

    auto failed = [&] {
        std::lock_guard lock(queue_mu);
        return failure != nullptr;
    };
    auto record_failure = [&] {
        std::lock_guard lock(queue_mu);
        if (!failure) failure = std::current_exception();
        queue_cv.notify_all();
    };
    // Runs one queued chunk if there is one; returns false when the queue was empty.
    auto run_one_chunk = [&](bool wait) {
        Chunk chunk;
        {
            std::unique_lock lock(queue_mu);
            if (wait)
                queue_cv.wait(lock, [&] {
                    return !queue.empty() || failure || (active_producers == 0 && next.load() >= count);
                });
            if (queue.empty() || failure) return false;
            chunk = std::move(queue.front());
            queue.pop_front();
        }
        try {
            canonize_chunk(chunk, reps[chunk.job->index]);
        } catch (...) {
            record_failure();
        }
        queue_cv.notify_all();
        return true;
    };
    auto push_chunk = [&](ParentJob& job, std::vector<LocalPartition>&& items) {
        {
            std::lock_guard lock(job.mu);
            ++job.pending;
        }
        const bool solo = threads == 1;
        Chunk chunk{&job, std::move(items)};
        if (solo) {
            canonize_chunk(chunk, reps[job.index]);
            return;
        }
        std::unique_lock lock(queue_mu);
        queue.push_back(std::move(chunk));
        const bool long_queue = queue.size() > static_cast<std::size_t>(2 * threads);
        lock.unlock();
        queue_cv.notify_one();
        if (long_queue) run_one_chunk(false);
    };

    auto finish_parent = [&](ParentJob& job) {
        const ClassRecord& parent = reps[job.index];
        std::vector<ClassRecord>& kids = children[job.index];
        kids = std::move(job.kids);
        std::sort(kids.begin(), kids.end(), [](const ClassRecord& a, const ClassRecord& b) { return a.key < b.key; });
        if (opts.verify_representatives)
            for (const auto& k : kids) verify_local(k.representative);
        if (opts.catalog) {
            std::vector<CatalogEntry> entries;
            entries.reserve(kids.size());
            for (const auto& k : kids)
                entries.push_back({k.key, level, k.representative.n, k.representative.plus, k.occurrences, k.aut_order,
                                   parent.key, k.type});
            opts.catalog->commit_batch(level, parent.key, entries);
        }
    };

    auto process_parent = [&](std::size_t i) {
        const ClassRecord& parent = reps[i];
        if (opts.catalog && opts.catalog->parent_committed(level, parent.key)) {
            skipped[i] = 1;
            return;
        }
        ParentJob job;
        job.index = i;
        // Drops this parent's queued chunks and waits out running ones, so no
        // worker touches `job` after it goes out of scope.
        auto abandon = [&] {
            {
                std::lock_guard lock(queue_mu);
                const auto before = queue.size();
                std::erase_if(queue, [&](const Chunk& c) { return c.job == &job; });
                std::lock_guard jl(job.mu);
                job.pending -= before - queue.size();
            }
            for (;;) {
                {
                    std::lock_guard lock(job.mu);
                    if (job.pending == 0) return;
                }
                std::this_thread::sleep_for(std::chrono::milliseconds(1));
            }
        };
        try {
            std::vector<LocalPartition> buffer;
            raw[i] = extend(parent.representative, r0, r1, [&](LocalPartition&& lp) {
                buffer.push_back(std::move(lp));
                if (buffer.size() == kChunkSize) {
                    push_chunk(job, std::move(buffer));
                    buffer = {};
                }
            });
            if (!buffer.empty()) push_chunk(job, std::move(buffer));
            // Help with queued chunks until every chunk of this parent is merged.
            for (;;) {
                {
                    std::lock_guard lock(job.mu);
                    if (job.pending == 0) break;
                }
                if (failed()) throw VerificationFailure("level aborted");
                if (!run_one_chunk(false)) {
                    std::unique_lock lock(queue_mu);
                    queue_cv.wait_for(lock, std::chrono::milliseconds(5));
                }
            }
        } catch (...) {
            abandon();
            throw;
        }
        finish_parent(job);
    };

    auto work = [&]() {
        for (;;) {
            if (failed()) return;
            if (run_one_chunk(false)) continue;
            std::size_t i;
            {
                std::lock_guard lock(queue_mu);
                i = next.fetch_add(1);
                if (i < count) ++active_producers;
            }
            if (i >= count) {
                while (run_one_chunk(true)) {
                }
                return;
            }
            try {
                process_parent(i);
            } catch (...) {
                record_failure();
            }
            {
                std::lock_guard lock(queue_mu);
                --active_producers;
            }
            queue_cv.notify_all();
            if (failed()) return;
            const std::size_t d = done.fetch_add(1) + 1;
            if (opts.progress) {
                std::lock_guard lock(progress_mu);
                opts.progress(d, count);
            }
        }
    };
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    if (opts.catalog && std::any_of(skipped.begin(), skipped.end(), [](char s) { return s != 0; })) {
        std::map<CanonicalKey, std::size_t> parent_index;
        for (std::size_t i = 0; i < count; ++i) parent_index.emplace(reps[i].key, i);
        for (auto& e : opts.catalog->snapshot(level)) {
            auto it = parent_index.find(e.parent);
            if (it == parent_index.end() || !skipped[it->second]) continue;
            const ClassRecord& parent = reps[it->second];
            LocalPartition lp{e.n, r0, r1, parent.representative.c, e.representative};
            children[it->second].push_back({e.key, std::move(lp), e.occurrences, e.aut_order, e.parent, e.type});
            raw[it->second] += e.occurrences;
        }
    }

    std::set<CanonicalKey> seen;
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t occ = 0;
        for (auto& child : children[i]) {
            if (!seen.insert(child.key).second) throw VerificationFailure("a class was reached from two parent classes");
            occ += child.occurrences;
            if (validate_double_count(reps[i], child))
                ++res.validated;
            else
                ++res.validation_failures;
        }
        if (occ != raw[i]) throw VerificationFailure("occurrence total differs from the raw solution count");
        res.raw_solutions += raw[i];
        for (auto& child : children[i]) res.classes.push_back(std::move(child));
    }
    return res;
}

std::vector<std::pair<int, int>> default_schedule(int r) {
    std::vector<std::pair<int, int>> out;
    if (r <= 2) return out;
    if (r == 3) return {{2, 3}, {3, 3}};
    out = {{2, 3}, {2, 4}, {3, 4}, {4, 4}};
    for (int k = 4; k < r; ++k) {
        out.emplace_back(k, k + 1);
        out.emplace_back(k + 1, k + 1);
    }
    return out;
}

EquitablePartition complete_partition(const LocalPartition& lp, CompletionRule rule) {
    const int n = lp.n;
    const int c = lp.c;
    check_dimension(n, kMaxDenseDim);
    if (lp.r0 != lp.r1) throw InvalidArgument("completion needs equal radii");
    if (c < 1 || (n + c) % 2) throw InvalidArgument("no array parameters match [[0,n],[c,n-c]]");
    const int t = (n + c) / 2 - 1;
    const std::uint64_t scaled = static_cast<std::uint64_t>(c) << n;
    if (scaled % static_cast<std::uint64_t>(n + c)) throw InvalidArgument("cell size c*2^n/(n+c) is not an integer");
    const std::uint64_t N = scaled / static_cast<std::uint64_t>(n + c);
    if (t < 0 || N % (std::uint64_t{1} << t)) throw InvalidArgument("2^t does not divide the cell size");
    const std::uint64_t lambda = N >> t;
    const int r = lp.r0;
    const int free_count = n - t;
    if (r < free_count - 1)
        throw InvalidArgument("completion needs radius >= n - t - 1 = " + std::to_string(free_count - 1));

    std::vector<std::uint8_t> in(cube_size(n), 0);
    for (Word w : lp.plus) {
        if (weight(w) > r) throw InvalidArgument("P_plus has a word beyond the radius");
        in[w] = 1;
    }
    for (int w = r + 1; w <= n; ++w) {
        std::vector<Word> layer = words_of_weight(n, w, 0);
        auto ones = words_of_weight(n, w, 1);
        layer.insert(layer.end(), ones.begin(), ones.end());
        std::sort(layer.begin(), layer.end());
        for (Word u : layer) {
            // Free coordinates: n - t of u's ones; the remaining t coordinates are fixed as in u.
            Word free = 0;
            int taken = 0;
            if (rule == CompletionRule::High) {
                for (Word x = u; x && taken < free_count; x &= x - 1, ++taken) free |= x & (~x + 1);
            } else {
                for (int i = n - 1; i >= 0 && taken < free_count; --i)
                    if ((u >> i) & 1u) {
                        free |= Word{1} << i;
                        ++taken;
                    }
            }
            std::uint64_t count = 0;
            const Word fixed = u & ~free;
            for (Word s = free;; s = (s - 1) & free) {
                if (s != free) count += in[fixed | s];
                if (s == 0) break;
            }
            if (count + 1 == lambda)
                in[u] = 1;
            else if (count != lambda)
                throw CountContradiction(u, count,
                                         "subcube through " + format_word(u, n) + " holds " + std::to_string(count) +
                                             " members, lambda is " + std::to_string(lambda));
        }
    }
    VertexSet cell(n);
    for (Word w = 0; w < in.size(); ++w)
        if (in[w]) cell.insert(w);
    EquitablePartition ep{n, {cell, cell.complement()}, {}};
    const QuotientMatrix m = verify_equitable(ep);
    const QuotientMatrix expect{{0, n}, {c, n - c}};
    if (m != expect) throw VerificationFailure("completed partition has matrix " + m.to_string() + ", expected " + expect.to_string());
    return ep;
}

namespace {

std::vector<OAClass> classify_direct(const OAParams& p) {
    const int n = p.n, t = p.t;
    const int lambda = static_cast<int>(p.lambda());
    CoverInstance inst;
    std::map<std::pair<Word, Word>, int> item_id;
    std::vector<Word> subsets;
    if (t == 0)
        subsets.push_back(0);
    else
        for (Word s = (Word{1} << t) - 1; s < (Word{1} << n); s = next_combination(s)) subsets.push_back(s);
    for (Word s : subsets) {
        for (Word pat = s;; pat = (pat - 1) & s) {
            // the zero word is fixed in every array
            item_id[{s, pat}] = inst.add_item(lambda - (pat == 0 ? 1 : 0));
            if (pat == 0) break;
        }
    }
    for (Word v = 1; v < cube_size(n); ++v) {
        std::vector<int> items;
        for (Word s : subsets) items.push_back(item_id.at({s, v & s}));
        inst.add_block(items, v);
    }
    std::map<CanonicalKey, OAClass> classes;
    solve_all(inst, [&](const CoverSolution& sol) {
        std::vector<Word> words{0};
        for (int b : sol) words.push_back(static_cast<Word>(inst.payload(b)));
        const CanonResult cr = canonize(n, words, GroupKind::FullAut);
        if (classes.count(cr.key)) return;
        VertexSet set = VertexSet::from_words(n, words);
        if (oa_strength(set) < t) throw VerificationFailure("exact cover produced an array of too small strength");
        classes.emplace(cr.key, OAClass{cr.key, std::move(set), cr.aut_order});
    });
    std::vector<OAClass> out;
    for (auto& [k, v] : classes) out.push_back(std::move(v));
    return out;
}

std::vector<OAClass> classify_by_pipeline(const OAParams& p, int c, int threads) {
    const int n = p.n;
    const int r = std::max(2, n - p.t - 1);
    std::vector<ClassRecord> cur = seed_classes(n, c);
    LevelOptions opts;
    opts.threads = threads;
    for (auto [a, b] : default_schedule(r)) {
        LevelResult lr = classify_level(cur, a, b, opts);
        if (lr.validation_failures) throw VerificationFailure("double counting failed at level " + level_name(a, b));
        cur = std::move(lr.classes);
    }
    std::map<CanonicalKey, OAClass> classes;
    for (const auto& rec : cur) {
        EquitablePartition ep;
        try {
            ep = complete_partition(rec.representative);
        } catch (const CountContradiction&) {
            continue;
        } catch (const VerificationFailure&) {
            continue;
        }
        const VertexSet& cell = ep.cells[0];
        if (cell.size() != p.N || oa_strength(cell) < p.t) throw VerificationFailure("completion has the wrong parameters");
        const auto words = cell.members();
        const CanonResult cr = canonize(n, words, GroupKind::FullAut);
        if (!classes.count(cr.key)) classes.emplace(cr.key, OAClass{cr.key, cell, cr.aut_order});
    }
    std::vector<OAClass> out;
    for (auto& [k, v] : classes) out.push_back(std::move(v));
    return out;
}

}  // namespace

std::vector<OAClass> classify_oa(const OAParams& p, int threads) {
    p.validate();
    if (p.q != 2) throw InvalidArgument("classification is implemented for q = 2 only");
    check_dimension(p.n, kMaxDenseDim);
    const std::uint64_t lhs = p.N * 2 * static_cast<std::uint64_t>(p.t + 1);
    const long long slack = 2LL * (p.t + 1) - p.n;
    if (slack <= 0 || lhs != cube_size(p.n) * static_cast<std::uint64_t>(slack))
        throw InvalidArgument("parameters are not on the Bierbrauer-Friedman bound");
    const int c = static_cast<int>(slack);
    if (p.n <= 7) return classify_direct(p);
    return classify_by_pipeline(p, c, threads);
}

}  // namespace oaforge
