#pragma once

/**
 * @file search.hpp
 * @brief Exhaustive backtracking search for lunar magic squares and cubes.
 *
 * Every entry of a magic square is dominated by its total, so the
 * candidates for a fixed total T are the numbers (or squares, or n-th
 * powers) dominated by T. For such a candidate only the positions where
 * it reaches T's digit matter: a line sums to T exactly when the union of
 * those positions over its cells is every nonzero digit position of T.
 * The engine works on these "hit masks" and never touches digits.
 *
 * Budgets count nodes (candidate placements), not time. Results come out
 * in a fixed order: lexicographic on candidate indices in the engine's
 * cell fill order, candidates sorted by compare_length_lex. Parallel runs
 * split on the first cell and replay the sequential budget and emit limit
 * exactly when merging, so the report does not depend on --threads.
 */

#include <algorithm>
#include <array>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lunar/magic.hpp"
#include "lunar/number.hpp"
#include "lunar/numtheory.hpp"

namespace lunar {

enum class entry_kind { any, lunar_square, nth_power };

struct entry_constraint {
    entry_kind kind = entry_kind::any;
    unsigned exponent = 1;

    static entry_constraint any() { return {entry_kind::any, 1}; }
    static entry_constraint squares() { return {entry_kind::lunar_square, 2}; }
    static entry_constraint power(unsigned n) {
        if (n == 0) throw error(errc::invalid_argument, "power constraint needs an exponent >= 1");
        return {entry_kind::nth_power, n};
    }

    friend bool operator==(const entry_constraint&, const entry_constraint&) = default;
};

inline std::string to_string(const entry_constraint& c) {
    switch (c.kind) {
    case entry_kind::any: return "any";
    case entry_kind::lunar_square: return "squares";
    case entry_kind::nth_power: return "power:" + std::to_string(c.exponent);
    }
    return "any";
}

inline std::optional<entry_constraint> parse_entry_constraint(std::string_view s) {
    if (s == "any") return entry_constraint::any();
    if (s == "squares") return entry_constraint::squares();
    if (s.starts_with("power:") && s.size() > 6) {
        unsigned n = 0;
        for (char ch : s.substr(6)) {
            if (ch < '0' || ch > '9' || n > 1000) return std::nullopt;
            n = n * 10 + static_cast<unsigned>(ch - '0');
        }
        if (n == 0) return std::nullopt;
        return entry_constraint::power(n);
    }
    return std::nullopt;
}

inline bool satisfies(const number& n, const entry_constraint& c) {
    switch (c.kind) {
    case entry_kind::any: return true;
    case entry_kind::lunar_square: return is_square(n);
    case entry_kind::nth_power: return is_nth_power(n, c.exponent);
    }
    return false;
}

inline bool satisfies(const grid3& g, const entry_constraint& c) {
    return std::all_of(g.cells.begin(), g.cells.end(), [&](const number& n) { return satisfies(n, c); });
}

inline constexpr std::size_t unlimited = std::numeric_limits<std::size_t>::max();

struct search_spec {
    unsigned base = 10;
    entry_constraint entries{};
    bool require_distinct = false;
    std::optional<number> total;
    std::size_t max_total_digits = 3;
    std::uint64_t budget = 1'000'000'000;
    std::size_t emit_limit = unlimited;
    /// Keep only the least of each orbit under the 8 square symmetries.
    bool canonical = false;
    /// Count results without storing them.
    bool count_only = false;
    unsigned threads = 1;
};

inline void validate(const search_spec& spec) {
    if (spec.base < 2) throw error(errc::invalid_base, "base must be at least 2");
    if (spec.max_total_digits < 1) throw error(errc::invalid_argument, "max_total_digits must be at least 1");
    if (spec.budget == 0) throw error(errc::invalid_argument, "budget must be positive");
    if (spec.threads == 0) throw error(errc::invalid_argument, "threads must be at least 1");
    if (spec.emit_limit == 0) throw error(errc::invalid_argument, "emit_limit must be at least 1");
    if (spec.total) {
        if (spec.total->base() != spec.base) throw error(errc::base_mismatch, "total is not in the search base");
        if (spec.total->length() > spec.max_total_digits) {
            throw error(errc::invalid_argument, "total " + format(*spec.total) + " has more than " +
                                                    std::to_string(spec.max_total_digits) + " digits");
        }
    }
}

template <class Shape>
struct basic_report {
    search_spec spec;
    std::uint64_t nodes_explored = 0;
    /// The whole space was searched within budget; results are then complete up to emit_limit.
    bool exhausted = false;
    /// Search stopped early because emit_limit results were found.
    bool limit_reached = false;
    std::uint64_t result_count = 0;
    std::vector<Shape> results;
    /// Total searched (fixed-total runs) or the smallest total found.
    std::optional<number> total;
    std::uint64_t totals_searched = 0;
};

using search_report = basic_report<grid3>;
using cube_report = basic_report<cube3>;

// ---------------------------------------------------------------------------
// Candidates

/**
 * Every n-th power dominated by `total`, sorted. Root digit i is at most
 * total digit n*i, since that position of the power is at least m_i.
 */
inline std::vector<number> powers_dominated_by(const number& total, unsigned exponent) {
    std::vector<number> out{number(total.base())};
    for (std::size_t k = 1; exponent * (k - 1) + 1 <= total.length(); ++k) {
        std::vector<digit_t> lo(k, 0), hi(k, 0);
        for (std::size_t i = 0; i < k; ++i) hi[i] = total[exponent * i];
        lo[k - 1] = 1;
        detail::for_each_bounded(lo, hi, [&](const std::vector<digit_t>& digits) {
            number p = pow(number::from_normalized(total.base(), digits), exponent);
            if (dominates(total, p)) out.push_back(std::move(p));
        });
    }
    detail::sort_unique(out);
    return out;
}

namespace detail {

inline std::vector<number> candidates_unchecked(const number& total, const entry_constraint& constraint) {
    switch (constraint.kind) {
    case entry_kind::any: {
        std::vector<number> out;
        if (total.is_zero()) return {total};
        std::vector<digit_t> lo(total.length(), 0), hi(total.digits().begin(), total.digits().end());
        for_each_bounded(lo, hi, [&](const std::vector<digit_t>& d) {
            out.push_back(number::from_normalized(total.base(), d));
        });
        sort_unique(out);
        return out;
    }
    case entry_kind::lunar_square: return powers_dominated_by(total, 2);
    case entry_kind::nth_power: return powers_dominated_by(total, constraint.exponent);
    }
    return {};
}

}  // namespace detail

/**
 * Every n dominated by `total` that meets the constraint, sorted by
 * compare_length_lex. Before filtering there are prod(d_i + 1) of them.
 */
inline std::vector<number> candidates_for_total(const number& total, const entry_constraint& constraint) {
    if (total.is_zero()) throw error(errc::invalid_argument, "candidates need a nonzero total");
    return detail::candidates_unchecked(total, constraint);
}

// ---------------------------------------------------------------------------
// Engine

namespace detail {

struct layout {
    std::size_t cells = 0;
    std::vector<line> lines;
    std::vector<std::uint8_t> order;
    /// Lines whose last cell is placed at step s.
    std::vector<std::vector<std::uint16_t>> completes;
    /// Lines through the step-s cell left with exactly one open cell.
    std::vector<std::vector<std::uint16_t>> one_open;
    /// Symmetries applied by the canonical filter (may be empty).
    std::vector<std::vector<std::uint8_t>> symmetries;
};

/**
 * Greedy fill order: at each step take the open cell that closes the most
 * lines, then leaves the most lines one cell from closing, then lies on
 * the most lines.
 */
inline layout make_layout(std::size_t cells, std::vector<line> lines) {
    layout L;
    L.cells = cells;
    L.lines = std::move(lines);
    std::vector<char> placed(cells, 0);
    std::vector<int> open_count(L.lines.size(), 3);
    for (std::size_t step = 0; step < cells; ++step) {
        std::size_t best = cells;
        std::array<int, 3> best_score{-1, -1, -1};
        for (std::size_t c = 0; c < cells; ++c) {
            if (placed[c]) continue;
            std::array<int, 3> score{0, 0, 0};
            for (std::size_t li = 0; li < L.lines.size(); ++li) {
                const auto& l = L.lines[li];
                if (l[0] != c && l[1] != c && l[2] != c) continue;
                if (open_count[li] == 1) ++score[0];
                if (open_count[li] == 2) ++score[1];
                ++score[2];
            }
            if (score > best_score) {
                best_score = score;
                best = c;
            }
        }
        placed[best] = 1;
        L.order.push_back(static_cast<std::uint8_t>(best));
        std::vector<std::uint16_t> done, near;
        for (std::size_t li = 0; li < L.lines.size(); ++li) {
            const auto& l = L.lines[li];
            if (l[0] != best && l[1] != best && l[2] != best) continue;
            --open_count[li];
            if (open_count[li] == 0) done.push_back(static_cast<std::uint16_t>(li));
            if (open_count[li] == 1) near.push_back(static_cast<std::uint16_t>(li));
        }
        L.completes.push_back(std::move(done));
        L.one_open.push_back(std::move(near));
    }
    return L;
}

inline const layout& square_layout() {
    static const layout L = [] {
        layout out = make_layout(9, {square_lines.begin(), square_lines.end()});
        for (const auto& p : square_symmetries()) out.symmetries.emplace_back(p.begin(), p.end());
        return out;
    }();
    return L;
}

inline const layout& cube_layout(cube_line_set set) {
    static const layout axes = make_layout(27, cube_lines(cube_line_set::axes_and_space_diagonals));
    static const layout faces = make_layout(27, cube_lines(cube_line_set::axes_space_and_face_diagonals));
    return set == cube_line_set::axes_and_space_diagonals ? axes : faces;
}

using hit_mask = std::uint64_t;

/// Bit i set when candidate digit i equals the nonzero digit i of the total.
inline hit_mask hits_of(const number& candidate, const number& total) {
    hit_mask m = 0;
    for (std::size_t i = 0; i < total.length(); ++i) {
        if (total[i] != 0 && candidate[i] == total[i]) m |= hit_mask{1} << i;
    }
    return m;
}

struct subtree_result {
    std::uint64_t nodes = 0;
    bool aborted = false;
    std::uint64_t accepted = 0;
    /// Node count at which each accepted leaf was reached, and its assignment by cell.
    std::vector<std::uint64_t> tags;
    std::vector<std::vector<std::uint32_t>> assignments;
};

class engine {
public:
    engine(const layout& L, std::vector<hit_mask> masks, hit_mask full, bool distinct, bool canonical,
           bool keep_assignments)
        : L_(L),
          masks_(std::move(masks)),
          full_(full),
          distinct_(distinct),
          canonical_(canonical && !L.symmetries.empty()),
          keep_(keep_assignments) {
        mask_values_ = masks_;
        std::sort(mask_values_.begin(), mask_values_.end());
        mask_values_.erase(std::unique(mask_values_.begin(), mask_values_.end()), mask_values_.end());
        position_.assign(L_.cells, 0);
        for (std::size_t s = 0; s < L_.cells; ++s) position_[L_.order[s]] = s;
    }

    std::size_t candidate_count() const { return masks_.size(); }

    /// Obvious dead ends that need no nodes: too few candidates to be distinct, or T unreachable.
    bool trivially_empty() const {
        if (distinct_ && masks_.size() < L_.cells) return true;
        hit_mask all = 0;
        for (hit_mask m : masks_) all |= m;
        return (all & full_) != full_;
    }

    using sink_fn = std::function<void(const std::vector<std::uint32_t>&)>;

    /// Explores the subtree rooted at candidate `root` in the first cell.
    /// With a sink, accepted leaves go straight to it instead of being buffered.
    subtree_result run_subtree(std::uint32_t root, std::uint64_t node_cap, std::size_t result_cap,
                               const std::atomic<bool>* cancel, const sink_fn* sink = nullptr) const {
        state st;
        st.out.tags.reserve(16);
        st.assign.assign(L_.cells, 0);
        st.cell_mask.assign(L_.cells, 0);
        st.used.assign(masks_.size(), 0);
        st.node_cap = node_cap;
        st.result_cap = result_cap;
        st.cancel = cancel;
        st.sink = sink;
        place(st, 0, root, root + 1);
        return std::move(st.out);
    }

private:
    struct state {
        subtree_result out;
        std::vector<std::uint32_t> assign;
        std::vector<hit_mask> cell_mask;
        std::vector<char> used;
        std::uint64_t node_cap = 0;
        std::size_t result_cap = 0;
        const std::atomic<bool>* cancel = nullptr;
        const sink_fn* sink = nullptr;
        bool stop = false;
    };

    bool feasible(const state& st, std::size_t step) const {
        for (auto li : L_.completes[step]) {
            const auto& l = L_.lines[li];
            if ((st.cell_mask[l[0]] | st.cell_mask[l[1]] | st.cell_mask[l[2]]) != full_) return false;
        }
        // A line with one open cell must still be completable by some candidate mask.
        const std::uint8_t cell = L_.order[step];
        for (auto li : L_.one_open[step]) {
            const auto& l = L_.lines[li];
            hit_mask have = 0;
            for (auto c : l) {
                if (c == cell || position_[c] < step) have |= st.cell_mask[c];
            }
            hit_mask need = full_ & ~have;
            if (need == 0) continue;
            bool ok = false;
            for (hit_mask m : mask_values_) {
                if ((m & need) == need) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
        return true;
    }

    /// Lexicographic order on candidate indices in fill order; equal when symmetric.
    bool is_canonical(const state& st) const {
        std::vector<std::uint32_t> image(L_.cells);
        for (const auto& p : L_.symmetries) {
            for (std::size_t k = 0; k < L_.cells; ++k) image[p[k]] = st.assign[k];
            for (std::size_t s = 0; s < L_.cells; ++s) {
                auto c = L_.order[s];
                if (image[c] < st.assign[c]) return false;
                if (image[c] > st.assign[c]) break;
            }
        }
        return true;
    }

    void place(state& st, std::size_t step, std::uint32_t first, std::uint32_t last) const {
        const std::uint8_t cell = L_.order[step];
        for (std::uint32_t j = first; j < last && !st.stop; ++j) {
            if (distinct_ && st.used[j]) continue;
            if (++st.out.nodes > st.node_cap) {
                st.out.nodes = st.node_cap + 1;
                st.out.aborted = true;
                st.stop = true;
                return;
            }
            if (st.cancel && (st.out.nodes & 0xfff) == 0 && st.cancel->load(std::memory_order_relaxed)) {
                st.out.aborted = true;
                st.stop = true;
                return;
            }
            st.assign[cell] = j;
            st.cell_mask[cell] = masks_[j];
            if (!feasible(st, step)) continue;
            if (step + 1 == L_.cells) {
                if (canonical_ && !is_canonical(st)) continue;
                ++st.out.accepted;
                if (st.sink) {
                    (*st.sink)(st.assign);
                } else {
                    st.out.tags.push_back(st.out.nodes);
                    if (keep_) st.out.assignments.push_back(st.assign);
                }
                if (st.out.accepted >= st.result_cap) st.stop = true;
                continue;
            }
            st.used[j] = 1;
            place(st, step + 1, 0, static_cast<std::uint32_t>(masks_.size()));
            st.used[j] = 0;
        }
    }

    const layout& L_;
    std::vector<hit_mask> masks_;
    std::vector<hit_mask> mask_values_;
    std::vector<std::size_t> position_;
    hit_mask full_;
    bool distinct_;
    bool canonical_;
    bool keep_;
};

struct run_outcome {
    std::uint64_t nodes = 0;
    bool exhausted = true;
    bool limit_reached = false;
    std::uint64_t count = 0;
};

/**
 * Runs every first-cell subtree and merges them in candidate order as if
 * explored sequentially under `budget` and `emit_limit`. on_result sees
 * each accepted assignment in final order.
 */
inline run_outcome run_engine(const engine& eng, std::uint64_t budget, std::size_t emit_limit, unsigned threads,
                              const std::function<void(const std::vector<std::uint32_t>&)>& on_result) {
    run_outcome out;
    const std::uint32_t roots = static_cast<std::uint32_t>(eng.candidate_count());
    if (roots == 0 || eng.trivially_empty()) return out;

    auto merge = [&](const subtree_result& sub) -> bool {
        const std::uint64_t remaining = budget - out.nodes;
        for (std::size_t r = 0; r < sub.tags.size(); ++r) {
            if (sub.tags[r] > remaining) break;
            ++out.count;
            if (on_result && r < sub.assignments.size()) on_result(sub.assignments[r]);
            if (out.count >= emit_limit) {
                out.nodes += sub.tags[r];
                out.limit_reached = true;
                return false;
            }
        }
        if (sub.nodes > remaining) {
            out.nodes = budget;
            out.exhausted = false;
            return false;
        }
        out.nodes += sub.nodes;
        return true;
    };

    if (threads <= 1 || roots == 1) {
        // Sequential runs stream leaves as they are found.
        const engine::sink_fn sink = on_result ? on_result : [](const std::vector<std::uint32_t>&) {};
        for (std::uint32_t r = 0; r < roots; ++r) {
            auto sub = eng.run_subtree(r, budget - out.nodes, emit_limit - out.count, nullptr, &sink);
            out.count += sub.accepted;
            if (out.count >= emit_limit) {
                out.nodes += sub.nodes;
                out.limit_reached = true;
                return out;
            }
            if (sub.aborted) {
                out.nodes = budget;
                out.exhausted = false;
                return out;
            }
            out.nodes += sub.nodes;
            if (out.nodes == budget && r + 1 < roots) {
                out.exhausted = false;
                return out;
            }
        }
        return out;
    }

    std::vector<std::optional<subtree_result>> slots(roots);
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::uint32_t> next{0};
    std::atomic<bool> cancel{false};
    auto worker = [&] {
        for (;;) {
            std::uint32_t r = next.fetch_add(1);
            if (r >= roots || cancel.load()) return;
            auto sub = eng.run_subtree(r, budget, emit_limit, &cancel);
            {
                std::lock_guard lock(mu);
                slots[r] = std::move(sub);
            }
            cv.notify_all();
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < std::min<unsigned>(threads, roots); ++t) pool.emplace_back(worker);
    for (std::uint32_t r = 0; r < roots; ++r) {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return slots[r].has_value(); });
        subtree_result sub = std::move(*slots[r]);
        slots[r].reset();
        lock.unlock();
        bool more = merge(sub) && !(out.nodes == budget && r + 1 < roots);
        if (!more) {
            if (out.nodes == budget && !out.limit_reached) out.exhausted = false;
            cancel.store(true);
            break;
        }
    }
    return out;
}

inline grid3 grid_from_assignment(const std::vector<number>& cands, const std::vector<std::uint32_t>& a,
                                  unsigned base) {
    grid3 g(base);
    for (std::size_t k = 0; k < 9; ++k) g.cells[k] = cands[a[k]];
    return g;
}

inline cube3 cube_from_assignment(const std::vector<number>& cands, const std::vector<std::uint32_t>& a,
                                  unsigned base, cube_line_set set) {
    cube3 c(base, set);
    for (std::size_t k = 0; k < 27; ++k) c.cells[k] = cands[a[k]];
    return c;
}

inline void check_total_width(const number& total) {
    if (total.length() > 64) throw error(errc::invalid_argument, "totals wider than 64 digits are not supported");
}

/// One fixed-total search on a layout; appends shapes through `emit`.
template <class Emit>
run_outcome search_total(const layout& L, const search_spec& spec, const number& total, std::uint64_t budget,
                         std::size_t emit_limit, Emit&& emit) {
    check_total_width(total);
    std::vector<number> cands = candidates_unchecked(total, spec.entries);
    std::vector<hit_mask> masks;
    masks.reserve(cands.size());
    for (const auto& c : cands) masks.push_back(hits_of(c, total));
    const hit_mask full = hits_of(total, total);
    engine eng(L, std::move(masks), full, spec.require_distinct, spec.canonical, !spec.count_only);
    return run_engine(eng, budget, emit_limit, spec.threads,
                      [&](const std::vector<std::uint32_t>& a) { emit(cands, a); });
}

template <class Shape, class Emit>
basic_report<Shape> search_fixed(const layout& L, const search_spec& spec, Emit&& emit,
                                 const std::function<void(const Shape&)>& on_result = {}) {
    validate(spec);
    if (!spec.total) throw error(errc::invalid_argument, "search needs a total");
    basic_report<Shape> report;
    report.spec = spec;
    report.total = spec.total;
    auto run = search_total(L, spec, *spec.total, spec.budget, spec.emit_limit,
                            [&](const std::vector<number>& cands, const std::vector<std::uint32_t>& a) {
                                if (spec.count_only) return;
                                if (on_result) {
                                    on_result(emit(cands, a));
                                } else {
                                    report.results.push_back(emit(cands, a));
                                }
                            });
    report.nodes_explored = run.nodes;
    report.exhausted = run.exhausted;
    report.limit_reached = run.limit_reached;
    report.result_count = run.count;
    report.totals_searched = 1;
    return report;
}

/// Tries totals in length-lex order from 0; stops at the first that yields results.
template <class Shape, class Emit>
basic_report<Shape> search_smallest(const layout& L, const search_spec& spec, Emit&& emit) {
    validate(spec);
    basic_report<Shape> report;
    report.spec = spec;
    report.exhausted = true;
    for_each_up_to_length(spec.base, spec.max_total_digits, [&](const number& total) -> bool {
        const std::uint64_t remaining = spec.budget - report.nodes_explored;
        std::vector<Shape> found;
        auto run = search_total(L, spec, total, remaining, spec.emit_limit,
                                [&](const std::vector<number>& cands, const std::vector<std::uint32_t>& a) {
                                    if (!spec.count_only) found.push_back(emit(cands, a));
                                });
        ++report.totals_searched;
        report.nodes_explored += run.nodes;
        if (!run.exhausted) {
            report.exhausted = false;
            return false;
        }
        if (run.count > 0) {
            report.total = total;
            report.results = std::move(found);
            report.result_count = run.count;
            report.limit_reached = run.limit_reached;
            return false;
        }
        return true;
    });
    return report;
}

}  // namespace detail

/**
 * All 3x3 magic squares with total spec.total whose entries meet the
 * constraint. Symmetric copies are all reported unless spec.canonical.
 * With on_result set, results are streamed to it and not stored.
 */
inline search_report find_squares_with_total(const search_spec& spec,
                                             const std::function<void(const grid3&)>& on_result = {}) {
    const unsigned base = spec.base;
    return detail::search_fixed<grid3>(
        detail::square_layout(), spec,
        [base](const std::vector<number>& c, const std::vector<std::uint32_t>& a) {
            return detail::grid_from_assignment(c, a, base);
        },
        on_result);
}

/**
 * Smallest total under compare_length_lex, up to spec.max_total_digits,
 * that admits a square. report.total is absent when none was found; then
 * report.exhausted says whether every total up to the limit was ruled out.
 * When a total is found, exhausted means every smaller total was searched
 * completely, which is what makes it the minimum.
 */
inline search_report find_smallest_total(const search_spec& spec) {
    const unsigned base = spec.base;
    return detail::search_smallest<grid3>(detail::square_layout(), spec,
                                          [base](const std::vector<number>& c, const std::vector<std::uint32_t>& a) {
                                              return detail::grid_from_assignment(c, a, base);
                                          });
}

/**
 * Magic cubes over the given line set. With spec.total set, searches that
 * total; otherwise tries totals in length-lex order like find_smallest_total.
 */
inline cube_report find_magic_cubes(const search_spec& spec, cube_line_set set,
                                    const std::function<void(const cube3&)>& on_result = {}) {
    search_spec s = spec;
    s.canonical = false;
    const unsigned base = spec.base;
    auto emit = [base, set](const std::vector<number>& c, const std::vector<std::uint32_t>& a) {
        return detail::cube_from_assignment(c, a, base, set);
    };
    const auto& L = detail::cube_layout(set);
    return spec.total ? detail::search_fixed<cube3>(L, s, emit, on_result) : detail::search_smallest<cube3>(L, s, emit);
}

// ---------------------------------------------------------------------------
// Sum pairs

struct sum_pair {
    grid3 first;
    grid3 second;
    grid3 sum;
};

struct pair_report {
    search_spec spec;
    std::uint64_t nodes_explored = 0;
    bool exhausted = false;
    bool limit_reached = false;
    std::vector<sum_pair> results;
    std::uint64_t totals_searched = 0;
    std::uint64_t pairs_checked = 0;
};

/**
 * Both squares are magic, distinct when required, entries meet the
 * constraint, and so does their cellwise sum. The sum must differ from
 * both inputs, which rules out pairs where one square dominates the
 * other cell by cell (including the all-zero square).
 */
inline bool is_sum_pair(const grid3& a, const grid3& b, const entry_constraint& c, bool distinct) {
    if (a.base != b.base || a == b) return false;
    const grid3 s = elementwise_add(a, b);
    if (s == a || s == b) return false;
    for (const grid3* g : {&a, &b, &s}) {
        if (!magic_total(*g)) return false;
        if (distinct && !has_distinct_entries(*g)) return false;
        if (!satisfies(*g, c)) return false;
    }
    return true;
}

/**
 * Pairs of magic squares whose cellwise sum is again a magic square, all
 * three meeting the entry constraint. Totals are visited in length-lex
 * order up to spec.max_total_digits; each new total's squares (at most
 * `pool_limit` of them) are paired with every square found so far. With
 * spec.total set, only pairs whose sum has that total are considered.
 */
inline pair_report find_sum_pairs(const search_spec& spec, std::size_t pool_limit = 4096) {
    validate(spec);
    pair_report report;
    report.spec = spec;
    report.exhausted = true;
    struct pool_entry {
        number total;
        std::vector<grid3> grids;
    };
    std::vector<pool_entry> pool;
    std::unordered_map<number, std::unordered_set<number>> sum_candidates;
    auto allowed_in_sum = [&](const number& total) -> const std::unordered_set<number>& {
        auto it = sum_candidates.find(total);
        if (it == sum_candidates.end()) {
            auto c = detail::candidates_unchecked(total, spec.entries);
            it = sum_candidates.emplace(total, std::unordered_set<number>(c.begin(), c.end())).first;
        }
        return it->second;
    };

    search_spec sub = spec;
    sub.total.reset();
    sub.canonical = false;
    sub.count_only = false;
    sub.emit_limit = pool_limit;

    bool stop = false;
    for_each_up_to_length(spec.base, spec.max_total_digits, [&](const number& total) -> bool {
        if (spec.total && !dominates(*spec.total, total)) return true;
        sub.total = total;
        sub.budget = spec.budget - report.nodes_explored;
        auto found = detail::search_fixed<grid3>(detail::square_layout(), sub,
                                                 [&](const std::vector<number>& c, const std::vector<std::uint32_t>& a) {
                                                     return detail::grid_from_assignment(c, a, spec.base);
                                                 });
        ++report.totals_searched;
        report.nodes_explored += found.nodes_explored;
        if (!found.exhausted) {
            report.exhausted = false;
            return false;
        }
        if (found.limit_reached) report.exhausted = false;
        if (found.results.empty()) return true;
        pool.push_back({total, std::move(found.results)});
        const pool_entry& fresh = pool.back();
        for (std::size_t p = 0; p < pool.size() && !stop; ++p) {
            const pool_entry& older = pool[p];
            const number sum_total = add(older.total, fresh.total);
            if (spec.total && sum_total != *spec.total) continue;
            const auto& allowed = allowed_in_sum(sum_total);
            for (std::size_t i = 0; i < older.grids.size() && !stop; ++i) {
                const std::size_t j0 = (p + 1 == pool.size()) ? i + 1 : 0;
                for (std::size_t j = j0; j < fresh.grids.size(); ++j) {
                    if (report.nodes_explored >= spec.budget) {
                        report.exhausted = false;
                        stop = true;
                        break;
                    }
                    ++report.nodes_explored;
                    ++report.pairs_checked;
                    const grid3& a = older.grids[i];
                    const grid3& b = fresh.grids[j];
                    grid3 s = elementwise_add(a, b);
                    if (s == a || s == b) continue;
                    bool ok = std::all_of(s.cells.begin(), s.cells.end(),
                                          [&](const number& n) { return allowed.contains(n); });
                    if (!ok || (spec.require_distinct && !has_distinct_entries(s))) continue;
                    report.results.push_back({a, b, std::move(s)});
                    if (report.results.size() >= spec.emit_limit) {
                        report.limit_reached = true;
                        stop = true;
                        break;
                    }
                }
            }
        }
        return !stop;
    });
    return report;
}

}  // namespace lunar
