#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <unordered_map>
#include <vector>

namespace rhopi {

/// Exploration limits. Defaults are sized so every acceptance run finishes quickly.
struct Bounds {
    std::size_t max_states = 100000;
    std::size_t max_depth = 200;
};

enum class BarbDir : std::uint8_t { In, Out };

template <class N>
struct BasicBarb {
    BarbDir dir;
    N name;
    friend auto operator<=>(const BasicBarb&, const BasicBarb&) = default;
    friend bool operator==(const BasicBarb&, const BasicBarb&) = default;
};

enum class Tri { Yes, No, Unknown };

const char* to_string(Tri t);

/// Bounded reachability graph over canonical terms.
template <class Term>
struct Lts {
    std::vector<Term> states;
    std::vector<std::vector<std::uint32_t>> edges;
    std::vector<std::uint32_t> depth;
    /// False for states whose successors were not (all) recorded.
    std::vector<bool> expanded;
    bool truncated = false;
    /// Set when a stop predicate ended the search before the frontier was empty.
    bool stopped = false;
    Bounds bounds;
    std::uint32_t root = 0;

    bool complete() const { return !truncated && !stopped; }
    std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& e : edges) n += e.size();
        return n;
    }
};

/// Breadth-first exploration. `step` maps a canonical term to its canonical
/// successors. When `stop` returns true for a discovered state the search ends.
template <class Term, class Hash, class StepFn>
Lts<Term> explore_with(const Term& root, StepFn&& step, const Bounds& bounds,
                       const std::function<bool(const Term&)>& stop = {}) {
    Lts<Term> lts;
    lts.bounds = bounds;
    std::unordered_map<Term, std::uint32_t, Hash> index;
    auto add = [&](const Term& t, std::uint32_t d) {
        auto id = static_cast<std::uint32_t>(lts.states.size());
        index.emplace(t, id);
        lts.states.push_back(t);
        lts.edges.emplace_back();
        lts.depth.push_back(d);
        lts.expanded.push_back(false);
        return id;
    };
    add(root, 0);
    if (stop && stop(root)) {
        lts.stopped = true;
        return lts;
    }
    std::deque<std::uint32_t> queue{0};
    while (!queue.empty()) {
        std::uint32_t cur = queue.front();
        queue.pop_front();
        std::vector<Term> succ = step(lts.states[cur]);
        if (succ.empty()) {
            lts.expanded[cur] = true;
            continue;
        }
        if (lts.depth[cur] >= bounds.max_depth) {
            lts.truncated = true;
            continue;
        }
        bool complete = true;
        for (const auto& s : succ) {
            auto it = index.find(s);
            std::uint32_t id;
            if (it != index.end()) {
                id = it->second;
            } else {
                if (lts.states.size() >= bounds.max_states) {
                    lts.truncated = true;
                    complete = false;
                    continue;
                }
                id = add(s, lts.depth[cur] + 1);
                queue.push_back(id);
                if (stop && stop(s)) {
                    lts.edges[cur].push_back(id);
                    lts.stopped = true;
                    return lts;
                }
            }
            lts.edges[cur].push_back(id);
        }
        lts.expanded[cur] = complete;
    }
    return lts;
}

}  // namespace rhopi
