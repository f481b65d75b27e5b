#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynmis {

using Vertex = std::uint32_t;

constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

/// Thrown when a stream whose real arboricity exceeds the configured bound
/// trips one of the engine's strict-mode algorithm checks.
struct StrictModeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EdgeOp {
    enum Kind : std::uint8_t { Insert, Delete };
    Kind kind;
    Vertex u;
    Vertex v;
};

enum class MisEvent : std::uint8_t { Added, Removed };

/// Ordered record of MIS membership changes produced by one update.
struct ChangeLog {
    std::vector<std::pair<Vertex, MisEvent>> events;

    std::size_t additions() const
    {
        std::size_t c = 0;
        for (auto& e : events)
            if (e.second == MisEvent::Added)
                ++c;
        return c;
    }
    std::size_t removals() const { return events.size() - additions(); }
    bool empty() const { return events.empty(); }
};

// sorted-vector helpers for small neighbor lists
inline bool sorted_contains(const std::vector<Vertex>& s, Vertex x)
{
    return std::binary_search(s.begin(), s.end(), x);
}

inline void sorted_insert(std::vector<Vertex>& s, Vertex x)
{
    auto it = std::lower_bound(s.begin(), s.end(), x);
    if (it == s.end() || *it != x)
        s.insert(it, x);
}

inline void sorted_erase(std::vector<Vertex>& s, Vertex x)
{
    auto it = std::lower_bound(s.begin(), s.end(), x);
    if (it != s.end() && *it == x)
        s.erase(it);
}

inline std::uint32_t ceil_log2(std::uint64_t n)
{
    std::uint32_t b = 0;
    while ((std::uint64_t{1} << b) < n)
        ++b;
    return b;
}

} // namespace dynmis
