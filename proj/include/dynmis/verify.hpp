#pragma once

#include "dynmis/common.hpp"
#include "dynmis/engine.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace dynmis {

struct Violation {
    std::string invariant; // short machine-readable name
    std::string witness;   // offending vertex or edge
    std::string detail;
};

struct AuditReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    void add(std::string inv, std::string wit, std::string det)
    {
        violations.push_back({std::move(inv), std::move(wit), std::move(det)});
    }
    /// One violation per line: "<invariant>\t<witness>\t<detail>".
    void render(std::ostream& os) const;
};

/// Independence and maximality of `mis` against an explicit edge list.
AuditReport check_mis(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& edges,
    const std::vector<Vertex>& mis);

/// Convenience overload against the engine's current graph and MIS.
AuditReport check_mis(const MisEngine& e);

/// Full structural audit: MIS validity, the six partition invariants,
/// m_minus mirrors, owner/bucket consistency, the out-degree cap, and the
/// engine's out-neighborhood view. Recomputes resolved status from the
/// orientation directly rather than trusting engine bookkeeping.
AuditReport check_invariants(const MisEngine& e);

/// Stateless from-scratch validity check, sharing no code with the engine.
bool brute_force_maximality_oracle(Vertex n,
    const std::vector<std::pair<Vertex, Vertex>>& edges,
    const std::vector<Vertex>& mis);

} // namespace dynmis
