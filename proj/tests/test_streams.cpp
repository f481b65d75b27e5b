#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynmis/engine.hpp"
#include "dynmis/streams.hpp"
#include "dynmis/verify.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

using namespace dynmis;

namespace {

// independent acyclicity check: replay an insertion-only prefix per forest
// with a fresh union-find
struct Dsu {
    std::vector<Vertex> p;
    explicit Dsu(Vertex n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    Vertex find(Vertex x)
    {
        while (p[x] != x)
            x = p[x] = p[p[x]];
        return x;
    }
    bool unite(Vertex a, Vertex b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        p[b] = a;
        return true;
    }
};

} // namespace

TEST_CASE("parse accepts the canonical header and a single op")
{
    UpdateStream s = parse("n=4 alpha=1\n+ 0 1\n");
    CHECK(s.n == 4);
    CHECK(s.alpha_hint == 1);
    REQUIRE(s.ops.size() == 1);
    CHECK(s.ops[0].kind == EdgeOp::Insert);
    CHECK(s.ops[0].u == 0);
    CHECK(s.ops[0].v == 1);
}

TEST_CASE("serialize and parse round-trip exactly")
{
    UpdateStream s = gen_forest_union(40, 2, 500, 0.4, 9);
    std::string text = serialize(s);
    UpdateStream back = parse(text);
    CHECK(back.n == s.n);
    CHECK(back.alpha_hint == s.alpha_hint);
    REQUIRE(back.ops.size() == s.ops.size());
    CHECK(serialize(back) == text);
}

TEST_CASE("parse rejects malformed input with the line number")
{
    auto msg = [](const std::string& text) {
        try {
            parse(text);
        } catch (const std::invalid_argument& ex) {
            return std::string(ex.what());
        }
        return std::string("no error");
    };
    CHECK(msg("") == "stream parse error at line 1: missing header");
    CHECK(msg("n=4\n") == "stream parse error at line 1: expected \"n=<int> alpha=<int>\"");
    CHECK(msg("n=4 alpha=1\n* 0 1\n")
        == "stream parse error at line 2: op must start with '+' or '-'");
    CHECK(msg("n=4 alpha=1\n+ 0 1\n+ 9 1\n")
        == "stream parse error at line 3: vertex id out of range");
    CHECK(msg("n=4 alpha=1\n+ 1 1\n") == "stream parse error at line 2: self-loop");
    CHECK(msg("n=4 alpha=1\n+ x 1\n")
        == "stream parse error at line 2: malformed vertex id");
}

TEST_CASE("forest stream: ops are feasible and forests stay acyclic")
{
    const Vertex n = 50;
    const std::uint32_t k = 3;
    UpdateStream s = gen_forest_union(n, k, 4000, 0.35, 17);
    CHECK(s.alpha_hint == k);
    CHECK(density_hint(s) <= k);

    // feasibility: inserts absent, deletes present
    std::set<std::pair<Vertex, Vertex>> present;
    auto key = [](Vertex a, Vertex b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
    };
    for (const auto& op : s.ops) {
        if (op.kind == EdgeOp::Insert)
            CHECK(present.insert(key(op.u, op.v)).second);
        else
            CHECK(present.erase(key(op.u, op.v)) == 1);
    }

    // replay the generator's first-fit forest assignment independently:
    // at every prefix each tracked forest must stay acyclic
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<std::uint32_t> tag;
    std::vector<Dsu> dsu(k, Dsu(n));
    auto rebuild = [&](std::uint32_t f) {
        dsu[f] = Dsu(n);
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (tag[i] == f)
                REQUIRE(dsu[f].unite(edges[i].first, edges[i].second));
    };
    for (const auto& op : s.ops) {
        if (op.kind == EdgeOp::Insert) {
            bool placed = false;
            for (std::uint32_t f = 0; f < k; ++f)
                if (dsu[f].unite(op.u, op.v)) {
                    edges.emplace_back(op.u, op.v);
                    tag.push_back(f);
                    placed = true;
                    break;
                }
            REQUIRE(placed);
        } else {
            auto it = std::find_if(edges.begin(), edges.end(),
                [&](const auto& e) {
                    return key(e.first, e.second) == key(op.u, op.v);
                });
            REQUIRE(it != edges.end());
            std::size_t i = static_cast<std::size_t>(it - edges.begin());
            std::uint32_t f = tag[i];
            edges[i] = edges.back();
            tag[i] = tag.back();
            edges.pop_back();
            tag.pop_back();
            rebuild(f);
        }
    }
}

TEST_CASE("forest stream is deterministic under a fixed seed")
{
    UpdateStream a = gen_forest_union(100, 3, 10000, 0.3, 7);
    UpdateStream b = gen_forest_union(100, 3, 10000, 0.3, 7);
    REQUIRE(a.ops.size() == b.ops.size());
    CHECK(serialize(a) == serialize(b));
    UpdateStream c = gen_forest_union(100, 3, 10000, 0.3, 8);
    CHECK(serialize(a) != serialize(c));
}

TEST_CASE("churn 1 on an empty graph still makes progress")
{
    UpdateStream s = gen_forest_union(10, 1, 50, 1.0, 4);
    CHECK(s.ops.size() == 50);
    // first op cannot be a delete
    CHECK(s.ops[0].kind == EdgeOp::Insert);
    // replay stays feasible
    std::set<std::pair<Vertex, Vertex>> present;
    auto key = [](Vertex a, Vertex b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
    };
    for (const auto& op : s.ops) {
        if (op.kind == EdgeOp::Insert)
            CHECK(present.insert(key(op.u, op.v)).second);
        else
            CHECK(present.erase(key(op.u, op.v)) == 1);
    }
}

TEST_CASE("churn 0 grows a forest without deletions")
{
    UpdateStream s = gen_forest_union(30, 1, 29, 0.0, 2);
    CHECK(s.alpha_hint == 1);
    for (const auto& op : s.ops)
        CHECK(op.kind == EdgeOp::Insert);
    CHECK(density_hint(s) <= 1);
}

TEST_CASE("preferential stream attaches distinct earlier vertices")
{
    const Vertex n = 50;
    UpdateStream s = gen_preferential(n, 2, 1);
    CHECK(s.alpha_hint == 2);
    CHECK(s.ops.size() == 1 + 2 * (n - 2)); // vertex 1 attaches once
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const auto& op : s.ops) {
        CHECK(op.kind == EdgeOp::Insert);
        CHECK(op.v < op.u); // attaches to predecessors
        CHECK(seen.insert({op.u, op.v}).second);
    }
    CHECK(serialize(gen_preferential(n, 2, 1)) == serialize(s));
}

TEST_CASE("preferential stream replays to a valid MIS at every prefix")
{
    UpdateStream s = gen_preferential(50, 2, 1);
    MisEngine e(s.n, s.alpha_hint);
    e.set_strict(true);
    for (const auto& op : s.ops) {
        e.apply_update(op);
        REQUIRE(check_mis(e).ok());
    }
    CHECK(check_invariants(e).ok());
}
