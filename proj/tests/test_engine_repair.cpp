#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynmis/engine.hpp"
#include "dynmis/verify.hpp"
#include "fixtures.hpp"

using namespace dynmis;
using namespace dynmis::testing;

// ---------------------------------------------------------------------------
// replacement chains when active-set members leave
// ---------------------------------------------------------------------------

TEST_CASE("removal from the only partial bucket needs no replacement")
{
    MisEngine e(16, 1);
    e.set_strict(true);
    fill_active(e, 14, 0, 1, 4);
    REQUIRE(e.a_bucket(0, 1).size() == 4);

    // deleting the hosting edge pulls member 2 out; 2 rejoins the MIS since
    // it has no other neighbor
    ChangeLog log = e.delete_edge(2, 0);
    CHECK(log.additions() == 1);
    CHECK(e.is_in_mis(2));
    CHECK(e.a_bucket(0, 1) == std::set<Vertex>{1, 3, 4});
    CHECK(e.a_bucket(0, 2).empty());
    require_sound(e);
}

TEST_CASE("hole in a full bucket pulls the lowest member down from the next")
{
    MisEngine e(16, 1);
    e.set_strict(true);
    fill_active(e, 14, 0, 1, 11); // bucket 1 full, bucket 2 holds {9,10,11}
    REQUIRE(e.a_bucket(0, 2) == std::set<Vertex>{9, 10, 11});

    e.delete_edge(3, 0);
    CHECK(e.a_bucket(0, 1) == std::set<Vertex>{1, 2, 4, 5, 6, 7, 8, 9});
    CHECK(e.a_bucket(0, 2) == std::set<Vertex>{10, 11});
    CHECK(e.bucket_of(9) == 1);
    require_sound(e);
}

TEST_CASE("residual replacement refills any bucket and ends the chain")
{
    // full hub with residuals at n = 64
    MisEngine e(64, 1);
    e.set_strict(true);
    fill_active(e, 62, 0, 1, 56);
    make_unresolved_member(e, 62, 57, {0});
    make_unresolved_member(e, 62, 58, {0});
    REQUIRE(e.r_set(0) == std::set<Vertex>{57, 58});

    // drop a bucket-3 member: the lowest residual takes its slot directly
    REQUIRE(e.bucket_of(20) == 3);
    e.delete_edge(20, 0);
    CHECK(e.active_size(0) == 56);
    CHECK(e.bucket_of(57) == 3);
    CHECK(e.owner(57) == Vertex{0});
    CHECK(e.r_set(0) == std::set<Vertex>{58});
    // every other bucket is untouched
    CHECK(e.a_bucket(0, 7).size() == 8);
    require_sound(e);
}

// ---------------------------------------------------------------------------
// host selection
// ---------------------------------------------------------------------------

TEST_CASE("unresolved vertices land in the smallest candidate active set")
{
    MisEngine e(32, 1);
    e.set_strict(true);
    Vertex next = fill_active(e, 30, 0, 2, 3);  // |A_0| = 3
    next = fill_active(e, 30, 1, next, 10);     // |A_1| = 10
    REQUIRE(e.active_size(0) == 3);
    REQUIRE(e.active_size(1) == 10);

    make_unresolved_member(e, 30, next, {0, 1});
    CHECK(e.owner(next) == Vertex{0});
    CHECK(e.bucket_of(next) == 1);
    // hosted entries mirror into the other out-neighbor's passive bucket
    CHECK(e.p_bucket(1, 1).count(next) == 1);
    require_sound(e);
}

TEST_CASE("equal sizes break ties toward the lowest host id")
{
    MisEngine e(32, 1);
    e.set_strict(true);
    Vertex next = fill_active(e, 30, 3, 5, 2);
    next = fill_active(e, 30, 1, next, 2);
    make_unresolved_member(e, 30, next, {1, 3});
    CHECK(e.owner(next) == Vertex{1});
    require_sound(e);
}

// ---------------------------------------------------------------------------
// repopulating the active set of a vertex that joins the MIS
// ---------------------------------------------------------------------------

TEST_CASE("population drains residuals bottom-up and flips their entries to passive")
{
    MisEngine e(128, 1);
    e.set_strict(true);
    const Vertex aux = 120, full_host = 126, v = 125;
    Vertex next = fill_active(e, aux, full_host, 1, 64);
    REQUIRE(e.active_size(full_host) == 64);

    // v leaves the MIS but stays resolved through aux until the end
    e.insert_edge(aux, v);
    REQUIRE(!e.is_in_mis(v));

    // ten residents: out-edges to both v (not in MIS) and the full host
    for (int i = 0; i < 10; ++i, ++next) {
        make_unresolved_member(e, aux, next, {v, full_host});
        REQUIRE(!e.owner(next).has_value());
    }
    CHECK(e.r_set(v).size() == 10);
    CHECK(e.r_set(full_host).size() == 10);
    require_sound(e);

    // v rejoins: its active set fills from the residual pool, 8 + 2
    ChangeLog log = e.delete_edge(aux, v);
    REQUIRE(log.additions() == 1);
    REQUIRE(e.is_in_mis(v));
    CHECK(e.a_bucket(v, 1).size() == 8);
    CHECK(e.a_bucket(v, 2).size() == 2);
    CHECK(e.r_set(v).empty());
    // the residents' residual entries at the full host became passive ones
    CHECK(e.r_set(full_host).empty());
    CHECK(e.p_bucket(full_host, 1).size() == 8);
    CHECK(e.p_bucket(full_host, 2).size() == 2);
    require_sound(e);
}

TEST_CASE("population migrates passive vertices only when their bucket drops")
{
    MisEngine e(128, 1);
    e.set_strict(true);
    const Vertex aux = 120, host = 119, v = 125;
    Vertex next = 1;

    // u sits in bucket 3 of `host`, and v is one of u's out-neighbors
    next = fill_active(e, aux, host, next, 16); // buckets 1..2 full
    e.insert_edge(aux, v);                      // v out of the MIS
    REQUIRE(!e.is_in_mis(v));
    const Vertex u = next;
    make_unresolved_member(e, aux, u, {host, v});
    ++next;
    REQUIRE(e.bucket_of(u) == 3);
    REQUIRE(e.p_bucket(v, 3).count(u) == 1);

    SUBCASE("bucket decreases: the passive vertex moves into the new set")
    {
        // eight residual in-neighbors of v fill its first bucket on rejoin
        Vertex full_host = 118;
        next = fill_active(e, aux, full_host, next, 64);
        for (int i = 0; i < 8; ++i, ++next)
            make_unresolved_member(e, aux, next, {v, full_host});
        REQUIRE(e.r_set(v).size() == 8);
        require_sound(e);

        e.delete_edge(aux, v); // v rejoins
        REQUIRE(e.is_in_mis(v));
        // residuals filled bucket 1; u migrated from (host, 3) to (v, 2)
        CHECK(e.a_bucket(v, 1).size() == 8);
        CHECK(e.owner(u) == v);
        CHECK(e.bucket_of(u) == 2);
        CHECK(e.active_size(host) == 16);
        require_sound(e);
    }

    SUBCASE("bucket would not decrease: population stops, the vertex stays")
    {
        // a bucket-1 passive entry of v cannot drop below bucket 1
        Vertex other = 118, m = 111;
        make_unresolved_member(e, aux, m, {other, v});
        REQUIRE(e.owner(m) == other);
        REQUIRE(e.bucket_of(m) == 1);
        REQUIRE(e.p_bucket(v, 1).count(m) == 1);
        require_sound(e);

        e.delete_edge(aux, v); // v rejoins with an empty residual pool
        REQUIRE(e.is_in_mis(v));
        // u (bucket 3) migrates to bucket 1, m (bucket 1) cannot drop: stays
        CHECK(e.owner(u) == v);
        CHECK(e.bucket_of(u) == 1);
        CHECK(e.owner(m) == other);
        CHECK(e.bucket_of(m) == 1);
        require_sound(e);
    }
}

// ---------------------------------------------------------------------------
// reorientation repairs
// ---------------------------------------------------------------------------

TEST_CASE("a new edge from a MIS member resolves and files the target")
{
    MisEngine e(8, 1);
    e.set_strict(true);
    e.insert_edge(0, 1);
    CHECK(e.z_set(1) == std::set<Vertex>{0});
    CHECK(e.m_minus(1) == std::set<Vertex>{0});
    require_sound(e);
}

TEST_CASE("flipping the hosting edge resolves the member through its former host")
{
    // a hosting edge can only flip toward the member, and the host is a MIS
    // vertex, so the member always comes out resolved rather than rehosted
    MisEngine e(32, 1);
    e.set_strict(true);
    const Vertex aux = 30;
    make_unresolved_member(e, aux, 5, {0});
    REQUIRE(e.owner(5) == Vertex{0});
    make_unresolved_member(e, aux, 7, {6});
    make_unresolved_member(e, aux, 8, {6});
    REQUIRE(e.is_in_mis(6));
    e.insert_edge(5, 7);
    e.insert_edge(5, 8);
    REQUIRE(e.graph().out_degree(5) == 3);
    require_sound(e);

    // the fifth out-edge of 5 flips everything into 5
    e.insert_edge(5, 9);
    ChangeLog log = e.insert_edge(5, 6);
    CHECK(log.empty()); // 5 not in the MIS, 6 in: trivial insert
    CHECK(e.graph().out_degree(5) == 0);
    CHECK(!e.owner(5).has_value());
    CHECK(e.out_view(5).empty());
    // every former target now points at 5; the MIS members resolve it
    CHECK(e.m_minus(5) == std::set<Vertex>{0, 6, 9});
    CHECK(e.z_set(5) == std::set<Vertex>{0, 6, 9});
    CHECK(e.p_bucket(5, 1) == std::set<Vertex>{7, 8});
    require_sound(e);
}

TEST_CASE("a flipped edge can strip the last MIS in-neighbor and rehost the target")
{
    MisEngine e(32, 1);
    e.set_strict(true);
    // 10 resolved only through MIS vertex 4
    REQUIRE(e.is_in_mis(4));
    e.insert_edge(4, 10);
    REQUIRE(!e.is_in_mis(10));
    REQUIRE(e.m_minus(10) == std::set<Vertex>{4});
    // keep 10 out of the MIS afterwards: give it a MIS out-neighbor
    REQUIRE(e.is_in_mis(13));
    e.insert_edge(10, 13);
    require_sound(e);

    for (Vertex t = 20; t < 23; ++t)
        e.insert_edge(4, t);
    REQUIRE(e.graph().out_degree(4) == 4);
    e.insert_edge(4, 23); // overflow: all five flip, 10 loses its resolver
    CHECK(e.m_minus(10).empty());
    CHECK(!e.is_in_mis(10));
    // 10 is unresolved now and must be hosted (13 has room)
    CHECK(e.owner(10) == Vertex{13});
    require_sound(e);
    CHECK(check_mis(e).ok());
}

TEST_CASE("a new edge into a full active set files the tail as residual")
{
    // two full hosts at n = 256 (capacity 72): a vertex residual through
    // the first becomes residual at the second when the new edge arrives
    MisEngine e(256, 1);
    e.set_strict(true);
    const Vertex aux = 250, host_a = 252, host_b = 253;
    REQUIRE(e.params().active_capacity() == 72);
    Vertex next = fill_active(e, aux, host_a, 1, 72);
    next = fill_active(e, aux, host_b, next, 72);
    const Vertex u = next;
    make_unresolved_member(e, aux, u, {host_a});
    REQUIRE(!e.owner(u).has_value());
    REQUIRE(e.r_set(host_a).count(u) == 1);
    require_sound(e);

    ChangeLog log = e.insert_edge(u, host_b);
    CHECK(log.empty());
    CHECK(e.r_set(host_b).count(u) == 1);
    CHECK(!e.owner(u).has_value());
    require_sound(e);
}

TEST_CASE("deleting a hosting edge reassigns the member to another candidate")
{
    MisEngine e(32, 1);
    e.set_strict(true);
    const Vertex aux = 30;
    Vertex next = fill_active(e, aux, 1, 5, 2); // give 1 a nonempty set
    const Vertex x = next;
    make_unresolved_member(e, aux, x, {0, 1});
    REQUIRE(e.owner(x) == Vertex{0}); // A_0 smaller
    require_sound(e);

    ChangeLog log = e.delete_edge(x, 0);
    CHECK(log.empty()); // x still covered by 1
    CHECK(e.owner(x) == Vertex{1});
    CHECK(!e.is_in_mis(x));
    require_sound(e);
}

TEST_CASE("replacement chains cross hosts through passive buckets")
{
    MisEngine e(32, 1);
    e.set_strict(true);
    const Vertex aux = 30, host_a = 0, host_b = 1;
    // A_0 reaches 9 first so y prefers host 1 and lands in bucket 2 there
    Vertex next = fill_active(e, aux, host_a, 2, 9);
    next = fill_active(e, aux, host_b, next, 8);
    const Vertex y = next;
    make_unresolved_member(e, aux, y, {host_b, host_a});
    REQUIRE(e.owner(y) == host_b);
    REQUIRE(e.bucket_of(y) == 2);
    REQUIRE(e.p_bucket(host_a, 2).count(y) == 1);

    // shrink A_0 back to one exactly-full bucket (member 10 sat in bucket 2)
    REQUIRE(e.bucket_of(10) == 2);
    e.delete_edge(10, host_a);
    REQUIRE(e.active_size(host_a) == 8);
    require_sound(e);

    SUBCASE("pulling from a passive bucket vacates the other host")
    {
        // hole in A_0(1): the only candidate above is y via P_0(2)
        e.delete_edge(2, host_a);
        CHECK(e.owner(y) == host_a);
        CHECK(e.bucket_of(y) == 1);
        CHECK(e.a_bucket(host_a, 1).size() == 8);
        CHECK(e.active_size(host_b) == 8); // y left B's bucket 2
        CHECK(e.p_bucket(host_b, 1).count(y) == 1);
        CHECK(e.p_bucket(host_a, 2).empty());
        require_sound(e);
    }

    SUBCASE("an own higher bucket wins over an equal-index passive entry")
    {
        // refill A_0(2) with a fresh member z, then punch a bucket-1 hole:
        // z (own bucket 2) is taken, y stays put at its host
        const Vertex z = y + 1;
        make_unresolved_member(e, aux, z, {host_a});
        REQUIRE(e.bucket_of(z) == 2);
        e.delete_edge(3, host_a);
        CHECK(e.owner(z) == host_a);
        CHECK(e.bucket_of(z) == 1);
        CHECK(e.owner(y) == host_b);
        CHECK(e.bucket_of(y) == 2);
        CHECK(e.a_bucket(host_a, 2).empty());
        require_sound(e);
    }
}
