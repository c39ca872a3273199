#include <catch2/catch.hpp>

#include <set>

#include "helpers.hpp"

using namespace fax;
using namespace fax::testing;

TEST_CASE("empty problem yields the empty candidate") {
    HittingSetProblem p(4);
    CHECK(p.next_minimal() == IndexSet{});
    CHECK(p.next_minimum() == IndexSet{});
}

TEST_CASE("adding sets to hit constrains candidates") {
    HittingSetProblem p(4);
    p.add_set_to_hit(IndexSet{1, 4});
    auto c = p.next_minimal();
    REQUIRE(c.has_value());
    CHECK(*c == IndexSet{1});

    p.add_set_to_hit(IndexSet{1, 2});
    p.block_upset(IndexSet{1});
    CHECK(p.next_minimal() == IndexSet{2, 4});
}

TEST_CASE("an empty dual set is a caller bug") {
    HittingSetProblem p(4);
    CHECK_THROWS_AS(p.add_set_to_hit(IndexSet{}), InvalidDualError);
    CHECK_THROWS_AS(p.add_set_to_hit(IndexSet{7}), FormatError);
}

TEST_CASE("blocking the empty set blocks everything") {
    HittingSetProblem p(4);
    p.block_upset(IndexSet{});
    CHECK_FALSE(p.next_minimal().has_value());
    CHECK_FALSE(p.next_minimum().has_value());
}

TEST_CASE("the documented enumeration run terminates") {
    HittingSetProblem p(4);
    p.add_set_to_hit(IndexSet{1, 4});
    p.add_set_to_hit(IndexSet{1, 2});
    p.block_upset(IndexSet{1});
    p.block_upset(IndexSet{2, 4});
    CHECK_FALSE(p.next_minimal().has_value());
}

TEST_CASE("minimum candidates break ties by cardinality then position order") {
    HittingSetProblem p(4);
    p.add_set_to_hit(IndexSet{1, 2});
    p.add_set_to_hit(IndexSet{3});
    CHECK(p.next_minimum() == IndexSet{1, 3});

    HittingSetProblem empty(4);
    CHECK(empty.next_minimum() == IndexSet{});

    HittingSetProblem pairs(8);
    for (std::size_t i = 1; i <= 7; i += 2) pairs.add_set_to_hit(IndexSet{i, i + 1});
    CHECK(pairs.next_minimum() == IndexSet{1, 3, 5, 7});
}

TEST_CASE("four disjoint pairs induce exactly sixteen minimal hitting sets") {
    HittingSetProblem p(8);
    for (std::size_t i = 1; i <= 7; i += 2) p.add_set_to_hit(IndexSet{i, i + 1});
    std::set<IndexSet> found;
    while (auto c = p.next_minimal()) {
        CHECK(c->size() == 4);
        CHECK(found.insert(*c).second);
        p.block_upset(*c);
    }
    CHECK(found.size() == 16);
    CHECK(found == brute_minimal_hitting_sets(p.sets_to_hit(), 8));
}

TEST_CASE("identical call sequences give identical candidate sequences") {
    auto run = [] {
        HittingSetProblem p(6);
        p.add_set_to_hit(IndexSet{1, 3, 5});
        p.add_set_to_hit(IndexSet{2, 3});
        p.add_set_to_hit(IndexSet{4, 5, 6});
        std::vector<IndexSet> sequence;
        while (auto c = p.next_minimal()) {
            sequence.push_back(*c);
            p.block_upset(*c);
        }
        return sequence;
    };
    auto first = run();
    CHECK(first == run());
    REQUIRE_FALSE(first.empty());
    // Cardinalities never decrease along the enumeration.
    for (std::size_t i = 1; i < first.size(); ++i)
        CHECK(first[i - 1].size() <= first[i].size());
}

TEST_CASE("every candidate hits everything, minimally, avoiding blocked upsets") {
    SplitMix64 rng(29);
    for (int instance = 0; instance < 60; ++instance) {
        std::size_t universe = 3 + rng.below(8);  // up to 10
        HittingSetProblem p(universe);
        std::size_t set_count = 1 + rng.below(5);
        for (std::size_t s = 0; s < set_count; ++s) {
            IndexSet d;
            while (d.empty())
                for (std::size_t pos = 1; pos <= universe; ++pos)
                    if (rng.below(3) == 0) d.insert(pos);
            p.add_set_to_hit(d);
        }

        std::set<IndexSet> enumerated;
        while (auto c = p.next_minimal()) {
            for (const IndexSet& d : p.sets_to_hit()) REQUIRE(c->intersects(d));
            for (std::size_t pos : *c) {
                IndexSet smaller = *c;
                smaller.erase(pos);
                bool still_hits = true;
                for (const IndexSet& d : p.sets_to_hit())
                    still_hits = still_hits && smaller.intersects(d);
                REQUIRE_FALSE(still_hits);
            }
            for (const IndexSet& t : p.blocked_sets()) REQUIRE_FALSE(t.is_subset_of(*c));
            enumerated.insert(*c);
            p.block_upset(*c);
        }
        CHECK(enumerated == brute_minimal_hitting_sets(p.sets_to_hit(), universe));
    }
}

TEST_CASE("clause dump names the constraint system") {
    HittingSetProblem p(3);
    p.add_set_to_hit(IndexSet{1, 2});
    p.block_upset(IndexSet{3});
    std::string dump = p.dump_clauses();
    CHECK(dump.find("hit {1,2}") != std::string::npos);
    CHECK(dump.find("block {3}") != std::string::npos);
}
