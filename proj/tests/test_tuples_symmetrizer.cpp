// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.
//
// Canonical tuples and the symmetrization that folds a two-half tuple
// into a signed combination of single-half tuples. Structural properties
// (prefactor shape, multiplicity sums, weight preservation) are asserted
// exactly, and the folded values are cross-checked through closed forms
// and the halves-swap sign rule.

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include <zml/nk.hpp>
#include <zml/rational.hpp>
#include <zml/symmetrize.hpp>
#include <zml/tuples.hpp>
#include <zml/verify.hpp>

using zml::ExactRational;
using zml::FullTuple;
using zml::HalfTuple;

TEST_CASE("half tuples canonicalize", "[tuples]") {
    SECTION("sorting and zero trimming") {
        const HalfTuple t({0, 2, 1, 0, 2});
        CHECK(t.entries() == std::vector<unsigned>({2, 2, 1}));
        CHECK(t.size() == 3);
        CHECK(t.weight() == 5);
        CHECK(t.max_entry() == 2);
        CHECK(t.min_entry() == 1);
    }
    SECTION("any ordering yields the same tuple") {
        CHECK(HalfTuple({3, 1, 2}) == HalfTuple({1, 2, 3}));
        CHECK(HalfTuple({0, 0}) == HalfTuple());
        CHECK(HalfTuple({1, 2}) != HalfTuple({1, 1}));
    }
    SECTION("parsing") {
        CHECK(HalfTuple::parse("3,2,1") == HalfTuple({1, 2, 3}));
        CHECK(HalfTuple::parse("0") == HalfTuple());
        CHECK(HalfTuple::parse("") == HalfTuple());
        CHECK(HalfTuple::parse("2,0,2") == HalfTuple({2, 2}));
        CHECK_THROWS_AS(HalfTuple::parse("2,x"), zml::Error);
        CHECK_THROWS_AS(HalfTuple::parse("-1"), zml::Error);
    }
    SECTION("slot addition recanonicalizes") {
        const HalfTuple t({2, 1});
        // Adding onto an implicit zero slot creates a new entry.
        CHECK(t.add_at(2, 3, 4) == HalfTuple({3, 2, 1}));
        // Adding onto an existing entry can reorder.
        CHECK(t.add_at(1, 4, 4) == HalfTuple({5, 2}));
        CHECK_THROWS_AS(t.add_at(4, 1, 4), zml::Error);
    }
    SECTION("min removal") {
        CHECK(HalfTuple({3, 1, 2}).drop_min() == HalfTuple({3, 2}));
        CHECK_THROWS_AS(HalfTuple().drop_min(), zml::Error);
    }
    SECTION("printing round-trips") {
        CHECK(HalfTuple({1, 3, 2}).to_string() == "3,2,1");
        CHECK(HalfTuple().to_string() == "0");
    }
}

TEST_CASE("full tuples validate their halves", "[tuples]") {
    const FullTuple t = FullTuple::parse(3, "2,1;1");
    CHECK(t.k() == 3);
    CHECK(t.first() == HalfTuple({2, 1}));
    CHECK(t.second() == HalfTuple({1}));
    CHECK(t.weight() == 4);
    CHECK(t.swapped().first() == HalfTuple({1}));
    CHECK(t.to_string() == "2,1;1");

    // A missing ';' means an empty second half.
    CHECK(FullTuple::parse(3, "2,1").second() == HalfTuple());
    CHECK_THROWS_AS(FullTuple::parse(3, "1;2;3"), zml::Error);
    CHECK_THROWS_AS(FullTuple::parse(2, "1,1,1;0"), zml::Error);
    CHECK_THROWS_AS(FullTuple(0, HalfTuple(), HalfTuple()), zml::Error);
}

TEST_CASE("symmetrized form has the predicted shape", "[symmetrize]") {
    SECTION("prefactor and multiplicity sum follow the fold count") {
        // Folding d second-half entries at order k multiplies the
        // prefactor by (-1)^d / prod_{j=1}^d (k-d+j) and spreads each
        // entry over k+d-1 targets, so multiplicities total
        // prod_{j=1}^d (k+d-j).
        for (unsigned k = 2; k <= 6; ++k) {
            const std::vector<std::string> seconds = {"1", "2,1", "1,1,1"};
            for (const std::string& text : seconds) {
                const HalfTuple second = HalfTuple::parse(text);
                const unsigned d = static_cast<unsigned>(second.size());
                if (d > k) continue;
                const FullTuple alpha(k, HalfTuple({2, 1}), second);
                const zml::SymmetrizedForm form = zml::symmetrize(alpha);

                ExactRational denom(1);
                long long mult_sum_expected = 1;
                for (unsigned j = 1; j <= d; ++j) {
                    denom = denom * ExactRational(
                                        static_cast<long>(k - d + j));
                    mult_sum_expected *= k + d - j;
                }
                const ExactRational sign =
                    d % 2 == 0 ? ExactRational(1) : ExactRational(-1);
                CHECK(form.prefactor == sign / denom);

                long long mult_sum = 0;
                for (const auto& [tuple, mult] : form.terms) {
                    CHECK(tuple.weight() == alpha.weight());
                    mult_sum += mult;
                }
                CHECK(mult_sum == mult_sum_expected);
            }
        }
    }

    SECTION("a fully worked instance") {
        // k = 3, alpha = (2,1;1,1): two folds, prefactor 1/((k-1)k) = 1/6,
        // and the four surviving weight-4 tuples with multiplicities.
        const zml::SymmetrizedForm form =
            zml::symmetrize(FullTuple::parse(3, "2,1;1,1"));
        CHECK(form.prefactor == ExactRational(1, 6));
        const std::map<HalfTuple, long long> expected = {
            {HalfTuple({2, 2, 1}), 4},
            {HalfTuple({3, 1, 1}), 2},
            {HalfTuple({3, 2}), 4},
            {HalfTuple({4, 1}), 2}};
        CHECK(form.terms == expected);
    }

    SECTION("an empty second half is a no-op") {
        const zml::SymmetrizedForm form =
            zml::symmetrize(FullTuple::parse(4, "3,1;"));
        CHECK(form.prefactor == ExactRational(1));
        REQUIRE(form.terms.size() == 1);
        CHECK(form.terms.begin()->first == HalfTuple({3, 1}));
        CHECK(form.terms.begin()->second == 1);
    }
}

TEST_CASE("folded values match closed forms", "[symmetrize]") {
    // Exact anchors at k = 5 for every two-half closed form in the
    // fixture list (the k-sweep lives in the fixtures verify suite).
    CHECK(zml::p_of_alpha(FullTuple::parse(5, "2,2,1;2,1")) ==
          ExactRational(22680));
    CHECK(zml::p_of_alpha(FullTuple::parse(5, "3,2,1;2")) ==
          ExactRational(-34272));
    CHECK(zml::p_of_alpha(FullTuple::parse(5, "2,2,2;2")) ==
          ExactRational(-42336));
    CHECK(zml::p_of_alpha(FullTuple::parse(5, "2,2,1;3")) ==
          ExactRational(36288));
    CHECK(zml::p_of_alpha(FullTuple::parse(5, "2,2,1,1;2")) ==
          ExactRational(-8064));
}

TEST_CASE("swapping the halves scales by the weight-parity sign",
          "[symmetrize]") {
    // p(A;B) = (-1)^{|alpha|} p(B;A): enumerate all half pairs at k = 3
    // with total weight <= 4.
    unsigned checked = 0;
    zml::for_each_bounded_vector(
        6, 4, 4, [&](const std::vector<unsigned>& v) {
            const HalfTuple a(std::vector<unsigned>(v.begin(), v.begin() + 3));
            const HalfTuple b(std::vector<unsigned>(v.begin() + 3, v.end()));
            const FullTuple ab(3, a, b);
            const ExactRational lhs = zml::p_of_alpha(ab);
            const ExactRational rhs = zml::p_of_alpha(ab.swapped());
            if (ab.weight() % 2 == 0)
                CHECK(lhs == rhs);
            else
                CHECK(lhs == -rhs);
            ++checked;
        });
    CHECK(checked > 100);
}

TEST_CASE("the empty tuple folds to the normalization", "[symmetrize]") {
    for (unsigned k = 2; k <= 6; ++k) {
        CHECK(zml::p_of_alpha(FullTuple(k, HalfTuple(), HalfTuple())) ==
              ExactRational(1));
    }
    CHECK_THROWS_AS(zml::p_of_alpha(FullTuple(1, HalfTuple(), HalfTuple())),
                    zml::Error);
}
