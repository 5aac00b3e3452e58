#include <cmath>
#include <random>

#include "doctest.h"
#include "sparsecard/plcover.hpp"
#include "test_support.hpp"

using namespace sparsecard;

namespace {

ConcaveSeq sqrt_seq(std::int64_t k) {
    return ConcaveSeq::from_generator(k, [](std::int64_t i) { return std::sqrt(static_cast<double>(i)); });
}

ConcaveSeq parabola_seq(std::int64_t k) {
    return ConcaveSeq::from_generator(k, [k](std::int64_t i) {
        return static_cast<double>(i) * static_cast<double>(k - i);
    });
}

// Every integer upper-bounded by every line; every integer (1+eps)-covered by
// some line.
void require_valid_cover(const ConcaveSeq& g, const std::vector<Line>& lines, double eps) {
    for (std::int64_t i = 0; i <= g.k(); ++i) {
        bool covered = false;
        for (const Line& l : lines) {
            REQUIRE(detail::approx_le(g(i), l(static_cast<double>(i))));
            covered = covered || detail::approx_le(l(static_cast<double>(i)), (1.0 + eps) * g(i));
        }
        REQUIRE(covered);
    }
}

}  // namespace

TEST_CASE("next_line: linear g covered by one line") {
    ConcaveSeq g({0, 1, 2, 3, 4});
    auto [u_next, line] = next_line(g, 0, 0.0);
    CHECK(u_next == 5);
    CHECK(line.slope == doctest::Approx(1.0));
    CHECK(line.intercept == doctest::Approx(0.0));
}

TEST_CASE("next_line: (0,1,1,0) stops where the line overshoots") {
    ConcaveSeq g({0, 1, 1, 0});
    auto [u_next, line] = next_line(g, 0, 0.0);
    CHECK(u_next == 2);  // L(2) = 2 > 1
    CHECK(line.slope == doctest::Approx(1.0));
    CHECK(line.intercept == doctest::Approx(0.0));
}

TEST_CASE("next_line: sqrt fixture (reference trace)") {
    auto g = sqrt_seq(100);
    auto [u_next, line] = next_line(g, 1, 0.1);
    CHECK(u_next == 7);
    CHECK(line.slope == doctest::Approx(0.31602540378443855).epsilon(1e-14));
    CHECK(line.intercept == doctest::Approx(0.7839745962155615).epsilon(1e-14));
    CHECK(line(1.0) == doctest::Approx(1.1));
}

TEST_CASE("next_line: domain errors") {
    ConcaveSeq g({0, 1, 2});
    CHECK_THROWS_AS(next_line(g, 3, 0.0), std::domain_error);
    CHECK_THROWS_AS(next_line(g, 0, -0.5), std::domain_error);
    CHECK_THROWS_AS(ConcaveSeq({0, 1, 3}), validation_error);   // convex
    CHECK_THROWS_AS(ConcaveSeq({0, -1, -2}), validation_error); // negative
}

TEST_CASE("greedy_pl_cover: x(4-x) pairing") {
    ConcaveSeq g({0, 3, 4, 3, 0});
    PLFunction cover = greedy_pl_cover(g, 0.0);
    REQUIRE(cover.piece_count() == 3);
    CHECK(cover.slopes()[0] == doctest::Approx(3.0));
    CHECK(cover.slopes()[1] == doctest::Approx(-1.0));
    CHECK(cover.slopes()[2] == doctest::Approx(-3.0));
    for (std::int64_t i = 0; i <= 4; ++i)
        CHECK(cover(static_cast<double>(i)) == doctest::Approx(g(i)));
}

TEST_CASE("greedy_pl_cover: constant function takes one line") {
    ConcaveSeq g({2.5, 2.5, 2.5, 2.5});
    // Exact cover: the flat line at c.
    PLFunction flat = greedy_pl_cover(g, 0.0);
    CHECK(flat.piece_count() == 1);
    CHECK(flat.value_at_zero() == doctest::Approx(2.5));
    CHECK(flat.slopes()[0] == doctest::Approx(0.0));
    // With slack the single line may tilt inside the (1+eps) band but still
    // covers everything.
    PLFunction loose = greedy_pl_cover(g, 0.7);
    CHECK(loose.piece_count() == 1);
    for (std::int64_t i = 0; i <= 3; ++i) {
        CHECK(detail::approx_le(2.5, loose(static_cast<double>(i))));
        CHECK(detail::approx_le(loose(static_cast<double>(i)), 1.7 * 2.5));
    }
    // Constant zero collapses to the flat zero line for any eps.
    ConcaveSeq zero({0, 0, 0});
    PLFunction zcover = greedy_pl_cover(zero, 0.9);
    CHECK(zcover.piece_count() == 1);
    CHECK(zcover(1.0) == doctest::Approx(0.0));
}

TEST_CASE("greedy_pl_cover: k=1000 clique function, eps=1") {
    auto g = parabola_seq(1000);
    PLFunction cover = greedy_pl_cover(g, 1.0);
    CHECK(cover.piece_count() == 2);  // reference-run fixture
    CHECK(static_cast<int>(cover.piece_count()) == min_cover_oracle(g, 1.0));
}

TEST_CASE("symmetric_pl_cover: min{x,3} keeps one positive piece plus flat") {
    MonotoneConcaveSeq h({0, 1, 2, 3, 3, 3});
    PLFunction cover = symmetric_pl_cover(h, 0.0);
    REQUIRE(cover.piece_count() == 2);
    CHECK(cover.slopes()[0] == doctest::Approx(1.0));
    CHECK(cover.slopes()[1] == doctest::Approx(0.0));
    CHECK(cover.breakpoints()[0] == doctest::Approx(3.0));
    for (std::int64_t i = 0; i <= 5; ++i)
        CHECK(cover(static_cast<double>(i)) == doctest::Approx(h(i)));
}

TEST_CASE("symmetric_pl_cover: linear h ends with breakpoint at r") {
    MonotoneConcaveSeq h({0, 1, 2, 3, 4});
    PLFunction cover = symmetric_pl_cover(h, 0.0);
    REQUIRE(cover.piece_count() == 2);
    CHECK(cover.slopes()[0] == doctest::Approx(1.0));
    CHECK(cover.slopes()[1] == doctest::Approx(0.0));
    CHECK(cover.breakpoints()[0] == doctest::Approx(4.0));  // b_J = r is allowed
}

TEST_CASE("symmetric_pl_cover: sqrt fixture (reference trace)") {
    auto h = MonotoneConcaveSeq::from_generator(
        8, [](std::int64_t i) { return std::sqrt(static_cast<double>(i)); });
    PLFunction cover = symmetric_pl_cover(h, 0.2);
    REQUIRE(cover.piece_count() == 3);
    CHECK(cover.slopes()[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cover.slopes()[1] == doctest::Approx(0.18973900724337533).epsilon(1e-13));
    CHECK(cover.slopes()[2] == doctest::Approx(0.0));
    CHECK(cover(8.0) == doctest::Approx(std::sqrt(8.0)));
    for (std::int64_t i = 0; i <= 8; ++i) {
        CHECK(detail::approx_le(h(i), cover(static_cast<double>(i))));
        CHECK(detail::approx_le(cover(static_cast<double>(i)), 1.2 * h(i)));
    }
}

TEST_CASE("tangent_log_cover: sqrt k=16 eps=1 uses at most 5 lines (monotone half only)") {
    auto g = sqrt_seq(16);
    auto lines = tangent_log_cover(g, 1.0);
    // sqrt is increasing, so only the rising half contributes: base secant
    // plus anchors at 1, 2, 4, 8.
    CHECK(lines.size() <= 5);
    require_valid_cover(g, lines, 1.0);
    auto greedy = greedy_cover_lines(g, 1.0);
    CHECK(greedy.size() <= lines.size());
}

TEST_CASE("tangent_log_cover: linear g still valid, greedy count 1") {
    ConcaveSeq g({0, 2, 4, 6, 8, 10});
    auto lines = tangent_log_cover(g, 0.5);
    require_valid_cover(g, lines, 0.5);
    CHECK(greedy_cover_lines(g, 0.5).size() == 1);
    CHECK(lines.size() >= 1);
}

TEST_CASE("tangent_log_cover: x(100-x) comparator chain") {
    auto g = parabola_seq(100);
    auto lines = tangent_log_cover(g, 0.1);
    require_valid_cover(g, lines, 0.1);
    std::size_t bound = 2 + 2 * static_cast<std::size_t>(
                                std::ceil(std::log(100.0) / std::log(1.1)));
    CHECK(bound == 100);
    CHECK(lines.size() <= bound);
    auto greedy = greedy_cover_lines(g, 0.1);
    CHECK(greedy.size() == 5);  // reference-run fixture
    CHECK(greedy.size() <= lines.size());
}

TEST_CASE("tangent_log_cover: eps=0 rejected") {
    ConcaveSeq g({0, 1, 2});
    CHECK_THROWS_AS(tangent_log_cover(g, 0.0), std::domain_error);
}

TEST_CASE("clique_cover: k=100 eps=1 finishes in one iteration") {
    auto lines = clique_cover(100, 1.0);
    REQUIRE(lines.size() == 2);
    double t = 1.0 + std::sqrt(99.0);
    CHECK(lines[1].slope == doctest::Approx(100.0 - 2.0 * t));
    CHECK(lines[1].intercept == doctest::Approx(t * t));
}

TEST_CASE("clique_cover: k=4 eps=0.5 first tangent point") {
    auto lines = clique_cover(4, 0.5);
    double t = 1.0 + std::sqrt(1.5);
    CHECK(lines[1].slope == doctest::Approx(4.0 - 2.0 * t));
    CHECK(lines[1].intercept == doctest::Approx(t * t));
}

TEST_CASE("clique_cover: emitted tangents touch x(k-x) exactly once") {
    for (std::int64_t k : {10, 47, 200}) {
        auto lines = clique_cover(k, 0.25);
        for (std::size_t j = 1; j < lines.size(); ++j) {
            // kx - 2tx + t^2 - x(k-x) = (x - t)^2: zero exactly at t, above elsewhere.
            double t = (static_cast<double>(k) - lines[j].slope) / 2.0;
            CHECK(t > 0.0);
            CHECK(lines[j].intercept == doctest::Approx(t * t));
            for (std::int64_t i = 0; i <= k; ++i) {
                double diff = lines[j](static_cast<double>(i)) -
                              static_cast<double>(i) * static_cast<double>(k - i);
                CHECK(diff >= -1e-9 * std::max(1.0, std::abs(lines[j].intercept)));
            }
        }
    }
}

TEST_CASE("clique_cover: count bound with fitted constant, k-independence") {
    const double eps = 0.01;
    const double denom = std::pow(eps, -0.5) * std::log2(std::log2(1.0 / eps));
    for (std::int64_t k : {1000, 10000, 100000}) {
        auto lines = clique_cover(k, eps);
        std::size_t doubled = 2 * lines.size();
        CHECK(doubled == 18);  // reference-run fixture
        CHECK(static_cast<double>(doubled) <= 1.0 * denom);  // C fitted as 1.0
    }
}

TEST_CASE("clique_cover: domain errors") {
    CHECK_THROWS_AS(clique_cover(100, 0.0), std::domain_error);
    CHECK_THROWS_AS(clique_cover(100, -1.0), std::domain_error);
    CHECK_THROWS_AS(clique_cover(1, 0.5), std::domain_error);
}

TEST_CASE("min_cover_oracle: spot values") {
    ConcaveSeq g({0, 3, 4, 3, 0});
    CHECK(min_cover_oracle(g, 0.0) == 3);
    ConcaveSeq lin({0, 1, 2, 3});
    CHECK(min_cover_oracle(lin, 0.0) == 1);
    CHECK(min_cover_oracle(lin, 0.9) == 1);
    auto s50 = sqrt_seq(50);
    int oracle = min_cover_oracle(s50, 0.1);
    CHECK(oracle == 3);  // reference-run fixture
    CHECK(static_cast<int>(greedy_pl_cover(s50, 0.1).piece_count()) == oracle);
}

TEST_CASE("min_cover_oracle: size guard") {
    auto g = sqrt_seq(2001);
    CHECK_THROWS_AS(min_cover_oracle(g, 0.0), size_error);
}

TEST_CASE("eval_pl: spot checks") {
    // min{x, 2-x}
    PLFunction tent(2, 0.0, {1.0, -1.0}, {1.0});
    CHECK(tent(1.0) == doctest::Approx(1.0));
    CHECK(tent(0.5) == doctest::Approx(0.5));
    PLFunction pl(4, 0.0, {3.0, 1.0, -3.0}, {1.0, 3.0});
    CHECK(pl(2.0) == doctest::Approx(4.0));
    CHECK_THROWS_AS(pl(-0.1), std::domain_error);
    CHECK_THROWS_AS(pl(4.5), std::domain_error);
}

TEST_CASE("property: sandwich, concavity, optimality on random sequences") {
    std::mt19937 rng(20240517);
    for (int trial = 0; trial < 120; ++trial) {
        std::uniform_int_distribution<std::int64_t> k_dist(1, 60);
        std::int64_t k = k_dist(rng);
        ConcaveSeq g(testsupport::random_concave_values(rng, k));
        std::uniform_real_distribution<double> e_dist(0.0, 1.0);
        double eps = trial % 4 == 0 ? 0.0 : e_dist(rng);

        PLFunction cover = greedy_pl_cover(g, eps);
        for (std::int64_t i = 0; i <= k; ++i) {
            double v = cover(static_cast<double>(i));
            CHECK(detail::approx_le(g(i), v));
            CHECK(v <= (1.0 + eps) * g(i) * (1.0 + 1e-12) + 1e-12);
        }
        for (std::size_t j = 0; j + 1 < cover.slopes().size(); ++j)
            CHECK(cover.slopes()[j] > cover.slopes()[j + 1]);
        for (std::size_t j = 0; j + 1 < cover.breakpoints().size(); ++j)
            CHECK(cover.breakpoints()[j] < cover.breakpoints()[j + 1]);
        CHECK(static_cast<int>(cover.piece_count()) == min_cover_oracle(g, eps));

        // Theorem 8 bound; comparator dominance when eps > 0.
        CHECK(cover.piece_count() <= 1 + static_cast<std::size_t>(k / 2));
        if (eps > 0.0) {
            auto tangent = tangent_log_cover(g, eps);
            CHECK(cover.piece_count() <= tangent.size());
        }
    }
}

TEST_CASE("property: eps=0 pairing count for strictly concave sequences") {
    std::mt19937 rng(77);
    for (std::int64_t k : {1, 2, 3, 6, 7, 10, 25}) {
        auto vals = std::vector<double>(static_cast<std::size_t>(k) + 1);
        for (std::int64_t i = 0; i <= k; ++i)
            vals[static_cast<std::size_t>(i)] =
                std::sqrt(static_cast<double>(i) + 1.0) * 3.0;  // strictly concave
        PLFunction cover = greedy_pl_cover(ConcaveSeq(vals), 0.0);
        CHECK(cover.piece_count() == static_cast<std::size_t>(k / 2) + 1);
    }
    (void)rng;
}

TEST_CASE("property: determinism — identical inputs, bit-identical output") {
    auto g1 = sqrt_seq(500);
    auto g2 = sqrt_seq(500);
    PLFunction a = greedy_pl_cover(g1, 0.037);
    PLFunction b = greedy_pl_cover(g2, 0.037);
    REQUIRE(a.piece_count() == b.piece_count());
    for (std::size_t i = 0; i < a.slopes().size(); ++i)
        CHECK(a.slopes()[i] == b.slopes()[i]);
    for (std::size_t i = 0; i < a.breakpoints().size(); ++i)
        CHECK(a.breakpoints()[i] == b.breakpoints()[i]);
}

TEST_CASE("lazy generator path handles large k") {
    auto g = parabola_seq(100000);
    PLFunction cover = greedy_pl_cover(g, 0.1);
    CHECK(cover.piece_count() == 6);  // reference-run fixture
}
