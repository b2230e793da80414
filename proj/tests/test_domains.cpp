#include "gpe/domains.hpp"
#include "gpe/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace gpe;
using gpe::test::vec;

namespace {

std::set<long> interior_ticks(const Grid& g) {
    std::set<long> out;
    for (std::size_t n : g.active_nodes())
        if (g.node_class(n) == NodeClass::interior) out.insert(std::lround(g.point(n)[0] / g.h()));
    return out;
}

}  // namespace

TEST_CASE("inflate produces the eps-neighbourhood") {
    const Domain iv = inflate(Domain::interval(0, 1), 0.1);
    CHECK(iv.lower()[0] == doctest::Approx(-0.1));
    CHECK(iv.upper()[0] == doctest::Approx(1.1));

    const Domain sq = inflate(Domain::rectangle(0, 1, 0, 1), 0.1);
    CHECK(sq.signed_distance(vec({-0.05, -0.05})) > 0.0);
    // Corners are rounded: the box corner (-0.1, -0.1) lies outside.
    CHECK(sq.signed_distance(vec({-0.09, -0.09})) < 0.0);

    const Domain dk = inflate(Domain::disk(0, 0, 1), 0.5);
    CHECK(dk.inradius() == doctest::Approx(1.5));
    CHECK(dk.signed_distance(vec({1.4, 0})) == doctest::Approx(0.1));

    CHECK(inflate(iv, 0.0).signed_distance(vec({0.3})) == doctest::Approx(iv.signed_distance(vec({0.3}))));
    CHECK_THROWS_AS(inflate(iv, -0.1), Error);
}

TEST_CASE("signed distance is positive inside, 1-Lipschitz and shifts under inflation") {
    const Domain shapes[] = {Domain::interval(0, 1), Domain::rectangle(-1, 1, 0, 1), Domain::disk(0.5, 0, 1)};
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (const Domain& d : shapes) {
        CHECK(d.signed_distance(d.centroid()) > 0.0);
        Vec far = d.upper();
        far.array() += 1.0;
        CHECK(d.signed_distance(far) < 0.0);
        const Domain big = inflate(d, 0.25);
        for (int t = 0; t < 1000; ++t) {
            Vec a(d.dim()), b(d.dim());
            for (int k = 0; k < d.dim(); ++k) {
                a[k] = U(rng);
                b[k] = U(rng);
            }
            CHECK(std::abs(d.signed_distance(a) - d.signed_distance(b)) <= (a - b).norm() + 1e-12);
            CHECK(big.signed_distance(a) == doctest::Approx(d.signed_distance(a) + 0.25));
        }
    }
}

TEST_CASE("grid node classes") {
    SUBCASE("interval (0,1), h = 1/4") {
        const auto g = build_grid(Domain::interval(0, 1), 0.25);
        CHECK(interior_ticks(*g) == std::set<long>{1, 2, 3});
        std::set<long> band;
        for (std::size_t n : g->active_nodes())
            if (g->node_class(n) == NodeClass::boundary) band.insert(std::lround(g->point(n)[0] / 0.25));
        CHECK(band == std::set<long>{0, 4});
    }
    SUBCASE("unit square, h = 1/2") {
        const auto g = build_grid(Domain::rectangle(0, 1, 0, 1), 0.5);
        CHECK(g->count(NodeClass::interior) == 1);
        const std::size_t n = g->nearest(vec({0.5, 0.5}));
        CHECK(g->node_class(n) == NodeClass::interior);
    }
    SUBCASE("disk radius 1, h = 0.4") {
        const double h = 0.4;
        const auto g = build_grid(Domain::disk(0, 0, 1), h);
        std::size_t expected = 0;
        for (int i = -3; i <= 3; ++i)
            for (int j = -3; j <= 3; ++j)
                if (std::hypot(i * h, j * h) <= 1.0 - h / 2.0) ++expected;
        CHECK(g->count(NodeClass::interior) == expected);
        for (std::size_t n : g->active_nodes())
            if (g->node_class(n) == NodeClass::interior) CHECK(g->point(n).norm() <= 1.0 - h / 2.0 + 1e-12);
    }
    SUBCASE("too coarse") {
        CHECK_THROWS_AS(build_grid(Domain::interval(0, 1), 0.75), Error);
    }
}

TEST_CASE("interior stencils never reach exterior nodes") {
    for (const Domain& d : {Domain::rectangle(0, 1, 0, 1), Domain::disk(0, 0, 1)}) {
        const auto g = build_grid(d, 0.1);
        for (std::size_t n : g->active_nodes()) {
            if (g->node_class(n) != NodeClass::interior) continue;
            for (int di = -1; di <= 1; ++di)
                for (int dj = -1; dj <= 1; ++dj) CHECK(g->active(g->offset(n, di, dj)));
        }
    }
}

TEST_CASE("interior sets grow with inflation and survive refinement") {
    const Domain base = Domain::disk(0, 0, 1);
    const double h = 0.05;
    const auto g1 = build_grid(inflate(base, 0.05), h);
    const auto g2 = build_grid(inflate(base, 0.1), h);
    for (std::size_t n : g1->active_nodes()) {
        if (g1->node_class(n) != NodeClass::interior) continue;
        CHECK(g2->node_class(g2->nearest(g1->point(n))) == NodeClass::interior);
    }
    const auto coarse = build_grid(base, 0.1);
    const auto fine = build_grid(base, 0.05);
    for (std::size_t n : coarse->active_nodes()) {
        if (coarse->node_class(n) != NodeClass::interior) continue;
        const std::size_t m = fine->nearest(coarse->point(n));
        CHECK((fine->point(m) - coarse->point(n)).norm() < 1e-12);
        CHECK(fine->node_class(m) != NodeClass::exterior);
    }
}

TEST_CASE("strict containment") {
    const Domain unit = Domain::interval(0, 1);
    CHECK(inflate(unit, 0.1).strictly_contains(unit));
    CHECK_FALSE(unit.strictly_contains(unit));
    CHECK(Domain::disk(0, 0, 1.2).strictly_contains(Domain::disk(0, 0, 1)));
    CHECK_FALSE(Domain::disk(0, 0, 1).strictly_contains(Domain::disk(0, 0, 1)));
}
