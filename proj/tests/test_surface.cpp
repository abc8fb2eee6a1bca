#include "antichain/errors.hpp"
#include "antichain/rng.hpp"
#include "antichain/surface.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace antichain;

namespace {

const SurfaceSpec kSalem3 = SurfaceSpec::make(3, SingularFunctionSpec::salem(0.25));

SurfaceSpec identity(int n) { return SurfaceSpec::make(n, SingularFunctionSpec::identity_fixture()); }

// p straight from its definition, without sorting: product of all but one
// largest coordinate over (1 - largest + that product).
double p_formula(const std::vector<double>& x) {
    if (x.size() == 1) {
        return x[0];
    }
    const auto it = std::max_element(x.begin(), x.end());
    double product = 1.0;
    for (auto j = x.begin(); j != x.end(); ++j) {
        if (j != it) {
            product *= *j;
        }
    }
    return product / (1.0 - *it + product);
}

std::vector<double> random_point(const CounterRng& rng, std::uint64_t i, std::size_t dim,
                                 std::uint64_t stream = 0) {
    std::vector<double> x(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        x[d] = rng.open_unit(i, stream + d);
    }
    return x;
}

} // namespace

TEST_CASE("p examples") {
    CHECK(p_eval(std::vector{0.37}) == 0.37);
    CHECK(p_eval(std::vector{0.5, 0.5}) == 0.5);
    CHECK(p_eval(std::vector{0.2, 0.8}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p_eval(std::vector{0.8, 0.2}) == p_eval(std::vector{0.2, 0.8}));
    CHECK(p_eval(std::vector{0.5, 0.5, 0.5}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(p_eval(std::vector{0.5, 0.5, 0.5}) == doctest::Approx(p_formula({0.5, 0.5, 0.5})));
    CHECK_THROWS_AS(p_eval(std::vector{0.0, 0.5}), DomainError);
    CHECK_THROWS_AS(p_eval(std::vector{0.5, 1.0}), DomainError);
    CHECK_THROWS_AS(p_eval(std::vector<double>{}), DomainError);
}

TEST_CASE("p agrees with the unsorted formula") {
    const CounterRng rng(21);
    for (std::size_t dim = 1; dim <= 5; ++dim) {
        for (std::uint64_t i = 0; i < 2000; ++i) {
            const auto x = random_point(rng, i, dim);
            CHECK(p_eval(x) == doctest::Approx(p_formula(x)).epsilon(1e-13));
        }
    }
}

TEST_CASE("p is exactly permutation symmetric") {
    const CounterRng rng(22);
    for (std::size_t dim = 1; dim <= 5; ++dim) {
        for (std::uint64_t i = 0; i < 200; ++i) {
            auto x = random_point(rng, i, dim);
            if (i % 4 == 0 && dim > 1) {
                x[1] = x[0]; // ties
            }
            const double reference = p_eval(x);
            std::vector<std::size_t> perm(dim);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                std::vector<double> y(dim);
                for (std::size_t d = 0; d < dim; ++d) {
                    y[d] = x[perm[d]];
                }
                REQUIRE(p_eval(y) == reference);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
}

TEST_CASE("p is strictly increasing along the componentwise order") {
    const CounterRng rng(23);
    for (std::size_t dim = 1; dim <= 5; ++dim) {
        for (std::uint64_t i = 0; i < 20'000; ++i) {
            auto x = random_point(rng, i, dim);
            auto y = x;
            bool moved = false;
            for (std::size_t d = 0; d < dim; ++d) {
                if ((rng.bits(i, 100 + d) & 1) != 0 || (d + 1 == dim && !moved)) {
                    y[d] = x[d] + rng.open_unit(i, 200 + d) * (1.0 - x[d]);
                    moved = moved || y[d] - x[d] > 1e-9;
                }
            }
            if (!moved) {
                continue;
            }
            REQUIRE(p_eval(x) < p_eval(y));
        }
    }
}

TEST_CASE("p is surjective along each coordinate") {
    const double lo = 1e-6;
    const double hi = 1.0 - 1e-6;
    // Free coordinate going to 0 drags p to 0 (it is the minimum then).
    CHECK(p_eval(std::vector{lo, 0.4, 0.6}) < 1e-5);
    // Free coordinate going to 1 as the maximum drags p to 1.
    CHECK(p_eval(std::vector{0.4, 0.6, hi}) > 1.0 - 1e-4);
    CHECK(p_eval(std::vector{0.3, hi}) > 1.0 - 1e-4);
    CHECK(p_eval(std::vector{lo, 0.3}) < 1e-5);
}

TEST_CASE("p is continuous across ties") {
    // |dp/dx_j| <= 1 / (1 - M + P)^2 for every coordinate, so a tied move
    // of size delta changes p by at most delta / (1 - M + P)^2.
    const CounterRng rng(0);
    for (std::uint64_t i = 0; i < 20'000; ++i) {
        const std::size_t dim = 2 + i % 4;
        auto x = random_point(rng, i, dim);
        x[dim - 1] = x[0];
        const double tied = p_eval(x);
        const double M = *std::max_element(x.begin(), x.end());
        const double den = 1.0 - M + tied * (1.0 - M) / (1.0 - tied);
        for (double delta : {1e-12, -1e-12}) {
            auto y = x;
            y[0] += delta;
            const double change = std::abs(p_eval(y) - tied);
            REQUIRE(change <= std::abs(delta) / (den * den) + 1e-15);
            if (den > 0.05) {
                REQUIRE(change <= 1e-9);
            }
        }
    }
    // Near the corner M -> 1, P -> 0 the slope exceeds 1000.
    std::vector<double> corner{0.99982081341196127, 0.00050122267174051993, 0.99982081341196127};
    const double tied = p_eval(corner);
    corner[0] += 1e-12;
    CHECK(std::abs(p_eval(corner) - tied) == doctest::Approx(1.0827e-9).epsilon(1e-3));
}

TEST_CASE("projective construction agrees with p") {
    CHECK(p_projective_crosscheck(std::vector{0.5, 0.5}) == 0.5);
    CHECK(p_projective_crosscheck(std::vector{0.8, 0.2}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p_projective_crosscheck(std::vector{0.2, 0.8}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(p_projective_crosscheck(std::vector{0.2, 0.8, 0.1}), DomainError);

    const CounterRng rng(25);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 10'000; ++i) {
        const auto x = random_point(rng, i, 2);
        worst = std::max(worst, std::abs(p_eval(x) - p_projective_crosscheck(x)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("F and graph point examples") {
    const auto id2 = identity(2);
    CHECK(F_eval(id2, std::vector{0.3}).value == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(F_eval(identity(3), std::vector{0.5, 0.5}).value == doctest::Approx(0.5).epsilon(1e-14));

    const SurfaceValue F = F_eval(kSalem3, std::vector{0.5, 0.5});
    CHECK(F.value == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(F.error < 1e-12);

    const Point g = graph_point(kSalem3, std::vector{0.5, 0.5});
    REQUIRE(g.dim() == 3);
    CHECK(g[0] == 0.5);
    CHECK(g[1] == 0.5);
    CHECK(g[2] == doctest::Approx(0.75));

    const Point g2 = graph_point(id2, std::vector{0.3});
    CHECK(g2[1] == doctest::Approx(0.7));

    for (double t : {0.1, 0.35, 0.5, 0.8}) {
        const Point g4 = graph_point(identity(4), std::vector{t, t, t});
        CHECK(g4[3] == doctest::Approx(1.0 - t * t / (1.0 - t + t * t)).epsilon(1e-13));
    }
}

TEST_CASE("F error bound covers deep evaluation") {
    // depth-20 evaluation vs the 52-digit reference at the same point
    const auto coarse = SurfaceSpec::make(3, SingularFunctionSpec::salem(0.25, 20));
    const CounterRng rng(26);
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const auto x = random_point(rng, i, 2);
        const SurfaceValue a = F_eval(coarse, x);
        const SurfaceValue b = F_eval(kSalem3, x);
        CHECK(std::abs(a.value - b.value) <= a.error + b.error);
    }
}

TEST_CASE("surface validation") {
    CHECK_THROWS_AS(SurfaceSpec::make(3, SingularFunctionSpec::cantor()), ConfigError);
    CHECK_THROWS_AS(SurfaceSpec::make(1, SingularFunctionSpec::salem(0.25)), ConfigError);
    CHECK_THROWS_AS(F_eval(kSalem3, std::vector{0.5}), DomainError);
    CHECK_THROWS_AS(F_eval(kSalem3, std::vector{0.5, 1.0}), DomainError);
    CHECK_THROWS_AS(Point(std::vector{0.0}), DomainError);
    CHECK_NOTHROW(SurfaceSpec::make(5, SingularFunctionSpec::minkowski()));
}

TEST_CASE("antichain pair verdicts") {
    const PairCheck ordered = check_antichain_pair(identity(2), std::vector{0.2}, std::vector{0.6});
    CHECK(ordered.verdict == Verdict::ordered_ok);
    CHECK_FALSE(ordered.within_tolerance);
    CHECK(ordered.gap == doctest::Approx(0.4));

    const PairCheck reversed = check_antichain_pair(identity(2), std::vector{0.6}, std::vector{0.2});
    CHECK(reversed.verdict == Verdict::ordered_ok);

    const PairCheck same = check_antichain_pair(kSalem3, std::vector{0.3, 0.4}, std::vector{0.3, 0.4});
    CHECK(same.verdict == Verdict::ordered_ok);
    CHECK(same.equal);

    const PairCheck crossed = check_antichain_pair(kSalem3, std::vector{0.3, 0.6}, std::vector{0.4, 0.5});
    CHECK(crossed.verdict == Verdict::incomparable);

    const double x = 0.3;
    const PairCheck tiny =
        check_antichain_pair(kSalem3, std::vector{x, 0.4}, std::vector{std::nextafter(x, 1.0), 0.4});
    CHECK(tiny.verdict == Verdict::ordered_ok);
    CHECK(tiny.within_tolerance);

    CHECK_THROWS_AS(check_antichain_pair(kSalem3, std::vector{0.3}, std::vector{0.4, 0.5}), DomainError);
}

TEST_CASE("seeded comparable pairs are comparable and reproducible") {
    std::vector<double> x(4), y(4), x2(4), y2(4);
    for (std::uint64_t i = 0; i < 5000; ++i) {
        detail::make_comparable_pair(9, i, x, y);
        detail::make_comparable_pair(9, i, x2, y2);
        REQUIRE(x == x2);
        REQUIRE(y == y2);
        bool le = true, ge = true;
        for (std::size_t d = 0; d < 4; ++d) {
            REQUIRE(x[d] > 0.0);
            REQUIRE(x[d] < 1.0);
            REQUIRE(y[d] > 0.0);
            REQUIRE(y[d] < 1.0);
            le = le && x[d] <= y[d];
            ge = ge && x[d] >= y[d];
        }
        REQUIRE(le != ge); // comparable and distinct
    }
}

TEST_CASE("no antichain violations on seeded pairs") {
    for (int n = 2; n <= 5; ++n) {
        const auto spec = SurfaceSpec::make(n, SingularFunctionSpec::salem(0.25));
        const AntichainTally t = check_antichain_batch(spec, 100'000, 42);
        CHECK(t.pairs == 100'000);
        CHECK(t.violations == 0);
        CHECK(t.ordered_ok == t.pairs);
    }
}

TEST_CASE("section is strictly decreasing and exhausts (0,1)") {
    const auto id3 = identity(3);
    const double fixed[] = {0.5};
    CHECK(section(id3, fixed, 0.5).value == doctest::Approx(0.5).epsilon(1e-14));
    const double g1 = section(id3, fixed, 0.1).value;
    const double g9 = section(id3, fixed, 0.9).value;
    CHECK(g1 == doctest::Approx(1.0 - p_formula({0.5, 0.1})).epsilon(1e-14));
    CHECK(g9 == doctest::Approx(1.0 - p_formula({0.5, 0.9})).epsilon(1e-14));
    CHECK(g1 > g9);

    CHECK_THROWS_AS(section(identity(2), std::vector<double>{}, 0.5), DomainError);
    CHECK_THROWS_AS(section(kSalem3, std::vector{0.2, 0.3}, 0.5), DomainError);

    const CounterRng rng(27);
    for (int n : {3, 4}) {
        const auto spec = SurfaceSpec::make(n, SingularFunctionSpec::salem(0.25));
        for (std::uint64_t i = 0; i < 10'000; ++i) {
            const auto fixed_pt = random_point(rng, i, static_cast<std::size_t>(n - 2));
            double t1 = rng.open_unit(i, 50);
            double t2 = rng.open_unit(i, 51);
            if (t1 > t2) {
                std::swap(t1, t2);
            }
            const SurfaceValue a = section(spec, fixed_pt, t1);
            const SurfaceValue b = section(spec, fixed_pt, t2);
            if (t2 - t1 > 1e-6) {
                REQUIRE(a.value > b.value);
            }
        }
        const auto fixed_pt = random_point(rng, 999, static_cast<std::size_t>(n - 2));
        CHECK(section(spec, fixed_pt, 1.0 - 1e-9).value < 0.01);
        CHECK(section(spec, fixed_pt, 1e-9).value > 0.99);
    }
}
