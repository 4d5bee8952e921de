#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "curvebody/chart.hpp"
#include "curvebody/random.hpp"

using namespace curvebody;

TEST_CASE("embedding of the chart origin and a generic point", "[chart]") {
    for (Space sp : {Space::Sphere, Space::Hyperbolic}) {
        const Biquaternion x0 = point_to_embedding(ChartPoint{Vec3{}, sp});
        CHECK(x0.s.re == 0.0);
        CHECK(x0.s.im == 1.0);  // X0 = 1 at the origin
        CHECK(component_norm(x0.v) == 0.0);

        const ChartPoint p{Vec3{0.5, 0.0, 0.0}, sp};
        const Biquaternion x = point_to_embedding(p);
        const double lam = 1.0 + sigma(sp) * 0.25;
        CHECK(x.s.im == Catch::Approx(1.0 / std::sqrt(lam)).epsilon(1e-15));
        CHECK(x.v.re.x == Catch::Approx(sigma(sp) * 0.5 / std::sqrt(lam)).epsilon(1e-15));
        CHECK(minkowski_type(x));
        CHECK(component_norm(norm(x) - RingScalar::real(sigma(sp), sp)) < 1e-15);

        // Round trip.
        const ChartPoint back = embedding_to_point(x);
        CHECK(norm(back.v - p.v) < 1e-15);
    }
}

TEST_CASE("chart domain validation", "[chart]") {
    CHECK_NOTHROW(validate_chart_point(ChartPoint{Vec3{5.0, 0.0, 0.0}, Space::Sphere}));
    CHECK_THROWS_AS(validate_chart_point(ChartPoint{Vec3{1.0, 0.0, 0.0}, Space::Hyperbolic}),
                    ChartDomain);
    CHECK_THROWS_AS(
        validate_chart_point(ChartPoint{Vec3{0.8, 0.7, 0.0}, Space::Hyperbolic}),
        ChartDomain);  // |v|^2 = 1.13 > 1
    const double nanv = std::nan("");
    CHECK_THROWS_AS(validate_chart_point(ChartPoint{Vec3{nanv, 0.0, 0.0}, Space::Sphere}),
                    ChartDomain);
}

TEST_CASE("embedding_to_point rejects off-manifold and wrong-sheet inputs", "[chart]") {
    // Non-Minkowski input.
    Biquaternion bad = point_to_embedding(ChartPoint{Vec3{0.1, 0.2, 0.0}, Space::Sphere});
    bad.s.re = 0.5;
    CHECK_THROWS_AS(embedding_to_point(bad), ChartDomain);

    // Hyperbolic lower sheet: X0 < 0.
    Biquaternion lower = point_to_embedding(ChartPoint{Vec3{0.1, 0.0, 0.0}, Space::Hyperbolic});
    lower = -1.0 * lower;
    CHECK_THROWS_AS(embedding_to_point(lower), WrongSheet);

    // Sphere equator: X0 = 0.
    Biquaternion equator{RingScalar::imaginary(0.0, Space::Sphere),
                         RingVector3::real(Vec3{1.0, 0.0, 0.0}, Space::Sphere)};
    CHECK_THROWS_AS(embedding_to_point(equator), EquatorSingularity);
}

TEST_CASE("velocity lift is tangent and inverts", "[chart]") {
    for (Space sp : {Space::Sphere, Space::Hyperbolic}) {
        Rng rng(mix(31, sp == Space::Sphere ? 0 : 1));
        for (int i = 0; i < 200; ++i) {
            const ChartPoint p = random_chart_point(rng, sp);
            const Vec3 w = rng.vec3(0.8);
            const Biquaternion x = point_to_embedding(p);
            const Biquaternion xd = point_velocity(p, w);
            // Tangency: d/dt norm(X) = X bar(Xd) + Xd bar(X) = 0.
            CHECK(component_norm(x * bar(xd) + xd * bar(x)) < 1e-12);
            const auto back = embedding_rates_to_chart(x, xd);
            CHECK(norm(back.first.v - p.v) < 1e-12);
            CHECK(norm(back.second - w) < 1e-11);
        }
    }
}

TEST_CASE("geodesic distance on axis matches tan/tanh lengths", "[chart]") {
    const ChartPoint o_s{Vec3{}, Space::Sphere};
    const ChartPoint p_s{Vec3{0.5463024898437905, 0.0, 0.0}, Space::Sphere};  // tan(0.5)
    CHECK(geodesic_distance(o_s, p_s) == Catch::Approx(0.5).margin(1e-13));

    const ChartPoint o_h{Vec3{}, Space::Hyperbolic};
    const ChartPoint p_h{Vec3{0.7615941559557649, 0.0, 0.0}, Space::Hyperbolic};  // tanh(1)
    CHECK(geodesic_distance(o_h, p_h) == Catch::Approx(1.0).margin(1e-13));

    // Identical points, distance zero.
    CHECK(geodesic_distance(p_s, p_s) == 0.0);
    // Symmetry.
    CHECK(geodesic_distance(p_s, o_s) == geodesic_distance(o_s, p_s));
}

TEST_CASE("pair transform encodes the separation in its real scalar", "[chart]") {
    // From the origin to tan(0.5) e1 on the sphere: Y = cos(0.5) + u sin(0.5) e1.
    const ChartPoint o{Vec3{}, Space::Sphere};
    const ChartPoint p{Vec3{0.5463024898437905, 0.0, 0.0}, Space::Sphere};
    const Biquaternion y = pair_transform(o, p);
    CHECK(y.s.re == Catch::Approx(std::cos(0.5)).epsilon(1e-14));
    CHECK(std::abs(y.s.im) < 1e-15);
    CHECK(y.v.im.x == Catch::Approx(std::sin(0.5)).epsilon(1e-14));
    CHECK(std::abs(y.v.re.x) < 1e-15);
    CHECK(component_norm(norm(y) - RingScalar::one(Space::Sphere)) < 1e-14);

    for (Space sp : {Space::Sphere, Space::Hyperbolic}) {
        Rng rng(mix(32, sp == Space::Sphere ? 0 : 1));
        for (int i = 0; i < 100; ++i) {
            const ChartPoint a = random_chart_point(rng, sp);
            const ChartPoint b = random_chart_point(rng, sp);
            const Biquaternion yab = pair_transform(a, b);
            // Unit norm and scalar = cos r (cosh r).
            CHECK(component_norm(norm(yab) - RingScalar::one(sp)) < 1e-12);
            const double r = geodesic_distance(a, b);
            const double c = sp == Space::Sphere ? std::cos(r) : std::cosh(r);
            CHECK(std::abs(yab.s.re - c) < 1e-12);
        }
    }
}

TEST_CASE("triangle rule matches the lifted product and tan/tanh addition", "[chart]") {
    for (Space sp : {Space::Sphere, Space::Hyperbolic}) {
        Rng rng(mix(33, sp == Space::Sphere ? 0 : 1));
        for (int i = 0; i < 300; ++i) {
            const PairVector a = random_pair_vector(rng, sp);
            const PairVector b = random_pair_vector(rng, sp);
            const Biquaternion la{RingScalar::one(sp), a};
            const Biquaternion lb{RingScalar::one(sp), b};
            const PairVector oracle = transform_chart_vector(la * lb);
            CHECK(component_norm(vector_add(a, b) - oracle) < 1e-12);
        }
        // Collinear composition: lengths add along the geodesic.
        for (int i = 0; i < 100; ++i) {
            const double s = rng.range(0.05, 0.6);
            const double t = rng.range(0.05, 0.6);
            Vec3 dir = rng.vec3(1.0);
            dir = (1.0 / norm(dir)) * dir;
            auto leg = [&](double len) {
                const double mag = sp == Space::Sphere ? std::tan(len) : std::tanh(len);
                return PairVector::imaginary(mag * dir, sp);
            };
            const PairVector sum = vector_add(leg(s), leg(t));
            const double expect = sp == Space::Sphere ? std::tan(s + t) : std::tanh(s + t);
            CHECK(component_norm(sum - PairVector::imaginary(expect * dir, sp)) < 1e-13);
        }
    }
}

TEST_CASE("triangle rule degenerate denominators are reported", "[chart]") {
    // Sphere: 1 - dot(a, b) = 0 for a = b = e1 (dot of imaginary vectors = sigma a.b).
    const PairVector a = PairVector::imaginary(Vec3{1.0, 0.0, 0.0}, Space::Sphere);
    CHECK_THROWS_AS(vector_add(a, a), NonInvertibleDenominator);

    // Antipodal-direction pair transform has zero scalar: chart image at infinity.
    const ChartPoint p1{Vec3{1.0, 0.0, 0.0}, Space::Sphere};
    const ChartPoint p2{Vec3{-1.0, 0.0, 0.0}, Space::Sphere};
    const Biquaternion y = pair_transform(p1, p2);
    CHECK(std::abs(y.s.re) < 1e-15);
    CHECK_THROWS_AS(transform_chart_vector(y), ChartInfinity);
}

TEST_CASE("metric tensor, inverse, and quadratic form", "[chart]") {
    // Origin: metric is the identity in both spaces.
    for (Space sp : {Space::Sphere, Space::Hyperbolic}) {
        const Mat3 g0 = metric_tensor(ChartPoint{Vec3{}, sp});
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(g0(i, j) == (i == j ? 1.0 : 0.0));
    }

    // Sphere at (0.5, 0, 0): radial component 1/lambda^2, transverse 1/lambda.
    const ChartPoint p{Vec3{0.5, 0.0, 0.0}, Space::Sphere};
    const Mat3 g = metric_tensor(p);
    CHECK(g(0, 0) == Catch::Approx(1.0 / (1.25 * 1.25)).epsilon(1e-15));
    CHECK(g(1, 1) == Catch::Approx(1.0 / 1.25).epsilon(1e-15));
    CHECK(g(2, 2) == Catch::Approx(1.0 / 1.25).epsilon(1e-15));
    CHECK(g(0, 1) == 0.0);

    for (Space sp : {Space::Sphere, Space::Hyperbolic}) {
        Rng rng(mix(34, sp == Space::Sphere ? 0 : 1));
        for (int i = 0; i < 100; ++i) {
            const ChartPoint q = random_chart_point(rng, sp);
            const Mat3 gm = metric_tensor(q);
            const Mat3 gi = metric_inverse(q);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    double s = 0.0;
                    for (int k = 0; k < 3; ++k) s += gm(a, k) * gi(k, b);
                    CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-12);
                }
            // Quadratic form agrees with the embedded velocity norm:
            // w.g(q).w = real(norm(point_velocity)).
            const Vec3 w = rng.vec3(0.7);
            const double qf = quadratic_form(gm, w, w);
            const Biquaternion xd = point_velocity(q, w);
            CHECK(std::abs(qf - norm(xd).re) < 1e-12);
        }
    }
}

TEST_CASE("geodesic distance clamps tiny overshoot and rejects garbage", "[chart]") {
    // Nearly identical points: cos overshoot within 1e-12 is clamped to r = 0.
    const ChartPoint a{Vec3{0.3, 0.1, -0.2}, Space::Sphere};
    CHECK(geodesic_distance(a, a) >= 0.0);
    CHECK(geodesic_distance(a, a) < 1e-6);
}
