#include <doctest.h>

#include <cmath>

#include "wigner/grassmann.hpp"
#include "wigner/xset.hpp"

using namespace wigner;

namespace {

Eigen::VectorXcd e(int n, int j) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v(j) = 1.0;
    return v;
}

Frame line(const Eigen::VectorXcd& v) { return Frame(v.normalized()); }

Frame span2(int n, int a, int b) {
    Eigen::MatrixXcd cols(n, 2);
    cols.col(0) = e(n, a);
    cols.col(1) = e(n, b);
    return Frame(std::move(cols));
}

}  // namespace

TEST_SUITE("xset") {

TEST_CASE("membership basics") {
    const Frame x = line(e(3, 0));
    CHECK(xset_contains(x, x, x, 1e-8));

    // orthogonal pair in C^2: every rank-1 subspace of the plane is a member
    const Frame a = line(e(2, 0));
    const Frame b = line(e(2, 1));
    Rng rng(1);
    for (int i = 0; i < 25; ++i) {
        Rng local = rng.fork(i);
        CHECK(xset_contains(a, b, random_frame(local, 2, 1), 1e-8));
    }
}

TEST_CASE("membership failure matches the eigenvalue oracle") {
    const Frame x = line(e(2, 0));
    const Frame y = line(e(2, 0) + e(2, 1));
    const Frame z = line(e(2, 1));
    // oracle: P_X + P_Y - P_Z has eigenvalues (1 ± sqrt(5))/2, so it is not
    // idempotent
    const Eigen::MatrixXcd candidate =
        projection_of(x).mat() + projection_of(y).mat() - projection_of(z).mat();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(candidate);
    const double golden = std::sqrt(5.0);
    CHECK(es.eigenvalues()(0) == doctest::Approx((1.0 - golden) / 2).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx((1.0 + golden) / 2).epsilon(1e-12));
    CHECK_FALSE(xset_contains(x, y, z, 1e-8));
}

TEST_CASE("membership requires equal ranks") {
    CHECK_THROWS_AS(xset_contains(span2(3, 0, 1), line(e(3, 0)), line(e(3, 1)), 1e-8),
                    RankMismatch);
}

TEST_CASE("sampling an orthogonal pair fills the interval") {
    const Frame a = line(e(2, 0));
    const Frame b = line(e(2, 1));
    const XSetSample sample = xset_sample(a, b, 12, 99, 1e-8);
    CHECK(sample.points.size() >= 10);  // distinct members of a 2-manifold
    for (const Frame& z : sample.points) {
        CHECK(xset_contains(a, b, z, 1e-8));
    }
}

TEST_CASE("sampling a coinciding pair collapses to the single member") {
    const Frame x = line((e(3, 0) + 2.0 * e(3, 2)).eval());
    const XSetSample sample = xset_sample(x, x, 5, 7, 1e-8);
    REQUIRE_FALSE(sample.points.empty());
    for (const Frame& z : sample.points) {
        CHECK(gap_distance(z, x) <= 1e-6);
    }
}

TEST_CASE("noncompatible adjacent pairs trace a curve through X and Y") {
    const Frame x = line(e(2, 0));
    const Frame y = line(e(2, 0) + e(2, 1));
    const XSetSample sample = xset_sample(x, y, 10, 3, 1e-8);
    CHECK(sample.points.size() >= 3);
    double best_x = 1e9;
    double best_y = 1e9;
    for (const Frame& z : sample.points) {
        CHECK(xset_contains(x, y, z, 1e-8));
        best_x = std::min(best_x, gap_distance(z, x));
        best_y = std::min(best_y, gap_distance(z, y));
    }
    // X and Y themselves are members, and every member stays inside X + Y
    CHECK(xset_contains(x, y, x, 1e-8));
    CHECK(xset_contains(x, y, y, 1e-8));
    for (const Frame& z : sample.points) {
        CHECK(contains(join(x, y), z, 1e-7));
    }
}

TEST_CASE("members contain the intersection and split symmetrically") {
    Rng rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        Rng local = rng.fork(trial);
        const int n = 4;
        const int k = 2;
        const Frame x = random_frame(local, n, k);
        const Frame y = random_frame(local, n, k);
        const XSetSample sample = xset_sample(x, y, 3, local.next_u64(), 1e-8);
        for (const Frame& z : sample.points) {
            CHECK(contains(z, meet(x, y), 1e-6));
            CHECK(contains(join(x, y), z, 1e-6));
            CHECK(xset_contains(y, x, z, 1e-8));  // symmetry in X and Y
            // the complementary member z' with P_Z + P_Z' = P_X + P_Y
            const Eigen::MatrixXcd rest = projection_of(x).mat() +
                                          projection_of(y).mat() -
                                          projection_of(z).mat();
            const Frame z_prime =
                image_of_projection(HermitianOperator(0.5 * (rest + rest.adjoint())), 1e-8);
            CHECK(xset_contains(x, y, z_prime, 1e-8));
        }
    }
}

TEST_CASE("local dimension of the adjacent noncompatible curve") {
    const Frame x = line(e(2, 0));
    const Frame y = line(e(2, 0) + e(2, 1));
    CHECK(xset_local_dimension(x, y, x, 1e-8) == 1);
}

TEST_CASE("local dimension of an orthogonal line pair") {
    const Frame x = line(e(2, 0));
    const Frame y = line(e(2, 1));
    CHECK(xset_local_dimension(x, y, x, 1e-8) == 2);
    // oracle: PCA of dense local samples sees the full projective plane;
    // the member set is all of G_1(C^2), real dimension 2
    const XSetSample sample = xset_sample(x, y, 6, 5, 1e-8);
    REQUIRE_FALSE(sample.points.empty());
    CHECK(xset_local_dimension(x, y, sample.points.front(), 1e-8) == 2);
}

TEST_CASE("local dimension of an orthogonal plane pair is 2k^2") {
    const Frame x = span2(4, 0, 1);
    const Frame y = span2(4, 2, 3);
    CHECK(xset_local_dimension(x, y, x, 1e-8) == 8);
}

TEST_CASE("local dimension is homogeneous across members") {
    const Frame x = line(e(3, 0));
    const Frame y = line(e(3, 0) + 0.7 * e(3, 1));
    const XSetSample sample = xset_sample(x, y, 3, 11, 1e-8);
    REQUIRE(sample.points.size() >= 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(xset_local_dimension(x, y, sample.points[i], 1e-8) == 1);
    }
}

TEST_CASE("local dimension rejects non-members") {
    const Frame x = line(e(2, 0));
    const Frame y = line(e(2, 0) + e(2, 1));
    CHECK_THROWS_AS((void)xset_local_dimension(x, y, line(e(2, 1)), 1e-8), NotAMember);
}

TEST_CASE("geher_classify three regimes") {
    // compatible planes sharing one direction
    Eigen::MatrixXcd xc(4, 2);
    xc.setZero();
    xc(0, 0) = 1;
    xc(1, 1) = 1;
    Eigen::MatrixXcd yc(4, 2);
    yc.setZero();
    yc(1, 0) = 1;
    yc(2, 1) = 1;
    CHECK(geher_classify(Frame(xc), Frame(yc), 1e-8) == XSetClass::CompatibleFullInterval);

    CHECK(geher_classify(line(e(2, 0)), line(e(2, 0) + e(2, 1)), 1e-8) ==
          XSetClass::NonCompatibleAdjacentCurve);

    // distance 2 and noncompatible
    Eigen::MatrixXcd zc(4, 2);
    zc.setZero();
    zc(0, 0) = M_SQRT1_2;
    zc(2, 0) = M_SQRT1_2;
    zc(1, 1) = M_SQRT1_2;
    zc(3, 1) = M_SQRT1_2;
    const Frame x(xc);
    const Frame z(zc);
    // oracle: distance 2 and a nonzero commutator
    CHECK(distance(x, z) == 2);
    const Eigen::MatrixXcd px = projection_of(x).mat();
    const Eigen::MatrixXcd pz = projection_of(z).mat();
    CHECK((px * pz - pz * px).norm() > 1e-3);
    CHECK(geher_classify(x, z, 1e-8) == XSetClass::Other);
}

TEST_CASE("interval membership separates compatible from noncompatible pairs") {
    Rng rng(23);
    // compatible: every random interval element is a member
    for (int trial = 0; trial < 6; ++trial) {
        Rng local = rng.fork(trial);
        const Eigen::MatrixXcd basis = local.unitary(4);
        Eigen::MatrixXcd xc(4, 2);
        xc.col(0) = basis.col(0);
        xc.col(1) = basis.col(1);
        Eigen::MatrixXcd yc(4, 2);
        yc.col(0) = basis.col(0);
        yc.col(1) = basis.col(2);
        const Frame x(xc);
        const Frame y(yc);
        const Frame common = meet(x, y);
        const Frame v = complement_within(common, join(x, y));
        for (int i = 0; i < 20; ++i) {
            const Frame part = random_frame(local, v.rank(), 1);
            Eigen::MatrixXcd cols(4, 2);
            cols.leftCols(1) = common.columns();
            cols.rightCols(1) = v.columns() * part.columns();
            CHECK(xset_contains(x, y, Frame(std::move(cols)), 1e-8));
        }
    }
    // noncompatible: some interval element fails membership
    const Frame x = line(e(2, 0));
    const Frame y = line(e(2, 0) + e(2, 1));
    bool found_nonmember = false;
    for (int i = 0; i < 50 && !found_nonmember; ++i) {
        Rng local = rng.fork(1000 + i);
        found_nonmember = !xset_contains(x, y, random_frame(local, 2, 1), 1e-8);
    }
    CHECK(found_nonmember);
}

}  // TEST_SUITE
