#include <doctest.h>

#include <cmath>
#include <limits>

#include "remezgen/errors.hpp"
#include "remezgen/regularization.hpp"

using namespace remez;

namespace {

SystemPtr poly_system(int n) {
    std::vector<BasisPtr> b;
    for (int k = 0; k < n; ++k) b.push_back(std::make_shared<PowerBasis>(k));
    return std::make_shared<FunctionSystem>(b, Domain::interval(-1.0, 1.0));
}

NodeSet make_nodes(const SystemPtr& sys, std::vector<double> pts) {
    const int m = static_cast<int>(pts.size());
    Eigen::MatrixXd V(sys->n(), m);
    for (int i = 0; i < m; ++i) V.col(i) = sys->moment_vector(pts[i]);
    SignedNullResult sn = signed_null(V);
    NodeSet nodes;
    nodes.points = std::move(pts);
    nodes.signs = sn.signs;
    nodes.oriented.resize(sys->n(), m);
    for (int i = 0; i < m; ++i) nodes.oriented.col(i) = sn.signs[i] * V.col(i);
    return nodes;
}

}  // namespace

TEST_CASE("vanishing polynomial vanishes at the right nodes with unit norm") {
    auto sys = poly_system(3);
    NodeSet nodes = make_nodes(sys, {-0.9, -0.2, 0.4, 0.8});
    VanishingPoly q = vanishing_polynomial(nodes, 1, 3, sys);
    CHECK(q.poly.coeffs.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(q.eval(-0.9)) < 1e-12);
    CHECK(std::abs(q.eval(0.4)) < 1e-12);
    CHECK(std::abs(q.eval(-0.2)) > 1e-3);
    CHECK(std::abs(q.eval(0.8)) > 1e-3);
}

TEST_CASE("|q(t)| is the distance from u(t) to the node hyperplane") {
    auto sys = poly_system(4);
    NodeSet nodes = make_nodes(sys, {-0.95, -0.4, 0.0, 0.5, 0.9});
    VanishingPoly q = vanishing_polynomial(nodes, 0, 2, sys);
    // hyperplane spanned by the moment vectors of the other three nodes
    Eigen::MatrixXd A(4, 3);
    int col = 0;
    for (int i : {1, 3, 4}) A.col(col++) = sys->moment_vector(nodes.points[i]);
    for (double t : {-0.7, 0.2, 0.66}) {
        Eigen::VectorXd u = sys->moment_vector(t);
        Eigen::VectorXd res = u - A * A.colPivHouseholderQr().solve(u);
        CHECK(std::abs(q.eval(t)) == doctest::Approx(res.norm()).epsilon(1e-10));
    }
}

TEST_CASE("all vanishing polynomials cover every node pair") {
    auto sys = poly_system(3);
    NodeSet nodes = make_nodes(sys, {-0.8, -0.1, 0.3, 0.9});
    auto qs = all_vanishing_polynomials(nodes, sys);
    CHECK(qs.size() == 6);  // C(4,2)
    for (const auto& q : qs) {
        for (int i = 0; i < nodes.size(); ++i) {
            if (i == q.i1 || i == q.i2) continue;
            CHECK(std::abs(q.eval(nodes.points[i])) < 1e-11);
        }
    }
}

TEST_CASE("constrained vanishing polynomials are annihilated by the constraints") {
    auto sys = poly_system(4);
    ConstraintSet cs(sys, {point_eval_functional(*sys, 0.25)}, {1.0});
    // projected dimension 3 -> 4 nodes
    Eigen::MatrixXd V(3, 4);
    std::vector<double> pts{-0.9, -0.3, 0.45, 0.85};
    for (int i = 0; i < 4; ++i) V.col(i) = cs.project(sys->moment_vector(pts[i]));
    SignedNullResult sn = signed_null(V);
    NodeSet nodes;
    nodes.points = pts;
    nodes.signs = sn.signs;
    nodes.oriented.resize(3, 4);
    for (int i = 0; i < 4; ++i) nodes.oriented.col(i) = sn.signs[i] * V.col(i);

    VanishingPoly q = vanishing_polynomial(nodes, 0, 1, sys, &cs);
    CHECK(std::abs(q.eval(pts[2])) < 1e-11);
    CHECK(std::abs(q.eval(pts[3])) < 1e-11);
    CHECK(std::abs(q.poly.eval(0.25)) < 1e-11);  // ell(q) = 0
}

TEST_CASE("g objective saturates at nodes and stays finite elsewhere") {
    auto sys = poly_system(3);
    NodeSet nodes = make_nodes(sys, {-0.8, -0.1, 0.3, 0.9});
    auto qs = all_vanishing_polynomials(nodes, sys);
    // at a node, several q vanish up to roundoff -> huge or infinite
    CHECK(g_objective(nodes.points[1], qs) > 1e20);
    const double g = g_objective(0.55, qs);
    CHECK(std::isfinite(g));
    CHECK(g > 0.0);
}

TEST_CASE("degenerate node sets are rejected") {
    auto sys = poly_system(3);
    NodeSet nodes = make_nodes(sys, {-0.8, -0.1, 0.3, 0.9});
    nodes.points[2] = nodes.points[1];  // duplicated node: evaluation matrix loses rank
    nodes.oriented.col(2) = nodes.oriented.col(1);
    CHECK_THROWS_AS(vanishing_polynomial(nodes, 0, 3, sys), DegeneracyError);
}
