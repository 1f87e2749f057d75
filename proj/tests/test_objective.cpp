#include "doctest.h"

#include <random>

#include "pqnewton/objective.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

using namespace pqn;
using oracle::MatrixXd;
using oracle::VectorXd;

namespace {

struct Dense {
    MatrixXd a;
    VectorXd b, xhat;
};

Dense random_dense(std::mt19937_64& rng, int m, int n) {
    Dense d{oracle::random_matrix(rng, m, n, 0.5), oracle::vec(oracle::random_vector(rng, m)),
            oracle::vec(oracle::random_vector(rng, n))};
    return d;
}

ProjectionProblem problem(const Dense& d) {
    return ProjectionProblem(oracle::to_sparse(d.a), oracle::stdvec(d.b), oracle::stdvec(d.xhat));
}

double dense_phi(const Dense& d, const VectorXd& p) {
    const VectorXd x = (d.xhat + d.a.transpose() * p).cwiseMax(0.0);
    return 0.5 * x.squaredNorm() - d.b.dot(p);
}

// Same active set at p and at p +- h e_i for every i.
bool smooth_at(const ProjectionProblem& prob, const std::vector<double>& p, double h) {
    const auto act = active_set(prob, p);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (double sgn : {-1.0, 1.0}) {
            auto q = p;
            q[i] += sgn * h;
            if (!(active_set(prob, q) == act)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("positive part") {
    CHECK(positive_part(std::vector<double>{-1, 0, 2}) == std::vector<double>{0, 0, 2});
    CHECK(positive_part(std::vector<double>{-3, -0.5}) == std::vector<double>{0, 0});
    std::mt19937_64 rng(1);
    const auto v = oracle::random_vector(rng, 50);
    CHECK(positive_part(positive_part(v)) == positive_part(v));
}

TEST_CASE("problem validation") {
    const auto a = SparseMatrix::identity(2);
    CHECK_THROWS_AS(ProjectionProblem(a, {1.0}, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ProjectionProblem(a, {1.0, 1.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ProjectionProblem(a, {1.0, std::nan("")}, {0.0, 0.0}), std::invalid_argument);
    const ProjectionProblem ok(SparseMatrix::from_triplets(2, 2, {{0, 0, 3}, {0, 1, 4}}), {0, 0},
                               {0, 0});
    CHECK(ok.rowsq()[0] == 25.0);
    CHECK(ok.rowsq()[1] == 0.0);
}

TEST_CASE("eval_phi and eval_gradient small cases") {
    const ProjectionProblem z(SparseMatrix::identity(3), {1, 2, 3}, {0, 0, 0});
    const auto v0 = eval_phi(z, std::vector<double>{0, 0, 0});
    CHECK(v0.phi == 0.0);
    CHECK(v0.x == std::vector<double>{0, 0, 0});

    const ProjectionProblem one(SparseMatrix::identity(1), {0.0}, {0.0});
    MatvecCounter c;
    const auto v = eval_phi(one, std::vector<double>{1.0}, &c);
    CHECK(v.x == std::vector<double>{1.0});
    CHECK(v.phi == 0.5);
    CHECK(eval_gradient(one, v.x, &c) == std::vector<double>{1.0});
    CHECK(c.value() == 2);

    CHECK_THROWS_AS(eval_phi(one, std::vector<double>{1.0, 2.0}), std::invalid_argument);
    const ProjectionProblem huge(SparseMatrix::identity(1), {0.0}, {1e200});
    CHECK_THROWS_AS(eval_phi(huge, std::vector<double>{1e200}), std::overflow_error);
}

TEST_CASE("eval_phi against dense evaluation") {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 10; ++rep) {
        const auto d = random_dense(rng, 4, 6);
        const auto prob = problem(d);
        const auto p = oracle::random_vector(rng, 4, -2, 2);
        const auto v = eval_phi(prob, p);
        CHECK(oracle::rel_err(v.phi, dense_phi(d, oracle::vec(p))) <= 1e-13);
        const VectorXd x = (d.xhat + d.a.transpose() * oracle::vec(p)).cwiseMax(0.0);
        CHECK(oracle::rel_err(oracle::vec(eval_gradient(prob, v.x)), d.a * x - d.b) <= 1e-13);
    }
}

TEST_CASE("gradient matches central finite differences at smooth points") {
    std::mt19937_64 rng(3);
    int checked = 0;
    while (checked < 20) {
        const auto d = random_dense(rng, 5, 9);
        const auto prob = problem(d);
        const auto p = oracle::random_vector(rng, 5, -1, 1);
        double pinf = 0.0;
        for (double v : p) pinf = std::max(pinf, std::abs(v));
        const double h = 1e-6 * (1.0 + pinf);
        if (!smooth_at(prob, p, h)) continue;
        const auto g = eval_gradient(prob, eval_phi(prob, p).x);
        std::vector<double> fd(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            auto pp = p, pm = p;
            pp[i] += h;
            pm[i] -= h;
            fd[i] = (eval_phi(prob, pp).phi - eval_phi(prob, pm).phi) / (2 * h);
        }
        CHECK(oracle::rel_err(oracle::vec(fd), oracle::vec(g)) <= 1e-6);
        ++checked;
    }
}

TEST_CASE("active set sign convention") {
    CHECK(active_set_of(std::vector<double>{-1, 0, 3}).indicator ==
          std::vector<std::uint8_t>{0, 0, 1});
    const ProjectionProblem neg(SparseMatrix::identity(3), {1, 1, 1}, {-1, -2, -3});
    CHECK(active_set(neg, std::vector<double>{0, 0, 0}).count() == 0);

    // Perturbations below the smallest |component| leave the pattern alone.
    std::mt19937_64 rng(4);
    const auto d = random_dense(rng, 4, 7);
    const auto prob = problem(d);
    const auto p = oracle::random_vector(rng, 4);
    const auto u = eval_phi(prob, p).shifted;
    double margin = 1e300;
    for (double v : u) margin = std::min(margin, std::abs(v));
    const double col_bound = d.a.cwiseAbs().colwise().sum().maxCoeff();
    const double r = 0.5 * margin / col_bound;
    const auto act = active_set(prob, p);
    for (int rep = 0; rep < 20; ++rep) {
        auto q = p;
        const auto dq = oracle::random_vector(rng, 4, -r, r);
        for (std::size_t i = 0; i < q.size(); ++i) q[i] += dq[i];
        CHECK(active_set(prob, q) == act);
    }
}

TEST_CASE("apply_M and diag_M against dense assembly") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 5; ++rep) {
        const auto d = random_dense(rng, 5, 9);
        const auto prob = problem(d);
        const auto p = oracle::random_vector(rng, 5);
        const auto act = active_set(prob, p);
        const double delta = rep == 0 ? 0.0 : 1e-3 * rep;
        VectorXd ind(9);
        for (int j = 0; j < 9; ++j) ind(j) = act.indicator[static_cast<std::size_t>(j)];
        const VectorXd rowsq = (d.a * d.a.transpose()).diagonal();
        const MatrixXd m = d.a * ind.asDiagonal() * d.a.transpose() +
                           MatrixXd(delta * rowsq.asDiagonal());
        const auto v = oracle::random_vector(rng, 5);
        MatvecCounter c;
        const auto mv = apply_M(prob, act, delta, v, &c);
        CHECK(c.value() == 2);
        CHECK(oracle::rel_err(oracle::vec(mv), m * oracle::vec(v)) <= 1e-13);
        const auto dm = diag_M(prob, act, delta);
        for (int i = 0; i < 5; ++i)
            CHECK(oracle::rel_err(dm[static_cast<std::size_t>(i)], m(i, i)) <= 1e-15);

        // symmetric and positive as a bilinear form
        const auto w = oracle::random_vector(rng, 5);
        const double uMv = oracle::vec(w).dot(oracle::vec(apply_M(prob, act, delta, v)));
        const double vMu = oracle::vec(v).dot(oracle::vec(apply_M(prob, act, delta, w)));
        CHECK(std::abs(uMv - vMu) <= 1e-13 * (1.0 + std::abs(uMv)));
        const double vMv = oracle::vec(v).dot(oracle::vec(mv));
        CHECK(vMv >= 0.0);
        if (delta > 0.0) CHECK(vMv > 0.0);
    }
}

TEST_CASE("apply_M extreme active sets") {
    std::mt19937_64 rng(6);
    const auto d = random_dense(rng, 3, 5);
    const auto prob = problem(d);
    const auto v = oracle::random_vector(rng, 3);
    const ActiveSet all{std::vector<std::uint8_t>(5, 1)};
    const ActiveSet none{std::vector<std::uint8_t>(5, 0)};
    CHECK(oracle::rel_err(oracle::vec(apply_M(prob, all, 0.0, v)),
                          d.a * (d.a.transpose() * oracle::vec(v))) <= 1e-14);
    const auto mv = apply_M(prob, none, 0.25, v);
    for (std::size_t i = 0; i < 3; ++i) CHECK(mv[i] == doctest::Approx(0.25 * prob.rowsq()[i] * v[i]));
    const auto dm = diag_M(prob, all, 0.5);
    for (std::size_t i = 0; i < 3; ++i) CHECK(dm[i] == doctest::Approx(1.5 * prob.rowsq()[i]));

    const ProjectionProblem nullrow(SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}}), {0, 0}, {1, 1});
    CHECK(diag_M(nullrow, ActiveSet{{1, 1}}, 0.0)[1] == 0.0);
    CHECK(diag_M(nullrow, ActiveSet{{0, 0}}, 1.0)[1] == 0.0);
}

TEST_CASE("convexity on random triples") {
    std::mt19937_64 rng(7);
    const auto d = random_dense(rng, 6, 10);
    const auto prob = problem(d);
    std::uniform_real_distribution<double> lam(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const auto p = oracle::random_vector(rng, 6, -3, 3);
        const auto q = oracle::random_vector(rng, 6, -3, 3);
        const double l = lam(rng);
        std::vector<double> mix(6);
        for (std::size_t i = 0; i < 6; ++i) mix[i] = l * p[i] + (1 - l) * q[i];
        const double fm = eval_phi(prob, mix).phi;
        const double bound = l * eval_phi(prob, p).phi + (1 - l) * eval_phi(prob, q).phi;
        CHECK(fm <= bound + 1e-12 * (1.0 + std::abs(fm)));
    }
}

TEST_CASE("scalar Taylor identity against quadrature") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int rep = 0; rep < 40; ++rep) {
        const double eta = u(rng), zeta = u(rng);
        const double ep = std::max(eta, 0.0);
        const double lhs = 0.5 * std::pow(std::max(eta + zeta, 0.0), 2) - 0.5 * ep * ep - zeta * ep;
        const double rhs = zeta * zeta * oracle::lemma1_double_integral(eta, zeta);
        CHECK(std::abs(lhs - rhs) <= 1e-6);
    }
}

TEST_CASE("vector Taylor identity and objective remainder") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> len(1, 8);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = len(rng);
        const auto y = oracle::random_vector(rng, n, -2, 2);
        const auto z = oracle::random_vector(rng, n, -2, 2);
        std::vector<double> yz(y.size());
        for (std::size_t j = 0; j < y.size(); ++j) yz[j] = y[j] + z[j];
        const auto yp = positive_part(y);
        const double lhs = 0.5 * oracle::vec(positive_part(yz)).squaredNorm() -
                           0.5 * oracle::vec(yp).squaredNorm() - oracle::vec(z).dot(oracle::vec(yp));
        const auto d = oracle::lemma2_weights(y, z);
        double rhs = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) {
            CHECK(d[j] >= 0.0);
            CHECK(d[j] <= 1.0);
            rhs += 0.5 * d[j] * z[j] * z[j];
        }
        CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(lhs)));
    }

    // phi(p+q) - phi(p) - q^T g = 1/2 q^T A Diag(d) A^T q with y = xhat + A^T p, z = A^T q.
    const auto dd = random_dense(rng, 3, 6);
    const auto prob = problem(dd);
    for (int rep = 0; rep < 5; ++rep) {
        const auto p = oracle::random_vector(rng, 3);
        const auto q = oracle::random_vector(rng, 3);
        std::vector<double> pq(3);
        for (std::size_t i = 0; i < 3; ++i) pq[i] = p[i] + q[i];
        const auto vp = eval_phi(prob, p);
        const auto g = eval_gradient(prob, vp.x);
        const double lhs = eval_phi(prob, pq).phi - vp.phi - oracle::vec(q).dot(oracle::vec(g));
        const auto z = matvec_transpose(prob.matrix(), q);
        const auto w = oracle::lemma2_weights(vp.shifted, z);
        double rhs = 0.0;
        for (std::size_t j = 0; j < z.size(); ++j) rhs += 0.5 * w[j] * z[j] * z[j];
        CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("locally quadratic condition") {
    std::mt19937_64 rng(10);
    const auto d = random_dense(rng, 4, 8);
    const auto prob = problem(d);
    const auto p = oracle::random_vector(rng, 4);
    CHECK(is_locally_quadratic(prob, p, std::vector<double>(4, 0.0)));

    auto remainder_matches = [&](const std::vector<double>& q) {
        std::vector<double> pq(4);
        for (std::size_t i = 0; i < 4; ++i) pq[i] = p[i] + q[i];
        const auto vp = eval_phi(prob, p);
        const auto g = eval_gradient(prob, vp.x);
        const double lhs = eval_phi(prob, pq).phi - vp.phi - oracle::vec(q).dot(oracle::vec(g));
        const auto act = active_set(prob, p);
        const double rhs = 0.5 * oracle::vec(q).dot(oracle::vec(apply_M(prob, act, 0.0, q)));
        return std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs));
    };

    // Small q: no component crosses zero.
    const auto u = eval_phi(prob, p).shifted;
    double margin = 1e300;
    for (double v : u) margin = std::min(margin, std::abs(v));
    const double scale = 0.5 * margin / d.a.cwiseAbs().colwise().sum().maxCoeff();
    const auto small = oracle::random_vector(rng, 4, -scale, scale);
    CHECK(is_locally_quadratic(prob, p, small));
    CHECK(remainder_matches(small));

    // Push one active component far negative: A^T q = -3 u_j e_j in that column.
    std::size_t j = 0;
    while (j < u.size() && !(u[j] > 0.0)) ++j;
    REQUIRE(j < u.size());
    // q solving min ||q|| with (A^T q)_j = -3 u_j
    const VectorXd col = d.a.col(static_cast<Eigen::Index>(j));
    const VectorXd qv = col * (-3.0 * u[j] / col.squaredNorm());
    const auto big = oracle::stdvec(qv);
    CHECK_FALSE(is_locally_quadratic(prob, p, big));
    CHECK_FALSE(remainder_matches(big));
}

TEST_CASE("remainder bounded by the regularized Hessian") {
    // q^T A Diag(d) A^T q <= (||Ahat||^2 / delta) q^T M q, Ahat = Diag(AA^T)^{-1/2} A.
    std::mt19937_64 rng(11);
    const double delta = 1e-6;
    for (int rep = 0; rep < 3; ++rep) {
        const auto d = random_dense(rng, 6, 10);
        const auto prob = problem(d);
        const VectorXd rowsq = (d.a * d.a.transpose()).diagonal();
        const MatrixXd ahat = rowsq.cwiseSqrt().cwiseInverse().asDiagonal() * d.a;
        const double nrm = Eigen::JacobiSVD<MatrixXd>(ahat).singularValues()(0);
        const double gamma = nrm * nrm / delta;
        const auto p = oracle::random_vector(rng, 6);
        const auto act = active_set(prob, p);
        const auto u = eval_phi(prob, p).shifted;
        for (int k = 0; k < 100; ++k) {
            const auto q = oracle::random_vector(rng, 6);
            const auto z = matvec_transpose(prob.matrix(), q);
            // any weights in [0, 1] are admissible; take the worst case d = 1
            (void)u;
            double lhs = 0.0;
            for (double zj : z) lhs += zj * zj;
            const double qMq = oracle::vec(q).dot(oracle::vec(apply_M(prob, act, delta, q)));
            CHECK(lhs <= gamma * qMq * (1 + 1e-12));
        }
    }
}
