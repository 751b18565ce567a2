#include <gtest/gtest.h>

#include "hyperpos/corpus.hpp"
#include "hyperpos/errors.hpp"
#include "hyperpos/realization.hpp"
#include "test_support.hpp"

using namespace hyperpos;
using hyperpos::testing::Rng;

namespace {

Matrix mat(int rows, int cols, std::initializer_list<double> values) {
  Matrix m(rows, cols);
  auto it = values.begin();
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = *it++;
  return m;
}

const Realization lag = Realization::scalar(-1, 1, 1, 1);  // (s+2)/(s+1)

}  // namespace

TEST(Realization, RejectsMismatchedBlocks) {
  EXPECT_THROW(Realization(mat(1, 1, {-1}), mat(2, 1, {1, 1}), mat(1, 1, {1}), mat(1, 1, {1})), Error);
}

TEST(Realization, ArrayRoundTrip) {
  Realization r = corpus::coupled_pair(0.7);
  EXPECT_EQ(Realization::from_array(r.array(), 2), r);
}

TEST(Evaluate, LagAtZero) { EXPECT_NEAR(std::abs(evaluate(lag, 0.0)(0, 0) - 2.0), 0.0, 1e-15); }

TEST(Evaluate, ZeroInputMatrixGivesFeedthrough) {
  Realization r(mat(1, 1, {-3}), mat(1, 1, {0}), mat(1, 1, {5}), mat(1, 1, {0.25}));
  for (cplx s : {cplx(0, 0), cplx(0, 7), cplx(2, -1)}) EXPECT_NEAR(std::abs(evaluate(r, s)(0, 0) - 0.25), 0.0, 1e-15);
}

TEST(Evaluate, ImpedanceTableAtZero) {
  EXPECT_NEAR(std::abs(evaluate(corpus::rz_table(1, 1, 1), 0.0)(0, 0) - 2.0), 0.0, 1e-14);
}

TEST(Evaluate, PoleRejected) { EXPECT_THROW(evaluate(lag, cplx(-1, 0)), Error); }

TEST(Evaluate, InfinityIsFeedthrough) { EXPECT_NEAR(std::abs(evaluate_at_infinity(lag)(0, 0) - 1.0), 0.0, 0.0); }

TEST(Poles, Flags) {
  EXPECT_TRUE(poles(corpus::coupled_pair(1)).hurwitz);
  PoleReport unstable = poles(Realization::scalar(1, 1, 1, -1));
  EXPECT_FALSE(unstable.hurwitz);
  EXPECT_FALSE(unstable.analytic_in_right_half);
  PoleReport empty = poles(Realization::constant(Matrix::Identity(2, 2)));
  EXPECT_TRUE(empty.hurwitz);
  PoleReport integrator = poles(Realization::scalar(0, 1, 1, 0));
  EXPECT_FALSE(integrator.hurwitz);
  EXPECT_TRUE(integrator.analytic_in_right_half);
}

TEST(Pbh, CoupledPair) {
  PbhReport zero = pbh_test(corpus::coupled_pair(0));
  EXPECT_FALSE(zero.observable);
  EXPECT_FALSE(zero.minimal());
  EXPECT_FALSE(zero.witnesses.empty());
  EXPECT_TRUE(pbh_test(corpus::coupled_pair(1)).minimal());
  EXPECT_TRUE(pbh_test(lag).minimal());
}

TEST(Pbh, WitnessIsAnEigenvector) {
  // the mode at -2 receives no input
  Realization r(mat(2, 2, {-1, 0, 0, -2}), mat(2, 1, {1, 0}), mat(1, 2, {1, 1}), mat(1, 1, {0}));
  PbhReport rep = pbh_test(r);
  EXPECT_FALSE(rep.controllable);
  EXPECT_TRUE(rep.observable);
  ASSERT_FALSE(rep.witnesses.empty());
  const auto& w = rep.witnesses.front();
  EXPECT_FALSE(w.output_side);
  EXPECT_LE((w.vector.adjoint() * r.A - w.lambda * w.vector.adjoint()).norm(), 1e-10);
  EXPECT_LE((w.vector.adjoint() * r.B).norm(), 1e-10);
}

TEST(Similarity, DiagonalScaling) {
  Realization s = similarity(lag, mat(1, 1, {2}));
  EXPECT_NEAR(std::abs(s.B(0, 0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.C(0, 0) - 2.0), 0.0, 1e-15);
  EXPECT_EQ(similarity(lag, mat(1, 1, {1})), lag);
  EXPECT_THROW(similarity(lag, mat(1, 1, {0})), Error);
}

TEST(Similarity, PreservesTransfer) {
  Rng rng(21);
  auto pts = test_points(100);
  for (int trial = 0; trial < 50; ++trial) {
    int n = rng.integer(1, 4);
    Realization r(rng.hurwitz(n, true), rng.matrix(n, 2, true), rng.matrix(2, n, true), rng.matrix(2, 2, true));
    EXPECT_LE(transfer_distance(r, similarity(r, rng.nonsingular(n, true)), pts), 1e-9);
  }
}

TEST(FunctionInverse, Cases) {
  Realization inv = function_inverse(lag);
  EXPECT_NEAR(inv.A(0, 0).real(), -2.0, 1e-15);
  EXPECT_LE(transfer_distance(inv, Realization::scalar(-2, 1, -1, 1), test_points(50)), 1e-12);
  Realization r(mat(1, 1, {-1}), mat(1, 1, {0}), mat(1, 1, {3}), mat(1, 1, {1}));
  Realization ri = function_inverse(r);
  EXPECT_EQ(ri, Realization(r.A, r.B, -r.C, r.D));
  Realization y = function_inverse(corpus::rz_table(1, 1, 1));
  EXPECT_NEAR(y.D(0, 0).real(), 1.0, 1e-15);
  EXPECT_THROW(function_inverse(Realization::scalar(-1, 1, 1, 0)), Error);
}

TEST(ArrayInverse, PrintedRegressions) {
  EXPECT_EQ(array_inverse(Realization::scalar(-1, 1, 1, 0)).array(), mat(2, 2, {0, 1, 1, 1}));
  Realization r = Realization::from_array(mat(3, 3, {-1, 1, 0, 0, -1, 1, 1, 0, 0}), 2);
  EXPECT_EQ(array_inverse(r).array(), mat(3, 3, {0, 0, 1, 1, 0, 1, 1, 1, 1}));
  try {
    array_inverse(Realization::scalar(-1, -1, 1, 1));
    FAIL() << "singular array accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Singular);
  }
}

TEST(ArrayInverse, Involution) {
  Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    int n = rng.integer(1, 3), m = rng.integer(1, 2);
    Realization r = Realization::from_array(rng.nonsingular(n + m, true), n);
    Realization back = array_inverse(array_inverse(r));
    EXPECT_LE((back.array() - r.array()).norm(), 1e-10 * (1 + r.array().norm()));
  }
}

TEST(ArrayInverse, DiffersFromFunctionInverse) {
  cplx f = evaluate(function_inverse(lag), 0.0)(0, 0);
  cplx g = evaluate(array_inverse(lag), 0.0)(0, 0);
  EXPECT_NEAR(std::abs(f - 0.5), 0.0, 1e-15);
  EXPECT_GT(std::abs(f - g), 0.1);
}

TEST(Gramians, Cases) {
  Gramians g = gramians(corpus::hull_vertex(1, 1, 1));
  EXPECT_LE((g.controllability.matrix() - mat(2, 2, {10, 0, 0, 1})).norm(), 1e-12);
  EXPECT_LE((g.observability.matrix() - mat(2, 2, {10, 0, 0, 1})).norm(), 1e-12);
  Gramians s = gramians(lag);
  EXPECT_NEAR(s.controllability.matrix()(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(s.observability.matrix()(0, 0).real(), 0.5, 1e-15);
  Realization quiet(mat(1, 1, {-1}), mat(1, 1, {0}), mat(1, 1, {1}), mat(1, 1, {0}));
  EXPECT_NEAR(gramians(quiet).controllability.matrix().norm(), 0.0, 1e-15);
  EXPECT_THROW(gramians(Realization::scalar(1, 1, 1, 0)), Error);
}

TEST(Balance, HullVertexAlreadyBalanced) {
  BalancedForm b = balance(corpus::hull_vertex(1, 1, 1));
  ASSERT_EQ(b.sigma.size(), 2u);
  EXPECT_NEAR(b.sigma[0], 10.0, 1e-9);
  EXPECT_NEAR(b.sigma[1], 1.0, 1e-9);
  EXPECT_LE((b.transform.cwiseAbs() - Matrix::Identity(2, 2)).norm(), 1e-9);
}

TEST(Balance, SkewedCoordinatesRecovered) {
  BalancedForm b = balance(Realization::scalar(-1, 2, 0.5, 1));
  ASSERT_EQ(b.sigma.size(), 1u);
  EXPECT_NEAR(b.sigma[0], 0.5, 1e-12);
  EXPECT_LE((b.realization.array().cwiseAbs() - lag.array().cwiseAbs()).norm(), 1e-12);
  EXPECT_NEAR(balance(lag).sigma[0], 0.5, 1e-12);
}

TEST(Balance, GramianResiduals) {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.integer(1, 4);
    Realization r(rng.hurwitz(n), rng.matrix(n, 2), rng.matrix(1, n), rng.matrix(1, 2));
    if (!pbh_test(r).minimal()) continue;
    BalancedForm b = balance(r);
    const Realization& br = b.realization;
    Matrix sigma = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) sigma(i, i) = b.sigma[i];
    double scale = 1 + sigma.norm();
    EXPECT_LE((br.A * sigma + sigma * br.A.adjoint() + br.B * br.B.adjoint()).norm(), 1e-8 * scale);
    EXPECT_LE((br.A.adjoint() * sigma + sigma * br.A + br.C.adjoint() * br.C).norm(), 1e-8 * scale);
    EXPECT_LE(transfer_distance(r, br, test_points(40)), 1e-8);
    for (int i = 1; i < n; ++i) EXPECT_GE(b.sigma[i - 1], b.sigma[i]);
  }
}

TEST(SeriesAdd, ZeroSystemAndCircuit) {
  Realization zero = Realization::constant(Matrix::Zero(1, 1));
  EXPECT_LE(transfer_distance(series_add(lag, zero), lag, test_points(30)), 1e-15);
  // 1 ohm in series with a 1 F capacitor
  Realization sum = series_add(Realization::constant(mat(1, 1, {1})), Realization::scalar(0, 1, 1, 0));
  for (cplx s : test_points(20)) EXPECT_NEAR(std::abs(evaluate(sum, s)(0, 0) - (1.0 + 1.0 / s)), 0.0, 1e-12);
}

TEST(AdjointSystem, ConjugateTransposeOnAxis) {
  Rng rng(24);
  Realization r(rng.hurwitz(2, true), rng.matrix(2, 2, true), rng.matrix(2, 2, true), rng.matrix(2, 2, true));
  Realization adj = adjoint_system(r);
  for (double w : {0.1, 1.0, 5.0}) {
    Matrix f = evaluate(r, cplx(0, w));
    // the adjoint system realizes F(conj(s))*
    EXPECT_LE((evaluate(adj, cplx(0, -w)) - f.adjoint()).norm(), 1e-12);
  }
}

TEST(ArrayCongruence, SwapBreaksTransfer) {
  Realization g = array_congruence(lag, mat(2, 2, {0, 1, 1, 0}));
  EXPECT_EQ(g.array(), mat(2, 2, {1, 1, 1, -1}));
  EXPECT_FALSE(poles(g).hurwitz);
}

TEST(TestPoints, OnImaginaryAxis) {
  auto pts = test_points(100);
  ASSERT_EQ(pts.size(), 100u);
  for (cplx s : pts) EXPECT_EQ(s.real(), 0.0);
  EXPECT_NEAR(pts.front().imag(), 1e-3, 1e-15);
  EXPECT_NEAR(pts.back().imag(), 1e3, 1e-9);
}
