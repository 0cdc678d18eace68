#include "srbb/basis.hpp"

#include <gtest/gtest.h>

#include "srbb/index_maps.hpp"
#include "test_util.hpp"

using namespace srbb;

namespace {

Mat dense_sigma(int which) {
  Mat m(2, 2);
  if (which == 1) m << 0, 1, 1, 0;
  if (which == 2) m << 0, cplx(0, -1), cplx(0, 1), 0;
  if (which == 3) m << 1, 0, 0, -1;
  if (which == 4) m << 1, 0, 0, 1;
  return m;
}

long gram_rank(const std::vector<SrbbElement>& basis) {
  const long d = basis.front().dim;
  Mat stacked(static_cast<long>(basis.size()), d * d);
  for (size_t k = 0; k < basis.size(); ++k) {
    Mat b = basis[k].dense();
    stacked.row(static_cast<long>(k)) = Eigen::Map<Vec>(b.data(), d * d).transpose();
  }
  Eigen::ColPivHouseholderQR<Mat> qr(stacked);
  qr.setThreshold(1e-9);
  return qr.rank();
}

}  // namespace

TEST(GenericBasis, PauliBaseCase) {
  auto basis = build_generic_basis(2);
  ASSERT_EQ(basis.size(), 4u);
  EXPECT_NEAR((basis[0].dense() - dense_sigma(1)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((basis[1].dense() - dense_sigma(2)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((basis[2].dense() - dense_sigma(3)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((basis[3].dense() - dense_sigma(4)).norm(), 0.0, 1e-15);
}

TEST(GenericBasis, D3BorderedPaulis) {
  auto basis = build_generic_basis(3);
  ASSERT_EQ(basis.size(), 9u);
  // j=1,2 are sigma1, sigma2 bordered with (-1)^{d-1} = +1 at (3,3).
  Mat b1 = basis[0].dense();
  EXPECT_EQ(basis[0].kind, ElementKind::Sigma1);
  EXPECT_NEAR(std::abs(b1(2, 2) - cplx(1.0)), 0.0, 1e-15);
  Mat b2 = basis[1].dense();
  EXPECT_EQ(basis[1].kind, ElementKind::Sigma2);
  EXPECT_NEAR(std::abs(b2(2, 2) - cplx(1.0)), 0.0, 1e-15);
  // Odd d: traces are 1 for j <= d^2-1.
  for (int j = 0; j < 8; ++j) EXPECT_EQ(basis[j].trace_int(), 1) << "j=" << j + 1;
}

TEST(GenericBasis, D4DiagonalElementJ3) {
  auto basis = build_generic_basis(4);
  Mat expect = Mat::Zero(4, 4);
  expect.diagonal() << 1, -1, 1, -1;
  EXPECT_NEAR((basis[2].dense() - expect).norm(), 0.0, 1e-15);
}

TEST(GenericBasis, InvalidDimension) {
  EXPECT_THROW(build_generic_basis(1), srbb_error);
  EXPECT_THROW(build_srbb(0), srbb_error);
}

TEST(GenericBasis, HermitianUnitaryTracesAndRank) {
  for (long d = 2; d <= 16; ++d) {
    auto basis = build_generic_basis(d);
    ASSERT_EQ(static_cast<long>(basis.size()), d * d);
    for (const auto& e : basis) {
      Mat b = e.dense();
      EXPECT_LT((b - b.adjoint()).norm(), 1e-12);
      EXPECT_LT((b * b - Mat::Identity(d, d)).norm(), 1e-12);
      if (e.index <= d * d - 1) {
        EXPECT_EQ(e.trace_int(), d % 2 == 0 ? 0 : 1) << "d=" << d << " j=" << e.index;
      }
    }
    EXPECT_EQ(gram_rank(basis), d * d) << "d=" << d;
  }
}

TEST(GenericBasis, OneSparseOffDiagonal) {
  for (long d : {4L, 7L, 9L}) {
    auto basis = build_generic_basis(d);
    for (const auto& e : basis) {
      if (e.is_diagonal()) continue;
      Mat b = e.dense();
      for (long r = 0; r < d; ++r) {
        int nz = 0;
        for (long c = 0; c < d; ++c)
          if (std::abs(b(r, c)) > 0) ++nz;
        EXPECT_EQ(nz, 1);
      }
    }
  }
}

TEST(Srbb, N1IsPauliWithZ) {
  auto basis = build_srbb(1);
  EXPECT_NEAR((basis[2].dense() - dense_sigma(3)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((basis[3].dense() - dense_sigma(4)).norm(), 0.0, 1e-15);
}

// All 15 non-identity matrices of Example 4.1, pinned via their exponentials.
TEST(Srbb, N2MatchesWorkedExample) {
  auto basis = build_srbb(2);
  const double th = 0.37;
  const double c = std::cos(th), s = std::sin(th);
  const cplx e = std::polar(1.0, th), em = std::polar(1.0, -th);
  const cplx is = kI * s;

  auto expect = [&](long j, std::initializer_list<cplx> entries) {
    Mat m(4, 4);
    long k = 0;
    for (cplx v : entries) m(k / 4, k % 4) = v, ++k;
    EXPECT_LT((exp_element(basis[j - 1], th) - m).norm(), 1e-14) << "U" << j;
  };

  expect(1, {c, is, 0, 0, is, c, 0, 0, 0, 0, e, 0, 0, 0, 0, em});
  expect(2, {c, s, 0, 0, -s, c, 0, 0, 0, 0, e, 0, 0, 0, 0, em});
  expect(3, {e, 0, 0, 0, 0, em, 0, 0, 0, 0, e, 0, 0, 0, 0, em});
  expect(4, {e, 0, 0, 0, 0, c, is, 0, 0, is, c, 0, 0, 0, 0, em});
  expect(5, {c, 0, is, 0, 0, e, 0, 0, is, 0, c, 0, 0, 0, 0, em});
  expect(6, {e, 0, 0, 0, 0, c, s, 0, 0, -s, c, 0, 0, 0, 0, em});
  expect(7, {c, 0, s, 0, 0, e, 0, 0, -s, 0, c, 0, 0, 0, 0, em});
  expect(8, {e, 0, 0, 0, 0, e, 0, 0, 0, 0, em, 0, 0, 0, 0, em});
  expect(9, {e, 0, 0, 0, 0, em, 0, 0, 0, 0, c, is, 0, 0, is, c});
  expect(10, {c, 0, 0, is, 0, em, 0, 0, 0, 0, e, 0, is, 0, 0, c});
  expect(11, {e, 0, 0, 0, 0, c, 0, is, 0, 0, em, 0, 0, is, 0, c});
  expect(12, {e, 0, 0, 0, 0, em, 0, 0, 0, 0, c, s, 0, 0, -s, c});
  expect(13, {c, 0, 0, s, 0, em, 0, 0, 0, 0, e, 0, -s, 0, 0, c});
  expect(14, {e, 0, 0, 0, 0, c, 0, s, 0, 0, em, 0, 0, -s, 0, c});
  expect(15, {e, 0, 0, 0, 0, em, 0, 0, 0, 0, em, 0, 0, 0, 0, e});
}

TEST(Srbb, N2DiagonalWordsAreIZWords) {
  auto basis = build_srbb(2);
  // U8 = Z(x)I: exp(i t U8) = diag(e, e, e^-, e^-).
  ASSERT_TRUE(basis[7].iz_word.has_value());
  EXPECT_EQ(chi(*basis[7].iz_word), 1);  // chi_2(Z(x)I) = 1
  ASSERT_TRUE(basis[2].iz_word.has_value());
  EXPECT_EQ(chi(*basis[2].iz_word), 2);  // chi_2(I(x)Z) = 2
  EXPECT_EQ(chi(*basis[14].iz_word), 3);
}

TEST(Srbb, DiagonalCountTracesAndRank) {
  for (int n = 1; n <= 5; ++n) {
    auto basis = build_srbb(n);
    const long d = 1L << n;
    long diag_count = 0;
    for (const auto& e : basis) {
      if (e.is_diagonal()) ++diag_count;
      if (e.kind != ElementKind::Identity) {
        EXPECT_EQ(e.trace_int(), 0);
      }
      Mat b = e.dense();
      EXPECT_LT((b - b.adjoint()).norm(), 1e-12);
      EXPECT_LT((b * b - Mat::Identity(d, d)).norm(), 1e-12);
    }
    EXPECT_EQ(diag_count, d);
    if (n <= 4) {
      EXPECT_EQ(gram_rank(basis), d * d);
    }
  }
}

TEST(Srbb, SrbbDiagonalsSpanWords) {
  // The 2^n diagonal elements are exactly the distinct I/Z words.
  for (int n = 2; n <= 4; ++n) {
    auto basis = build_srbb(n);
    std::set<long> seen;
    for (const auto& e : basis)
      if (e.kind == ElementKind::DiagonalIZ || e.kind == ElementKind::Identity)
        seen.insert(e.iz_word ? chi(*e.iz_word) : 0);
    EXPECT_EQ(static_cast<long>(seen.size()), 1L << n);
  }
}

TEST(IndexMaps, ChiRoundTrip) {
  EXPECT_EQ(chi(chi_inv(0, 3)), 0);
  for (int m = 1; m <= 4; ++m)
    for (long k = 0; k < (1L << m); ++k) EXPECT_EQ(chi(chi_inv(k, m)), k);
  EXPECT_THROW(chi_inv(4, 2), srbb_error);
  EXPECT_THROW(chi_inv(-1, 2), srbb_error);
  // chi_2(Z(x)I)=1, chi_2(I(x)Z)=2 with factor weights 2^{i-1}.
  EXPECT_EQ(chi(IZWord{2, 0b01}), 1);
  EXPECT_EQ(chi(IZWord{2, 0b10}), 2);
  // chi_inv(0, m) is the identity word.
  EXPECT_TRUE(chi_inv(0, 4).is_identity());
}

TEST(IndexMaps, FAndH) {
  EXPECT_EQ(h_index(2, 0), 1);
  EXPECT_EQ(f_index(2, 0), 2);
  EXPECT_EQ(h_index(4, 0), 9);
  EXPECT_EQ(f_index(4, 0), 12);
  EXPECT_EQ(h_index(3, 5), 5);
  EXPECT_EQ(f_index(3, 5), 7);
  EXPECT_THROW(h_index(1, 0), srbb_error);
  for (long n = 2; n <= 9; ++n)
    for (long k = 0; k < 2 * n; ++k) EXPECT_EQ(f_index(n, k) - h_index(n, k), n - 1);
}

TEST(IndexMaps, FHLocateSigmaKinds) {
  // j = h_q(p) is the sigma1 element at pair (p,q); f_q(p) the sigma2 one.
  for (long d : {4L, 8L}) {
    for (long q = 2; q <= d; ++q) {
      for (long p = 1; p < q; ++p) {
        auto e1 = element_pair_and_signs(h_index(q, p), d);
        EXPECT_EQ(e1.kind, ElementKind::Sigma1);
        EXPECT_EQ(e1.p, p);
        EXPECT_EQ(e1.q, q);
        auto e2 = element_pair_and_signs(f_index(q, p), d);
        EXPECT_EQ(e2.kind, ElementKind::Sigma2);
        EXPECT_EQ(e2.p, p);
        EXPECT_EQ(e2.q, q);
      }
    }
  }
}

TEST(IndexMaps, PairAndSignsSpotChecks) {
  auto e1 = element_pair_and_signs(1, 4);
  EXPECT_EQ(e1.kind, ElementKind::Sigma1);
  EXPECT_EQ(e1.p, 1);
  EXPECT_EQ(e1.q, 2);
  EXPECT_EQ(e1.diag_signs, (std::vector<int>{0, 0, 1, -1}));

  auto e12 = element_pair_and_signs(12, 4);
  EXPECT_EQ(e12.kind, ElementKind::Sigma2);
  EXPECT_EQ(e12.p, 3);
  EXPECT_EQ(e12.q, 4);
  EXPECT_EQ(e12.diag_signs, (std::vector<int>{1, -1, 0, 0}));

  auto e9 = element_pair_and_signs(9, 4);
  EXPECT_EQ(e9.kind, ElementKind::Sigma1);
  EXPECT_EQ(e9.p, 3);
  EXPECT_EQ(e9.q, 4);

  EXPECT_THROW(element_pair_and_signs(3, 4), srbb_error);
  EXPECT_THROW(element_pair_and_signs(16, 4), srbb_error);
}

TEST(IndexMaps, EtaBasics) {
  IZWord iz{2, 0b10};  // I(x)Z
  RVec d = word_diag(iz);
  EXPECT_EQ(eta(d, 1), 1);
  EXPECT_EQ(eta(d, 2), -1);
  EXPECT_THROW(eta(d, 0), srbb_error);
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1;
  m(1, 0) = 1;
  EXPECT_THROW(eta(m, 1), srbb_error);
}

// Eta-vector property: odd-position entries of diag(chi_inv(k)(x)sigma3)
// assemble the +/-1 Hadamard matrix column set.
TEST(IndexMaps, EtaVectorsFormHadamard) {
  for (int n = 1; n <= 4; ++n) {
    const long half = 1L << n;
    Mat assembled(half, half);
    for (long k = 0; k < half; ++k) {
      IZWord w = chi_inv(k, n);
      IZWord wz{n + 1, w.z_bits | (1u << n)};  // append sigma3 as factor n+1
      RVec d = word_diag(wz);
      for (long l = 0; l < half; ++l) assembled(l, k) = d[2 * l];
    }
    // Columns must be exactly the Hadamard columns, as a set.
    Mat h2(2, 2);
    h2 << 1, 1, 1, -1;
    Mat had = h2;
    for (int i = 1; i < n; ++i) {
      Mat next(had.rows() * 2, had.cols() * 2);
      next << had, had, had, -had;
      had = next;
    }
    std::set<std::vector<int>> want, got;
    for (long c = 0; c < half; ++c) {
      std::vector<int> wcol(half), gcol(half);
      for (long r = 0; r < half; ++r) {
        wcol[r] = static_cast<int>(std::lround(had(r, c).real()));
        gcol[r] = static_cast<int>(std::lround(assembled(r, c).real()));
      }
      want.insert(wcol);
      got.insert(gcol);
    }
    EXPECT_EQ(want, got) << "n=" << n;
  }
}

TEST(ExpElement, ZeroAngleIsIdentity) {
  auto basis = build_srbb(2);
  for (const auto& e : basis)
    EXPECT_LT((exp_element(e, 0.0) - Mat::Identity(4, 4)).norm(), 1e-15);
}

TEST(ExpElement, InverseAtNegatedAngle) {
  auto g = test::rng(11);
  for (int n = 1; n <= 3; ++n) {
    auto basis = build_srbb(n);
    const long d = 1L << n;
    for (const auto& e : basis) {
      const double th = test::uniform_angle(g);
      EXPECT_LT((exp_element(e, th) * exp_element(e, -th) - Mat::Identity(d, d)).norm(), 1e-12);
    }
  }
}

TEST(ExpElement, MatchesMatrixExponentialOracle) {
  auto g = test::rng(7);
  for (int n = 1; n <= 4; ++n) {
    auto basis = build_srbb(n);
    std::uniform_int_distribution<long> pick(1, (1L << (2 * n)));
    for (int trial = 0; trial < 100; ++trial) {
      const long j = pick(g);
      const double th = test::uniform_angle(g);
      const SrbbElement& e = basis[j - 1];
      EXPECT_LT((exp_element(e, th) - test::matexp_oracle(e.dense(), th)).norm(), 1e-10);
    }
  }
}

TEST(ExpElement, GenericBasisMatchesOracle) {
  auto g = test::rng(23);
  for (long d : {3L, 5L, 6L, 16L}) {
    auto basis = build_generic_basis(d);
    std::uniform_int_distribution<long> pick(1, d * d);
    for (int trial = 0; trial < 25; ++trial) {
      const long j = pick(g);
      const double th = test::uniform_angle(g);
      const SrbbElement& e = basis[j - 1];
      EXPECT_LT((exp_element(e, th) - test::matexp_oracle(e.dense(), th)).norm(), 1e-10);
      EXPECT_TRUE(is_unitary(exp_element(e, th), 1e-12));
    }
  }
}

TEST(ExpElement, AppliedLeftMatchesDense) {
  auto g = test::rng(5);
  auto basis = build_srbb(3);
  Mat acc = test::haar_unitary(8, g);
  Mat ref = acc;
  for (long j : {1L, 5L, 8L, 22L, 47L, 63L, 64L}) {
    const double th = test::uniform_angle(g);
    apply_exp_element_left(basis[j - 1], th, acc);
    ref = exp_element(basis[j - 1], th) * ref;
  }
  EXPECT_LT((acc - ref).norm(), 1e-12);
}

TEST(ExpDiagCombination, ProductEqualsExpOfSum) {
  EXPECT_EQ(exp_diag_combination({}, 2).size(), 4);
  EXPECT_LT((exp_diag_combination({}, 2) - Vec::Ones(4)).norm(), 1e-15);

  // {j=3: t} at n=2 gives diag(e^{it}, e^{-it}, e^{it}, e^{-it}).
  const double t = 0.81;
  Vec v = exp_diag_combination({{3, t}}, 2);
  Vec expect(4);
  expect << std::polar(1.0, t), std::polar(1.0, -t), std::polar(1.0, t), std::polar(1.0, -t);
  EXPECT_LT((v - expect).norm(), 1e-14);

  auto g = test::rng(3);
  for (int n = 1; n <= 4; ++n) {
    auto basis = build_srbb(n);
    const long d = 1L << n;
    std::map<long, double> coeffs;
    Mat sum = Mat::Zero(d, d);
    Mat prod = Mat::Identity(d, d);
    for (long m = 2; m <= d; ++m) {
      const double c = test::uniform_angle(g) - kPi;
      coeffs[m * m - 1] = c;
      sum += c * basis[m * m - 1 - 1].dense();
      prod = prod * exp_element(basis[m * m - 1 - 1], c);
    }
    Mat viaSum = test::matexp_oracle(sum, 1.0);
    Vec phases = exp_diag_combination(coeffs, n);
    EXPECT_LT((prod - viaSum).norm(), 1e-12);
    EXPECT_LT((Mat(phases.asDiagonal()) - viaSum).norm(), 1e-12);
  }

  EXPECT_THROW(exp_diag_combination({{1, 0.5}}, 2), srbb_error);
}
