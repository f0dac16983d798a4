#include "cryscreen/error.hpp"
#include "cryscreen/random.hpp"
#include "cryscreen/scaling.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cryscreen;

namespace {

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    const double offset = rng.uniform(-5.0, 5.0);
    const double spread = rng.uniform(0.5, 3.0);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = offset + spread * rng.uniform(-1.0, 1.0);
    }
    return m;
}

double column_mean(const Matrix& m, std::size_t c) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, c);
    return s / static_cast<double>(m.rows());
}

}  // namespace

TEST(FitScaler, HandComputedExample) {
    const Matrix x = Matrix::from_rows({{1, 3}, {3, 5}});
    const auto p = fit_scaler(x);
    ASSERT_EQ(p.mean.size(), 2u);
    EXPECT_EQ(p.mean[0], 2.0);
    EXPECT_EQ(p.mean[1], 4.0);
    EXPECT_NEAR(p.std, std::sqrt(2.0), 1e-15);

    const Matrix out = apply_scaler(x, p);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(out(0, 0), -h, 1e-15);
    EXPECT_NEAR(out(0, 1), -h, 1e-15);
    EXPECT_NEAR(out(1, 0), h, 1e-15);
    EXPECT_NEAR(out(1, 1), h, 1e-15);
}

TEST(FitScaler, DegenerateInputs) {
    for (const Matrix& x : {Matrix(4, 3, 0.0), Matrix(5, 2, 7.5), Matrix::from_rows({{1, 2, 3}})}) {
        try {
            fit_scaler(x);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::DegenerateData);
        }
    }
}

TEST(ApplyScaler, RowEqualToMeanMapsToZero) {
    Rng rng(1);
    const Matrix x = random_matrix(rng, 20, 6);
    const auto p = fit_scaler(x);
    for (double v : apply_scaler(p.mean, p)) EXPECT_EQ(v, 0.0);
}

TEST(ApplyScaler, DimensionMismatch) {
    const auto p = fit_scaler(Matrix::from_rows({{1, 3}, {3, 5}}));
    try {
        apply_scaler(Matrix(2, 3, 1.0), p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Configuration);
    }
}

TEST(Scaling, ColumnMeansVanishAndStdNearOne) {
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix x = random_matrix(rng, 50, 10);
        const auto p = fit_scaler(x);
        const Matrix out = apply_scaler(x, p);
        EXPECT_EQ(out.rows(), x.rows());
        EXPECT_EQ(out.cols(), x.cols());
        for (std::size_t c = 0; c < out.cols(); ++c) EXPECT_LE(std::abs(column_mean(out, c)), 1e-10);
        const double s = global_std(out);
        EXPECT_GE(s, 0.8);
        EXPECT_LE(s, 1.2);
    }
}

TEST(Scaling, PreCenteredGivesUnitStd) {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix x = random_matrix(rng, 50, 10);
        for (std::size_t c = 0; c < x.cols(); ++c) {
            const double m = column_mean(x, c);
            for (std::size_t r = 0; r < x.rows(); ++r) x(r, c) -= m;
        }
        EXPECT_NEAR(global_std(apply_scaler(x, fit_scaler(x))), 1.0, 1e-10);
    }
}

TEST(Scaling, AffineInInput) {
    Rng rng(4);
    const Matrix x = random_matrix(rng, 30, 5);
    const auto p = fit_scaler(x);
    const double a = 2.5;
    const double b = -1.25;
    Matrix shifted = x;
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < x.cols(); ++c) shifted(r, c) = a * x(r, c) + b;
    }
    const Matrix out = apply_scaler(shifted, p);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            EXPECT_NEAR(out(r, c), (a * x(r, c) + b - p.mean[c]) / p.std, 1e-12);
        }
    }
}
