#include <doctest.h>

#include <complex>
#include <random>

#include "latticeperfect/linalg.hpp"

using namespace latticeperfect;

namespace {

// independent oracle: cyclic Jacobi eigenvalues for symmetric matrices
std::vector<double> jacobi_symmetric_eigenvalues(Matrix a) {
    const size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-28) break;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
                const double c = std::cos(theta), s = std::sin(theta);
                for (size_t i = 0; i < n; ++i) {
                    const double apix = a[i][p], aqix = a[i][q];
                    a[i][p] = c * apix - s * aqix;
                    a[i][q] = s * apix + c * aqix;
                }
                for (size_t i = 0; i < n; ++i) {
                    const double apxi = a[p][i], aqxi = a[q][i];
                    a[p][i] = c * apxi - s * aqxi;
                    a[q][i] = s * apxi + c * aqxi;
                }
            }
    }
    std::vector<double> d(n);
    for (size_t i = 0; i < n; ++i) d[i] = a[i][i];
    std::sort(d.begin(), d.end());
    return d;
}

// |det(A - lambda I)| via complex Gaussian elimination, normalized by scale^n
double charpoly_residual(const Matrix& a, std::complex<double> lambda) {
    const size_t n = a.size();
    std::vector<std::vector<std::complex<double>>> m(n, std::vector<std::complex<double>>(n));
    double scale = 1e-30;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            m[i][j] = a[i][j];
            if (i == j) m[i][j] -= lambda;
            scale = std::max(scale, std::abs(m[i][j]));
        }
    std::complex<double> det = 1.0;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t i = col + 1; i < n; ++i)
            if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
        if (std::abs(m[piv][col]) == 0.0) return 0.0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t i = col + 1; i < n; ++i) {
            const auto f = m[i][col] / m[col][col];
            for (size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return std::abs(det) / std::pow(scale, static_cast<double>(n));
}

}  // namespace

TEST_CASE("lu_solve") {
    Matrix a{{2, 1}, {1, 3}};
    std::vector<double> x;
    REQUIRE(lu_solve(a, {3, 5}, x));
    CHECK(x[0] == doctest::Approx(0.8));
    CHECK(x[1] == doctest::Approx(1.4));
    Matrix sing{{1, 2}, {2, 4}};
    CHECK_FALSE(lu_solve(sing, {1, 1}, x));
}

TEST_CASE("eigenvalues of known matrices") {
    auto e1 = eigenvalues({{2}});
    CHECK(e1[0].real() == doctest::Approx(2.0));

    // rotation-like block: eigenvalues +-i
    auto e2 = eigenvalues({{0, -1}, {1, 0}});
    REQUIRE(e2.size() == 2);
    CHECK(std::abs(e2[0].real()) < 1e-12);
    CHECK(std::abs(std::abs(e2[0].imag()) - 1.0) < 1e-12);

    // the 3-color application matrix has spectrum {4, -4, 0}
    auto e3 = eigenvalues({{0, 2, 2}, {4, 0, 0}, {4, 0, 0}});
    std::vector<double> re;
    for (auto z : e3) {
        CHECK(std::abs(z.imag()) < 1e-9);
        re.push_back(z.real());
    }
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(-4.0).epsilon(1e-9));
    CHECK(re[1] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(re[2] == doctest::Approx(4.0).epsilon(1e-9));

    // the four-color application matrix: {4, -4, 0, 0}
    auto e4 = eigenvalues({{0, 2, 2, 0}, {2, 0, 0, 2}, {2, 0, 0, 2}, {0, 2, 2, 0}});
    std::vector<double> re4;
    for (auto z : e4) re4.push_back(z.real());
    std::sort(re4.begin(), re4.end());
    CHECK(re4[0] == doctest::Approx(-4.0).epsilon(1e-9));
    CHECK(re4[3] == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(spectral_abscissa(e4) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("random symmetric matrices agree with the Jacobi oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        const size_t n = 2 + trial % 7;
        Matrix a = make_matrix(n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) a[i][j] = a[j][i] = dist(rng);
        auto eig = eigenvalues(a);
        std::vector<double> got;
        for (auto z : eig) {
            CHECK(std::abs(z.imag()) < 1e-7);
            got.push_back(z.real());
        }
        std::sort(got.begin(), got.end());
        auto want = jacobi_symmetric_eigenvalues(a);
        REQUIRE(got.size() == want.size());
        for (size_t i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-7));
    }
}

TEST_CASE("random nonsymmetric matrices: trace, determinant-free charpoly residual") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const size_t n = 2 + trial % 9;
        Matrix a = make_matrix(n);
        double trace = 0.0;
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) a[i][j] = dist(rng);
            trace += a[i][i];
        }
        auto eig = eigenvalues(a);
        REQUIRE(eig.size() == n);
        std::complex<double> sum = 0.0;
        for (auto z : eig) {
            sum += z;
            CHECK(charpoly_residual(a, z) < 1e-7);
        }
        CHECK(sum.real() == doctest::Approx(trace).epsilon(1e-8));
        CHECK(std::abs(sum.imag()) < 1e-8);
    }
}

TEST_CASE("defective and repeated spectra") {
    auto jordan = eigenvalues({{1, 1}, {0, 1}});
    REQUIRE(jordan.size() == 2);
    for (auto z : jordan) {
        CHECK(std::abs(z.real() - 1.0) < 1e-7);
        CHECK(std::abs(z.imag()) < 1e-7);
    }
    auto zero = eigenvalues({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    for (auto z : zero) CHECK(std::abs(z) < 1e-12);
}
