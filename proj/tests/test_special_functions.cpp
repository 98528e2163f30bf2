#include "nclandau/special_functions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace nclandau;

namespace {

struct SeriesValue {
    double value;
    double magnitude;  // sum of |terms|, bounds the cancellation error
};

// Independent oracles: explicit finite series.
SeriesValue laguerre_series(int n, double alpha, double x) {
    SeriesValue s{0.0, 0.0};
    for (int k = 0; k <= n; ++k) {
        double binom = 1.0;  // C(n + alpha, n - k) as an exact product
        for (int i = 1; i <= n - k; ++i) {
            binom *= (alpha + k + i) / i;
        }
        const double term = ((k % 2) ? -1.0 : 1.0) * binom * std::pow(x, k) / std::tgamma(k + 1.0);
        s.value += term;
        s.magnitude += std::abs(term);
    }
    return s;
}

double hermite_series(int n, double x) {
    double sum = 0.0;
    for (int m = 0; m <= n / 2; ++m) {
        sum += ((m % 2) ? -1.0 : 1.0) * std::pow(2.0 * x, n - 2 * m) / (std::tgamma(m + 1.0) * std::tgamma(n - 2 * m + 1.0));
    }
    return std::tgamma(n + 1.0) * sum;
}

}  // namespace

TEST(Laguerre, LowOrders) {
    EXPECT_DOUBLE_EQ(laguerre_assoc(0, 3.0, 7.2), 1.0);
    EXPECT_DOUBLE_EQ(laguerre_assoc(1, 2.0, 0.5), 2.5);
    EXPECT_NEAR(laguerre_assoc(2, 0.0, 2.0), -1.0, 1e-15);
}

TEST(Laguerre, MatchesSeriesOracle) {
    for (int n = 0; n <= 8; ++n) {
        for (double alpha : {0.0, 1.0, 2.0, 4.0, 2.5}) {
            for (double x : {0.0, 0.3, 1.7, 4.0, 9.5}) {
                const auto ref = laguerre_series(n, alpha, x);
                EXPECT_NEAR(laguerre_assoc(n, alpha, x), ref.value, 1e-14 * std::max(1.0, ref.magnitude))
                    << n << " " << alpha << " " << x;
            }
        }
    }
}

TEST(Laguerre, HighPrecisionValues) {
    // 40-digit reference values.
    EXPECT_NEAR(laguerre_assoc(5, 2.5, 3.7), 2.0766806666666673294, 1e-13);
    EXPECT_NEAR(laguerre_assoc(10, 0.0, 12.3), -30.08132848620021314, 1e-11);
    EXPECT_NEAR(laguerre_assoc(30, 4.0, 25.0), -24820.482698326025225, 1e-12 * 24820.48);
    EXPECT_NEAR(laguerre_assoc(12, -0.5, 2.0), -0.40636957010423396159, 1e-13);
}

TEST(Laguerre, OrthogonalityUnderQuadrature) {
    // int_0^inf x^a e^-x L_n^a L_m^a dx = Gamma(n+a+1)/n! delta_nm, Simpson on [0, 120].
    const int alpha = 2;
    const int steps = 96000;
    const double h = 120.0 / steps;
    for (int n = 0; n <= 5; ++n) {
        for (int m = 0; m <= 5; ++m) {
            double sum = 0.0;
            for (int i = 0; i <= steps; ++i) {
                const double x = i * h;
                const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                sum += w * std::pow(x, alpha) * std::exp(-x) * laguerre_assoc(n, alpha, x) * laguerre_assoc(m, alpha, x);
            }
            sum *= h / 3.0;
            const double expect = n == m ? std::tgamma(n + alpha + 1.0) / std::tgamma(n + 1.0) : 0.0;
            EXPECT_NEAR(sum, expect, 1e-8 * std::max(1.0, expect)) << n << "," << m;
        }
    }
}

TEST(Laguerre, FiniteAtRangeLimit) {
    for (int alpha : {0, 5, 20}) {
        EXPECT_TRUE(std::isfinite(laguerre_assoc(50, alpha, 500.0)));
        EXPECT_TRUE(std::isfinite(laguerre_assoc(50, alpha, 0.0)));
    }
    // L_n^a(0) = C(n+a, n)
    EXPECT_NEAR(laguerre_assoc(50, 3.0, 0.0), 23426.0, 1e-9 * 23426.0);
}

TEST(Laguerre, Errors) {
    EXPECT_THROW((void)laguerre_assoc(-1, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW((void)laguerre_assoc(2, 0.0, std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    EXPECT_THROW((void)laguerre_assoc(2, std::numeric_limits<double>::infinity(), 1.0), std::domain_error);
}

TEST(Hermite, LowOrders) {
    EXPECT_DOUBLE_EQ(hermite_phys(0, 1.3), 1.0);
    EXPECT_DOUBLE_EQ(hermite_phys(1, 0.7), 1.4);
    EXPECT_DOUBLE_EQ(hermite_phys(2, 1.0), 2.0);
}

TEST(Hermite, MatchesSeriesOracle) {
    for (int n = 0; n <= 12; ++n) {
        for (double x : {-2.3, -0.4, 0.0, 0.9, 1.6, 3.1}) {
            const double ref = hermite_series(n, x);
            EXPECT_NEAR(hermite_phys(n, x), ref, 1e-11 * std::max(1.0, std::abs(ref))) << n << " " << x;
        }
    }
}

TEST(Hermite, HighPrecisionValues) {
    EXPECT_NEAR(hermite_phys(5, 1.3), -76.706240000000010402, 1e-12);
    EXPECT_NEAR(hermite_phys(10, 2.1), 287863.09027338247023, 1e-13 * 287863.0);
    EXPECT_NEAR(hermite_phys(20, 0.7), -202944086511.71583635, 1e-12 * 2.03e11);
    EXPECT_NEAR(hermite_phys(7, -1.1), -709.0703488000002012, 1e-12 * 709.0);
}

TEST(Hermite, Parity) {
    for (int n = 0; n <= 15; ++n) {
        for (double x : {0.2, 1.1, 2.7}) {
            const double sgn = n % 2 ? -1.0 : 1.0;
            EXPECT_DOUBLE_EQ(hermite_phys(n, -x), sgn * hermite_phys(n, x));
        }
    }
}

TEST(Hermite, Errors) {
    EXPECT_THROW((void)hermite_phys(-2, 0.0), std::invalid_argument);
    EXPECT_THROW((void)hermite_phys(3, std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST(LnFactorial, Values) {
    EXPECT_EQ(ln_factorial(0), 0.0);
    EXPECT_EQ(ln_factorial(1), 0.0);
    EXPECT_NEAR(ln_factorial(5), 4.7874917427820459942, 1e-14);
    EXPECT_NEAR(ln_factorial(20), 42.33561646075348503, 1e-13);
    EXPECT_NEAR(ln_factorial(21), 45.380138898476908026, 1e-13);
    EXPECT_NEAR(ln_factorial(25), 58.003605222980519939, 1e-13);
    EXPECT_NEAR(ln_factorial(170), 706.57306224578734711, 1e-11);
    EXPECT_THROW((void)ln_factorial(-1), std::invalid_argument);
}
