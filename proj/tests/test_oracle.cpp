#include <doctest.h>

#include <cmath>
#include <numeric>

#include "detcs/errors.hpp"
#include "detcs/linalg.hpp"
#include "detcs/oracle.hpp"
#include "detcs/random.hpp"
#include "test_util.hpp"

using namespace detcs;

TEST_SUITE("oracle") {
    TEST_CASE("det_cofactor") {
        CHECK(oracle::det_cofactor(ComplexMatrix::identity(4)) == Complex{1, 0});
        CHECK(oracle::det_cofactor(ComplexMatrix{{2, 0}, {0, 3}}) == Complex{6, 0});
        CHECK(oracle::det_cofactor(ComplexMatrix{{0, 1}, {1, 0}}) == Complex{-1, 0});
        CHECK(oracle::det_cofactor(ComplexMatrix{{Complex{0, 1}}}) == Complex{0, 1});
        CHECK_THROWS_AS(oracle::det_cofactor(ComplexMatrix::identity(7)), OracleError);

        Rng rng(55);
        const auto a = ginibre(rng, 5, 5);
        const Complex exact = oracle::det_cofactor(a);
        CHECK(std::abs(log_det(a).value() - exact) / std::abs(exact) <= 1e-10);
    }

    TEST_CASE("naive_matmul is the plain product") {
        const ComplexMatrix a{{1, 2}, {3, 4}};
        const ComplexMatrix b{{Complex{0, 1}, 0}, {0, 1}};
        const ComplexMatrix expected{{Complex{0, 1}, 2}, {Complex{0, 3}, 4}};
        CHECK(oracle::naive_matmul(a, b) == expected);
    }

    TEST_CASE("jacobi eigenvalues of small hermitian matrices") {
        auto diag = oracle::jacobi_eigenvalues(ComplexMatrix{{1, 0, 0}, {0, 5, 0}, {0, 0, 3}});
        CHECK(diag.eigenvalues == std::vector<double>{5, 3, 1});

        const auto real_sym = oracle::jacobi_eigenvalues(ComplexMatrix{{2, 1}, {1, 2}});
        CHECK(real_sym.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(real_sym.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));

        // [[1, i], [-i, 1]] has eigenvalues 2 and 0.
        const auto cplx = oracle::jacobi_eigenvalues(
            ComplexMatrix{{1, Complex{0, 1}}, {Complex{0, -1}, 1}});
        CHECK(cplx.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(std::abs(cplx.eigenvalues[1]) < 1e-14);

        // Zero trace: stopping rule uses the evolving diagonal mass.
        const auto swap = oracle::jacobi_eigenvalues(ComplexMatrix{{0, 1}, {1, 0}});
        CHECK(swap.eigenvalues[0] == doctest::Approx(1.0));
        CHECK(swap.eigenvalues[1] == doctest::Approx(-1.0));

        CHECK_THROWS_AS(oracle::jacobi_eigenvalues(ComplexMatrix{{1, 2}, {0, 1}}),
                        ContractViolation);
    }

    TEST_CASE("jacobi eigenvalues reproduce trace and determinant") {
        Rng rng(90);
        const auto g = ginibre(rng, 5, 5);
        const auto h = matmul(conj_transpose(g), g);
        const auto r = oracle::jacobi_eigenvalues(h);
        double trace = 0.0;
        for (std::size_t i = 0; i < 5; ++i) trace += h(i, i).real();
        const double sum = std::accumulate(r.eigenvalues.begin(), r.eigenvalues.end(), 0.0);
        const double prod = std::accumulate(r.eigenvalues.begin(), r.eigenvalues.end(), 1.0,
                                            std::multiplies<>());
        CHECK(sum == doctest::Approx(trace).epsilon(1e-12));
        CHECK(prod == doctest::Approx(oracle::det_cofactor(h).real()).epsilon(1e-9));
        CHECK(std::is_sorted(r.eigenvalues.rbegin(), r.eigenvalues.rend()));
    }

    TEST_CASE("principal angle cosines") {
        Rng rng(12);
        const auto qa = SubspaceBasis::span_of(ginibre(rng, 5, 2));
        const auto same = oracle::principal_angle_cosines(qa, qa);
        for (double c : same.cosines) CHECK(c == doctest::Approx(1.0).epsilon(1e-14));

        const auto e12 = SubspaceBasis::span_of(ComplexMatrix{{1, 0}, {0, 1}, {0, 0}, {0, 0}});
        const auto e34 = SubspaceBasis::span_of(ComplexMatrix{{0, 0}, {0, 0}, {1, 0}, {0, 1}});
        for (double c : oracle::principal_angle_cosines(e12, e34).cosines) CHECK(c <= 1e-15);

        // Hand computation: Qa* Qb = diag(1, 1/sqrt2).
        const auto tilted = oracle::principal_angle_cosines(
            SubspaceBasis::span_of(testing::tilted_a()), SubspaceBasis::span_of(testing::tilted_b()));
        REQUIRE(tilted.cosines.size() == 2);
        CHECK(tilted.cosines[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(tilted.cosines[1] == doctest::Approx(M_SQRT1_2).epsilon(1e-15));

        CHECK_THROWS_AS(oracle::principal_angle_cosines(qa, e12), ContractViolation);
        const auto square = SubspaceBasis::span_of(ComplexMatrix::identity(2));
        CHECK_THROWS_AS(oracle::principal_angle_cosines(square, square), ContractViolation);
    }

    TEST_CASE("singular values") {
        const auto sv = oracle::singular_values(ComplexMatrix{{3, 0}, {0, -4}});
        CHECK(sv[0] == doctest::Approx(4.0));
        CHECK(sv[1] == doctest::Approx(3.0));
    }

    TEST_CASE("bilinearity discrepancy") {
        const auto i2 = ComplexMatrix::identity(2);
        // det(2I) = 4 against 1 + 1.
        CHECK(oracle::bilinearity_discrepancy(i2, i2, i2) == doctest::Approx(2.0));
        // Scalars are linear.
        Rng rng(1);
        const auto s1 = ginibre(rng, 1, 1);
        const auto s2 = ginibre(rng, 1, 1);
        const auto sb = ginibre(rng, 1, 1);
        CHECK(oracle::bilinearity_discrepancy(s1, s2, sb) < 1e-15);
        // With weight M = diag(4, 1): det(2 * diag(4,1)) - 2 det(diag(4,1)) = 16 - 8.
        CHECK(oracle::bilinearity_discrepancy(i2, i2, i2, ComplexMatrix{{4, 0}, {0, 1}}) ==
              doctest::Approx(8.0));
    }

    TEST_CASE("bilinearity counterexample search") {
        const auto w = oracle::find_bilinearity_counterexample(42);
        CHECK(w.discrepancy > 0.1);
        CHECK(w.a1.rows() >= 2);
        CHECK(w.trials_used <= oracle::kBilinearitySearchBound);
        CHECK(oracle::bilinearity_discrepancy(w.a1, w.a2, w.b) == w.discrepancy);
        const auto again = oracle::find_bilinearity_counterexample(42);
        CHECK(again.a1 == w.a1);
        CHECK(again.discrepancy == w.discrepancy);
    }
}
