/*
 *  alpha-z divergences, D_max, monotonicity regions, the equality battery
 *  and the majorization / trace-convexity lemmas
 */

#include <catch2/catch_amalgamated.hpp>
#include "qdiv/azrenyi.hpp"

using namespace qdiv;

namespace {

Mat diag2(double a, double b) {
    Mat M = Mat::Zero(2, 2);
    M(0, 0) = a;
    M(1, 1) = b;
    return M;
}

Mat plus_state() {
    Mat M(2, 2);
    M << 0.5, 0.5, 0.5, 0.5;
    return M;
}

} // namespace

TEST_CASE("alpha-z divergence values") {
    PsdOperator r = random_state(3, 3, 1);
    CHECK(d_az(AzParams(0.5, 0.7), r, r).value() == Catch::Approx(0.0).margin(1e-10));
    CHECK(d_az(AzParams(2.0, 2.0), r, r).value() == Catch::Approx(0.0).margin(1e-10));

    double q = 0.36 / 0.5 + 0.16 / 0.5;
    CHECK(d_az(AzParams(2.0, 1.0), PsdOperator(diag2(0.6, 0.4)), PsdOperator(diag2(0.5, 0.5)))
              .value() == Catch::Approx(std::log(q)));

    CHECK(d_az(AzParams(1.5, 1.0), PsdOperator(plus_state()), PsdOperator(diag2(1, 0))).is_inf());
    CHECK(d_az(AzParams(1.5, 1.5), PsdOperator(plus_state()), PsdOperator(diag2(1, 0))).is_inf());

    // z=1 matches the standard Renyi functional, z=alpha the sandwiched one
    PsdOperator s = random_state(3, 3, 2);
    CHECK(d_az(AzParams(2.0, 1.0), r, s).value() == Catch::Approx(renyi_alpha(2.0, r, s).value()));
    CHECK(sandwiched_renyi(2.0, r, s).value() <= renyi_alpha(2.0, r, s).value() + 1e-10);
}

TEST_CASE("D_max") {
    PsdOperator r = random_state(2, 2, 3);
    CHECK(d_max(r, r).value() == Catch::Approx(0.0).margin(1e-10));
    CHECK(d_max(PsdOperator(diag2(0.9, 0.1)), PsdOperator(diag2(0.5, 0.5))).value() ==
          Catch::Approx(std::log(1.8)));
    CHECK(d_max(PsdOperator(plus_state()), PsdOperator(diag2(1, 0))).is_inf());
    // D_max dominates the sandwiched family
    PsdOperator s = random_state(2, 2, 4);
    CHECK(sandwiched_renyi(3.0, r, s).value() <= d_max(r, s).value() + 1e-9);
}

TEST_CASE("monotonicity regions") {
    RegionVerdict v = monotonicity_region(AzParams(0.3, 0.7), RegionContext::general);
    CHECK(v.general_conditions.count('a') == 1);
    CHECK(v.monotone_claimed);

    v = monotonicity_region(AzParams(0.3, 0.3), RegionContext::general);
    CHECK_FALSE(v.monotone_claimed);

    v = monotonicity_region(AzParams(0.3, 0.3), RegionContext::fixed_sigma);
    CHECK(v.fixedpoint_conditions.count('1') == 1);

    v = monotonicity_region(AzParams(2.0, 1.0), RegionContext::general);
    CHECK(v.general_conditions.count('b') == 1);
    v = monotonicity_region(AzParams(3.0, 3.0), RegionContext::general);
    CHECK(v.general_conditions.count('c') == 1);
    v = monotonicity_region(AzParams(2.0, 1.0), RegionContext::fixed_rho);
    CHECK(v.fixedpoint_conditions.count('4') == 1);
}

TEST_CASE("equality battery") {
    SECTION("unitary conjugation passes E1-E5") {
        std::mt19937_64 rng(5);
        QuantumChannel phi = unitary_channel(haar_unitary(2, rng));
        PsdOperator r = random_state(2, 2, 6), s = random_state(2, 2, 7);
        EqualityReport rep = az_equality_battery(phi, r, s, AzParams(0.5, 0.5));
        for (const auto& c : rep.conditions) CHECK(c.pass);
        CHECK(rep.verdict == "reversible-on-pair");
    }
    SECTION("z = 1 - alpha pinching counterexample") {
        double th = M_PI / 5.0;
        Mat R(2, 2);
        R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        PsdOperator sigma(Mat(R * diag2(0.7, 0.3) * R.adjoint()));
        PsdOperator rho(diag2(1, 0));
        QuantumChannel phi = pinching_channel({diag2(1, 0), diag2(0, 1)});
        for (double a : {0.3, 0.5, 0.7}) {
            EqualityReport rep = az_equality_battery(phi, rho, sigma, AzParams(a, 1.0 - a));
            CHECK(rep["E1-daz-gap"].residual < 1e-9);
            CHECK(rep["E3-petz-sigma"].residual > 1e-3);
            CHECK(rep.verdict == "not-reversible");
            // closed form Q = (a cos^2 + b sin^2)^{1-alpha}
            double qcf = std::pow(0.7 * std::cos(th) * std::cos(th) +
                                  0.3 * std::sin(th) * std::sin(th), 1.0 - a);
            CHECK(d_az(AzParams(a, 1.0 - a), rho, sigma).value() ==
                  Catch::Approx(std::log(qcf) / (a - 1.0)));
        }
    }
    SECTION("fidelity case: sigma fixed and E1 implies E3") {
        Mat sd = diag2(0.7, 0.3);
        PsdOperator sigma(sd), rho(diag2(0.2, 0.8));
        QuantumChannel phi = pinching_channel({diag2(1, 0), diag2(0, 1)});
        EqualityReport rep = az_equality_battery(phi, rho, sigma, AzParams(0.5, 0.5));
        REQUIRE(rep["E1-daz-gap"].pass);
        CHECK(rep["E3-petz-sigma"].pass);
    }
}

TEST_CASE("Ky Fan majorization") {
    SECTION("identity channel") {
        HermitianOperator X(diag2(1, -1));
        MajorizationResult m = ky_fan_majorization(identity_channel(2), X);
        CHECK(m.majorization_pass);
        CHECK(m.partial_sum_gaps.cwiseAbs().maxCoeff() < 1e-10);
    }
    SECTION("depolarizing mixture contracts") {
        QuantumChannel phi = random_bistochastic(2, 4, 8);
        HermitianOperator X(diag2(1, -1));
        MajorizationResult m = ky_fan_majorization(phi, X);
        CHECK(m.majorization_pass);
        CHECK(m.partial_sum_gaps(0) > 1e-6);  // strictly flattened spectrum
        CHECK(std::abs(m.partial_sum_gaps(1)) < 1e-9);
        CHECK(m.kyfan_crosscheck < 1e-9);
    }
    SECTION("identity operator is flat for any bistochastic map") {
        QuantumChannel phi = random_bistochastic(3, 3, 9);
        HermitianOperator X(Mat(Mat::Identity(3, 3)));
        MajorizationResult m = ky_fan_majorization(phi, X);
        CHECK(m.partial_sum_gaps.cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("trace convexity equality checks") {
    auto fsq = [](double x) { return x * x; };
    SECTION("unitary conjugation has zero residuals") {
        std::mt19937_64 rng(10);
        QuantumChannel phi = unitary_channel(haar_unitary(3, rng));
        Mat G = gaussian_matrix(3, 3, rng);
        HermitianOperator X(Mat(0.5 * (G + G.adjoint())));
        UnitaryEqualityResult r = trace_convexity_unitary_check(phi, X, fsq);
        CHECK(std::abs(r.trace_f_gap) < 1e-9);
        CHECK(r.trsq_gap < 1e-9);
        CHECK(r.adjoint_fix_residual < 1e-9);
        CHECK(r.eigen_multiset_gap < 1e-9);
    }
    SECTION("strict pinching decreases the trace square") {
        QuantumChannel phi = pinching_channel({diag2(1, 0), diag2(0, 1)});
        Mat X(2, 2);
        X << 0.5, 0.3, 0.3, -0.5;
        UnitaryEqualityResult r = trace_convexity_unitary_check(phi, HermitianOperator(X), fsq);
        CHECK(r.trsq_gap > 1e-6);
        CHECK(r.adjoint_fix_residual > 1e-6);
    }
    SECTION("fixed points are fixed by the adjoint cycle") {
        QuantumChannel phi = pinching_channel({diag2(1, 0), diag2(0, 1)});
        UnitaryEqualityResult r =
            trace_convexity_unitary_check(phi, HermitianOperator(diag2(2, -1)), fsq);
        CHECK(r.adjoint_fix_residual < 1e-9);
        CHECK(r.trsq_gap < 1e-9);
    }
}

TEST_CASE("fixed point sets of a bistochastic map and its adjoint agree") {
    for (uint64_t seed : {11u, 12u}) {
        QuantumChannel phi = random_bistochastic(2, 3, seed);
        OperatorSubspace F1 = fixed_point_set(phi);
        OperatorSubspace F2 = fixed_point_set(phi.adjoint());
        CHECK(subspace_distance(F1, F2) < 1e-8);
    }
}
