/*
 *  Bloch-coordinate closed forms and the packaged reference reproductions
 */

#include <catch2/catch_amalgamated.hpp>
#include "qdiv/paperlab.hpp"

using namespace qdiv;

TEST_CASE("Bloch closed forms") {
    Eigen::Vector3d w(0.5, 0.0, 0.0), x(0.0, 0.0, 0.5);
    SECTION("zero at equal vectors") {
        CHECK(bloch_s_gs(x, x, 1.0) == Catch::Approx(0.0).margin(1e-14));
        CHECK(bloch_maxdiv_gs(x, x, 1.0) == Catch::Approx(0.0).margin(1e-14));
    }
    SECTION("standard divergence matches the generic path") {
        for (double s : {0.5, 1.0, 2.0}) {
            PsdOperator rho(density_from_bloch(w)), sigma(density_from_bloch(x));
            double generic = standard_f_div(make_gs(s), rho, sigma).value();
            CHECK(bloch_s_gs(w, x, s) == Catch::Approx(generic).margin(1e-10));
        }
    }
    SECTION("sigma maximally mixed") {
        Eigen::Vector3d zero = Eigen::Vector3d::Zero();
        PsdOperator rho(density_from_bloch(w)), sigma(density_from_bloch(zero));
        double generic = standard_f_div(make_gs(1.0), rho, sigma).value();
        CHECK(bloch_s_gs(w, zero, 1.0) == Catch::Approx(generic).margin(1e-10));
    }
    SECTION("maximal divergence matches the generic path") {
        for (double s : {0.5, 1.0, 2.0}) {
            PsdOperator rho(density_from_bloch(w)), sigma(density_from_bloch(x));
            double generic = maximal_f_div(make_gs(s), rho, sigma).value();
            CHECK(bloch_maxdiv_gs(w, x, s) == Catch::Approx(generic).margin(1e-10));
        }
    }
    SECTION("noncommuting pairs have a strict gap") {
        CHECK(bloch_strict_gap(w, x, 1.0));
        CHECK(bloch_maxdiv_gs(w, x, 1.0) > bloch_s_gs(w, x, 1.0) + 1e-6);
    }
}

TEST_CASE("reference reproductions") {
    for (const auto& id : all_repro_ids()) {
        ReproReport rep = reproduce_example(id);
        INFO(id << ": " << rep.verdict);
        for (const auto& l : rep.lines) {
            INFO(l.name << " = " << l.value);
            CHECK(l.pass);
        }
        CHECK(rep.pass());
    }
    CHECK_THROWS_AS(reproduce_example("nope"), Error);
}
