#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "rydblock/emit.hpp"
#include "rydblock/errors.hpp"
#include "rydblock/sweep.hpp"

using namespace rydblock;

TEST_CASE("drive-ratio sweep saturates monotonically") {
    Params p = default_params();
    p.sweep.variable = SweepSpec::Variable::drive_ratio;
    p.sweep.values.clear();
    for (int k = 1; k <= 20; ++k) p.sweep.values.push_back(0.5 * k);

    const auto rows = run_sweep(p);
    REQUIRE(rows.size() == 20);
    double previous_pop = -1.0;
    double previous_rate = -1.0;
    for (const auto& row : rows) {
        CHECK(row.error.empty());
        CHECK(row.n_sites == 8);
        CHECK(row.rho_ee > previous_pop);
        CHECK(row.rate > previous_rate);
        CHECK(row.rho_ee < 0.5);
        previous_pop = row.rho_ee;
        previous_rate = row.rate;
    }
    CHECK(rows.back().rho_ee > 0.49);
    // the requested ratio is realized exactly
    for (const auto& row : rows)
        CHECK(row.ratio == doctest::Approx(row.sweep_value).epsilon(1e-12));
}

TEST_CASE("single-value sweep equals the operating report") {
    Params p = default_params();
    p.sweep.values = {1.0};
    p.sweep.variable = SweepSpec::Variable::side;
    p.sweep.values = {p.geometry.side};

    const auto rows = run_sweep(p);
    REQUIRE(rows.size() == 1);
    const OperatingPoint point = operating_point(p);
    CHECK(rows[0].n_sites == point.derived.n_sites);
    CHECK(rows[0].omega_collective == point.derived.omega_collective);
    CHECK(rows[0].ratio == point.derived.ratio);
    CHECK(rows[0].rho_ee == point.derived.rho_ee);
    CHECK(rows[0].rate == point.derived.rate);
    CHECK(rows[0].p_rr == point.derived.p_rr);
    CHECK(rows[0].g2_zero == point.derived.g2_zero);
}

TEST_CASE("operating point recomputes identically") {
    const Params p = default_params();
    const OperatingPoint a = operating_point(p);
    const OperatingPoint b = operating_point(p);
    CHECK(a.derived.rho_ee == b.derived.rho_ee);
    CHECK(a.derived.rate == b.derived.rate);
    CHECK(a.derived.p_rr == b.derived.p_rr);
    CHECK(a.derived.g2_zero == b.derived.g2_zero);
    CHECK(a.derived.n_sites == b.derived.n_sites);
}

TEST_CASE("per-point failures land in the error column") {
    Params p = default_params();
    p.sweep.variable = SweepSpec::Variable::n;
    p.sweep.values = {24.0, 24.5, 26.0};

    const auto rows = run_sweep(p);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].error.empty());
    CHECK(!rows[1].error.empty());
    CHECK(std::isnan(rows[1].rho_ee));
    CHECK(rows[2].error.empty());
    CHECK(rows[2].n_sites > 0);
}

TEST_CASE("sweep emission is deterministic") {
    Params p = default_params();
    const auto rows_a = run_sweep(p);
    const auto rows_b = run_sweep(p);
    CHECK(to_csv(rows_a) == to_csv(rows_b));
    CHECK(to_json(rows_a).dump() == to_json(rows_b).dump());
}

TEST_CASE("csv shape and quoting") {
    std::vector<SweepRow> rows;
    CHECK(to_csv(rows) ==
          "sweep_value,N,omega_collective_GHz,ratio,rho_ee,rate_GHz,P_rr,g2_zero,error\n");

    SweepRow row;
    row.sweep_value = 1.5;
    row.n_sites = 8;
    row.omega_collective = 0.5;
    row.ratio = 0.25;
    row.rho_ee = 1.0 / 3.0;
    row.rate = 0.1;
    row.p_rr = 0.0;
    row.g2_zero = 0.0;
    row.error = "bad, \"quoted\" message";
    rows.assign(3, row);

    const std::string csv = to_csv(rows);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find("\"bad, \"\"quoted\"\" message\"") != std::string::npos);
    CHECK(csv.find("0.3333333333333333") != std::string::npos);
}

TEST_CASE("shortest round-trip formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(format_double(1e300) == "1e+300");
    CHECK(format_double(-0.25) == "-0.25");
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("report json schema") {
    const Params p = default_params();
    const OperatingPoint point = operating_point(p);
    const auto sensitivity = g2_sensitivity(p);
    const Json doc = report_json(p, point, sensitivity);

    REQUIRE(doc.contains("inputs"));
    REQUIRE(doc.contains("derived"));
    CHECK(doc["inputs"]["n"] == 24);
    CHECK(doc["inputs"]["omega_single_GHz"] == 9.0);
    CHECK(doc["derived"]["N"] == 8);
    CHECK(doc["derived"]["rho_ee"].get<double>() ==
          doctest::Approx(0.4937481424072436).epsilon(1e-13));
    REQUIRE(doc["sensitivity"].size() == 4);
    // stable key order in emitted text
    const std::string dumped = doc.dump();
    CHECK(dumped.find("\"inputs\"") < dumped.find("\"derived\""));
    CHECK(dumped.find("\"derived\"") < dumped.find("\"targets\""));
}

TEST_CASE("sensitivity table covers both variants and calibrations") {
    const auto rows = g2_sensitivity(default_params());
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].variant == PairVariant::eq8);
    CHECK(rows[0].c3_source == C3Source::formula);
    CHECK(rows[1].c3_source == C3Source::observed);
    CHECK(rows[2].variant == PairVariant::eq7);
    CHECK(rows[0].g2_zero == doctest::Approx(0.3965061813316564).epsilon(1e-12));
    CHECK(rows[1].g2_zero == doctest::Approx(0.20258934588756228).epsilon(1e-12));
    CHECK(rows[2].g2_zero == doctest::Approx(0.11047973122142352).epsilon(1e-12));
    CHECK(rows[3].g2_zero == doctest::Approx(0.05355464076997707).epsilon(1e-12));
    // the text report prints every combination
    const std::string text = report_text(default_params(), operating_point(default_params()),
                                         rows);
    for (const auto& row : rows)
        CHECK(text.find(format_double(row.g2_zero)) != std::string::npos);
}

TEST_CASE("undriven report flags the undefined g2") {
    Params p = default_params();
    p.drive.rabi_single = 0.0;
    const OperatingPoint point = operating_point(p);
    CHECK(point.derived.rate == 0.0);
    CHECK(std::isnan(point.derived.g2_zero));
    const std::string text = report_text(p, point, g2_sensitivity(p));
    CHECK(text.find("undefined") != std::string::npos);
}

TEST_CASE("optimizer finds the recorded optimum") {
    const Params p = default_params();
    OptimizeOptions opts; // g2 <= 0.01, omega in [0, 20], side in [2, 8], 50x50
    const OperatingPoint best = optimize_point(p, opts);
    CHECK(best.omega_single == doctest::Approx(1.2244897959183674).epsilon(1e-9));
    CHECK(best.side == doctest::Approx(3.836734693877551).epsilon(1e-9));
    CHECK(best.derived.rate == doctest::Approx(1.2027440316061917).epsilon(1e-9));
    CHECK(best.derived.g2_zero <= opts.g2_max);
    CHECK(best.derived.rate >= 1.0);
}

TEST_CASE("optimizer pushes to the drive bound when unconstrained") {
    // over [0, 10] GHz at side 4 um the g2 cap of 0.499 never binds, so the
    // monotone rate drives the optimum to the upper bound
    Params p = default_params();
    OptimizeOptions opts;
    opts.g2_max = 0.499;
    opts.omega_max = 10.0;
    opts.side_min = 4.0;
    opts.side_max = 4.0;
    opts.side_points = 1;
    opts.omega_points = 21;
    p.drive.rabi_single = opts.omega_max;
    REQUIRE(operating_point(p).derived.g2_zero < opts.g2_max);
    const OperatingPoint best = optimize_point(p, opts);
    CHECK(best.omega_single == doctest::Approx(opts.omega_max).epsilon(1e-12));
}

TEST_CASE("optimizer refinement never loses rate") {
    const Params p = default_params();
    OptimizeOptions coarse;
    coarse.omega_points = 50;
    coarse.side_points = 50;
    OptimizeOptions fine = coarse;
    fine.omega_points = 99; // doubled density contains the coarse grid
    fine.side_points = 99;
    const double coarse_rate = optimize_point(p, coarse).derived.rate;
    const double fine_rate = optimize_point(p, fine).derived.rate;
    CHECK(fine_rate >= coarse_rate - 1e-15);
}

TEST_CASE("optimizer reports the binding constraint") {
    const Params p = default_params();
    OptimizeOptions sides;
    sides.side_min = 0.5;
    sides.side_max = 1.0; // below 2 * spacing * <r_n> ~ 3.8 um
    CHECK_THROWS_WITH_AS(optimize_point(p, sides),
                         doctest::Contains("minimum crystal size"), InfeasibleError);

    OptimizeOptions tight;
    tight.g2_max = 1e-9;
    tight.omega_min = 5.0;
    tight.omega_max = 20.0;
    CHECK_THROWS_WITH_AS(optimize_point(p, tight), doctest::Contains("g2"),
                         InfeasibleError);

    OptimizeOptions invalid;
    invalid.g2_max = 0.7;
    CHECK_THROWS_AS(optimize_point(p, invalid), std::invalid_argument);
}
