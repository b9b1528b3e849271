#include "doctest.h"

#include <sstream>

#include "lightfl/csv.hpp"

using namespace lightfl::sim;

namespace {
ResultRow row(double sweep, int device, const std::string& metric, double mean) {
    ResultRow r;
    r.sweep_name = "theta_kbits";
    r.sweep_value = sweep;
    r.device = device;
    r.metric = metric;
    r.agg = {mean, 0.5, mean - 1, mean + 1, 990, 1000};
    return r;
}
} // namespace

TEST_SUITE("csv") {

TEST_CASE("shortest round-trip double formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-10) == "1e-10");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    for (const double v : {0.1, 2e-28, 1.5e9, 13.0 / 15.0, 1e300}) {
        std::istringstream in(format_double(v));
        double back = 0;
        in >> back;
        CHECK(back == v);
    }
    CHECK(format_double(0.5).find(',') == std::string::npos);
}

TEST_CASE("empty result emits the header only") {
    ExperimentResult r;
    r.experiment = "fig2";
    std::ostringstream out;
    emit_csv(r, out);
    CHECK(out.str() ==
          "experiment,sweep_name,sweep_value,device,metric,mean,std,q05,q95,n_feasible,n_total\n");
}

TEST_CASE("rows are ordered by sweep value, then device, then metric") {
    ExperimentResult r;
    r.experiment = "fig2";
    r.rows.push_back(row(40, 2, "p_irl_w", 3));
    r.rows.push_back(row(20, 0, "p_irl_total_w", 1));
    r.rows.push_back(row(40, 1, "p_irl_w", 2));
    r.rows.push_back(row(40, 1, "a_metric", 9));
    std::ostringstream out;
    emit_csv(r, out);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line); // header
    std::getline(lines, line);
    CHECK(line.find(",20,0,p_irl_total_w,") != std::string::npos);
    std::getline(lines, line);
    CHECK(line.find(",40,1,a_metric,") != std::string::npos);
    std::getline(lines, line);
    CHECK(line.find(",40,1,p_irl_w,") != std::string::npos);
    std::getline(lines, line);
    CHECK(line.find(",40,2,p_irl_w,") != std::string::npos);
}

TEST_CASE("emit and parse round-trip preserves aggregates") {
    ExperimentResult r;
    r.experiment = "fig3";
    r.rows.push_back(row(20, 1, "t_trans_over_t_comp", 0.123456789012345));
    r.rows.push_back(row(36, 2, "t_comp_s", 2e-28));
    std::ostringstream out;
    emit_csv(r, out);
    std::istringstream in(out.str());
    const auto back = parse_csv(in);
    CHECK(back.experiment == "fig3");
    REQUIRE(back.rows.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back.rows[i].sweep_name == r.rows[i].sweep_name);
        CHECK(back.rows[i].sweep_value == r.rows[i].sweep_value);
        CHECK(back.rows[i].device == r.rows[i].device);
        CHECK(back.rows[i].metric == r.rows[i].metric);
        CHECK(back.rows[i].agg.mean == r.rows[i].agg.mean);
        CHECK(back.rows[i].agg.std == r.rows[i].agg.std);
        CHECK(back.rows[i].agg.q05 == r.rows[i].agg.q05);
        CHECK(back.rows[i].agg.q95 == r.rows[i].agg.q95);
        CHECK(back.rows[i].agg.n_feasible == r.rows[i].agg.n_feasible);
        CHECK(back.rows[i].agg.n_total == r.rows[i].agg.n_total);
    }
}

TEST_CASE("parser rejects malformed input") {
    std::istringstream missing("");
    CHECK_THROWS(parse_csv(missing));
    std::istringstream bad_header("a,b,c\n");
    CHECK_THROWS(parse_csv(bad_header));
    std::istringstream short_row(
        "experiment,sweep_name,sweep_value,device,metric,mean,std,q05,q95,n_feasible,n_total\n"
        "fig2,theta,20,0\n");
    CHECK_THROWS(parse_csv(short_row));
}

} // TEST_SUITE
