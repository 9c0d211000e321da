#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "cartanforge/expr.hpp"
#include "cartanforge/jsonout.hpp"
#include "cartanforge/report.hpp"
#include "cartanforge/sampling.hpp"

using namespace cartanforge;

TEST_CASE("json objects keep insertion order and format doubles exactly") {
  Json j = Json::object()
               .add("zeta", Json::number(0.1))
               .add("alpha", Json::integer(-3))
               .add("flag", Json::boolean(true))
               .add("items", Json::array()
                                 .push(Json::string("x"))
                                 .push(Json::number(2.0)));
  std::string text = j.dump();
  CHECK(text.find("\"zeta\"") < text.find("\"alpha\""));
  CHECK(text.find("\"alpha\"") < text.find("\"flag\""));
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(j.dump() == text);  // dumping twice is stable

  // 17 significant digits round trip through strtod for awkward values.
  for (double v : {0.1, 1.0 / 3.0, 6.02e23, -2.2250738585072014e-308,
                   123456.789012345678}) {
    std::string s = format_double_17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(format_double_17(1.0) == "1");
  CHECK(format_double_17(std::nan("")) == "\"nan\"");
  CHECK(format_double_17(INFINITY) == "\"inf\"");
}

TEST_CASE("residual sets report statistics and enforce evaluation") {
  ResidualSet rs(1e-8);
  rs.add("tiny", parse_field("1e-12", Chart::plain()));
  rs.add("shifted", parse_field("c1 - 2", Chart::plain()));
  CHECK_THROWS_AS((void)rs.pass(), std::logic_error);

  Box box{{1.0, 0.0, 0.0}, {3.0, 1.0, 1.0}};
  rs.evaluate(box.grid(3));
  CHECK_FALSE(rs.pass());  // |c1 - 2| reaches 1 at the endpoints
  CHECK(rs.sup("tiny") == 1e-12);
  CHECK(rs.sup("shifted") == 1.0);
  CHECK(rs.worst_sup() == 1.0);
  CHECK(rs.entry("shifted").stat.min_value == -1.0);
  CHECK(rs.entry("shifted").stat.max_value == 1.0);
  CHECK(rs.entry("shifted").stat.count == 27);
  CHECK_THROWS_AS(rs.entry("absent"), std::out_of_range);

  Json j = rs.to_json();
  std::string text = j.dump();
  CHECK(text.find("\"tolerance\"") != std::string::npos);
  CHECK(text.find("\"worst_sup\"") != std::string::npos);
  CHECK(text.find("\"tiny\"") < text.find("\"shifted\""));

  ResidualSet empty(1e-8);
  empty.evaluate(box.grid(2));
  CHECK(empty.pass());
  CHECK(empty.worst_sup() == 0.0);
  CHECK(empty.to_json().dump().find("\"residuals\": {}") !=
        std::string::npos);
}

TEST_CASE("structure reports sample extracted functions deterministically") {
  StructureReport rep;
  rep.residuals = ResidualSet(1e-8);
  Box box{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
  auto pts = box.grid(3);
  rep.residuals.evaluate(pts);
  rep.add_extracted("f", parse_field("c1 + 10*c2", Chart::plain()), pts);
  REQUIRE(rep.extracted.size() == 1);
  CHECK(rep.extracted[0].samples.size() == 5);
  CHECK(rep.extracted[0].samples.front().first == pts.front());
  CHECK(rep.extracted[0].samples.back().first == pts.back());
  for (const auto& [p, v] : rep.extracted[0].samples)
    CHECK(v == p.c1 + 10 * p.c2);
  CHECK(rep.pass());
  CHECK(rep.to_json().dump().find("\"extracted\"") != std::string::npos);
}

TEST_CASE("grids include endpoints and degenerate to midpoints") {
  Box box{{0.0, -1.0, 2.0}, {1.0, 1.0, 4.0}};
  auto g = box.grid(3);
  CHECK(g.size() == 27);
  CHECK(g.front() == Point{0.0, -1.0, 2.0});
  CHECK(g.back() == Point{1.0, 1.0, 4.0});
  auto mid = box.grid(1);
  REQUIRE(mid.size() == 1);
  CHECK(mid[0] == Point{0.5, 0.0, 3.0});
  CHECK_THROWS_AS(box.grid(0), std::invalid_argument);
}

TEST_CASE("random samples are deterministic per seed and stay in the box") {
  Box box{{0.5, -2.0, 1.0}, {1.5, 2.0, 9.0}};
  auto a = box.random(64, 123);
  auto b = box.random(64, 123);
  auto c = box.random(64, 124);
  CHECK(a == b);
  CHECK(a != c);
  std::set<double> firsts;
  for (const Point& p : a) {
    CHECK(p.c1 >= 0.5); CHECK(p.c1 <= 1.5);
    CHECK(p.c2 >= -2.0); CHECK(p.c2 <= 2.0);
    CHECK(p.c3 >= 1.0); CHECK(p.c3 <= 9.0);
    firsts.insert(p.c1);
  }
  CHECK(firsts.size() == 64);  // no duplicate draws
}

TEST_CASE("field statistics track sup, mean, range and argmax") {
  FieldStat st;
  st.add({0, 0, 0}, 1.0);
  st.add({1, 0, 0}, -3.0);
  st.add({2, 0, 0}, 2.0);
  CHECK(st.sup_abs == 3.0);
  CHECK(st.argmax == Point{1, 0, 0});
  CHECK(st.mean_abs == 2.0);
  CHECK(st.min_value == -3.0);
  CHECK(st.max_value == 2.0);
  CHECK(st.spread() == 5.0);
  CHECK(st.count == 3);
}
