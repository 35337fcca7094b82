#include "doctest.h"
#include "zs/io.hpp"

#include <sstream>

using namespace zs;

TEST_CASE("potential documents") {
  const auto phi = Potential::random(9, 2, 0.4);
  const auto back = potential_from_json(Json::parse(dump(to_json(phi))));
  for (const auto& [k, v] : phi.coeffs1()) CHECK(back.coeffs1().at(k) == v);
  for (const auto& [k, v] : phi.coeffs2()) CHECK(back.coeffs2().at(k) == v);

  CHECK_THROWS_AS(potential_from_json(Json::parse(R"({"coeffs1": [[1, 0.5]]})")), ParseError);
  CHECK_THROWS_AS(potential_from_json(Json::parse(R"({"coeffs1": [[0.5, 1, 2]], "coeffs2": []})")), ParseError);
  CHECK_THROWS_AS(potential_from_json(Json::parse("[1, 2]")), ParseError);
  CHECK_THROWS_AS(read_potential("/nonexistent/potential.json"), ParseError);
}

TEST_CASE("seventeen significant digits") {
  const auto s = dump(Json{{"x", 0.1}, {"n", 3}});
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"n\": 3") != std::string::npos);
}

TEST_CASE("spectrum export is deterministic") {
  const auto phi = Potential::single_mode({0.1, 0.05});
  const auto a = dump(to_json(compute_spectrum(phi, 3)));
  const auto b = dump(to_json(compute_spectrum(phi, 3)));
  CHECK(a == b);
  const auto j = Json::parse(a);
  CHECK(j["mu"].size() == 7);
  std::ostringstream csv;
  write_csv(csv, compute_spectrum(phi, 3));
  const std::string text = csv.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 8);
}
