#include "support.hpp"

using namespace test;

TEST_CASE("round12") {
  CHECK(round12(0.1 + 0.2) == 0.3);
  CHECK(round12(1.0 / 3.0) == 0.333333333333);
  CHECK(round12(0.0) == 0.0);
  CHECK(round12(-2.0) == -2.0);
}

TEST_CASE("group round trip") {
  for (const auto& g : {Group::trivial(), Group::cyclic(5), Group::free_abelian(3), Group::free(2), fixtures::s3(),
                        Group::product(Group::cyclic(2), Group::free_abelian(1))}) {
    REQUIRE(parse_group(group_to_json(g)) == g);
  }
  CHECK(thrown([] { parse_group(json{{"type", "lie"}}); }) == ErrorKind::InvalidGroup);
  CHECK(thrown([] { parse_group(json::array()); }).has_value());
}

TEST_CASE("element payloads") {
  const auto f2 = Group::free(2);
  CHECK(parse_element(f2, "a b^-1") == el({1, -2}));
  CHECK(parse_element(f2, json::array({1, -2})) == el({1, -2}));
  CHECK(parse_element(f2, "a a^-1") == f2.identity());
  CHECK(thrown([&] { parse_element(f2, "c"); }) == ErrorKind::UndefinedGenerator);
  const auto z1 = Group::free_abelian(1);
  CHECK(parse_element(z1, 3) == el({3}));
  CHECK(parse_element(Group::cyclic(4), 6) == el({2}));
  CHECK(parse_element(fixtures::s3(), "132") == el({1}));
  auto r = rng();
  for (const auto& g : {f2, z1, fixtures::s3(), Group::product(Group::cyclic(3), Group::free(1))}) {
    for (int i = 0; i < 50; ++i) {
      const auto x = g.random_element(r);
      REQUIRE(parse_element(g, element_to_json(g, x)) == x);
    }
  }
}

TEST_CASE("ring elements and matrices") {
  const auto z1 = Group::free_abelian(1);
  const json j = json::array({{{"word", 1}, {"re", "-1/2"}, {"im", "3"}}, {{"word", 0}, {"re", 2}}});
  const auto x = parse_ring_element(z1, j);
  CHECK(x.coefficient(el({1})) == Coefficient(mpq_class(-1, 2), 3));
  CHECK(x.coefficient(el({0})) == Coefficient(2));
  CHECK(parse_ring_element(z1, 5) == RingElement::delta(z1, el({0}), 5));
  auto r = rng();
  for (const auto& g : {z1, fixtures::s3(), Group::free(2)}) {
    for (int i = 0; i < 20; ++i) {
      const auto m = fixtures::random_matrix(g, 1 + static_cast<std::size_t>(i % 3), r);
      REQUIRE(parse_matrix(g, matrix_to_json(m)) == m);
    }
  }
  const json bad{{"rows", 2}, {"entries", json::array({json::array({0, 0})})}};
  CHECK(thrown([&] { parse_matrix(z1, bad); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("density export") {
  const SpectralDensity f({{0.0, 0.25}, {2.0, 0.5}, {4.0, 0.25}}, 1.0, 0.0);
  CHECK(density_to_csv(f) == "lambda,F\n0,0.25\n2,0.75\n4,1\n");
  const auto j = density_to_json(f);
  CHECK(j["total_mass"] == 1.0);
  CHECK(j["jumps"].size() == 3);
}

TEST_CASE("problem parsing") {
  const auto p = load_problem(fixture("zd_laplacian.json"));
  CHECK(p.delta == fixtures::circle_laplacian());
  CHECK(p.scheme.type == SchemeType::Tower);
  CHECK(p.scheme.levels.back() == 1024);
  REQUIRE(p.sandwich.has_value());
  CHECK(p.sandwich->ns == std::vector<int>{2, 4, 8});

  const auto w = load_problem(fixture("whitehead_e.json"));
  CHECK(w.from_a);
  CHECK(w.whitehead.has_value());

  CHECK(thrown([] { load_problem(fixture("malformed.json")); }) == ErrorKind::ParseError);
  CHECK(thrown([] { load_problem(fixture("missing.json")); }) == ErrorKind::ParseError);
  json asym{{"group", {{"type", "free_abelian"}, {"rank", 1}}},
            {"delta", {{"rows", 1}, {"entries", {{json::array({{{"word", 1}, {"re", "1"}}})}}}}}};
  CHECK(thrown([&] { parse_problem(asym); }) == ErrorKind::NotHermitian);
  json free_no_scheme{{"group", {{"type", "free"}, {"rank", 2}}}, {"delta", 1}};
  CHECK(thrown([&] { parse_problem(free_no_scheme); }).has_value());
}

TEST_CASE("complex parsing") {
  const auto c = parse_complex(load_json(fixture("circle.json")));
  CHECK(c.dims == std::vector<std::size_t>{1, 1});
  CHECK(c.boundaries[0] == fixtures::circle_complex().boundaries[0]);
}

TEST_CASE("reports are deterministic") {
  AppOptions o;
  o.levels = std::vector<std::int64_t>{8, 16, 32};
  o.grid = 512;
  o.jobs = 1;
  const auto p = load_problem(fixture("zd_laplacian.json"));
  const auto a = dump_report(run_approx(p, o).report);
  o.jobs = 2;
  const auto b = dump_report(run_approx(p, o).report);
  CHECK(a == b);
  CHECK(a.back() == '\n');
  const auto d1 = dump_report(density_report(compute_density(p, o)));
  const auto d2 = dump_report(density_report(compute_density(p, o)));
  CHECK(d1 == d2);
}

TEST_CASE("approx reports") {
  AppOptions o;
  const auto out = run_approx(load_problem(fixture("zd_laplacian.json")), o);
  CHECK(out.pass);
  CHECK_FALSE(out.computation_error);
  const auto& r = out.report;
  CHECK(r["status"] == "PASS");
  CHECK(r["levels"].size() == 8);
  CHECK(r["k_bound"] == 4.0);
  CHECK(r["levels"][0]["F0"] == 0.125);

  o.levels = std::vector<std::int64_t>{8, 16};
  const auto short_run = run_approx(load_problem(fixture("zd_laplacian.json")), o);
  CHECK(short_run.computation_error);
}

TEST_CASE("cw reports") {
  const auto out = run_cw(parse_complex(load_json(fixture("torus.json"))), AppOptions{}, "oracle");
  CHECK(out.pass);
  CHECK(out.report["euler_match"] == true);
  CHECK(thrown([] { run_cw(parse_complex(load_json(fixture("not_a_complex.json"))), AppOptions{}); }) ==
        ErrorKind::NotAComplex);
  CHECK(thrown([] { run_cw(fixtures::point_complex(), AppOptions{}, "magic"); }) == ErrorKind::InvalidArgument);
}
